#ifndef EQUISTRATA_MODULE_HPP
#define EQUISTRATA_MODULE_HPP

#include <memory>
#include <mutex>

#include "equistrata/weights.hpp"

namespace equistrata {

/*
 * Exact realization of the irreducible module of highest weight lambda on a
 * weight basis of lowering words, carrying the rational Shapovalov Gram form.
 * Raising and lowering matrices are indexed like RootDatum::simple_roots().
 * For product groups the realization is the tensor product of the factor
 * realizations; torus factors contribute a fixed weight shift.
 */
class ModuleRealization {
public:
    ModuleRealization(const RootDatum& datum, const QVec& lambda, size_t dim_cap = 512);

    const RootDatum& datum() const { return *datum_; }
    const QVec& highest_weight() const { return lambda_; }
    size_t dim() const { return basis_weight_.size(); }

    const QVec& basis_weight(size_t i) const { return basis_weight_[i]; }
    int index_within_weight_space(size_t i) const { return basis_sub_index_[i]; }
    const std::vector<size_t>& block_positions(const QVec& weight) const;
    bool has_weight(const QVec& weight) const { return blocks_.count(weight) > 0; }

    const QMat& gram() const { return gram_; }
    const QMat& gram_inverse() const { return gram_inv_; }
    Rational gram_norm(size_t i) const { return gram_(i, i); }

    const QMat& lowering(size_t simple_idx) const { return lowering_[simple_idx]; }
    const QMat& raising(size_t simple_idx) const { return raising_[simple_idx]; }

    // Root vector for any positive root, built from iterated commutators of
    // the simple raising matrices; maps the weight-a block into weight a+rho.
    const QMat& root_vector(int root_id) const;
    // Gram-adjoint of root_vector(root_id); a root vector for -rho.
    const QMat& lowering_root_vector(int root_id) const;

    QMat gram_adjoint(const QMat& m) const { return gram_inv_ * m.transpose() * gram_; }

    const WeightSystem& weight_system() const { return weights_; }

private:
    const RootDatum* datum_;
    QVec lambda_;
    WeightSystem weights_;
    std::vector<QVec> basis_weight_;
    std::vector<int> basis_sub_index_;
    std::map<QVec, std::vector<size_t>> blocks_;
    QMat gram_, gram_inv_;
    std::vector<QMat> lowering_, raising_;
    std::vector<QMat> root_vectors_, lowering_root_vectors_;
};

// Matrix units at the positive root's coordinates, block-embedded: the same
// commutator words as ModuleRealization::root_vector evaluated on the
// defining representation of the product.
QMat ambient_root_vector(const RootDatum& datum, int root_id);
QMat ambient_lowering_root_vector(const RootDatum& datum, int root_id);
// Ambient matrix of a Cartan element (diagonal).
QMat ambient_cartan_matrix(const RootDatum& datum, const QVec& h);

// Synchronized per-(group, lambda) cache.
class RealizationCache {
public:
    std::shared_ptr<const ModuleRealization> get(const RootDatum& datum, const QVec& lambda,
                                                 size_t dim_cap);

private:
    std::mutex mutex_;
    std::map<std::pair<std::string, QVec>, std::shared_ptr<const ModuleRealization>> cache_;
};

}  // namespace equistrata

#endif
