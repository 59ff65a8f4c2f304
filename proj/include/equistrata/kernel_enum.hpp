#ifndef EQUISTRATA_KERNEL_ENUM_HPP
#define EQUISTRATA_KERNEL_ENUM_HPP

#include "equistrata/weights.hpp"

namespace equistrata {

struct RepComponentSpec {
    QVec highest_weight;  // ambient, dominant integral
    Rational eigenvalue;  // c_i / (2 pi), stored exactly
};

struct RepSpec {
    std::vector<RepComponentSpec> components;
    std::vector<WeightSystem> weight_systems;  // parallel to components
};

RepSpec make_rep_spec(const RootDatum& datum, std::vector<RepComponentSpec> components);

/*
 * An admissible weight set S = union of per-component parts. Admission gate is
 * affine independence plus slab maximality plus the reflection-pair filter;
 * linear independence and fullness are computed and reported as flags.
 */
struct KernelCandidate {
    std::vector<std::pair<int, std::vector<QVec>>> parts;  // component -> sorted weights
    QMat span_w;  // W = sum of underlying subspaces of aff(S_i), RREF rows
    int x_dim = 0;
    bool full = false;
    bool linear_independent = false;

    std::vector<std::pair<int, QVec>> flattened() const;
    size_t size() const;
    bool operator<(const KernelCandidate& o) const { return parts < o.parts; }
};

// Weights of each component whose spaces lie in ker d^2(h - J^xi)(0).
std::vector<std::pair<int, std::vector<QVec>>> kernel_weights_for_generator(
    const RepSpec& rep, const RootDatum& datum, const QVec& xi);

struct FullnessResult {
    bool full;
    int x_dim;
};
FullnessResult is_full(const RootDatum& datum,
                       const std::vector<std::pair<int, std::vector<QVec>>>& parts);

bool has_weyl_reflection_pair(const RootDatum& datum, const std::vector<QVec>& part);

std::vector<KernelCandidate> enumerate_kernel_candidates(const RepSpec& rep,
                                                         const RootDatum& datum,
                                                         size_t max_size);

// Canonical representative of the Weyl orbit of a candidate's weight sets:
// among orbit elements whose total weight sum is dominant, the lexicographic
// minimum. Exposed for the dedup oracle in tests.
std::vector<std::pair<int, std::vector<QVec>>> canonical_orbit_representative(
    const RootDatum& datum, std::vector<std::pair<int, std::vector<QVec>>> parts);

// Affine set X of generators realizing a candidate: solutions of
// <alpha, xi> = c_i for alpha in S_i, as base point + direction basis,
// or nothing when the system is inconsistent.
std::optional<AffineSpan> generator_solution_set(const RepSpec& rep, const RootDatum& datum,
                                                 const KernelCandidate& cand);

}  // namespace equistrata

#endif
