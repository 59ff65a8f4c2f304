#ifndef EQUISTRATA_STRATA_HPP
#define EQUISTRATA_STRATA_HPP

#include "equistrata/kernel_enum.hpp"
#include "equistrata/module.hpp"
#include "equistrata/numberfield.hpp"

namespace equistrata {

/*
 * A place on the main stratum of a kernel candidate where the momentum is
 * forced into a prescribed intersection of Weyl walls. Magnitudes are the
 * invariant squared component sizes |x_alpha|^2, normalized to total 1; the pi
 * factor of the momentum map is kept out of all stored values.
 */
struct MomentumLocus {
    std::vector<std::vector<size_t>> partition;  // blocks of indices into the flat weight list
    WallIntersection wall;                       // walls_containing(mu), saturated
    std::vector<Rational> magnitudes;            // per flat weight, sum 1
    QVec mu;                                     // sum of r_alpha * alpha
    bool generic = false;
};

// Kernel solutions within the span of the root spaces of g_mu, grouped by the
// common restriction of the roots to t_x (restrictions pair up as +-).
struct RootClassSolution {
    std::vector<int> roots;  // positive-root ids of g_mu in this class
    QVec restriction;        // of the first root, in coordinates dual to the t_x basis
    int kernel_dim = 0;
    // Basis elements: coefficient maps root -> (a, b) for a(X-Y) + b(i(X+Y)).
    std::vector<std::map<int, std::pair<AlgebraicNumber, AlgebraicNumber>>> elements;
};

struct IsotropyAlgebra {
    int total_dim = 0;
    QMat torus_part;  // rows span t_x
    std::vector<int> g_mu_roots;
    std::vector<RootClassSolution> classes;
    std::map<int, int> root_support;  // positive root id -> solved kernel dimension
    std::shared_ptr<const RadicalBasis> radicals;

    // The solved point x: per flat weight, (component, module basis index, t_alpha).
    struct XEntry {
        int component;
        size_t position;
        AlgebraicNumber coeff;
    };
    std::vector<XEntry> x;

    int rank() const { return (int)torus_part.rows(); }
};

struct StratumDims {
    int stratum_dim;
    int generator_space_dim;
};

using Realizations = std::vector<std::shared_ptr<const ModuleRealization>>;

QVec momentum_of(const std::vector<QVec>& weights, const std::vector<Rational>& magnitudes);

QMat torus_isotropy(const RootDatum& datum, const std::vector<QVec>& weights);

std::vector<MomentumLocus> enumerate_momentum_loci(const RootDatum& datum,
                                                   const KernelCandidate& cand);

IsotropyAlgebra isotropy_algebra_at(const Realizations& reals, const RootDatum& datum,
                                    const KernelCandidate& cand, const MomentumLocus& locus);

IsotropyAlgebra pure_state_isotropy(const RootDatum& datum, const WeightSystem& weights,
                                    const QVec& alpha);

StratumDims stratum_dimension(const RootDatum& datum, const IsotropyAlgebra& algebra);

// Applies every solved basis element to x with the exact module matrices and
// checks the result is identically zero. Throws InternalCheckError otherwise.
void verify_kernel_exact(const Realizations& reals, const IsotropyAlgebra& algebra);

// Independent floating-point route: SVD rank of the full solve matrix at the
// locus magnitudes (tolerance 1e-9). Returns the kernel dimension.
int float_oracle_kernel_dim(const Realizations& reals, const RootDatum& datum,
                            const KernelCandidate& cand, const MomentumLocus& locus);

}  // namespace equistrata

#endif
