#ifndef EQUISTRATA_CLASSIFIER_HPP
#define EQUISTRATA_CLASSIFIER_HPP

#include "equistrata/strata.hpp"

namespace equistrata {

/*
 * Restricted root system of a solved isotropy algebra relative to its torus
 * part. Roots are functionals on t_x in coordinates dual to the stored basis,
 * closed under negation. flagged is set when t_x fails to be maximal abelian;
 * classification is withheld in that case.
 */
struct RestrictedRootSystem {
    int cartan_dim = 0;
    std::vector<std::pair<QVec, int>> roots;  // functional -> multiplicity, +- closed
    int abelian_dim = 0;
    QMat cartan_gram;  // Gram matrix of the t_x basis, for length computations
    bool flagged = false;
    std::string flag_reason;
    int total_dim() const {
        int d = cartan_dim;
        for (const auto& [r, m] : roots) d += m;
        return d;
    }
};

RestrictedRootSystem restricted_roots(const IsotropyAlgebra& algebra, const RootDatum& datum);

struct Classification {
    std::string name;  // "su(2)", "su(3)", "so(5)", "su(2)+su(2)", "su(2)+R", "R^k", ...
    bool named = false;
    int dim = 0;
    int rank = 0;
    std::string fingerprint;  // always present
};

Classification classify(const RestrictedRootSystem& rrs);

}  // namespace equistrata

#endif
