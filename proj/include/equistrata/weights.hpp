#ifndef EQUISTRATA_WEIGHTS_HPP
#define EQUISTRATA_WEIGHTS_HPP

#include <map>
#include <set>

#include "equistrata/lie_core.hpp"

namespace equistrata {

// Weight multiset of an irreducible representation.
struct WeightSystem {
    std::map<QVec, int> entries;

    Integer total() const {
        Integer t = 0;
        for (const auto& [w, m] : entries) t += m;
        return t;
    }
    int multiplicity(const QVec& w) const {
        auto it = entries.find(w);
        return it == entries.end() ? 0 : it->second;
    }
    std::vector<QVec> multiplicity_one_weights() const {
        std::vector<QVec> out;
        for (const auto& [w, m] : entries)
            if (m == 1) out.push_back(w);
        return out;
    }
};

// Integral weights in conv(W.lambda) congruent to lambda modulo the root
// lattice. lambda must be dominant integral.
std::set<QVec> weight_support(const RootDatum& datum, const QVec& lambda);

// Freudenthal recursion over the support.
WeightSystem weight_multiplicities(const RootDatum& datum, const QVec& lambda);

Integer weyl_dimension(const RootDatum& datum, const QVec& lambda);

}  // namespace equistrata

#endif
