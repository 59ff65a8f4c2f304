#ifndef EQUISTRATA_TEST_FIXTURES_HPP
#define EQUISTRATA_TEST_FIXTURES_HPP

#include <memory>

#include "equistrata/lie_core.hpp"

namespace equistrata::fixtures {

inline RootDatum make_datum(const std::vector<std::string>& names) {
    return RootDatum(parse_group_factors(names));
}

inline QVec dual(const RootDatum& datum, std::vector<Rational> coords) {
    return CoordFrame(datum, false).weight_from_coords(coords);
}

inline QVec dual_coords(const RootDatum& datum, const QVec& w) {
    return CoordFrame(datum, false).weight_to_coords(w);
}

// The pyramid frame of the SU(4) example: H1, H2 standard, H3' = (1,1,1,-3).
inline CoordFrame pyramid_frame(const RootDatum& su4) {
    std::vector<QVec> coweights = {
        {1, -1, 0, 0},
        {0, 1, -1, 0},
        {1, 1, 1, -3},
    };
    return CoordFrame(su4, false, coweights);
}

}  // namespace equistrata::fixtures

#endif
