#ifndef TORICQH_TESTS_HELPERS_HPP
#define TORICQH_TESTS_HELPERS_HPP

#include <initializer_list>

#include "toricqh/polytope.hpp"

namespace toricqh::testing {

// Facet sets are written with 1-based facet numbers in tests.
inline FacetSet fs1(std::initializer_list<int> idx) {
    FacetSet s = 0;
    for (int i : idx) s |= facet_bit(i - 1);
    return s;
}

inline Facet f(IntVec normal, const Rat& support) { return Facet{std::move(normal), support, ""}; }

} // namespace toricqh::testing

#endif
