#pragma once

#include <initializer_list>
#include <tuple>

#include "qseries/series.hpp"

namespace testing {

using qseries::Rational;
using qseries::Series;

/// Series from (q-exponent, x-degree, coefficient) triples.
inline Series poly(std::initializer_list<std::tuple<std::int64_t, std::int64_t, long>> terms,
                   std::int64_t order = qseries::kExact, std::int64_t scale = 1) {
    Series s(scale, order);
    for (const auto& [e, d, c] : terms) s.add_term(e, d, Rational(c));
    return s;
}

inline bool same(const Series& a, const Series& b) { return qseries::diff_report(a, b).equal; }

} // namespace testing
