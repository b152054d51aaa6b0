#pragma once

#include <cstdint>
#include <utility>

#include "qseries/series.hpp"

namespace qseries {

struct GordonParams {
    std::int64_t t = 1;
    std::int64_t m = 1;
    int b = 0;
    std::int64_t n = 0;
};

/// H_n(t, m; b; q): sum over chains n = n_t >= ... >= n_1 >= 0 of products of
/// q-powers and Gaussian binomials. Exact polynomial unless `order` is given.
Series gordon_h(const GordonParams& params, std::int64_t order = kExact);

/// p(q) -> p(q^{-1}) for an exact Laurent polynomial in q (scale 1).
Series reverse_q(const Series& poly);

/// sum_n q^n (-x)_n (-q/x)_n H_n(t, m; 0; q)
Series u_series(std::int64_t t, std::int64_t m, std::int64_t order);
/// The same series at -x.
Series u_series_negated(std::int64_t t, std::int64_t m, std::int64_t order);

/// Partitions into parts below L with frequencies f_1 <= i-1, f_{L-1} <= i'-1
/// and f_j + f_{j+1} <= k.
Series gordon_g(std::int64_t k, std::int64_t i, std::int64_t i_end, std::int64_t length,
                std::int64_t order = kExact);

/// Both sides of Andrews' analytic form of Gordon's theorem.
std::pair<Series, Series> andrews_sides(std::int64_t k, std::int64_t i, std::int64_t order);

} // namespace qseries
