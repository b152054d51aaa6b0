#pragma once

#include <cstdint>
#include <functional>

#include "qseries/qexp.hpp"

namespace qseries {

/// a u^2 + b uv + c v^2 + d u + e v + f with rational coefficients.
struct Quadratic2 {
    QExp a, b, c, d, e, f;

    QExp operator()(std::int64_t u, std::int64_t v) const;

    /// Same form in new variables (u', v') with u = su*u' + ou, v = sv*v' + ov.
    Quadratic2 affine(std::int64_t su, std::int64_t ou, std::int64_t sv, std::int64_t ov) const;
    Quadratic2 plus_linear(QExp du, QExp dv, QExp df = QExp(0)) const;
};

/// Visits every (u, v) with u, v >= 0 and form(u, v) < bound.
///
/// The form must be increasing away from the quadrant corner in the sense
/// a > 0, c > 0, b >= 0; otherwise the region is not finite and
/// NonTruncatable is thrown. The callback receives the point and the exact
/// value of the form.
void enumerate_quadrant(const Quadratic2& form, QExp bound,
                        const std::function<void(std::int64_t, std::int64_t, const QExp&)>& visit);

/// Visits every integer n with a n^2 + d n + f < bound (a > 0).
void enumerate_line(QExp a, QExp d, QExp f, QExp bound,
                    const std::function<void(std::int64_t, const QExp&)>& visit);

/// sg(r) = 1 for r >= 0, -1 otherwise; sg(r, s) = (sg(r) + sg(s)) / 2.
constexpr int sg(std::int64_t r) noexcept { return r >= 0 ? 1 : -1; }
constexpr int sg(std::int64_t r, std::int64_t s) noexcept { return (sg(r) + sg(s)) / 2; }

/// Which pairs of a sg-weighted double sum are visited.
enum class Parity { Any, Same };

/// Visits every (r, s) with sg(r, s) != 0 (and r = s mod 2 when asked) whose
/// bound form lies below `bound`. Separate lower-bound forms may be given for
/// the two quadrants; each must bound the true exponent of the summand from
/// below on its quadrant.
/// The callback receives (r, s, sg(r, s), value of the bound form).
void enumerate_sg(const Quadratic2& positive_bound, const Quadratic2& negative_bound, QExp bound, Parity parity,
                  const std::function<void(std::int64_t, std::int64_t, int, const QExp&)>& visit);

} // namespace qseries
