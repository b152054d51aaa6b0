#pragma once

#include <cstdint>
#include <optional>

#include "qseries/series.hpp"

namespace qseries {

/// Theta(arg; q^base) = (arg; q^base)_inf (q^base/arg; q^base)_inf (q^base; q^base)_inf.
struct ThetaSpec {
    MonomialArg arg;
    QExp base{1};
};

enum class ThetaForm { Product, Sum };

/// (arg; q^base)_n, or the infinite product when n is nullopt.
///
/// Finite products may be computed exactly by passing order = kExact.
/// Infinite products need base > 0 and a finite order; factors whose
/// exponent is non-positive are fine as long as only finitely many occur.
Series pochhammer(const MonomialArg& arg, QExp base, std::optional<std::int64_t> n, std::int64_t order,
                  std::int64_t scale = 1);

/// (q^base; q^base)_inf, memoized.
Series euler(QExp base, std::int64_t order, std::int64_t scale = 1);

/// (q^base; q^base)_inf^{-k}, memoized.
Series euler_inverse_power(unsigned k, QExp base, std::int64_t order, std::int64_t scale = 1);

/// Gaussian binomial [n, k]_q as an exact polynomial; 0 unless 0 <= k <= n.
Series gaussian_binomial(std::int64_t n, std::int64_t k);

Series theta(const ThetaSpec& spec, std::int64_t order, std::int64_t scale = 1, ThetaForm form = ThetaForm::Sum);

/// Theta(y; q) / (1 - y q^h), realized by leaving one factor out of the
/// triple product. `y` defaults to x.
Series theta_over_factor(std::int64_t h, std::int64_t order, std::int64_t scale = 1,
                         const MonomialArg& y = MonomialArg::x());

} // namespace qseries
