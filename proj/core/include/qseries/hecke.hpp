#pragma once

#include <cstdint>

#include "qseries/lattice.hpp"
#include "qseries/qfunctions.hpp"
#include "qseries/series.hpp"

namespace qseries {

/// Indices of the indefinite binary theta series; t is the ambient level.
struct ThetaPMParams {
    std::int64_t t = 1;
    std::int64_t p = 0;
    std::int64_t m = 0;
};

/// r^2/8 + (4t-1)/4 rs + s^2/8 + (4p-1-2m)/4 r + (1+2m)/4 s
Quadratic2 theta_pm_form(const ThetaPMParams& params);
/// (-2p^2 - t(2m+1)(2m+1-4p)) / (8t(2t-1))
QExp theta_pm_shift(const ThetaPMParams& params);

/// Sum over r = s mod 2 of sg(r,s) (-1)^((r-s)/2) q^B(r,s). Exponents are
/// integers; the result is produced on the requested lattice.
Series theta_pm(const ThetaPMParams& params, std::int64_t order, std::int64_t scale = 1);
/// q^C * theta_pm; throws ScaleMismatch when the shift is not on the lattice.
Series theta_pm_star(const ThetaPMParams& params, std::int64_t order, std::int64_t scale);

/// f_{a,b,c}(x, y; q^base) = sum sg(r,s) (-1)^(r+s) x^r y^s q^(base (a C(r,2) + b rs + c C(s,2))).
struct HeckeParams {
    std::int64_t a = 1;
    std::int64_t b = 2;
    std::int64_t c = 1;
    MonomialArg x;
    MonomialArg y;
    QExp base{1};
};

Series hecke_f_abc(const HeckeParams& params, std::int64_t order, std::int64_t scale = 1);

/// m(x, z; q^base) = Theta(z; q^base)^{-1} sum_r (-1)^r q^(base C(r,2)) z^r / (1 - q^(base (r-1)) x z).
struct AppellParams {
    MonomialArg x;
    MonomialArg z;
    QExp base{1};
};

/// Theta(z; q^base) * m(x, z; q^base), which needs no division.
Series appell_cleared(const AppellParams& params, std::int64_t order, std::int64_t scale = 1);
/// m(x, z; q^base) itself; Theta(z; q^base) must have a monomial head.
Series appell(const AppellParams& params, std::int64_t order, std::int64_t scale = 1);

/// f_{t,m}(q^shift x) = Theta(q^shift x)/(q)^3 * g_{t,m}(q^shift x), built from
/// pole-free summands.
Series f_tm(std::int64_t t, std::int64_t m, std::int64_t order, std::int64_t shift = 0);

/// Theta(-x^(2t-1); q^(2t-1))
Series v_theta(std::int64_t t, std::int64_t order, std::int64_t scale = 1);
/// v_theta * Theta(x; q)
Series y_theta(std::int64_t t, std::int64_t order, std::int64_t scale = 1);
/// (-1)^s q^C(s,2) Theta(q^((2t-1)(t-s)); q^(2t(2t-1)))
Series y_coefficient(std::int64_t t, std::int64_t s, std::int64_t order, std::int64_t scale = 1);

} // namespace qseries
