#include "qseries/hecke.hpp"

#include <map>
#include <vector>

namespace qseries {

namespace {

int parity_sign(std::int64_t n) { return (n % 2 == 0) ? 1 : -1; }

int sign_power(int sign, std::int64_t n) { return sign == 1 ? 1 : parity_sign(n); }

QExp bound_of(std::int64_t order, std::int64_t scale) {
    if (order == kExact) fail(ErrorKind::InvalidArgument, "lattice sums need a finite order");
    return QExp::from_scaled(order, scale);
}

std::int64_t binom2(std::int64_t n) { return checked::mul(n, n - 1) / 2; }

} // namespace

Quadratic2 theta_pm_form(const ThetaPMParams& p) {
    return {QExp(1, 8),
            QExp(4 * p.t - 1, 4),
            QExp(1, 8),
            QExp(checked::sub(checked::sub(checked::mul(4, p.p), 1), checked::mul(2, p.m)), 4),
            QExp(checked::add(1, checked::mul(2, p.m)), 4),
            QExp(0)};
}

QExp theta_pm_shift(const ThetaPMParams& p) {
    const std::int64_t two_m1 = checked::add(checked::mul(2, p.m), 1);
    const std::int64_t num = checked::sub(checked::mul(-2, checked::mul(p.p, p.p)),
                                          checked::mul(p.t, checked::mul(two_m1, checked::sub(two_m1, 4 * p.p))));
    return QExp(num, checked::mul(8 * p.t, 2 * p.t - 1));
}

Series theta_pm(const ThetaPMParams& params, std::int64_t order, std::int64_t scale) {
    if (params.t < 1) fail(ErrorKind::InvalidArgument, "theta_pm needs t >= 1");
    const Quadratic2 form = theta_pm_form(params);
    Series r(scale, order);
    enumerate_sg(form, form, bound_of(order, scale), Parity::Same,
                 [&](std::int64_t a, std::int64_t b, int sg, const QExp& value) {
                     const int sign = sg * parity_sign((a - b) / 2);
                     r.add_term(value.on_lattice(scale), 0, Rational(sign));
                 });
    return r;
}

Series theta_pm_star(const ThetaPMParams& params, std::int64_t order, std::int64_t scale) {
    const std::int64_t shift = theta_pm_shift(params).on_lattice(scale);
    return theta_pm(params, order_shift(order, -shift), scale).shifted(shift);
}

Series hecke_f_abc(const HeckeParams& p, std::int64_t order, std::int64_t scale) {
    if (p.a <= 0 || p.b <= 0 || p.c <= 0 || checked::mul(p.b, p.b) <= checked::mul(p.a, p.c))
        fail(ErrorKind::InvalidArgument, "f_abc needs positive a, b, c with b^2 > ac");
    if (p.base.sign() <= 0) fail(ErrorKind::NonTruncatable, "f_abc base must have positive exponent");
    const QExp half_a = QExp(p.a, 2) * p.base;
    const QExp half_c = QExp(p.c, 2) * p.base;
    const Quadratic2 form{half_a, p.b * p.base, half_c, p.x.qexp - half_a, p.y.qexp - half_c, QExp(0)};
    Series r(scale, order);
    enumerate_sg(form, form, bound_of(order, scale), Parity::Any,
                 [&](std::int64_t u, std::int64_t v, int sg, const QExp& value) {
                     const int sign = sg * parity_sign(u + v) * sign_power(p.x.sign, u) * sign_power(p.y.sign, v);
                     const std::int64_t xdeg = checked::add(checked::mul(p.x.xdeg, u), checked::mul(p.y.xdeg, v));
                     r.add_term(value.on_lattice(scale), xdeg, Rational(sign));
                 });
    return r;
}

Series appell_cleared(const AppellParams& p, std::int64_t order, std::int64_t scale) {
    if (p.base.sign() <= 0) fail(ErrorKind::NonTruncatable, "Appell base must have positive exponent");
    const QExp bound = bound_of(order, scale);
    const MonomialArg xz = p.x * p.z;
    // lowest exponent of the r-th summand
    auto lower = [&](std::int64_t r) {
        const QExp head = binom2(r) * p.base + r * p.z.qexp;
        const QExp pole = (r - 1) * p.base + xz.qexp;
        return pole.sign() < 0 ? head - pole : head;
    };
    Series out(scale, order);
    auto emit = [&](std::int64_t r) {
        const QExp head = binom2(r) * p.base + r * p.z.qexp;
        const std::int64_t e = head.on_lattice(scale);
        MonomialArg mu = xz;
        mu.qexp = (r - 1) * p.base + xz.qexp;
        const Series gf = geometric_factor(mu, order_shift(order, -e), scale);
        const int sign = parity_sign(r) * sign_power(p.z.sign, r);
        out.add_shifted(gf, sign, e, checked::mul(p.z.xdeg, r));
    };
    for (std::int64_t r = 0;; ++r) {
        const QExp lo = lower(r);
        if (lo >= bound && lower(r + 1) >= lo) break;
        if (lo < bound) emit(r);
    }
    for (std::int64_t r = -1;; --r) {
        const QExp lo = lower(r);
        if (lo >= bound && lower(r - 1) >= lo) break;
        if (lo < bound) emit(r);
    }
    return out;
}

Series appell(const AppellParams& p, std::int64_t order, std::int64_t scale) {
    const Series cleared = appell_cleared(p, order, scale);
    const Series th = theta(ThetaSpec{p.z, p.base}, order, scale);
    if (th.is_zero()) fail(ErrorKind::SpecializationHitsZero, "Theta(" + p.z.str() + ") vanishes");
    const std::int64_t v = th.valuation();
    return cleared * invert_unit(th, order_shift(order, -2 * v));
}

Series f_tm(std::int64_t t, std::int64_t m, std::int64_t order, std::int64_t shift) {
    if (t < 1 || m < 1) fail(ErrorKind::InvalidArgument, "f_tm needs t >= 1 and m >= 1");
    if (order == kExact) fail(ErrorKind::InvalidArgument, "f_tm needs a finite order");
    const Quadratic2 form = theta_pm_form({t, t, m});
    // Theta(q^j x)/(1 - x q^(h+j)) = (-1)^j q^(-C(j,2)) x^(-j) Theta(x)/(1 - x q^(h+j))
    const std::int64_t lift = binom2(shift);
    const std::int64_t work = checked::add(order, lift);
    // summand valuation is B + max(0, -(h + j)) >= B - h - j
    const Quadratic2 negative = form.plus_linear(QExp(-1, 2), QExp(-1, 2), QExp(-shift));
    std::map<std::int64_t, std::vector<std::pair<std::int64_t, int>>> by_h;
    enumerate_sg(form, negative, QExp(work), Parity::Same, [&](std::int64_t r, std::int64_t s, int sg, const QExp&) {
        const QExp b = form(r, s);
        by_h[(r + s) / 2 + shift].emplace_back(b.on_lattice(1), sg * parity_sign((r - s) / 2));
    });
    Series g(1, work);
    for (const auto& [h, terms] : by_h) {
        std::int64_t lowest = kExact;
        for (const auto& [b, sign] : terms) lowest = std::min(lowest, b);
        if (lowest >= work) continue;
        const Series piece = theta_over_factor(h, work - lowest);
        for (const auto& [b, sign] : terms)
            if (b < work) g.add_shifted(piece, sign, b);
    }
    const std::int64_t v = std::min<std::int64_t>(0, g.valuation());
    Series r = g * euler_inverse_power(3, QExp(1), work - v);
    return r.shifted(-lift, -shift, parity_sign(shift)).truncated(order);
}

Series v_theta(std::int64_t t, std::int64_t order, std::int64_t scale) {
    const std::int64_t k = 2 * t - 1;
    return theta(ThetaSpec{MonomialArg::x(k, QExp(0), -1), QExp(k)}, order, scale);
}

Series y_theta(std::int64_t t, std::int64_t order, std::int64_t scale) {
    return v_theta(t, order, scale) * theta(ThetaSpec{MonomialArg::x(), QExp(1)}, order, scale);
}

Series y_coefficient(std::int64_t t, std::int64_t s, std::int64_t order, std::int64_t scale) {
    const std::int64_t k = 2 * t - 1;
    const std::int64_t lift = checked::mul(binom2(s), scale);
    const Series th =
        theta(ThetaSpec{MonomialArg::q(QExp(checked::mul(k, t - s))), QExp(checked::mul(2 * t, k))},
              order_shift(order, -lift), scale);
    return th.shifted(lift, 0, parity_sign(s));
}

} // namespace qseries
