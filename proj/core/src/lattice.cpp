#include "qseries/lattice.hpp"

#include <algorithm>
#include <numeric>

namespace qseries {

namespace {

using i128 = __int128;

struct IntForm {
    i128 a, b, c, d, e, f;
    std::int64_t den;

    i128 at(i128 u, i128 v) const { return a * u * u + b * u * v + c * v * v + d * u + e * v + f; }
};

i128 scaled(const QExp& x, std::int64_t den) { return static_cast<i128>(x.num()) * (den / x.den()); }

IntForm to_int(const Quadratic2& q, const QExp& bound, i128& ibound) {
    std::int64_t den = 1;
    for (const QExp* x : {&q.a, &q.b, &q.c, &q.d, &q.e, &q.f, &bound}) den = checked::lcm(den, x->den());
    ibound = scaled(bound, den);
    return {scaled(q.a, den), scaled(q.b, den), scaled(q.c, den), scaled(q.d, den),
            scaled(q.e, den), scaled(q.f, den), den};
}

// min over integers v >= 0 of c v^2 + k v (c > 0)
i128 min_half_line(i128 c, i128 k) {
    if (k >= 0) return 0;
    // vertex at -k / (2c)
    const i128 v0 = (-k) / (2 * c);
    i128 best = c * v0 * v0 + k * v0;
    const i128 v1 = v0 + 1;
    best = std::min(best, c * v1 * v1 + k * v1);
    return best;
}

QExp value_of(i128 n, std::int64_t den) {
    if (n > std::numeric_limits<std::int64_t>::max() || n < std::numeric_limits<std::int64_t>::min())
        fail(ErrorKind::Overflow, "lattice value");
    return QExp(static_cast<std::int64_t>(n), den);
}

} // namespace

QExp Quadratic2::operator()(std::int64_t u, std::int64_t v) const {
    return (u * u) * a + (u * v) * b + (v * v) * c + u * d + v * e + f;
}

Quadratic2 Quadratic2::affine(std::int64_t su, std::int64_t ou, std::int64_t sv, std::int64_t ov) const {
    Quadratic2 r;
    r.a = (su * su) * a;
    r.b = (su * sv) * b;
    r.c = (sv * sv) * c;
    r.d = (2 * su * ou) * a + (su * ov) * b + su * d;
    r.e = (2 * sv * ov) * c + (ou * sv) * b + sv * e;
    r.f = (ou * ou) * a + (ou * ov) * b + (ov * ov) * c + ou * d + ov * e + f;
    return r;
}

Quadratic2 Quadratic2::plus_linear(QExp du, QExp dv, QExp df) const {
    Quadratic2 r = *this;
    r.d = r.d + du;
    r.e = r.e + dv;
    r.f = r.f + df;
    return r;
}

void enumerate_quadrant(const Quadratic2& form, QExp bound,
                        const std::function<void(std::int64_t, std::int64_t, const QExp&)>& visit) {
    if (!(form.a.sign() > 0 && form.c.sign() > 0 && form.b.sign() >= 0))
        fail(ErrorKind::NonTruncatable, "quadratic form is not increasing on the quadrant");
    i128 T = 0;
    const IntForm q = to_int(form, bound, T);
    // For u, v >= 0 and b >= 0: value >= a u^2 + d u + f + min_v (c v^2 + e v).
    const i128 kv = min_half_line(q.c, q.e);
    for (i128 u = 0;; ++u) {
        const i128 lower = q.a * u * u + q.d * u + q.f + kv;
        const bool rising = 2 * q.a * u + q.a + q.d >= 0; // lower(u+1) >= lower(u)
        if (lower >= T && rising) break;
        if (lower >= T) continue;
        for (i128 v = 0;; ++v) {
            const i128 val = q.at(u, v);
            const bool up = 2 * q.c * v + q.c + q.b * u + q.e >= 0;
            if (val >= T && up) break;
            if (val < T) visit(static_cast<std::int64_t>(u), static_cast<std::int64_t>(v), value_of(val, q.den));
        }
    }
}

void enumerate_line(QExp a, QExp d, QExp f, QExp bound, const std::function<void(std::int64_t, const QExp&)>& visit) {
    if (a.sign() <= 0) fail(ErrorKind::NonTruncatable, "line sum with non-positive leading coefficient");
    std::int64_t den = 1;
    for (const QExp* x : {&a, &d, &f, &bound}) den = checked::lcm(den, x->den());
    const i128 A = scaled(a, den), D = scaled(d, den), F = scaled(f, den), T = scaled(bound, den);
    auto at = [&](i128 n) { return A * n * n + D * n + F; };
    for (i128 n = 0;; ++n) {
        const i128 v = at(n);
        if (v >= T && at(n + 1) >= v) break;
        if (v < T) visit(static_cast<std::int64_t>(n), value_of(v, den));
    }
    for (i128 n = -1;; --n) {
        const i128 v = at(n);
        if (v >= T && at(n - 1) >= v) break;
        if (v < T) visit(static_cast<std::int64_t>(n), value_of(v, den));
    }
}

void enumerate_sg(const Quadratic2& positive_bound, const Quadratic2& negative_bound, QExp bound, Parity parity,
                  const std::function<void(std::int64_t, std::int64_t, int, const QExp&)>& visit) {
    if (parity == Parity::Any) {
        enumerate_quadrant(positive_bound, bound, [&](std::int64_t u, std::int64_t v, const QExp& w) { visit(u, v, 1, w); });
        enumerate_quadrant(negative_bound.affine(-1, -1, -1, -1), bound,
                           [&](std::int64_t u, std::int64_t v, const QExp& w) { visit(-u - 1, -v - 1, -1, w); });
        return;
    }
    for (std::int64_t rho : {0, 1}) {
        // r = 2u + rho, s = 2v + rho on the nonnegative quadrant
        enumerate_quadrant(positive_bound.affine(2, rho, 2, rho), bound,
                           [&](std::int64_t u, std::int64_t v, const QExp& w) { visit(2 * u + rho, 2 * v + rho, 1, w); });
        // r = -2u - 2 + rho, s = -2v - 2 + rho on the negative quadrant
        enumerate_quadrant(negative_bound.affine(-2, rho - 2, -2, rho - 2), bound,
                           [&](std::int64_t u, std::int64_t v, const QExp& w) {
                               visit(-2 * u - 2 + rho, -2 * v - 2 + rho, -1, w);
                           });
    }
}

} // namespace qseries
