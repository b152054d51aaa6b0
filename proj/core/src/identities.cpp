#include "qseries/identities.hpp"

#include <algorithm>
#include <array>
#include <random>

#include "qseries/gordon.hpp"
#include "qseries/hecke.hpp"
#include "qseries/lattice.hpp"
#include "qseries/qfunctions.hpp"

namespace qseries {

namespace {

using Checks = std::vector<Check>;

std::int64_t binom2(std::int64_t n) { return checked::mul(n, n - 1) / 2; }
int psign(std::int64_t n) { return (n % 2 == 0) ? 1 : -1; }
std::int64_t mod(std::int64_t a, std::int64_t n) { return ((a % n) + n) % n; }

MonomialArg xq(std::int64_t d, std::int64_t e = 0, int sign = 1) { return {sign, d, QExp(e)}; }
MonomialArg qq(std::int64_t e, int sign = 1) { return {sign, 0, QExp(e)}; }

std::string label(const Params& p) {
    std::string s;
    for (const auto& [k, v] : p) s += (s.empty() ? "" : " ") + k + "=" + std::to_string(v);
    return s;
}

Series zero_like(const Evaluator& ev) { return Series::zero(ev.scale(), ev.order()); }

// sign * q^shift * build(order - shift), keeping the requested order.
template <typename F>
Series lifted(std::int64_t order, std::int64_t shift, int sign, F&& build) {
    Series s = build(order_shift(order, -shift));
    return s.shifted(shift, 0, sign);
}

Series cube(const Series& s) { return s * s * s; }

Series theta_at(const Evaluator& ev, std::int64_t t, std::int64_t p, std::int64_t m) {
    return theta_pm({t, p, m}, ev.order(), ev.scale());
}

Series f123(const Evaluator& ev) { return ev.f_abc(1, 2, 3, xq(-1, 2), qq(3)); }

// ---------------------------------------------------------------- classical

Checks jtp(const Params& p, const Evaluator& ev) {
    std::mt19937_64 rng(static_cast<std::uint64_t>(param(p, "seed")));
    std::uniform_int_distribution<int> coin(0, 1);
    std::uniform_int_distribution<std::int64_t> deg(-2, 2);
    std::uniform_int_distribution<std::int64_t> expo(-3, 3);
    std::uniform_int_distribution<std::int64_t> base(1, 3);
    Checks out;
    for (std::int64_t i = 0; i < param(p, "count"); ++i) {
        MonomialArg a;
        a.sign = coin(rng) ? 1 : -1;
        a.xdeg = deg(rng);
        a.qexp = QExp(expo(rng));
        const QExp b(base(rng));
        const ThetaSpec spec{a, b};
        out.push_back({"Theta(" + a.str() + "; q^" + b.str() + ")",
                       theta(spec, ev.order(), ev.scale(), ThetaForm::Product),
                       theta(spec, ev.order(), ev.scale(), ThetaForm::Sum)});
    }
    return out;
}

// ---------------------------------------------------------------- theta_pm

Checks theta_rowsum(const Params& p, const Evaluator& ev) {
    const std::int64_t t = param(p, "t");
    const std::int64_t lo = param(p, "lo"), hi = param(p, "hi"), span = param(p, "fixed");
    Checks out;
    for (std::int64_t pp = lo; pp <= hi; ++pp) {
        for (std::int64_t mm = lo; mm <= hi; ++mm) {
            const Quadratic2 form = theta_pm_form({t, pp, mm});
            for (std::int64_t fixed = -span; fixed <= span; ++fixed) {
                for (const bool row : {true, false}) {
                    const std::int64_t rho = mod(fixed, 2);
                    auto at = [&](std::int64_t n) {
                        const std::int64_t free = 2 * n + rho;
                        return row ? form(free, fixed) : form(fixed, free);
                    };
                    const QExp f0 = at(0), f1 = at(1), fm = at(-1);
                    const QExp a = (f1 + fm - 2 * f0) * QExp(1, 2);
                    const QExp d = (f1 - fm) * QExp(1, 2);
                    Series sum = zero_like(ev);
                    enumerate_line(a, d, f0, ev.bound(), [&](std::int64_t n, const QExp& value) {
                        const std::int64_t free = 2 * n + rho;
                        sum.add_term(value.on_lattice(ev.scale()), 0, Rational(psign((free - fixed) / 2)));
                    });
                    out.push_back({std::string(row ? "row" : "column") + " p=" + std::to_string(pp) +
                                       " m=" + std::to_string(mm) + " fixed=" + std::to_string(fixed),
                                   sum, zero_like(ev)});
                }
            }
        }
    }
    return out;
}

Checks theta_shift(char which, const Params& p, const Evaluator& ev) {
    const std::int64_t t = param(p, "t");
    const std::int64_t lo = param(p, "lo"), hi = param(p, "hi");
    const std::int64_t star_scale = 8 * t * (2 * t - 1);
    const std::int64_t order = ev.order();
    const std::int64_t star_order = ev.order(star_scale);
    auto th = [&](std::int64_t a, std::int64_t b, std::int64_t shift, int sign) {
        return lifted(order, shift, sign, [&](std::int64_t o) { return theta_pm({t, a, b}, o, 1); });
    };
    auto star = [&](std::int64_t a, std::int64_t b, int sign) {
        Series s = theta_pm_star({t, a, b}, star_order, star_scale);
        return sign < 0 ? -s : s;
    };
    Checks out;
    for (std::int64_t pp = lo; pp <= hi; ++pp) {
        for (std::int64_t mm = lo; mm <= hi; ++mm) {
            const std::string tag = "p=" + std::to_string(pp) + " m=" + std::to_string(mm);
            switch (which) {
            case 'A':
                out.push_back({"theta " + tag, th(pp, mm, 0, 1), th(pp + 2 * t, mm + 2 * t, pp + t, 1)});
                out.push_back({"theta* " + tag, star(pp + 2 * t, mm + 2 * t, 1), star(pp, mm, 1)});
                break;
            case 'B':
                out.push_back({"theta " + tag, th(pp, mm, 0, 1), th(pp, mm + 2 * t - 1, pp - mm - t, -1)});
                out.push_back({"theta* " + tag, star(pp, mm, 1), star(pp, mm + 2 * t - 1, -1)});
                break;
            case 'C':
                out.push_back({"theta " + tag, th(pp, mm, 0, 1), th(-pp, -mm - 1, 0, -1)});
                out.push_back({"theta* " + tag, star(pp, mm, 1), star(-pp, -mm - 1, -1)});
                break;
            default:
                out.push_back({"theta " + tag, th(pp, mm, 0, 1), th(pp, 2 * pp - mm - 1, 0, 1)});
                out.push_back({"theta* " + tag, star(pp, mm, 1), star(pp, 2 * pp - mm - 1, 1)});
                break;
            }
        }
    }
    return out;
}

Checks theta11(const Params&, const Evaluator& ev) {
    const Series e = ev.euler();
    return {{"theta_{1,1} = (q)^2", theta_at(ev, 2, 1, 1), e * e}};
}

Checks theta11_star(const Params&, const Evaluator& ev) {
    const Series e = ev.euler();
    const Series eta2 = (e * e).shifted(QExp(1, 12).on_lattice(ev.scale()));
    return {{"theta*_{1,1} = eta^2", theta_pm_star({2, 1, 1}, ev.order(), ev.scale()), eta2}};
}

Checks theta_to_fabc(const Params& p, const Evaluator& ev) {
    const std::int64_t t = param(p, "t");
    const std::int64_t b = 4 * t - 1;
    const std::int64_t order = ev.order();
    Checks out;
    for (std::int64_t pp = param(p, "p_lo"); pp <= param(p, "p_hi"); ++pp) {
        for (std::int64_t mm = param(p, "m_lo"); mm <= param(p, "m_hi"); ++mm) {
            Series rhs = hecke_f_abc({1, b, 1, qq(2 * pp - mm), qq(1 + mm)}, order);
            rhs += lifted(order, t + pp, 1, [&](std::int64_t o) {
                return hecke_f_abc({1, b, 1, qq(2 * pp + 2 * t - mm), qq(2 * t + mm + 1)}, o);
            });
            out.push_back({"p=" + std::to_string(pp) + " m=" + std::to_string(mm), theta_at(ev, t, pp, mm), rhs});
        }
    }
    return out;
}

std::int64_t interesting_scale(const Params& p) {
    const std::int64_t t = param(p, "t"), m = param(p, "m");
    std::int64_t d = checked::lcm(8, 4 * t * (2 * t - 1));
    for (std::int64_t k = 0; k < 2 * t; ++k) d = checked::lcm(d, theta_pm_shift({t, t + k, m + k}).den());
    return d;
}

Checks interesting(const Params& p, const Evaluator& ev) {
    const std::int64_t t = param(p, "t"), m = param(p, "m"), l = param(p, "l");
    const std::int64_t period = 2 * t * (2 * t - 1);
    const std::int64_t scale = ev.scale();
    Series lhs = zero_like(ev);
    for (std::int64_t k = 0; k < 2 * t; ++k) {
        const std::int64_t c = mod(2 * t * l + (2 * t - 1) * k, period);
        Series lacunary = zero_like(ev);
        // r = period*n + c, r^2 / (2 period) = period/2 n^2 + c n + c^2 / (2 period)
        enumerate_line(QExp(period, 2), QExp(c), QExp(c * c, 2 * period), ev.bound(),
                       [&](std::int64_t, const QExp& e) { lacunary.add_term(e.on_lattice(scale), 0, Rational(1)); });
        const Series star = theta_pm_star({t, t + k, m + k}, ev.order(), scale);
        lhs += psign(k) > 0 ? star * lacunary : -(star * lacunary);
    }
    const std::int64_t odd = 2 * t - 1;
    int sign = 0;
    if (mod(l, odd) == mod(m, odd))
        sign = psign(m);
    else if (mod(l, odd) == mod(-m, odd))
        sign = -psign(m);
    Series rhs = zero_like(ev);
    if (sign != 0) rhs = cube(ev.euler()).shifted(QExp(1, 8).on_lattice(scale), 0, sign);
    return {{"l=" + std::to_string(l), lhs, rhs}};
}

// ---------------------------------------------------------------- f_{t,m}

Checks t1_closed(const Params& p, const Evaluator& ev) {
    const std::int64_t m = param(p, "m");
    Series rhs = zero_like(ev);
    for (std::int64_t r = 1 - m; r <= m - 1; ++r) {
        const std::int64_t e = binom2(m) - binom2(r) - r;
        if (e < ev.order()) rhs.add_term(e, r, Rational(psign(m + 1) * psign(r)));
    }
    return {{"m=" + std::to_string(m), f_tm(1, m, ev.order()), rhs}};
}

Series theta_column(std::int64_t t, std::int64_t m, std::int64_t order) {
    // sum_k x^(k-1) q^k theta_{t+k, m+k}
    Series acc(1, order);
    for (std::int64_t k = 0; k < 2 * t; ++k)
        acc += lifted(order, k, 1, [&](std::int64_t o) { return theta_pm({t, t + k, m + k}, o); }).shifted(0, k - 1);
    return acc;
}

Checks func_eq(const Params& p, const Evaluator& ev) {
    const std::int64_t t = param(p, "t"), m = param(p, "m");
    const std::int64_t n = ev.order();
    const Series f = f_tm(t, m, n);
    const Series lhs = f_tm(t, m, n, 1) + f.shifted(0, 2 * t - 1);
    Series rhs = zero_like(ev);
    rhs.add_term(0, 2 * t - m - 1, Rational(1));
    rhs.add_term(0, m, Rational(1));
    rhs -= ev.theta(MonomialArg::x()) * ev.euler_inverse(3) * theta_column(t, m, n);
    return {{label(p), lhs, rhs}};
}

Checks ht_u_triple(const Params& p, const Evaluator& ev) {
    const std::int64_t t = param(p, "t"), m = param(p, "m");
    const std::int64_t n = ev.order();
    const Series lhs = u_series_negated(t, m, n);
    const Quadratic2 form = theta_pm_form({t + 1, t + 1, m});
    const Series head = ev.pochhammer(xq(1, 1), QExp(1), std::nullopt) *
                        ev.pochhammer(xq(-1, 1), QExp(1), std::nullopt) * ev.euler_inverse(2);
    const Series full = head.times_one_minus(MonomialArg::x());
    Series rest = zero_like(ev);
    enumerate_sg(form, form.plus_linear(QExp(-1, 2), QExp(-1, 2)), ev.bound(), Parity::Same,
                 [&](std::int64_t r, std::int64_t s, int sg, const QExp&) {
                     if (r == 0 && s == 0) return;
                     const std::int64_t b = form(r, s).on_lattice(1);
                     const std::int64_t h = (r + s) / 2;
                     const Rational c(psign((r - s) / 2));
                     if (sg > 0) {
                         for (std::int64_t u = 0; b + h * u < n; ++u) rest.add_term(b + h * u, u, c);
                     } else {
                         for (std::int64_t u = -1; b + h * u < n; --u) rest.add_term(b + h * u, u, c);
                     }
                 });
    // the r = s = 0 row sums to 1/(1 - x), which cancels against (x)_inf
    return {{label(p), lhs, head + full * rest}};
}

Checks ht_u_appell(const Params& p, const Evaluator& ev) {
    const std::int64_t t = param(p, "t"), m = param(p, "m");
    return {{label(p), u_series_negated(t, m, ev.order()), f_tm(t + 1, m, ev.order())}};
}

Checks main_identity(const Params& p, const Evaluator& ev) {
    const std::int64_t t = param(p, "t"), m = param(p, "m");
    const std::int64_t scale = ev.scale();
    const Series lhs = f_tm(t, m, ev.order(1)).rescaled(scale);
    Series acc = zero_like(ev);
    for (std::int64_t k = 0; k < 2 * t; ++k) {
        const Series th = theta_pm({t, t + k, m + k}, ev.order(), scale);
        // l = 2t j + k, so sg(r, l) = sg(r, j)
        const Quadratic2 form{QExp(1, 2),          QExp(2 * t),          QExp(t * (2 * t - 1)),
                              QExp(2 * k + 1, 2),  QExp((2 * t - 1) * k), QExp((2 * t - 1) * k * k, 4 * t)};
        Series inner = zero_like(ev);
        enumerate_sg(form, form, ev.bound(), Parity::Any, [&](std::int64_t r, std::int64_t, int sg, const QExp& e) {
            inner.add_term(e.on_lattice(scale), -r, Rational(sg * psign(r)));
        });
        const QExp lift = QExp(-t, 4) + QExp((k + t) * (k + t), 4 * t);
        acc += (th * inner).shifted(lift.on_lattice(scale), 0, psign(k));
    }
    return {{label(p), lhs, acc * ev.euler_inverse(3)}};
}

Checks main_alt(const Params& p, const Evaluator& ev) {
    const std::int64_t t = param(p, "t"), m = param(p, "m");
    const Series lhs = f_tm(t, m, ev.order());
    Series acc = zero_like(ev);
    for (std::int64_t k = 0; k < 2 * t; ++k) {
        const Series th = theta_at(ev, t, t + k, m + k);
        const Quadratic2 form{QExp(1, 2),
                              QExp(2 * t),
                              QExp(t * (2 * t - 1)),
                              QExp(2 * k + 1, 2),
                              QExp((k + t) * (2 * t - 1) - t * (2 * t - 1)),
                              QExp(0)};
        Series inner = zero_like(ev);
        enumerate_sg(form, form, ev.bound(), Parity::Any, [&](std::int64_t r, std::int64_t, int sg, const QExp& e) {
            inner.add_term(e.on_lattice(1), -r, Rational(sg * psign(r)));
        });
        acc += (th * inner).shifted(binom2(k) + k, 0, psign(k));
    }
    return {{label(p), lhs, acc * ev.euler_inverse(3)}};
}

// sum_k (-1)^k q^(C(k,2)+k) (f(q^a1, q^b1) + q^(lift) f(q^a2, q^b2)) f_{1,2t,2t(2t-1)}(x^-1 q^(k+1), -q^((k+t)(2t-1)))
struct ProductTable {
    std::int64_t t;
    std::function<std::array<std::int64_t, 4>(std::int64_t)> args;
};

Series hecke_products(const ProductTable& table, const Evaluator& ev) {
    const std::int64_t t = table.t;
    const std::int64_t order = ev.order();
    Series acc = zero_like(ev);
    for (std::int64_t k = 0; k < 2 * t; ++k) {
        const auto [a1, b1, a2, b2] = table.args(k);
        Series left = hecke_f_abc({1, 4 * t - 1, 1, qq(a1), qq(b1)}, order);
        left += lifted(order, 2 * t + k, 1,
                       [&](std::int64_t o) { return hecke_f_abc({1, 4 * t - 1, 1, qq(a2), qq(b2)}, o); });
        const Series right =
            hecke_f_abc({1, 2 * t, 2 * t * (2 * t - 1), xq(-1, k + 1), qq((k + t) * (2 * t - 1), -1)}, order);
        acc += (left * right).shifted(binom2(k) + k, 0, psign(k));
    }
    return acc;
}

Checks cor_main(const Params& p, const Evaluator& ev) {
    const std::int64_t t = param(p, "t"), m = param(p, "m");
    const ProductTable table{t, [t, m](std::int64_t k) {
                                 return std::array<std::int64_t, 4>{2 * t + k - m, 1 + m + k, 4 * t + k - m,
                                                                    2 * t + m + k + 1};
                             }};
    return {{label(p), cube(ev.euler()) * f_tm(t, m, ev.order()), hecke_products(table, ev)}};
}

// U from the explicit Gaussian-binomial displays, evaluated at -x.
Series u_display_negated(std::int64_t t, std::int64_t m, std::int64_t order) {
    auto h = [&](std::int64_t n) {
        Series acc(1, kExact);
        if (t == 2) {
            for (std::int64_t k = 0; k <= n; ++k)
                acc.add_shifted(gaussian_binomial(n + k + (m - 1), n - k), 1, k * k + k);
            return acc;
        }
        static constexpr std::array<std::array<std::int64_t, 2>, 3> offsets{{{0, 0}, {1, 1}, {1, 2}}};
        const auto [c1, c2] = offsets.at(m - 1);
        for (std::int64_t k = 0; k <= n; ++k)
            for (std::int64_t j = 0; j <= k; ++j)
                acc.add_shifted(gaussian_binomial(k + j + c1, k - j) * gaussian_binomial(n + k + 2 * j + c2, n - k), 1,
                                k * k + k + j * j + j);
        return acc;
    };
    Series acc(1, order);
    Series poch = Series::one(1, order);
    for (std::int64_t n = 0; n < order; ++n) {
        if (n > 0) poch = poch.times_one_minus(xq(1, n - 1)).times_one_minus(xq(-1, n)).truncated(order - n);
        acc.add_shifted((poch * h(n).truncated(order - n)).truncated(order - n), 1, n);
    }
    return acc;
}

Checks u_display(std::int64_t t, std::int64_t m, std::array<std::int64_t, 4> base, const Evaluator& ev) {
    const ProductTable table{t + 1, [base](std::int64_t k) {
                                 return std::array<std::int64_t, 4>{base[0] + k, base[1] + k, base[2] + k,
                                                                    base[3] + k};
                             }};
    return {{"U_" + std::to_string(t) + "^(" + std::to_string(m) + ")(-x)",
             cube(ev.euler()) * u_display_negated(t, m, ev.order()), hecke_products(table, ev)}};
}

// ---------------------------------------------------------------- section 6 special cases

Checks u_eq_f123(const Params&, const Evaluator& ev) {
    return {{"(q) U(-x) = f_{1,2,3}", ev.euler() * u_series_negated(1, 1, ev.order()), f123(ev)}};
}

Checks m1_417(const Params&, const Evaluator& ev) {
    const std::int64_t order = ev.order();
    Series sum = zero_like(ev);
    Series poch = Series::one(1, order);
    for (std::int64_t n = 0; 2 * n + 1 < order; ++n) {
        if (n > 0) {
            poch = poch.times_one_minus(xq(1, 2 * n - 1, -1)).times_one_minus(xq(-1, 2 * n - 1, -1));
            poch = poch.truncated(order - 2 * n - 1);
        }
        sum.add_shifted(poch, 1, 2 * n + 1);
    }
    const Series lhs = ev.euler(QExp(2)) * sum;
    const Series rhs = lifted(order, 1, 1, [&](std::int64_t o) {
        return hecke_f_abc({3, 2, 1, qq(6), xq(1, 3, -1), QExp(2)}, o);
    });
    return {{"a = x", lhs, rhs}};
}

// ---------------------------------------------------------------- V and Y

Checks v_elliptic(const Params& p, const Evaluator& ev) {
    const std::int64_t t = param(p, "t"), k = 2 * t - 1;
    const Series shifted = ev.theta(xq(k, k, -1), QExp(k));
    return {{label(p), shifted, v_theta(t, ev.order()).shifted(0, -k)}};
}

Checks y_elliptic(const Params& p, const Evaluator& ev) {
    const std::int64_t t = param(p, "t"), k = 2 * t - 1;
    const Series lhs = ev.theta(xq(k, k, -1), QExp(k)) * ev.theta(xq(1, 1));
    return {{label(p), lhs, y_theta(t, ev.order()).shifted(0, -2 * t, -1)}};
}

Checks y_expansion(const Params& p, const Evaluator& ev) {
    const std::int64_t t = param(p, "t");
    Series rhs = zero_like(ev);
    for (std::int64_t s = 0; s < 2 * t; ++s)
        rhs += (y_coefficient(t, s, ev.order()) * ev.theta(xq(2 * t, s), QExp(2 * t))).shifted(0, s);
    return {{label(p), y_theta(t, ev.order()), rhs}};
}

// ---------------------------------------------------------------- Appell forms

Checks newcalc(const Params& p, const Evaluator& ev) {
    const std::int64_t t = param(p, "t"), m = param(p, "m");
    const std::int64_t k1 = 2 * t - 1;
    const std::int64_t order = ev.order();
    const Series v = v_theta(t, order);
    const Series lhs = v * f_tm(t, m, order);
    const MonomialArg z = xq(k1, 0, -1);
    Series rhs = ev.appell_cleared(xq(-k1, m), z, QExp(k1)).shifted(0, -2 * t + m + 1);
    rhs += ev.appell_cleared(xq(-k1, k1 - m), z, QExp(k1)).shifted(0, -m);
    Series block = zero_like(ev);
    for (std::int64_t k = 0; k < 2 * t; ++k) {
        Series inner = zero_like(ev);
        for (std::int64_t s = 0; s < 2 * t; ++s) {
            const Series ac = ev.appell_cleared(xq(-2 * t, k, -1), xq(2 * t, s), QExp(2 * t));
            inner += (y_coefficient(t, s, order) * ac).shifted(0, s);
        }
        const Series th = lifted(order, k, 1, [&](std::int64_t o) { return theta_pm({t, t + k, m + k}, o); });
        block += (th * inner).shifted(0, k);
    }
    rhs -= (block * ev.euler_inverse(3)).shifted(0, -2 * t);
    return {{label(p), lhs, rhs}};
}

// Theta(y) Theta(z) m(x, z; q) with x z = y q^c: every denominator
// 1 - y q^(r-1+c) is a factor of Theta(y), so the sum stays pole-free.
Series appell_pole_cleared(const Evaluator& ev, const MonomialArg& x, const MonomialArg& z, const MonomialArg& y) {
    const MonomialArg xz = x * z;
    if (xz.sign != y.sign || xz.xdeg != y.xdeg || !(xz.qexp - y.qexp).is_integer())
        fail(ErrorKind::InvalidArgument, "x z must be y times an integral power of q");
    const std::int64_t c = (xz.qexp - y.qexp).num();
    const std::int64_t scale = ev.scale();
    const QExp bound = ev.bound();
    auto lower = [&](std::int64_t r) {
        const QExp head = QExp(binom2(r)) + r * z.qexp;
        const std::int64_t h = r - 1 + c;
        return h < 0 ? head + QExp(-h) - y.qexp : head;
    };
    Series out = zero_like(ev);
    auto emit = [&](std::int64_t r) {
        const std::int64_t e = (QExp(binom2(r)) + r * z.qexp).on_lattice(scale);
        const Series piece = theta_over_factor(r - 1 + c, order_shift(ev.order(), -e), scale, y);
        const int sign = psign(r) * (z.sign < 0 ? psign(r) : 1);
        out.add_shifted(piece, sign, e, checked::mul(z.xdeg, r));
    };
    for (std::int64_t r = 0;; ++r) {
        if (lower(r) >= bound && lower(r + 1) >= lower(r)) break;
        if (lower(r) < bound) emit(r);
    }
    for (std::int64_t r = -1;; --r) {
        if (lower(r) >= bound && lower(r - 1) >= lower(r)) break;
        if (lower(r) < bound) emit(r);
    }
    return out;
}

// x^-1 m(x^-3 q^2, -x^3; q^3) + x^-2 m(x^-3 q, -x^3; q^3), optionally times Theta(-x^3; q^3)
Series appell_pair(const Evaluator& ev, bool cleared) {
    const MonomialArg z = xq(3, 0, -1);
    if (cleared)
        return ev.appell_cleared(xq(-3, 2), z, QExp(3)) * ev.monomial(1, -1, QExp(0)) +
               ev.appell_cleared(xq(-3, 1), z, QExp(3)) * ev.monomial(1, -2, QExp(0));
    return ev.appell(xq(-3, 2), z, QExp(3)) * ev.monomial(1, -1, QExp(0)) +
           ev.appell(xq(-3, 1), z, QExp(3)) * ev.monomial(1, -2, QExp(0));
}

// universal mock theta g(x; q), or Theta(x; q) g(x; q) when cleared
Series mock_g(const Evaluator& ev, bool cleared) {
    const std::int64_t order = ev.order();
    Series sum = zero_like(ev);
    if (cleared) {
        sum -= ev.theta(MonomialArg::x());
        for (std::int64_t n = 0; n * n < order; ++n) {
            const Series piece = ev.pochhammer(xq(1, n + 1), QExp(1), std::nullopt) *
                                 ev.pochhammer(xq(-1, n + 1), QExp(1), std::nullopt) * ev.euler();
            sum.add_shifted(piece, 1, checked::mul(n * n, ev.scale()));
        }
    } else {
        sum -= ev.constant(Rational(1));
        for (std::int64_t n = 0; n * n < order; ++n) {
            const Series den = ev.pochhammer(xq(1), QExp(1), n + 1) * ev.pochhammer(xq(-1, 1), QExp(1), n);
            sum += ev.divide(ev.monomial(1, 0, QExp(n * n)), den);
        }
    }
    return sum * ev.monomial(1, -1, QExp(0));
}

Checks appell_f123(const Params&, const Evaluator& ev) {
    const bool cleared = ev.cleared();
    const Series euler = ev.euler();
    auto block = [&](std::int64_t zq) {
        const MonomialArg z = xq(4, zq);
        if (cleared)
            return ev.appell_cleared(xq(-4, 1, -1), z, QExp(4)) * ev.monomial(1, -2, QExp(0)) -
                   ev.appell_cleared(xq(-4, 3, -1), z, QExp(4));
        const Series th = ev.theta(z, QExp(4));
        return th * (ev.appell(xq(-4, 1, -1), z, QExp(4)) * ev.monomial(1, -2, QExp(0)) -
                     ev.appell(xq(-4, 3, -1), z, QExp(4)));
    };
    Series theta_part = ev.theta(qq(6), QExp(12)) * block(0) * ev.monomial(1, -1, QExp(0));
    theta_part -= ev.theta(qq(3), QExp(12)) * block(1);
    theta_part -= ev.theta(qq(-3), QExp(12)) * block(3) * ev.monomial(1, 2, QExp(3));
    const Series v = ev.theta(xq(3, 0, -1), QExp(3));
    if (cleared) return {{"times Theta(-x^3; q^3)", v * f123(ev), euler * appell_pair(ev, true) + theta_part}};
    return {{"natural form", f123(ev), euler * appell_pair(ev, false) + ev.divide(theta_part, v)}};
}

Checks modtheta_f123(const Params&, const Evaluator& ev) {
    const Series euler = ev.euler();
    const Series e2 = ev.euler(QExp(2));
    const Series theta_x = ev.theta(MonomialArg::x());
    const Series v = ev.theta(xq(3, 0, -1), QExp(3));
    const Series wing = ev.theta(xq(-2, 0, -1));
    const Series num = cube(e2) * ev.theta(qq(1), QExp(2)) * ev.theta(xq(1, 0, -1)) * ev.theta(xq(-3), QExp(3));
    const Series units = ev.theta(qq(0, -1), QExp(2)) * ev.theta(qq(1, -1), QExp(2));
    const Series x_inv = ev.monomial(1, -1, QExp(0));
    if (ev.cleared()) {
        const Series pole = ev.divide(appell_pole_cleared(ev, xq(-2, 1), qq(0, -1), xq(-2, 0, -1)),
                                      ev.theta(qq(0, -1)));
        Series rhs = wing * euler * appell_pair(ev, true);
        rhs -= x_inv * theta_x * v * pole;
        rhs -= ev.divide(num, units);
        return {{"times Theta(-x^3; q^3) Theta(-x^-2; q)", v * wing * f123(ev), rhs}};
    }
    Series rhs = euler * appell_pair(ev, false);
    rhs -= x_inv * theta_x * ev.appell(xq(-2, 1), qq(0, -1));
    rhs -= ev.divide(num, units * v * wing);
    return {{"natural form", f123(ev), rhs}};
}

Checks hm_24e(const Params&, const Evaluator& ev) {
    const Series lhs = ev.theta(xq(1, 0, -1)) * ev.theta(xq(-3), QExp(3));
    Series rhs = zero_like(ev);
    for (std::int64_t k = 0; k <= 3; ++k) {
        const Series term = ev.theta(qq(3 + 3 * k), QExp(12)) * ev.theta(xq(-4, 1 - k), QExp(4));
        rhs += term * ev.monomial(1, k, QExp(binom2(k)));
    }
    return {{"n=3", lhs, rhs}};
}

Checks sec8_theta(const Params&, const Evaluator& ev) {
    const Series euler = ev.euler();
    const Series e2 = ev.euler(QExp(2));
    const Series theta_x = ev.theta(MonomialArg::x());
    const Series wing = ev.theta(xq(-2, 0, -1));
    const Series quartic = ev.theta(xq(-4), QExp(2));
    const Series tail_num = ev.monomial(1, -5, QExp(0), Rational(1, 2)) * euler * cube(ev.theta(xq(1, 0, -1))) *
                            ev.theta(xq(-2, 1), QExp(2));
    const Series x_inv = ev.monomial(1, -1, QExp(0));
    if (ev.cleared()) {
        const Series pole = ev.divide(appell_pole_cleared(ev, xq(-2, 1), qq(0, -1), xq(-2, 0, -1)),
                                      ev.theta(qq(0, -1)));
        Series rhs = -(euler * wing * quartic * mock_g(ev, true));
        rhs -= x_inv * theta_x * theta_x * quartic * pole;
        rhs -= ev.divide(tail_num * theta_x * wing, e2 * e2);
        return {{"times Theta(x; q) Theta(-x^-2; q) Theta(x^-4; q^2)", theta_x * wing * quartic * f123(ev), rhs}};
    }
    Series rhs = -(euler * mock_g(ev, false));
    rhs -= x_inv * theta_x * ev.appell(xq(-2, 1), qq(0, -1));
    rhs -= ev.divide(tail_num, e2 * e2 * quartic);
    return {{"natural form", f123(ev), rhs}};
}

Checks sec8_notheta(const Params&, const Evaluator& ev) {
    const Series euler = ev.euler();
    const Series theta_x = ev.theta(MonomialArg::x());
    const Series x_inv = ev.monomial(1, -1, QExp(0));
    if (ev.cleared()) {
        const Series theta_inv = ev.theta(xq(-1));
        Series rhs = -(euler * theta_inv * mock_g(ev, true));
        rhs -= x_inv * theta_x * appell_pole_cleared(ev, xq(-2, 1), xq(1), xq(-1));
        return {{"times Theta(x; q) Theta(x^-1; q)", theta_x * theta_inv * f123(ev), rhs}};
    }
    Series rhs = -(euler * mock_g(ev, false));
    rhs -= x_inv * theta_x * ev.appell(xq(-2, 1), xq(1));
    return {{"natural form", f123(ev), rhs}};
}

Checks g_appell(const Params&, const Evaluator& ev) {
    const Series euler = ev.euler();
    const Series theta_x = ev.theta(MonomialArg::x());
    const Series v = ev.theta(xq(3, 0, -1), QExp(3));
    const Series num = euler * euler * ev.theta(xq(1, 0, -1)) * ev.theta(qq(0, -1), QExp(3));
    const Series half = ev.theta(qq(0, -1));
    if (ev.cleared()) {
        const Series rhs = -(theta_x * appell_pair(ev, true)) + ev.divide(num, half);
        return {{"times Theta(x; q) Theta(-x^3; q^3)", v * mock_g(ev, true), rhs}};
    }
    const Series rhs = -appell_pair(ev, false) + ev.divide(num, theta_x * half * v);
    return {{"natural form", mock_g(ev, false), rhs}};
}

// ---------------------------------------------------------------- Gordon

Checks andrews(const Params& p, const Evaluator& ev) {
    auto [lhs, rhs] = andrews_sides(param(p, "k"), param(p, "i"), ev.order());
    return {{label(p), lhs, rhs}};
}

Checks h_g_dual(const Params& p, const Evaluator&) {
    Checks out;
    for (std::int64_t t = 1; t <= param(p, "t_max"); ++t) {
        for (std::int64_t m = 1; m <= t; ++m) {
            for (int b = 0; b <= 1; ++b) {
                for (std::int64_t n = 0; n <= param(p, "n_max"); ++n) {
                    if (2 * n - b + 1 < 1) continue;
                    const Series lhs = reverse_q(gordon_h({t, m, b, n}));
                    const std::int64_t lift = (t - 1) * b * n - 2 * (t - 1) * binom2(n + 1);
                    const Series rhs = gordon_g(t - 1, m, t, 2 * n - b + 1).shifted(lift);
                    out.push_back({"t=" + std::to_string(t) + " m=" + std::to_string(m) + " b=" + std::to_string(b) +
                                       " n=" + std::to_string(n),
                                   lhs, rhs});
                }
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------- catalog

void require_main_domain(const Params& p) {
    const std::int64_t t = param(p, "t"), m = param(p, "m");
    if (t < 2 || m < 1 || m >= t) fail(ErrorKind::InvalidArgument, "needs t >= 2 and 1 <= m < t");
}

void require_u_domain(const Params& p) {
    const std::int64_t t = param(p, "t"), m = param(p, "m");
    if (t < 1 || m < 1 || m > t) fail(ErrorKind::InvalidArgument, "needs t >= 1 and 1 <= m <= t");
}

void require_t(const Params& p) {
    if (param(p, "t") < 1) fail(ErrorKind::InvalidArgument, "needs t >= 1");
}

void no_check(const Params&) {}

std::int64_t unit_scale(const Params&) { return 1; }

std::vector<IdentityDef> make_catalog() {
    std::vector<IdentityDef> c;
    auto add = [&](IdentityDef d) {
        if (!d.scale) d.scale = unit_scale;
        if (!d.validate) d.validate = no_check;
        c.push_back(std::move(d));
    };
    add({"JTP", "Jacobi triple product: product form equals sum form for random arguments", "", 40,
         {{"seed", 1}, {"count", 20}}, true, false, nullptr, nullptr, jtp});
    add({"THETA-ROWSUM", "single-index sums of q^B(r,s) vanish", "", 30,
         {{"t", 2}, {"lo", -3}, {"hi", 6}, {"fixed", 5}}, true, false, nullptr, require_t, theta_rowsum});
    for (const char which : {'A', 'B', 'C', 'D'}) {
        add({std::string("THETA-SHIFT-") + which, "shift relation of theta_{p,m} and theta*_{p,m}", "", 30,
             {{"t", 2}, {"lo", -3}, {"hi", 6}}, true, false, nullptr, require_t,
             [which](const Params& p, const Evaluator& ev) { return theta_shift(which, p, ev); }});
    }
    add({"FUNC-EQ", "functional equation of f_{t,m} under x -> qx", "", 25, {{"t", 2}, {"m", 1}}, true, false,
         nullptr, require_main_domain, func_eq});
    add({"T1-CLOSED", "f_{1,m} equals its closed form", "", 30, {{"m", 2}}, true, false, nullptr,
         [](const Params& p) {
             if (param(p, "m") < 1) fail(ErrorKind::InvalidArgument, "needs m >= 1");
         },
         t1_closed});
    add({"HT-U-TRIPLE", "U_t^(m)(-x) equals the triple Hecke-Appell sum", "", 20, {{"t", 2}, {"m", 1}}, true, false,
         nullptr, require_u_domain, ht_u_triple});
    add({"HT-U-APPELL", "U_t^(m)(-x) equals f_{t+1,m}(x)", "", 20, {{"t", 2}, {"m", 1}}, true, false, nullptr,
         require_u_domain, ht_u_appell});
    add({"MAIN", "f_{t,m} as theta_{p,m} times partial theta double sums", "", 20, {{"t", 2}, {"m", 1}}, true, false,
         [](const Params& p) { return 4 * param(p, "t"); }, require_main_domain, main_identity});
    add({"MAIN-ALT", "f_{t,m} after interchanging sums", "", 20, {{"t", 2}, {"m", 1}}, true, false, nullptr,
         require_main_domain, main_alt});
    add({"COR-MAIN", "(q)^3 f_{t,m} as sums of products of Hecke-type double sums", "", 15, {{"t", 2}, {"m", 1}},
         true, false, nullptr, require_main_domain, cor_main});
    add({"U2M1", "(q)^3 U_2^(1)(-x) display", "", 15, {}, true, false, nullptr, nullptr,
         [](const Params&, const Evaluator& ev) { return u_display(2, 1, {5, 2, 11, 8}, ev); }});
    add({"U2M2", "(q)^3 U_2^(2)(-x) display", "", 15, {}, true, false, nullptr, nullptr,
         [](const Params&, const Evaluator& ev) { return u_display(2, 2, {4, 3, 10, 9}, ev); }});
    add({"U3M1", "(q)^3 U_3^(1)(-x) display", "", 12, {}, true, false, nullptr, nullptr,
         [](const Params&, const Evaluator& ev) { return u_display(3, 1, {7, 2, 15, 10}, ev); }});
    add({"U3M2", "(q)^3 U_3^(2)(-x) display", "", 12, {}, true, false, nullptr, nullptr,
         [](const Params&, const Evaluator& ev) { return u_display(3, 2, {6, 3, 14, 11}, ev); }});
    add({"U3M3", "(q)^3 U_3^(3)(-x) display", "", 12, {}, true, false, nullptr, nullptr,
         [](const Params&, const Evaluator& ev) { return u_display(3, 3, {5, 4, 13, 12}, ev); }});
    add({"THETA-TO-FABC", "theta_{p,m} as two f_{1,4t-1,1} double sums", "", 30,
         {{"t", 2}, {"p_lo", -1}, {"p_hi", 2}, {"m_lo", 0}, {"m_hi", 2}}, true, false, nullptr, require_t,
         theta_to_fabc});
    add({"INTERESTING", "theta* against lacunary theta sums, three-case table", "", 20,
         {{"t", 2}, {"m", 1}, {"l", 1}}, true, false, interesting_scale, require_main_domain, interesting});
    add({"THETA11", "theta_{1,1} = (q)^2 at t = 2", "", 100, {}, true, false, nullptr, nullptr, theta11});
    add({"THETA11-STAR", "theta*_{1,1} = eta^2 at t = 2", "", 30, {}, true, false,
         [](const Params&) -> std::int64_t { return 24; }, nullptr, theta11_star});
    add({"U-EQ-F123", "(q) U(-x) = f_{1,2,3}(x^-1 q^2, q^3; q)", "", 30, {}, true, false, nullptr, nullptr,
         u_eq_f123});
    add({"M1-417", "(q^2;q^2) sum q^(2n+1) (-aq;q^2)_n (-q/a;q^2)_n = q f_{3,2,1}(q^6, -aq^3; q^2)", "", 30, {},
         true, false, nullptr, nullptr, m1_417});
    add({"V-ELLIPTIC", "V_t(qx) = x^(1-2t) V_t(x)", "", 20, {{"t", 2}}, true, false, nullptr, require_t,
         v_elliptic});
    add({"Y-ELLIPTIC", "Y_t(qx) = -x^(-2t) Y_t(x)", "", 20, {{"t", 2}}, true, false, nullptr, require_t,
         y_elliptic});
    add({"Y-EXPANSION", "Y_t as a sum of 2t theta functions in x^(2t)", "", 20, {{"t", 2}}, true, false, nullptr,
         require_t, y_expansion});
    add({"NEWCALC", "f_{t,m} in Appell-function form", "Theta(-x^(2t-1); q^(2t-1))", 12, {{"t", 2}, {"m", 1}}, true,
         false, nullptr, require_main_domain, newcalc});
    add({"APPELL-F123", "Appell form of f_{1,2,3}(x^-1 q^2, q^3; q)", "Theta(-x^3; q^3)", 25, {}, true, true,
         nullptr, nullptr, appell_f123});
    add({"MODTHETA-F123", "f_{1,2,3} with a minimal number of Appell functions",
         "Theta(-x^3; q^3) Theta(-x^-2; q)", 25, {}, true, true, nullptr, nullptr, modtheta_f123});
    add({"HM-24E", "Theta(-x; q) Theta(x^-3; q^3) split into four products", "", 25, {}, true, true, nullptr, nullptr,
         hm_24e});
    add({"SEC8-THETA", "f_{1,2,3} through g(x; q) with a theta quotient",
         "Theta(x; q) Theta(-x^-2; q) Theta(x^-4; q^2)", 25, {}, true, true, nullptr, nullptr, sec8_theta});
    add({"SEC8-NOTHETA", "f_{1,2,3} through g(x; q) without theta quotient", "Theta(x; q) Theta(x^-1; q)", 25, {},
         true, true, nullptr, nullptr, sec8_notheta});
    add({"G-APPELL", "Appell form of the universal mock theta function g(x; q)", "Theta(x; q) Theta(-x^3; q^3)", 25,
         {}, true, true, nullptr, nullptr, g_appell});
    add({"ANDREWS", "Andrews' analytic Gordon identity", "", 20, {{"k", 2}, {"i", 1}}, true, false, nullptr,
         [](const Params& p) {
             const std::int64_t k = param(p, "k"), i = param(p, "i");
             if (k < 1 || i < 1 || i > k) fail(ErrorKind::InvalidArgument, "needs 1 <= i <= k");
         },
         andrews});
    add({"H-G-DUAL", "H_n(t,m;b;1/q) against brute-force Gordon partition counts", "", 1,
         {{"t_max", 3}, {"n_max", 5}}, true, false, nullptr, nullptr, h_g_dual});
    return c;
}

} // namespace

std::string_view to_string(Mode mode) noexcept { return mode == Mode::Bivariate ? "bivariate" : "specialized"; }

Mode parse_mode(std::string_view text) {
    if (text == "bivariate") return Mode::Bivariate;
    if (text == "specialized") return Mode::Specialized;
    fail(ErrorKind::InvalidArgument, "mode must be bivariate or specialized, got '" + std::string(text) + "'");
}

std::int64_t param(const Params& params, const std::string& name) {
    const auto it = params.find(name);
    if (it == params.end()) fail(ErrorKind::InvalidArgument, "missing parameter '" + name + "'");
    return it->second;
}

const std::vector<IdentityDef>& identity_catalog() {
    static const std::vector<IdentityDef> catalog = make_catalog();
    return catalog;
}

const IdentityDef& find_identity(std::string_view id) {
    for (const auto& d : identity_catalog())
        if (d.id == id) return d;
    fail(ErrorKind::UnknownName, "unknown identity id '" + std::string(id) + "'");
}

} // namespace qseries
