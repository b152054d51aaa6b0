#include "oracles.hpp"

#include <algorithm>
#include <bit>
#include <functional>

#include "qseries/qfunctions.hpp"

namespace oracle {

using qseries::kExact;

Dense to_dense(const Series& s) {
    Dense d;
    for (const auto& [e, p] : s.terms())
        for (const auto& [x, c] : p.terms()) d[{e, x}] = c;
    return d;
}

Series from_dense(const Dense& d, std::int64_t scale, std::int64_t order) {
    Series s(scale, order);
    for (const auto& [k, c] : d)
        if (k.first < order && c != 0) s.add_term(k.first, k.second, c);
    return s;
}

Series random_series(std::mt19937_64& rng, std::int64_t order, int terms, std::int64_t lo, std::int64_t xspan,
                     std::int64_t scale) {
    std::uniform_int_distribution<std::int64_t> exp(lo, order - 1);
    std::uniform_int_distribution<std::int64_t> deg(-xspan, xspan);
    std::uniform_int_distribution<int> coef(-5, 5);
    Series s(scale, order);
    for (int i = 0; i < terms; ++i) {
        const std::int64_t e = exp(rng);
        const std::int64_t d = deg(rng);
        s.add_term(e, d, Rational(coef(rng)));
    }
    return s;
}

Series random_unit(std::mt19937_64& rng, std::int64_t order) {
    std::uniform_int_distribution<int> coef(1, 4);
    std::uniform_int_distribution<std::int64_t> deg(-2, 2);
    Series s = random_series(rng, order, 8, 1);
    const int c = coef(rng);
    s.add_term(0, deg(rng), Rational(c % 2 ? c : -c, 3));
    return s;
}

Series naive_mul(const Series& a, const Series& b) {
    const std::int64_t order = std::min(a.order() == kExact ? b.order() : a.order() + b.valuation(),
                                        b.order() == kExact ? a.order() : b.order() + a.valuation());
    Dense out;
    for (const auto& [ka, ca] : to_dense(a))
        for (const auto& [kb, cb] : to_dense(b)) out[{ka.first + kb.first, ka.second + kb.second}] += ca * cb;
    const std::int64_t cap = (a.is_exact() && b.is_exact()) ? kExact : order;
    return from_dense(out, a.scale(), cap);
}

Series euler_pentagonal(std::int64_t order, std::int64_t scale) {
    Series s(scale, order * scale);
    for (std::int64_t k = -order; k <= order; ++k) {
        const std::int64_t e = k * (3 * k - 1) / 2;
        if (e < order) s.add_term(e * scale, 0, Rational(k % 2 == 0 ? 1 : -1));
    }
    return s;
}

Series theta_sum(const MonomialArg& arg, std::int64_t base, std::int64_t order) {
    Series s(1, order);
    const std::int64_t window = 4 * order + 20;
    for (std::int64_t n = -window; n <= window; ++n) {
        const QExp e = QExp(base * n * (n - 1) / 2) + n * arg.qexp;
        if (e.num() >= order || !e.is_integer()) continue;
        int sign = n % 2 == 0 ? 1 : -1;
        if (arg.sign < 0 && n % 2 != 0) sign = -sign;
        s.add_term(e.num(), arg.xdeg * n, Rational(sign));
    }
    return s;
}

Series gaussian_subsets(std::int64_t n, std::int64_t k) {
    Series s;
    if (k < 0 || k > n) return s;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        if (std::popcount(mask) != k) continue;
        std::int64_t sum = 0;
        for (std::int64_t j = 0; j < n; ++j)
            if (mask & (1u << j)) sum += j;
        s.add_term(sum - k * (k - 1) / 2, 0, Rational(1));
    }
    return s;
}

Series gordon_h_chains(std::int64_t t, std::int64_t m, int b, std::int64_t n) {
    Series total;
    std::vector<std::int64_t> chain(t + 1, 0);
    chain[t] = n;
    std::function<void(std::int64_t)> pick = [&](std::int64_t j) {
        if (j == 0) {
            Series term = Series::one();
            std::int64_t partial = 0;
            for (std::int64_t r = 1; r <= t - 1; ++r) {
                partial += 2 * chain[r] + (m > r ? 1 : 0);
                const std::int64_t nj = chain[r];
                const Series binom = gaussian_subsets(chain[r + 1] - nj - b * r + partial, chain[r + 1] - nj);
                term = term * binom.shifted(nj * nj + (1 - b) * nj);
            }
            total += term;
            return;
        }
        for (std::int64_t v = 0; v <= chain[j + 1]; ++v) {
            chain[j] = v;
            pick(j - 1);
        }
    };
    if (t == 1) return Series::one();
    pick(t - 1);
    return total;
}

Series gordon_g_brute(std::int64_t k, std::int64_t i, std::int64_t i_end, std::int64_t length, std::int64_t order) {
    Series s(1, order);
    const std::int64_t parts = length - 1;
    std::vector<std::int64_t> f(parts + 1, 0);
    std::function<void(std::int64_t, std::int64_t)> go = [&](std::int64_t j, std::int64_t weight) {
        if (j > parts) {
            s.add_term(weight, 0, Rational(1));
            return;
        }
        for (std::int64_t v = 0; weight + j * v < order; ++v) {
            if (j == 1 && v > i - 1) break;
            if (j == parts && v > i_end - 1) break;
            if (j > 1 && f[j - 1] + v > k) break;
            f[j] = v;
            go(j + 1, weight + j * v);
        }
    };
    if (parts <= 0) return Series::one(1, order);
    go(1, 0);
    return s;
}

Series theta_pm_box(std::int64_t t, std::int64_t p, std::int64_t m, std::int64_t order, std::int64_t radius) {
    const std::int64_t scale = 8;
    Series s(scale, order * scale);
    for (std::int64_t r = -radius; r <= radius; ++r) {
        for (std::int64_t q = -radius; q <= radius; ++q) {
            if ((r - q) % 2 != 0) continue;
            const int sg = ((r >= 0 ? 1 : -1) + (q >= 0 ? 1 : -1)) / 2;
            if (sg == 0) continue;
            // 8B = r^2 + 2(4t-1) r s + s^2 + 2(4p-1-2m) r + 2(1+2m) s
            const std::int64_t b8 = r * r + 2 * (4 * t - 1) * r * q + q * q + 2 * (4 * p - 1 - 2 * m) * r +
                                    2 * (1 + 2 * m) * q;
            if (b8 >= order * scale) continue;
            const int sign = (((r - q) / 2) % 2 == 0 ? 1 : -1) * sg;
            s.add_term(b8, 0, Rational(sign));
        }
    }
    return s;
}

Series f_abc_box(std::int64_t a, std::int64_t b, std::int64_t c, const MonomialArg& x, const MonomialArg& y,
                 std::int64_t order, std::int64_t radius) {
    Series s(1, order);
    for (std::int64_t r = -radius; r <= radius; ++r) {
        for (std::int64_t q = -radius; q <= radius; ++q) {
            const int sg = ((r >= 0 ? 1 : -1) + (q >= 0 ? 1 : -1)) / 2;
            if (sg == 0) continue;
            const QExp e = QExp(a * r * (r - 1) / 2 + b * r * q + c * q * (q - 1) / 2) + r * x.qexp + q * y.qexp;
            if (e.num() >= order) continue;
            int sign = sg * ((r + q) % 2 == 0 ? 1 : -1);
            if (x.sign < 0 && r % 2 != 0) sign = -sign;
            if (y.sign < 0 && q % 2 != 0) sign = -sign;
            s.add_term(e.num(), x.xdeg * r + y.xdeg * q, Rational(sign));
        }
    }
    return s;
}

// ---------------------------------------------------------------- properties

namespace {

void record(PropertyResult& r, bool ok, const std::string& what) {
    ++r.checks;
    if (!ok) {
        if (r.failures == 0) r.first_failure = what;
        ++r.failures;
    }
}

bool same_below(const Series& a, const Series& b) { return qseries::diff_report(a, b).equal; }

} // namespace

PropertyResult ring_axioms(std::uint64_t seed, int trials) {
    PropertyResult r{"ring axioms"};
    std::mt19937_64 rng(seed);
    for (int i = 0; i < trials; ++i) {
        const Series a = random_series(rng, 12, 10);
        const Series b = random_series(rng, 12, 10);
        const Series c = random_series(rng, 12, 10);
        const std::string tag = "trial " + std::to_string(i);
        record(r, same_below((a * b) * c, a * (b * c)), tag + " associativity");
        record(r, same_below(a * b, b * a), tag + " commutativity");
        record(r, same_below(a * (b + c), a * b + a * c), tag + " distributivity");
        record(r, same_below(a + b, b + a), tag + " additive commutativity");
        record(r, (a - a).is_zero(), tag + " additive inverse");
        record(r, same_below(a * Series::one(1, 12), a), tag + " unit");
    }
    return r;
}

PropertyResult mul_matches_naive(std::uint64_t seed, int trials) {
    PropertyResult r{"mul vs naive convolution"};
    std::mt19937_64 rng(seed);
    for (int i = 0; i < trials; ++i) {
        const Series a = random_series(rng, 20, 20, -3, 3);
        const Series b = random_series(rng, 20, 20, -3, 3);
        const Series fast = a * b;
        const Series slow = naive_mul(a, b);
        record(r, fast.order() == slow.order() && same_below(fast, slow), "trial " + std::to_string(i));
    }
    return r;
}

PropertyResult invert_round_trip(std::uint64_t seed, int trials) {
    PropertyResult r{"invert round trip"};
    std::mt19937_64 rng(seed);
    for (int i = 0; i < trials; ++i) {
        const Series a = random_unit(rng, 15);
        const Series prod = a * qseries::invert_unit(a);
        record(r, same_below(prod, Series::one(1, prod.order())) && prod.order() >= 15 - 0,
               "trial " + std::to_string(i));
    }
    return r;
}

PropertyResult geometric_round_trip(std::uint64_t seed, int trials) {
    PropertyResult r{"geometric factor round trip"};
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::int64_t> deg(-3, 3), exp(-4, 4);
    std::uniform_int_distribution<int> coin(0, 1);
    for (int i = 0; i < trials; ++i) {
        MonomialArg mu{coin(rng) ? 1 : -1, deg(rng), QExp(exp(rng))};
        if (mu.qexp.num() == 0 && mu.xdeg != 0) mu.qexp = QExp(1);
        if (mu.qexp.num() == 0) mu.sign = -1;
        const Series g = qseries::geometric_factor(mu, 20, 1);
        const Series back = g.times_one_minus(mu);
        record(r, same_below(back, Series::one(1, back.order())) && back.order() >= 1,
               "mu = " + mu.str());
    }
    return r;
}

PropertyResult substitute_homomorphism(std::uint64_t seed, int trials) {
    PropertyResult r{"substitute homomorphism"};
    std::mt19937_64 rng(seed);
    const std::vector<std::pair<QExp, MonomialArg>> maps = {
        {QExp(2), MonomialArg::x()},
        {QExp(1), MonomialArg::x(1, QExp(0), -1)},
        {QExp(3, 2), MonomialArg::x(-1)},
        {QExp(1), MonomialArg::x(2, QExp(1))},
        {QExp(1), MonomialArg::q(QExp(1, 2), -1)},
    };
    for (int i = 0; i < trials; ++i) {
        const Series a = random_series(rng, 10, 8);
        const Series b = random_series(rng, 10, 8);
        for (const auto& [u, mu] : maps) {
            const qseries::XDegRange tail{-2, 2};
            const qseries::XDegRange tail2{-4, 4};
            const Series lhs = qseries::substitute(a * b, u, mu, tail2);
            const Series rhs = qseries::substitute(a, u, mu, tail) * qseries::substitute(b, u, mu, tail);
            const auto [l, rr] = qseries::align(lhs, rhs);
            record(r, same_below(l, rr), "trial " + std::to_string(i) + " x -> " + mu.str());
        }
    }
    return r;
}

PropertyResult theta_over_factor_reconstruction(std::int64_t max_h, std::int64_t order) {
    PropertyResult r{"theta_over_factor reconstruction"};
    const Series theta = theta_sum(MonomialArg::x(), 1, order);
    for (std::int64_t h = -max_h; h <= max_h; ++h) {
        const Series tof = qseries::theta_over_factor(h, order + std::max<std::int64_t>(0, -h) + 1);
        const Series back = tof.times_one_minus(MonomialArg::x(1, QExp(h))).truncated(order);
        record(r, back.order() >= order && same_below(back, theta), "h = " + std::to_string(h));
    }
    return r;
}

PropertyResult q_pascal(std::int64_t max_n) {
    PropertyResult r{"q-Pascal"};
    for (std::int64_t n = 1; n <= max_n; ++n) {
        for (std::int64_t k = 0; k <= n; ++k) {
            const Series lhs = qseries::gaussian_binomial(n, k);
            const Series rhs =
                qseries::gaussian_binomial(n - 1, k - 1) + qseries::gaussian_binomial(n - 1, k).shifted(k);
            record(r, lhs == rhs, "[" + std::to_string(n) + "," + std::to_string(k) + "]");
        }
    }
    for (std::int64_t n = 0; n <= std::min<std::int64_t>(max_n, 10); ++n)
        for (std::int64_t k = -1; k <= n + 1; ++k)
            record(r, qseries::gaussian_binomial(n, k) == gaussian_subsets(n, k),
                   "subset oracle [" + std::to_string(n) + "," + std::to_string(k) + "]");
    return r;
}

PropertyResult gaussian_at_one(std::int64_t max_n) {
    PropertyResult r{"Gaussian binomial at q = 1"};
    for (std::int64_t n = 0; n <= max_n; ++n) {
        mpz_class binom = 1;
        for (std::int64_t k = 0; k <= n; ++k) {
            Rational sum = 0;
            const Series g = qseries::gaussian_binomial(n, k);
            for (const auto& [e, p] : g.terms()) sum += p.coeff(0);
            record(r, sum == Rational(binom), "[" + std::to_string(n) + "," + std::to_string(k) + "]");
            binom = binom * (n - k) / (k + 1);
        }
    }
    return r;
}

std::vector<PropertyResult> all_properties() {
    return {ring_axioms(0x5eed01, 40),      mul_matches_naive(0x5eed02, 60), invert_round_trip(0x5eed03, 40),
            geometric_round_trip(0x5eed04, 60), substitute_homomorphism(0x5eed05, 20),
            theta_over_factor_reconstruction(6, 30), q_pascal(12), gaussian_at_one(12)};
}

} // namespace oracle
