#include "qseries/gordon.hpp"

#include <map>
#include <tuple>
#include <vector>

#include "qseries/lattice.hpp"
#include "qseries/qfunctions.hpp"

namespace qseries {

namespace {

class ChainSum {
public:
    ChainSum(const GordonParams& p, std::int64_t order) : p_(p), order_(order) {}

    // Sum over n_{j+1} in [nj, n] of the factor at j times the rest of the chain;
    // `partial` is sum_{r<=j} (2 n_r + chi(m > r)).
    Series from(std::int64_t j, std::int64_t nj, std::int64_t partial) {
        if (j == p_.t) return Series::one(1, order_);
        const auto key = std::make_tuple(j, nj, partial);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        const std::int64_t weight = checked::add(checked::mul(nj, nj), (1 - p_.b) * nj);
        Series acc(1, order_);
        if (weight < order_) {
            const std::int64_t lo = nj;
            const std::int64_t hi = p_.n;
            for (std::int64_t next = (j + 1 == p_.t) ? hi : lo; next <= hi; ++next) {
                const std::int64_t top = next - nj - p_.b * j + partial;
                const Series binom = gaussian_binomial(top, next - nj);
                if (binom.is_zero()) continue;
                const std::int64_t chi = p_.m > j + 1 ? 1 : 0;
                const Series rest = from(j + 1, next, partial + 2 * next + chi);
                if (rest.is_zero()) continue;
                acc += (binom * rest).truncated(order_);
            }
            acc = acc.shifted(weight).truncated(order_);
        }
        memo_.emplace(key, acc);
        return acc;
    }

private:
    GordonParams p_;
    std::int64_t order_;
    std::map<std::tuple<std::int64_t, std::int64_t, std::int64_t>, Series> memo_;
};

void check(const GordonParams& p) {
    if (p.t < 1 || p.m < 1 || p.m > p.t || (p.b != 0 && p.b != 1) || p.n < 0)
        fail(ErrorKind::InvalidArgument, "H needs t >= 1, 1 <= m <= t, b in {0, 1}, n >= 0");
}

} // namespace

Series gordon_h(const GordonParams& params, std::int64_t order) {
    check(params);
    if (params.t == 1) return Series::one(1, order);
    ChainSum chains(params, order);
    Series acc(1, order);
    const std::int64_t chi = params.m > 1 ? 1 : 0;
    for (std::int64_t n1 = 0; n1 <= params.n; ++n1) acc += chains.from(1, n1, 2 * n1 + chi);
    return acc;
}

Series reverse_q(const Series& poly) {
    if (!poly.is_exact()) fail(ErrorKind::InvalidArgument, "only exact polynomials can be reversed");
    Series r(poly.scale(), kExact);
    for (const auto& [e, p] : poly.terms()) r.add_poly(-e, p);
    return r;
}

Series u_series(std::int64_t t, std::int64_t m, std::int64_t order) {
    if (order == kExact) fail(ErrorKind::InvalidArgument, "U needs a finite order");
    Series acc(1, order);
    // (-x)_n (-q/x)_n, extended one factor pair per step
    Series poch = Series::one(1, order);
    for (std::int64_t n = 0; n < order; ++n) {
        if (n > 0) {
            poch = poch.times_one_minus(MonomialArg::x(1, QExp(n - 1), -1))
                       .times_one_minus(MonomialArg::x(-1, QExp(n), -1))
                       .truncated(order - n);
        }
        const Series h = gordon_h({t, m, 0, n}, order - n);
        acc.add_shifted((poch * h).truncated(order - n), 1, n);
    }
    return acc;
}

Series u_series_negated(std::int64_t t, std::int64_t m, std::int64_t order) {
    return substitute(u_series(t, m, order), QExp(1), MonomialArg::x(1, QExp(0), -1));
}

Series gordon_g(std::int64_t k, std::int64_t i, std::int64_t i_end, std::int64_t length, std::int64_t order) {
    if (length <= 1) return Series::one(1, order);
    const std::int64_t last = length - 1;
    if (i < 1 || i_end < 1) return Series::zero(1, order);
    // state: frequency of the previous part size
    std::map<std::int64_t, Series> layer;
    for (std::int64_t f = 0; f <= i - 1; ++f) {
        if (last == 1 && f > i_end - 1) break;
        if (f >= order) break;
        layer.emplace(f, Series::monomial(Rational(1), 0, f, 1, order));
    }
    for (std::int64_t j = 2; j <= last; ++j) {
        std::map<std::int64_t, Series> next;
        for (const auto& [prev, s] : layer) {
            const std::int64_t cap = j == last ? std::min(k - prev, i_end - 1) : k - prev;
            for (std::int64_t f = 0; f <= cap; ++f) {
                const std::int64_t w = checked::mul(j, f);
                if (w >= order) break;
                auto [it, fresh] = next.try_emplace(f, 1, order);
                it->second.add_shifted(s, 1, w);
            }
        }
        layer = std::move(next);
    }
    Series acc(1, order);
    for (const auto& [f, s] : layer) acc += s;
    return acc;
}

std::pair<Series, Series> andrews_sides(std::int64_t k, std::int64_t i, std::int64_t order) {
    if (k < 1 || i < 1 || i > k) fail(ErrorKind::InvalidArgument, "Andrews identity needs 1 <= i <= k");
    if (order == kExact) fail(ErrorKind::InvalidArgument, "Andrews identity needs a finite order");
    std::vector<Series> inverse; // 1/(q)_n
    auto inv = [&](std::int64_t n) -> const Series& {
        while (static_cast<std::int64_t>(inverse.size()) <= n) {
            const auto len = static_cast<std::int64_t>(inverse.size());
            inverse.push_back(invert_unit(pochhammer(MonomialArg::q(QExp(1)), QExp(1), len, kExact), order));
        }
        return inverse[n];
    };
    Series lhs(1, order);
    // N_k <= N_{k-1} <= ... <= N_1, exponent sum N_j^2 + sum_{j>=i} N_j
    std::vector<std::int64_t> big(k + 2, 0);
    auto walk = [&](auto&& self, std::int64_t j, std::int64_t partial) -> void {
        if (j == 0) {
            Series term = Series::monomial(Rational(1), 0, partial, 1, order);
            for (std::int64_t r = 1; r <= k; ++r) term = (term * inv(big[r] - big[r + 1])).truncated(order);
            lhs += term;
            return;
        }
        for (std::int64_t nj = big[j + 1];; ++nj) {
            const std::int64_t e = partial + nj * nj + (j >= i ? nj : 0);
            if (e >= order) break;
            big[j] = nj;
            self(self, j - 1, e);
        }
    };
    big[k + 1] = 0;
    walk(walk, k, 0);

    Series sum(1, order);
    const std::int64_t w = 2 * k + 3;
    // j((2k+3)(j+1) - 2i)/2 = (w j^2 + (w - 2i) j) / 2
    enumerate_line(QExp(w, 2), QExp(w - 2 * i, 2), QExp(0), QExp(order), [&](std::int64_t j, const QExp& e) {
        sum.add_term(e.on_lattice(1), 0, Rational(j % 2 == 0 ? 1 : -1));
    });
    const Series rhs = (sum * euler_inverse_power(1, QExp(1), order)).truncated(order);
    return {lhs, rhs};
}

} // namespace qseries
