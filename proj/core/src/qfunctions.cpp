#include "qseries/qfunctions.hpp"

#include <map>
#include <mutex>
#include <tuple>

namespace qseries {

namespace {

// Product of (1 - arg q^{i*base}) over i in [0, n) (or all i >= 0), skipping
// index `skip` when set.
Series product_of_factors(const MonomialArg& arg, QExp base, std::optional<std::int64_t> n,
                          std::optional<std::int64_t> skip, std::int64_t order, std::int64_t scale) {
    const std::int64_t step = base.on_lattice(scale);
    const std::int64_t e0 = arg.qexp.on_lattice(scale);
    if (!n) {
        if (step <= 0) fail(ErrorKind::DivergentProduct, "infinite product with base q^" + base.str());
        if (order == kExact) fail(ErrorKind::InvalidArgument, "infinite product needs a finite order");
    }
    // Negative-exponent factors lower the known order; start high enough
    // that the final product is known below `order`.
    std::int64_t deficit = 0;
    for (std::int64_t i = 0; !n || i < *n; ++i) {
        const std::int64_t e = checked::add(e0, checked::mul(i, step));
        if (e >= 0 && step >= 0) break;
        if (e < 0 && !(skip && *skip == i)) deficit = checked::add(deficit, e);
    }
    const std::int64_t work = order == kExact ? kExact : checked::sub(order, deficit);
    Series r = Series::one(scale, work);
    for (std::int64_t i = 0; !n || i < *n; ++i) {
        const std::int64_t e = checked::add(e0, checked::mul(i, step));
        if (!n && e > 0 && e >= work) break;
        if (skip && *skip == i) continue;
        MonomialArg f = arg;
        f.qexp = QExp::from_scaled(e, scale);
        r = r.times_one_minus(f);
        if (r.is_zero() && r.is_exact()) break;
    }
    return r.truncated(order);
}

template <typename Key>
class Memo {
public:
    template <typename F>
    Series get(const Key& key, F&& compute) {
        {
            std::lock_guard lock(mu_);
            auto it = cache_.find(key);
            if (it != cache_.end()) return it->second;
        }
        Series value = compute();
        std::lock_guard lock(mu_);
        return cache_.try_emplace(key, std::move(value)).first->second;
    }

private:
    std::mutex mu_;
    std::map<Key, Series> cache_;
};

} // namespace

Series pochhammer(const MonomialArg& arg, QExp base, std::optional<std::int64_t> n, std::int64_t order,
                  std::int64_t scale) {
    if (n && *n < 0) fail(ErrorKind::InvalidArgument, "negative Pochhammer length");
    return product_of_factors(arg, base, n, std::nullopt, order, scale);
}

Series euler(QExp base, std::int64_t order, std::int64_t scale) {
    static Memo<std::tuple<std::int64_t, std::int64_t, std::int64_t, std::int64_t>> memo;
    return memo.get({base.num(), base.den(), order, scale},
                    [&] { return pochhammer(MonomialArg::q(base), base, std::nullopt, order, scale); });
}

Series euler_inverse_power(unsigned k, QExp base, std::int64_t order, std::int64_t scale) {
    static Memo<std::tuple<unsigned, std::int64_t, std::int64_t, std::int64_t, std::int64_t>> memo;
    return memo.get({k, base.num(), base.den(), order, scale}, [&] {
        const Series inv = invert_unit(euler(base, order, scale), order);
        return pow(inv, k).truncated(order);
    });
}

Series gaussian_binomial(std::int64_t n, std::int64_t k) {
    if (k < 0 || n < 0 || k > n) return Series::zero(1, kExact);
    if (k == 0 || k == n) return Series::one(1, kExact);
    static Memo<std::pair<std::int64_t, std::int64_t>> memo;
    if (2 * k > n) k = n - k;
    return memo.get({n, k}, [&] {
        Series r = gaussian_binomial(n - 1, k - 1);
        r.add_shifted(gaussian_binomial(n - 1, k), 1, k);
        return r;
    });
}

Series theta(const ThetaSpec& spec, std::int64_t order, std::int64_t scale, ThetaForm form) {
    const std::int64_t u = spec.base.on_lattice(scale);
    if (u <= 0) fail(ErrorKind::DivergentProduct, "theta base must have positive exponent");
    if (order == kExact) fail(ErrorKind::InvalidArgument, "theta needs a finite order");
    if (form == ThetaForm::Product) {
        const MonomialArg& a = spec.arg;
        const MonomialArg qb = MonomialArg::q(spec.base);
        Series r = pochhammer(a, spec.base, std::nullopt, order, scale);
        if (r.is_zero()) return Series(scale, order);
        r = r * pochhammer(qb * a.inverse(), spec.base, std::nullopt, order, scale);
        r = r * euler(spec.base, order, scale);
        return r.truncated(order);
    }
    const std::int64_t e = spec.arg.qexp.on_lattice(scale);
    Series r(scale, order);
    // exponent(n) = u*n(n-1)/2 + e*n, convex in n
    auto expo = [&](std::int64_t n) {
        return checked::add(checked::mul(u, n * (n - 1) / 2), checked::mul(e, n));
    };
    auto emit = [&](std::int64_t n) {
        const int sign = ((n % 2 != 0) ? -1 : 1) * ((n % 2 != 0) ? spec.arg.sign : 1);
        r.add_term(expo(n), checked::mul(spec.arg.xdeg, n), Rational(sign));
    };
    for (std::int64_t n = 0;; ++n) {
        if (expo(n) >= order && expo(n + 1) >= expo(n)) break;
        emit(n);
    }
    for (std::int64_t n = -1;; --n) {
        if (expo(n) >= order && expo(n - 1) >= expo(n)) break;
        emit(n);
    }
    return r;
}

Series theta_over_factor(std::int64_t h, std::int64_t order, std::int64_t scale, const MonomialArg& y) {
    const QExp one(1);
    const MonomialArg q_over_y = MonomialArg::q(one) * y.inverse();
    if (h >= 0) {
        Series r = product_of_factors(y, one, std::nullopt, h, order, scale);
        r = r * pochhammer(q_over_y, one, std::nullopt, order, scale);
        return (r * euler(one, order, scale)).truncated(order);
    }
    // Theta/(1 - y q^h) = -y^{-1} q^{-h} (y)_inf (q)_inf prod_{i>=1, i != -h} (1 - q^i/y)
    const MonomialArg lift = MonomialArg::q(QExp(-h)) * y.inverse().negated();
    const std::int64_t inner = order_shift(order, -lift.qexp.on_lattice(scale));
    Series r = pochhammer(y, one, std::nullopt, inner, scale);
    r = r * product_of_factors(q_over_y, one, std::nullopt, -h - 1, inner, scale);
    r = r * euler(one, inner, scale);
    return r.truncated(inner).times(lift).truncated(order);
}

} // namespace qseries
