#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "qseries/hecke.hpp"
#include "qseries/qfunctions.hpp"
#include "qseries/series.hpp"

namespace qseries {

/// x = sign * q^exponent
struct XPoint {
    int sign = 1;
    QExp exponent{};

    /// "sign,j" such as "-1,1/2"
    static XPoint parse(const std::string& text);
    std::string str() const;
    friend bool operator==(const XPoint&, const XPoint&) = default;
};

/// Builds q-series objects either with x kept symbolic or with x fixed to a
/// point, in which case every argument is specialized before expansion and
/// division by non-monomial series becomes possible.
class Evaluator {
public:
    /// `bound` is the working truncation as a q-exponent. `cleared` selects
    /// denominator-cleared identity forms; by default only without a point.
    Evaluator(std::int64_t scale, QExp bound, std::optional<XPoint> point = std::nullopt,
              std::optional<bool> cleared = std::nullopt);

    std::int64_t scale() const noexcept { return scale_; }
    QExp bound() const noexcept { return bound_; }
    bool specialized() const noexcept { return point_.has_value(); }
    bool cleared() const noexcept { return cleared_; }
    const std::optional<XPoint>& point() const noexcept { return point_; }

    /// Working order on the evaluator's lattice (or another one).
    std::int64_t order() const { return order(scale_); }
    std::int64_t order(std::int64_t scale) const;

    MonomialArg arg(const MonomialArg& a) const;
    MonomialArg arg(int sign, std::int64_t xdeg, QExp qexp) const { return arg(MonomialArg{sign, xdeg, qexp}); }

    Series constant(const Rational& c) const;
    /// c * sign * x^xdeg * q^qexp
    Series monomial(int sign, std::int64_t xdeg, QExp qexp, const Rational& c = Rational(1)) const;

    Series theta(const MonomialArg& a, QExp base = QExp(1)) const;
    Series pochhammer(const MonomialArg& a, QExp base, std::optional<std::int64_t> n) const;
    Series euler(QExp base = QExp(1)) const;
    Series euler_inverse(unsigned power, QExp base = QExp(1)) const;
    Series f_abc(std::int64_t a, std::int64_t b, std::int64_t c, const MonomialArg& x, const MonomialArg& y,
                 QExp base = QExp(1)) const;
    Series appell_cleared(const MonomialArg& x, const MonomialArg& z, QExp base = QExp(1)) const;
    Series appell(const MonomialArg& x, const MonomialArg& z, QExp base = QExp(1)) const;
    /// Theta(y; q) / (1 - y q^h)
    Series theta_over_factor(std::int64_t h, const MonomialArg& y) const;

    /// num / den; den must have a monomial head. At a specialization point a
    /// vanishing denominator raises SpecializationHitsZero.
    Series divide(const Series& num, const Series& den) const;

private:
    std::int64_t scale_;
    QExp bound_;
    std::optional<XPoint> point_;
    bool cleared_;
};

} // namespace qseries
