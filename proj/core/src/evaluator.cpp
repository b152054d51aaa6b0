#include "qseries/evaluator.hpp"

namespace qseries {

XPoint XPoint::parse(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) fail(ErrorKind::InvalidArgument, "x-point must look like 'sign,j': " + text);
    const std::string sign = text.substr(0, comma);
    XPoint p;
    if (sign == "1" || sign == "+1" || sign == "+")
        p.sign = 1;
    else if (sign == "-1" || sign == "-")
        p.sign = -1;
    else
        fail(ErrorKind::InvalidArgument, "x-point sign must be +1 or -1: " + text);
    p.exponent = QExp::parse(text.substr(comma + 1));
    return p;
}

std::string XPoint::str() const { return (sign < 0 ? "-1," : "1,") + exponent.str(); }

Evaluator::Evaluator(std::int64_t scale, QExp bound, std::optional<XPoint> point, std::optional<bool> cleared)
    : scale_(scale), bound_(bound), point_(point), cleared_(cleared.value_or(!point.has_value())) {
    if (scale < 1) fail(ErrorKind::InvalidArgument, "scale must be positive");
    if (point_) point_->exponent.on_lattice(scale);
}

std::int64_t Evaluator::order(std::int64_t scale) const {
    const std::int64_t num = checked::mul(bound_.num(), scale);
    const std::int64_t den = bound_.den();
    return num >= 0 ? (num + den - 1) / den : -((-num) / den);
}

MonomialArg Evaluator::arg(const MonomialArg& a) const {
    if (!point_ || a.xdeg == 0) return a;
    const int sign = (point_->sign < 0 && a.xdeg % 2 != 0) ? -a.sign : a.sign;
    return {sign, 0, a.qexp + a.xdeg * point_->exponent};
}

Series Evaluator::constant(const Rational& c) const { return Series::constant(c, scale_, order()); }

Series Evaluator::monomial(int sign, std::int64_t xdeg, QExp qexp, const Rational& c) const {
    const MonomialArg m = arg(MonomialArg{sign, xdeg, qexp});
    return Series::monomial(c * m.sign, m.xdeg, m.qexp.on_lattice(scale_), scale_, order());
}

Series Evaluator::theta(const MonomialArg& a, QExp base) const {
    return qseries::theta(ThetaSpec{arg(a), base}, order(), scale_);
}

Series Evaluator::pochhammer(const MonomialArg& a, QExp base, std::optional<std::int64_t> n) const {
    return qseries::pochhammer(arg(a), base, n, order(), scale_);
}

Series Evaluator::euler(QExp base) const { return qseries::euler(base, order(), scale_); }

Series Evaluator::euler_inverse(unsigned power, QExp base) const {
    return euler_inverse_power(power, base, order(), scale_);
}

Series Evaluator::f_abc(std::int64_t a, std::int64_t b, std::int64_t c, const MonomialArg& x, const MonomialArg& y,
                        QExp base) const {
    return hecke_f_abc(HeckeParams{a, b, c, arg(x), arg(y), base}, order(), scale_);
}

Series Evaluator::appell_cleared(const MonomialArg& x, const MonomialArg& z, QExp base) const {
    try {
        return qseries::appell_cleared(AppellParams{arg(x), arg(z), base}, order(), scale_);
    } catch (const Error& e) {
        if (specialized() && e.kind() == ErrorKind::PoleAtOne)
            fail(ErrorKind::SpecializationHitsZero, std::string("Appell denominator vanishes: ") + e.what());
        throw;
    }
}

Series Evaluator::appell(const MonomialArg& x, const MonomialArg& z, QExp base) const {
    return divide(appell_cleared(x, z, base), theta(z, base));
}

Series Evaluator::theta_over_factor(std::int64_t h, const MonomialArg& y) const {
    return qseries::theta_over_factor(h, order(), scale_, arg(y));
}

Series Evaluator::divide(const Series& num, const Series& den) const {
    if (den.is_zero()) {
        fail(specialized() ? ErrorKind::SpecializationHitsZero : ErrorKind::NotAUnit,
             "denominator vanishes below q^" + QExp::from_scaled(den.order(), den.scale()).str());
    }
    const std::int64_t v = den.valuation();
    const Series inv = invert_unit(den, den.is_exact() ? std::optional(order_shift(order(), -v)) : std::nullopt);
    return num * inv;
}

} // namespace qseries
