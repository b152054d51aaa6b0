#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <map>
#include <optional>
#include <string>

#include "qseries/qexp.hpp"
#include "qseries/xpoly.hpp"

namespace qseries {

/// Truncation order meaning "no truncation": the stored terms are the whole
/// object (polynomials such as Gaussian binomials or H_n).
inline constexpr std::int64_t kExact = std::numeric_limits<std::int64_t>::max();

/// Adds to an order, saturating at kExact.
inline std::int64_t order_shift(std::int64_t order, std::int64_t by) {
    return order == kExact ? kExact : checked::add(order, by);
}

/// Signed monomial sign * x^xdeg * q^qexp, the argument type for products,
/// theta functions, Appell functions and double sums.
struct MonomialArg {
    int sign = 1;
    std::int64_t xdeg = 0;
    QExp qexp{};

    static MonomialArg q(QExp e, int sign = 1) { return {sign, 0, e}; }
    static MonomialArg x(std::int64_t d = 1, QExp e = QExp(0), int sign = 1) { return {sign, d, e}; }

    bool is_one() const noexcept { return sign == 1 && xdeg == 0 && qexp.num() == 0; }

    friend MonomialArg operator*(const MonomialArg& a, const MonomialArg& b) {
        return {a.sign * b.sign, checked::add(a.xdeg, b.xdeg), a.qexp + b.qexp};
    }
    MonomialArg pow(std::int64_t n) const;
    MonomialArg inverse() const { return pow(-1); }
    MonomialArg negated() const { return {-sign, xdeg, qexp}; }

    friend bool operator==(const MonomialArg&, const MonomialArg&) = default;
    std::string str() const;
};

/// Truncated formal series in q with Laurent-polynomial-in-x coefficients.
///
/// Exponents live on the lattice (1/scale)Z and are stored as integer
/// numerators. Every stored exponent is strictly below `order`; every stored
/// coefficient is nonzero. The value is known exactly below `order`.
class Series {
public:
    using TermMap = std::map<std::int64_t, XPoly>;

    explicit Series(std::int64_t scale = 1, std::int64_t order = kExact);

    static Series zero(std::int64_t scale = 1, std::int64_t order = kExact) { return Series(scale, order); }
    static Series one(std::int64_t scale = 1, std::int64_t order = kExact);
    static Series constant(const Rational& c, std::int64_t scale = 1, std::int64_t order = kExact);
    /// c * x^xdeg * q^(qexp/scale)
    static Series monomial(const Rational& c, std::int64_t xdeg, std::int64_t qexp, std::int64_t scale = 1,
                           std::int64_t order = kExact);
    static Series from_arg(const MonomialArg& arg, std::int64_t scale, std::int64_t order = kExact);

    std::int64_t scale() const noexcept { return scale_; }
    std::int64_t order() const noexcept { return order_; }
    bool is_exact() const noexcept { return order_ == kExact; }
    const TermMap& terms() const& noexcept { return terms_; }
    TermMap terms() && noexcept { return std::move(terms_); }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t term_count() const;

    Rational coeff(std::int64_t qexp, std::int64_t xdeg) const;
    const XPoly* at(std::int64_t qexp) const;

    /// Lowest stored exponent, or order when nothing is stored.
    std::int64_t valuation() const;
    /// Smallest / largest x-degree over all stored terms (nullopt when zero).
    std::optional<std::pair<std::int64_t, std::int64_t>> xdeg_range() const;
    /// True when every stored coefficient has x-degree 0.
    bool is_univariate() const;

    void add_term(std::int64_t qexp, std::int64_t xdeg, const Rational& c);
    /// this += sign * x^xshift * q^qshift * p (terms at or beyond order are dropped)
    void add_poly(std::int64_t qexp, const XPoly& p, int sign = 1, std::int64_t xshift = 0);
    /// this += sign * x^xshift * q^qshift * s, truncating at this->order.
    /// `s` must share the scale; the own order is lowered to what s supports.
    void add_shifted(const Series& s, int sign, std::int64_t qshift, std::int64_t xshift = 0);

    Series truncated(std::int64_t order) const;
    Series rescaled(std::int64_t new_scale) const;

    /// Multiplication by sign * x^xdeg * q^(qexp/scale).
    Series shifted(std::int64_t qexp, std::int64_t xdeg = 0, int sign = 1) const;
    Series times(const MonomialArg& arg) const;
    /// this * (1 - arg), exact factor.
    Series times_one_minus(const MonomialArg& arg) const;

    Series operator-() const;
    Series& operator+=(const Series& other);
    Series& operator-=(const Series& other);
    Series& operator*=(const Rational& c);

    friend Series operator+(Series a, const Series& b) { return a += b; }
    friend Series operator-(Series a, const Series& b) { return a -= b; }
    friend Series operator*(const Series& a, const Series& b);
    friend Series operator*(Series a, const Rational& c) { return a *= c; }
    friend Series operator*(const Rational& c, Series a) { return a *= c; }

    /// Structural equality (same scale, order and terms).
    friend bool operator==(const Series& a, const Series& b) = default;

    std::string str() const;

private:
    void check_scale(const Series& other, const char* op) const;

    std::int64_t scale_;
    std::int64_t order_;
    TermMap terms_;
};

Series add(const Series& a, const Series& b);
Series mul(const Series& a, const Series& b);
Series pow(const Series& a, unsigned n);

/// Inverse of a series whose lowest term is a single monomial c*x^k*q^v.
/// `order_cap` bounds the output order and is required for exact inputs.
Series invert_unit(const Series& a, std::optional<std::int64_t> order_cap = std::nullopt);

/// 1/(1 - mu) expanded in the direction where it converges formally.
Series geometric_factor(const MonomialArg& mu, std::int64_t order, std::int64_t scale);

/// Range of x-degrees the truncated tail of a series is known to have,
/// needed when a substitution moves x-degree into the q-exponent.
struct XDegRange {
    std::int64_t lo;
    std::int64_t hi;
};

/// Ring homomorphism q -> q^u, x -> mu. The output scale is the smallest
/// lattice holding every image exponent (or `out_scale` when given, which
/// must be a multiple of it).
Series substitute(const Series& a, QExp u, const MonomialArg& mu, std::optional<XDegRange> tail = std::nullopt,
                  std::optional<std::int64_t> out_scale = std::nullopt);

/// x -> sign * q^j.
Series specialize_x(const Series& a, int sign, QExp j, std::optional<XDegRange> tail = std::nullopt,
                    std::optional<std::int64_t> out_scale = std::nullopt);

/// Brings two series to a common scale.
std::pair<Series, Series> align(const Series& a, const Series& b);

struct DiffResult {
    bool equal = true;
    std::int64_t scale = 1;
    std::int64_t compared_order = kExact;
    std::int64_t qexp = 0;
    std::int64_t xdeg = 0;
    Rational lhs;
    Rational rhs;

    std::string str() const;
};

/// Compares below min(a.order, b.order). Both operands must share a scale.
DiffResult diff_report(const Series& a, const Series& b);

/// Text format: header `scale=D order=N` (N may be `inf`), then one
/// `e_num x_deg num/den` line per term sorted by (e_num, x_deg).
void write_series(std::ostream& os, const Series& s);
std::string format_series(const Series& s);
Series parse_series(std::istream& is);
Series parse_series(const std::string& text);

} // namespace qseries
