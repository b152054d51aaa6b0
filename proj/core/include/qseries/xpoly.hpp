#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace qseries {

using Rational = mpq_class;

/// Laurent polynomial in x with exact rational coefficients.
///
/// Stored as a degree-sorted list of nonzero terms. The empty list is the
/// zero polynomial.
class XPoly {
public:
    using Term = std::pair<std::int64_t, Rational>;

    XPoly() = default;

    static XPoly constant(const Rational& c) { return monomial(0, c); }
    static XPoly monomial(std::int64_t degree, const Rational& c);

    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t size() const noexcept { return terms_.size(); }
    const std::vector<Term>& terms() const& noexcept { return terms_; }
    std::vector<Term> terms() && noexcept { return std::move(terms_); }

    /// Only meaningful when nonzero.
    std::int64_t min_degree() const { return terms_.front().first; }
    std::int64_t max_degree() const { return terms_.back().first; }

    Rational coeff(std::int64_t degree) const;
    bool is_constant() const noexcept { return terms_.empty() || (terms_.size() == 1 && terms_[0].first == 0); }
    bool is_monomial() const noexcept { return terms_.size() == 1; }

    XPoly& operator+=(const XPoly& other);
    XPoly& operator-=(const XPoly& other);
    XPoly& operator*=(const Rational& c);
    XPoly operator-() const;

    friend XPoly operator+(XPoly a, const XPoly& b) { return a += b; }
    friend XPoly operator-(XPoly a, const XPoly& b) { return a -= b; }
    friend XPoly operator*(const XPoly& a, const XPoly& b);
    friend XPoly operator*(XPoly a, const Rational& c) { return a *= c; }

    /// Multiplies by x^d.
    XPoly shifted(std::int64_t d) const;

    /// this += sign * x^shift * a
    void add_scaled(const XPoly& a, int sign, std::int64_t shift = 0);

    /// this += a * b
    void add_product(const XPoly& a, const XPoly& b);

    friend bool operator==(const XPoly& a, const XPoly& b) { return a.terms_ == b.terms_; }

    /// Builds from unsorted (degree, coefficient) pairs, combining duplicates
    /// and dropping zeros.
    static XPoly from_terms(std::vector<Term> terms);

    std::string str() const;

private:
    void merge(const XPoly& other, int sign, std::int64_t shift);

    std::vector<Term> terms_;
};

} // namespace qseries
