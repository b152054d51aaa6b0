#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>

#include "qseries/error.hpp"

namespace qseries {

namespace checked {

inline std::int64_t add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) fail(ErrorKind::Overflow, "exponent addition");
    return r;
}

inline std::int64_t sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) fail(ErrorKind::Overflow, "exponent subtraction");
    return r;
}

inline std::int64_t mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) fail(ErrorKind::Overflow, "exponent multiplication");
    return r;
}

inline std::int64_t lcm(std::int64_t a, std::int64_t b) {
    return mul(a / std::gcd(a, b), b);
}

} // namespace checked

/// Exact rational q-exponent. Always normalized: den > 0, gcd(num, den) = 1.
class QExp {
public:
    constexpr QExp() = default;
    QExp(std::int64_t num, std::int64_t den = 1) : num_(num), den_(den) { normalize(); }

    std::int64_t num() const noexcept { return num_; }
    std::int64_t den() const noexcept { return den_; }
    bool is_integer() const noexcept { return den_ == 1; }

    /// Numerator on the lattice (1/scale)Z; throws ScaleMismatch if the
    /// exponent does not lie on it.
    std::int64_t on_lattice(std::int64_t scale) const {
        if (scale % den_ != 0)
            fail(ErrorKind::ScaleMismatch,
                 "exponent " + str() + " is not on the lattice (1/" + std::to_string(scale) + ")Z");
        return checked::mul(num_, scale / den_);
    }

    static QExp from_scaled(std::int64_t scaled, std::int64_t scale) { return QExp(scaled, scale); }

    friend QExp operator+(const QExp& a, const QExp& b) {
        const std::int64_t l = checked::lcm(a.den_, b.den_);
        return QExp(checked::add(checked::mul(a.num_, l / a.den_), checked::mul(b.num_, l / b.den_)), l);
    }
    friend QExp operator-(const QExp& a) { return QExp(checked::sub(0, a.num_), a.den_); }
    friend QExp operator-(const QExp& a, const QExp& b) { return a + (-b); }
    friend QExp operator*(const QExp& a, const QExp& b) {
        return QExp(checked::mul(a.num_, b.num_), checked::mul(a.den_, b.den_));
    }
    friend QExp operator*(std::int64_t k, const QExp& a) { return QExp(checked::mul(k, a.num_), a.den_); }

    friend bool operator==(const QExp&, const QExp&) = default;
    friend std::strong_ordering operator<=>(const QExp& a, const QExp& b) {
        const __int128 l = static_cast<__int128>(a.num_) * b.den_;
        const __int128 r = static_cast<__int128>(b.num_) * a.den_;
        return l <=> r;
    }

    int sign() const noexcept { return (num_ > 0) - (num_ < 0); }

    std::string str() const {
        return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
    }

    /// Parses "a" or "a/b".
    static QExp parse(const std::string& text);

private:
    void normalize() {
        if (den_ == 0) fail(ErrorKind::InvalidArgument, "zero denominator in exponent");
        if (den_ < 0) {
            num_ = checked::sub(0, num_);
            den_ = checked::sub(0, den_);
        }
        const std::int64_t g = std::gcd(num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

} // namespace qseries
