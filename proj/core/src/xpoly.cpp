#include "qseries/xpoly.hpp"

#include <algorithm>
#include <sstream>

namespace qseries {

XPoly XPoly::monomial(std::int64_t degree, const Rational& c) {
    XPoly p;
    if (sgn(c) != 0) p.terms_.emplace_back(degree, c);
    return p;
}

Rational XPoly::coeff(std::int64_t degree) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), degree,
                               [](const Term& t, std::int64_t d) { return t.first < d; });
    if (it != terms_.end() && it->first == degree) return it->second;
    return Rational(0);
}

void XPoly::merge(const XPoly& other, int sign, std::int64_t shift) {
    if (other.terms_.empty()) return;
    std::vector<Term> out;
    out.reserve(terms_.size() + other.terms_.size());
    auto a = terms_.begin();
    auto b = other.terms_.begin();
    while (a != terms_.end() || b != other.terms_.end()) {
        const bool take_b = a == terms_.end() || (b != other.terms_.end() && b->first + shift < a->first);
        if (take_b) {
            out.emplace_back(b->first + shift, sign > 0 ? b->second : Rational(-b->second));
            ++b;
        } else if (b == other.terms_.end() || a->first < b->first + shift) {
            out.push_back(std::move(*a));
            ++a;
        } else {
            Rational c = sign > 0 ? Rational(a->second + b->second) : Rational(a->second - b->second);
            if (sgn(c) != 0) out.emplace_back(a->first, std::move(c));
            ++a;
            ++b;
        }
    }
    terms_ = std::move(out);
}

XPoly& XPoly::operator+=(const XPoly& other) {
    merge(other, 1, 0);
    return *this;
}

XPoly& XPoly::operator-=(const XPoly& other) {
    merge(other, -1, 0);
    return *this;
}

XPoly& XPoly::operator*=(const Rational& c) {
    if (sgn(c) == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [d, v] : terms_) v *= c;
    return *this;
}

XPoly XPoly::operator-() const {
    XPoly r = *this;
    for (auto& [d, v] : r.terms_) v = -v;
    return r;
}

XPoly XPoly::shifted(std::int64_t d) const {
    XPoly r = *this;
    for (auto& t : r.terms_) t.first += d;
    return r;
}

void XPoly::add_scaled(const XPoly& a, int sign, std::int64_t shift) { merge(a, sign, shift); }

XPoly XPoly::from_terms(std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(), [](const Term& x, const Term& y) { return x.first < y.first; });
    XPoly r;
    for (auto& t : terms) {
        if (!r.terms_.empty() && r.terms_.back().first == t.first) {
            r.terms_.back().second += t.second;
            if (sgn(r.terms_.back().second) == 0) r.terms_.pop_back();
        } else if (sgn(t.second) != 0) {
            r.terms_.push_back(std::move(t));
        }
    }
    return r;
}

XPoly operator*(const XPoly& a, const XPoly& b) {
    XPoly r;
    if (a.is_zero() || b.is_zero()) return r;
    if (a.size() == 1 || b.size() == 1) {
        const XPoly& mono = a.size() == 1 ? a : b;
        const XPoly& other = a.size() == 1 ? b : a;
        const auto& [d, c] = mono.terms_.front();
        r.terms_.reserve(other.size());
        for (const auto& [e, v] : other.terms_) r.terms_.emplace_back(d + e, c * v);
        return r;
    }
    const std::int64_t lo = a.min_degree() + b.min_degree();
    const std::int64_t hi = a.max_degree() + b.max_degree();
    const auto span = static_cast<std::size_t>(hi - lo + 1);
    if (span <= 4 * a.size() * b.size()) {
        std::vector<Rational> dense(span);
        for (const auto& [da, ca] : a.terms_)
            for (const auto& [db, cb] : b.terms_) dense[static_cast<std::size_t>(da + db - lo)] += ca * cb;
        for (std::size_t i = 0; i < span; ++i)
            if (sgn(dense[i]) != 0) r.terms_.emplace_back(lo + static_cast<std::int64_t>(i), std::move(dense[i]));
        return r;
    }
    std::vector<XPoly::Term> prod;
    prod.reserve(a.size() * b.size());
    for (const auto& [da, ca] : a.terms_)
        for (const auto& [db, cb] : b.terms_) prod.emplace_back(da + db, ca * cb);
    return XPoly::from_terms(std::move(prod));
}

void XPoly::add_product(const XPoly& a, const XPoly& b) {
    if (terms_.empty()) {
        *this = a * b;
        return;
    }
    merge(a * b, 1, 0);
}

std::string XPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [d, c] : terms_) {
        if (!first) os << (sgn(c) < 0 ? " - " : " + ");
        else if (sgn(c) < 0) os << "-";
        first = false;
        Rational mag = abs(c);
        const bool unit = mag == 1;
        if (!unit || d == 0) os << mag.get_str();
        if (d != 0) {
            if (!unit) os << "*";
            os << "x";
            if (d != 1) os << "^" << d;
        }
    }
    return os.str();
}

} // namespace qseries
