#include "qseries/series.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

namespace qseries {

namespace {

std::int64_t order_min(std::int64_t a, std::int64_t b) { return std::min(a, b); }

// Smallest integer >= num/den for den > 0.
std::int64_t ceil_div(std::int64_t num, std::int64_t den) {
    std::int64_t q = num / den;
    if (num % den != 0 && num > 0) ++q;
    return q;
}

} // namespace

MonomialArg MonomialArg::pow(std::int64_t n) const {
    const int s = (n % 2 == 0) ? 1 : sign;
    return {s, checked::mul(xdeg, n), n * qexp};
}

std::string MonomialArg::str() const {
    std::ostringstream os;
    if (sign < 0) os << "-";
    bool any = false;
    if (xdeg != 0) {
        os << "x";
        if (xdeg != 1) os << "^" << xdeg;
        any = true;
    }
    if (qexp.num() != 0) {
        if (any) os << "*";
        os << "q";
        if (!(qexp == QExp(1))) os << "^" << (qexp.is_integer() ? qexp.str() : "(" + qexp.str() + ")");
        any = true;
    }
    if (!any) os << "1";
    return os.str();
}

Series::Series(std::int64_t scale, std::int64_t order) : scale_(scale), order_(order) {
    if (scale < 1) fail(ErrorKind::InvalidArgument, "exponent scale must be positive");
}

Series Series::one(std::int64_t scale, std::int64_t order) { return constant(Rational(1), scale, order); }

Series Series::constant(const Rational& c, std::int64_t scale, std::int64_t order) {
    return monomial(c, 0, 0, scale, order);
}

Series Series::monomial(const Rational& c, std::int64_t xdeg, std::int64_t qexp, std::int64_t scale,
                        std::int64_t order) {
    Series s(scale, order);
    s.add_term(qexp, xdeg, c);
    return s;
}

Series Series::from_arg(const MonomialArg& arg, std::int64_t scale, std::int64_t order) {
    return monomial(Rational(arg.sign), arg.xdeg, arg.qexp.on_lattice(scale), scale, order);
}

std::size_t Series::term_count() const {
    std::size_t n = 0;
    for (const auto& [e, p] : terms_) n += p.size();
    return n;
}

Rational Series::coeff(std::int64_t qexp, std::int64_t xdeg) const {
    auto it = terms_.find(qexp);
    return it == terms_.end() ? Rational(0) : it->second.coeff(xdeg);
}

const XPoly* Series::at(std::int64_t qexp) const {
    auto it = terms_.find(qexp);
    return it == terms_.end() ? nullptr : &it->second;
}

std::int64_t Series::valuation() const { return terms_.empty() ? order_ : terms_.begin()->first; }

std::optional<std::pair<std::int64_t, std::int64_t>> Series::xdeg_range() const {
    if (terms_.empty()) return std::nullopt;
    std::int64_t lo = std::numeric_limits<std::int64_t>::max();
    std::int64_t hi = std::numeric_limits<std::int64_t>::min();
    for (const auto& [e, p] : terms_) {
        lo = std::min(lo, p.min_degree());
        hi = std::max(hi, p.max_degree());
    }
    return std::pair{lo, hi};
}

bool Series::is_univariate() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const auto& kv) { return kv.second.is_constant(); });
}

void Series::add_term(std::int64_t qexp, std::int64_t xdeg, const Rational& c) {
    if (qexp >= order_ || sgn(c) == 0) return;
    add_poly(qexp, XPoly::monomial(xdeg, c));
}

void Series::add_poly(std::int64_t qexp, const XPoly& p, int sign, std::int64_t xshift) {
    if (qexp >= order_ || p.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(qexp);
    it->second.add_scaled(p, sign, xshift);
    if (it->second.is_zero()) terms_.erase(it);
}

void Series::add_shifted(const Series& s, int sign, std::int64_t qshift, std::int64_t xshift) {
    check_scale(s, "add_shifted");
    order_ = order_min(order_, order_shift(s.order_, qshift));
    for (const auto& [e, p] : s.terms_) {
        const std::int64_t ne = checked::add(e, qshift);
        if (ne >= order_) break;
        add_poly(ne, p, sign, xshift);
    }
    while (!terms_.empty() && terms_.rbegin()->first >= order_) terms_.erase(std::prev(terms_.end()));
}

Series Series::truncated(std::int64_t order) const {
    if (order >= order_) return *this;
    Series r(scale_, order);
    for (auto it = terms_.begin(); it != terms_.end() && it->first < order; ++it) r.terms_.emplace(*it);
    return r;
}

Series Series::rescaled(std::int64_t new_scale) const {
    if (new_scale % scale_ != 0)
        fail(ErrorKind::ScaleMismatch,
             "cannot rescale from 1/" + std::to_string(scale_) + " to 1/" + std::to_string(new_scale));
    const std::int64_t f = new_scale / scale_;
    Series r(new_scale, order_ == kExact ? kExact : checked::mul(order_, f));
    for (const auto& [e, p] : terms_) r.terms_.emplace_hint(r.terms_.end(), checked::mul(e, f), p);
    return r;
}

Series Series::shifted(std::int64_t qexp, std::int64_t xdeg, int sign) const {
    Series r(scale_, order_shift(order_, qexp));
    for (const auto& [e, p] : terms_) {
        XPoly np = xdeg == 0 ? p : p.shifted(xdeg);
        if (sign < 0) np = -np;
        r.terms_.emplace_hint(r.terms_.end(), checked::add(e, qexp), std::move(np));
    }
    return r;
}

Series Series::times(const MonomialArg& arg) const {
    return shifted(arg.qexp.on_lattice(scale_), arg.xdeg, arg.sign);
}

Series Series::times_one_minus(const MonomialArg& arg) const {
    const std::int64_t e = arg.qexp.on_lattice(scale_);
    Series r = *this;
    r.order_ = order_min(order_, order_shift(order_, e));
    while (!r.terms_.empty() && r.terms_.rbegin()->first >= r.order_) r.terms_.erase(std::prev(r.terms_.end()));
    for (const auto& [se, p] : terms_) {
        const std::int64_t ne = checked::add(se, e);
        if (ne >= r.order_) break;
        r.add_poly(ne, p, -arg.sign, arg.xdeg);
    }
    return r;
}

Series Series::operator-() const {
    Series r = *this;
    for (auto& [e, p] : r.terms_) p = -p;
    return r;
}

void Series::check_scale(const Series& other, const char* op) const {
    if (other.scale_ != scale_)
        fail(ErrorKind::ScaleMismatch, std::string(op) + ": scales 1/" + std::to_string(scale_) + " and 1/" +
                                           std::to_string(other.scale_));
}

Series& Series::operator+=(const Series& other) {
    add_shifted(other, 1, 0);
    return *this;
}

Series& Series::operator-=(const Series& other) {
    add_shifted(other, -1, 0);
    return *this;
}

Series& Series::operator*=(const Rational& c) {
    if (sgn(c) == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, p] : terms_) p *= c;
    return *this;
}

Series operator*(const Series& a, const Series& b) {
    a.check_scale(b, "mul");
    if ((a.is_zero() && a.is_exact()) || (b.is_zero() && b.is_exact())) return Series(a.scale_, kExact);
    const std::int64_t order =
        std::min(order_shift(a.order_, b.valuation()), order_shift(b.order_, a.valuation()));
    Series r(a.scale_, order);
    if (a.is_zero() || b.is_zero()) return r;
    const std::int64_t b_low = b.terms_.begin()->first;
    for (const auto& [ea, pa] : a.terms_) {
        if (checked::add(ea, b_low) >= order) break;
        for (const auto& [eb, pb] : b.terms_) {
            const std::int64_t e = checked::add(ea, eb);
            if (e >= order) break;
            r.terms_[e].add_product(pa, pb);
        }
    }
    std::erase_if(r.terms_, [](const auto& kv) { return kv.second.is_zero(); });
    return r;
}

std::string Series::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, p] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << p.str() << ")";
        if (e != 0) os << "*q^" << QExp(e, scale_).str();
    }
    if (order_ != kExact) os << " + O(q^" << QExp(order_, scale_).str() << ")";
    return os.str();
}

Series add(const Series& a, const Series& b) { return a + b; }
Series mul(const Series& a, const Series& b) { return a * b; }

Series pow(const Series& a, unsigned n) {
    Series r = Series::one(a.scale(), kExact);
    Series base = a;
    while (n > 0) {
        if (n & 1U) r = r * base;
        n >>= 1U;
        if (n > 0) base = base * base;
    }
    return r;
}

Series invert_unit(const Series& a, std::optional<std::int64_t> order_cap) {
    if (a.is_zero()) fail(ErrorKind::NotAUnit, "zero series has no inverse");
    const auto& [v, head] = *a.terms().begin();
    if (!head.is_monomial())
        fail(ErrorKind::NotAUnit, "lowest coefficient " + head.str() + " is not a monomial in x");
    if (a.is_exact() && !order_cap) fail(ErrorKind::InvalidArgument, "inverting an exact series needs an order");
    std::int64_t order = a.is_exact() ? *order_cap : checked::sub(a.order(), checked::mul(2, v));
    if (order_cap) order = std::min(order, *order_cap);

    const auto& [k, c] = head.terms().front();
    const Rational cinv = 1 / c;
    const std::int64_t rel_bound = checked::add(order, v);

    // a = c x^k q^v (1 + r); compute w = 1/(1 + r) below rel_bound.
    std::map<std::int64_t, XPoly> rest;
    std::int64_t step = 0;
    for (auto it = std::next(a.terms().begin()); it != a.terms().end(); ++it) {
        const std::int64_t rel = it->first - v;
        if (rel >= rel_bound) break;
        XPoly p = it->second.shifted(-k);
        p *= cinv;
        rest.emplace(rel, std::move(p));
        step = std::gcd(step, rel);
    }
    std::map<std::int64_t, XPoly> w;
    w.emplace(0, XPoly::constant(Rational(1)));
    if (step > 0) {
        for (std::int64_t n = step; n < rel_bound; n += step) {
            XPoly acc;
            for (const auto& [j, uj] : rest) {
                if (j > n) break;
                auto it = w.find(n - j);
                if (it != w.end()) acc.add_product(uj, it->second);
            }
            if (!acc.is_zero()) w.emplace(n, -acc);
        }
    }
    Series r(a.scale(), order);
    for (auto& [n, p] : w) {
        XPoly q = p.shifted(-k);
        q *= cinv;
        r.add_poly(n - v, q);
    }
    return r;
}

Series geometric_factor(const MonomialArg& mu, std::int64_t order, std::int64_t scale) {
    const std::int64_t e = mu.qexp.on_lattice(scale);
    Series r(scale, order);
    if (e == 0) {
        if (mu.xdeg != 0)
            fail(ErrorKind::DenominatorNotExpandable,
                 "1/(1 - " + mu.str() + ") has no expansion in the bivariate ring");
        if (mu.sign > 0) fail(ErrorKind::PoleAtOne, "1/(1 - 1)");
        r.add_term(0, 0, Rational(1, 2));
        return r;
    }
    if (e > 0) {
        int s = 1;
        for (std::int64_t j = 0; checked::mul(j, e) < order; ++j) {
            r.add_term(j * e, checked::mul(j, mu.xdeg), Rational(s));
            s *= mu.sign;
        }
        return r;
    }
    // 1/(1 - mu) = -mu^{-1} / (1 - mu^{-1})
    int s = mu.sign; // sign of mu^{-(j+1)} is mu.sign^{j+1}
    for (std::int64_t j = 1; checked::mul(-e, j) < order; ++j) {
        r.add_term(-e * j, checked::mul(-mu.xdeg, j), Rational(-s));
        s *= mu.sign;
    }
    return r;
}

Series substitute(const Series& a, QExp u, const MonomialArg& mu, std::optional<XDegRange> tail,
                  std::optional<std::int64_t> out_scale) {
    if (u.sign() <= 0) fail(ErrorKind::InvalidArgument, "substitution q -> q^u needs u > 0");
    const QExp step = u * QExp(1, a.scale());
    std::int64_t scale = checked::lcm(step.den(), mu.qexp.den());
    if (out_scale) {
        if (*out_scale % scale != 0)
            fail(ErrorKind::ScaleMismatch, "requested output scale " + std::to_string(*out_scale) +
                                               " does not hold the image lattice 1/" + std::to_string(scale));
        scale = *out_scale;
    }
    std::int64_t order = kExact;
    if (!a.is_exact()) {
        QExp bound = a.order() * step;
        if (mu.qexp.num() != 0) {
            if (!tail)
                fail(ErrorKind::UnboundedTail,
                     "x -> " + mu.str() + " moves x-degree into q; the tail x-degree range is needed");
            bound = bound + std::min(tail->lo * mu.qexp, tail->hi * mu.qexp);
        }
        order = ceil_div(checked::mul(bound.num(), scale / bound.den()), 1);
    }
    Series r(scale, order);
    const std::int64_t step_num = step.on_lattice(scale);
    const std::int64_t mu_num = mu.qexp.on_lattice(scale);
    for (const auto& [e, p] : a.terms()) {
        for (const auto& [d, c] : p.terms()) {
            const std::int64_t ne = checked::add(checked::mul(e, step_num), checked::mul(d, mu_num));
            const bool flip = mu.sign < 0 && (d % 2 != 0);
            r.add_term(ne, checked::mul(d, mu.xdeg), flip ? Rational(-c) : c);
        }
    }
    return r;
}

Series specialize_x(const Series& a, int sign, QExp j, std::optional<XDegRange> tail,
                    std::optional<std::int64_t> out_scale) {
    return substitute(a, QExp(1), MonomialArg{sign, 0, j}, tail, out_scale);
}

std::pair<Series, Series> align(const Series& a, const Series& b) {
    const std::int64_t s = checked::lcm(a.scale(), b.scale());
    return {a.rescaled(s), b.rescaled(s)};
}

std::string DiffResult::str() const {
    if (equal) return "equal below q^" + (compared_order == kExact ? std::string("inf") : QExp(compared_order, scale).str());
    return "first mismatch at q^" + QExp(qexp, scale).str() + " x^" + std::to_string(xdeg) + ": " + lhs.get_str() +
           " vs " + rhs.get_str();
}

DiffResult diff_report(const Series& a, const Series& b) {
    if (a.scale() != b.scale())
        fail(ErrorKind::ScaleMismatch, "diff_report: scales 1/" + std::to_string(a.scale()) + " and 1/" +
                                           std::to_string(b.scale()));
    DiffResult r;
    r.scale = a.scale();
    r.compared_order = std::min(a.order(), b.order());
    auto ia = a.terms().begin();
    auto ib = b.terms().begin();
    static const XPoly zero;
    while (true) {
        const std::int64_t ea = ia == a.terms().end() ? kExact : ia->first;
        const std::int64_t eb = ib == b.terms().end() ? kExact : ib->first;
        const std::int64_t e = std::min(ea, eb);
        if (e >= r.compared_order || e == kExact) break;
        const XPoly& pa = ea == e ? ia->second : zero;
        const XPoly& pb = eb == e ? ib->second : zero;
        if (!(pa == pb)) {
            const XPoly diff = pa - pb;
            const std::int64_t d = diff.min_degree();
            r.equal = false;
            r.qexp = e;
            r.xdeg = d;
            r.lhs = pa.coeff(d);
            r.rhs = pb.coeff(d);
            return r;
        }
        if (ea == e) ++ia;
        if (eb == e) ++ib;
    }
    return r;
}

void write_series(std::ostream& os, const Series& s) {
    os << "scale=" << s.scale() << " order=";
    if (s.is_exact()) os << "inf";
    else os << s.order();
    os << "\n";
    for (const auto& [e, p] : s.terms())
        for (const auto& [d, c] : p.terms())
            os << e << " " << d << " " << c.get_num().get_str() << "/" << c.get_den().get_str() << "\n";
}

std::string format_series(const Series& s) {
    std::ostringstream os;
    write_series(os, s);
    return os.str();
}

Series parse_series(std::istream& is) {
    std::string header;
    if (!std::getline(is, header)) fail(ErrorKind::Schema, "empty series text");
    std::istringstream hs(header);
    std::string scale_tok, order_tok;
    hs >> scale_tok >> order_tok;
    if (scale_tok.rfind("scale=", 0) != 0 || order_tok.rfind("order=", 0) != 0)
        fail(ErrorKind::Schema, "bad series header '" + header + "'");
    const std::int64_t scale = std::stoll(scale_tok.substr(6));
    const std::string ord = order_tok.substr(6);
    Series s(scale, ord == "inf" ? kExact : std::stoll(ord));
    std::string line;
    std::int64_t lineno = 1;
    std::pair<std::int64_t, std::int64_t> last{std::numeric_limits<std::int64_t>::min(), 0};
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::int64_t e = 0, d = 0;
        std::string c;
        if (!(ls >> e >> d >> c) || c.find('/') == std::string::npos)
            fail(ErrorKind::Schema, "line " + std::to_string(lineno) + ": expected 'e_num x_deg num/den'");
        Rational v(c);
        v.canonicalize();
        if (std::pair{e, d} <= last)
            fail(ErrorKind::Schema, "line " + std::to_string(lineno) + ": terms out of order");
        last = {e, d};
        if (e >= s.order()) fail(ErrorKind::Schema, "line " + std::to_string(lineno) + ": exponent beyond order");
        s.add_term(e, d, v);
    }
    return s;
}

Series parse_series(const std::string& text) {
    std::istringstream is(text);
    return parse_series(is);
}

} // namespace qseries
