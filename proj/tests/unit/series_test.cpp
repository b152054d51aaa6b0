#include <doctest.h>

#include <sstream>

#include "../support/oracles.hpp"
#include "helpers.hpp"
#include "qseries/error.hpp"
#include "qseries/series.hpp"

using namespace qseries;
using testing::poly;
using testing::same;

TEST_SUITE("series") {

TEST_CASE("add") {
    const Series f = poly({{0, 0, 3}, {2, -1, 1}}, 10);
    CHECK(f + Series::zero() == f);
    CHECK((Series::one() + Series::constant(Rational(-1))).is_zero());
    const Series sum = poly({{0, 0, 1}, {1, 1, 1}}, 5) + poly({{0, 0, 1}, {1, 1, -1}}, 5);
    CHECK(sum == poly({{0, 0, 2}}, 5));
    CHECK((poly({}, 7) + poly({}, 4)).order() == 4);
}

TEST_CASE("scale mismatch") {
    CHECK_THROWS_AS(Series(1, 5) + Series(2, 10), Error);
    try {
        (void)(Series(1, 5) * Series(3, 10));
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ScaleMismatch);
    }
}

TEST_CASE("mul") {
    const Series f = poly({{0, 0, 2}, {3, 2, -1}}, 8);
    CHECK(f * Series::one() == f);
    CHECK(poly({{0, 0, 1}, {1, 1, -1}}) * poly({{0, 0, 1}, {1, 1, 1}}) == poly({{0, 0, 1}, {2, 2, -1}}));
    const Series e = oracle::euler_pentagonal(6);
    CHECK(e * e == poly({{0, 0, 1}, {1, 0, -2}, {2, 0, -1}, {3, 0, 2}, {4, 0, 1}, {5, 0, 2}}, 6));
}

TEST_CASE("mul order rule") {
    // q^2 known to q^6, (1 + q) known to q^5: product known to min(6 + 0, 5 + 2)
    const Series a = poly({{2, 0, 1}}, 6);
    const Series b = poly({{0, 0, 1}, {1, 0, 1}}, 5);
    CHECK((a * b).order() == 6);
}

TEST_CASE("invert_unit") {
    CHECK(invert_unit(Series::one(), 10) == Series::one(1, 10));
    const Series inv = invert_unit(poly({{0, 0, 1}, {1, 0, -1}}), 6);
    CHECK(inv == poly({{0, 0, 1}, {1, 0, 1}, {2, 0, 1}, {3, 0, 1}, {4, 0, 1}, {5, 0, 1}}, 6));
    CHECK(invert_unit(poly({{0, -1, -1}}), 5) == poly({{0, 1, -1}}, 5));
    try {
        (void)invert_unit(poly({{0, 0, 1}, {0, 3, 1}}, 5));
        FAIL("expected NotAUnit");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotAUnit);
    }
}

TEST_CASE("geometric_factor") {
    Series expect(1, 6);
    for (int j = 0; j < 6; ++j) expect.add_term(j, j, Rational(1));
    CHECK(geometric_factor(MonomialArg::x(1, QExp(1)), 6, 1) == expect);

    // 1/(1 - x^-1 q^-1) = -xq / (1 - xq)
    const Series neg = geometric_factor(MonomialArg::x(-1, QExp(-1)), 6, 1);
    Series expect_neg(1, 6);
    for (int j = 1; j < 6; ++j) expect_neg.add_term(j, j, Rational(-1));
    CHECK(neg == expect_neg);

    CHECK(geometric_factor(MonomialArg::q(QExp(0), -1), 6, 1) == Series::constant(Rational(1, 2), 1, 6));
    for (const auto& [mu, kind] : {std::pair{MonomialArg::x(2), ErrorKind::DenominatorNotExpandable},
                                   std::pair{MonomialArg::q(QExp(0)), ErrorKind::PoleAtOne}}) {
        try {
            (void)geometric_factor(mu, 6, 1);
            FAIL("expected an error");
        } catch (const Error& e) {
            CHECK(e.kind() == kind);
        }
    }
}

TEST_CASE("substitute") {
    const Series f = poly({{0, 0, 1}, {1, 1, 3}, {2, -1, 1}}, 8);
    CHECK(substitute(f, QExp(1), MonomialArg::x()) == f);
    CHECK(substitute(poly({{0, 0, 1}, {1, 0, 1}}, 5), QExp(2), MonomialArg::x()) ==
          poly({{0, 0, 1}, {2, 0, 1}}, 10));
    const Series g = substitute(poly({{0, 0, 1}, {1, 1, 1}}), QExp(1), MonomialArg::q(QExp(1), -1));
    CHECK(g == poly({{0, 0, 1}, {2, 0, -1}}));
}

TEST_CASE("substitute needs a tail range when x carries q") {
    try {
        (void)substitute(poly({{0, 1, 1}}, 5), QExp(1), MonomialArg::q(QExp(1)));
        FAIL("expected UnboundedTail");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::UnboundedTail);
    }
}

TEST_CASE("specialize_x") {
    CHECK(specialize_x(poly({{0, 0, 1}, {1, 1, 1}}), 1, QExp(1)) == poly({{0, 0, 1}, {2, 0, 1}}));
    CHECK(specialize_x(poly({{0, 1, 1}, {0, -1, 1}}), -1, QExp(1)) == poly({{-1, 0, -1}, {1, 0, -1}}));
    const Series f = poly({{0, 2, 3}, {0, -1, 4}, {2, 0, 1}, {2, 5, -2}});
    CHECK(specialize_x(f, 1, QExp(0)) == poly({{0, 0, 7}, {2, 0, -1}}));
    const Series half = specialize_x(poly({{0, 1, 1}}), 1, QExp(1, 2));
    CHECK(half.scale() == 2);
    CHECK(half == poly({{1, 0, 1}}, kExact, 2));
}

TEST_CASE("diff_report") {
    const Series f = poly({{0, 0, 1}, {3, 2, 4}}, 10);
    CHECK(diff_report(f, f).equal);
    const DiffResult d = diff_report(poly({{0, 0, 1}}, 10), poly({{0, 0, 1}, {5, 0, 1}}, 10));
    CHECK_FALSE(d.equal);
    CHECK(d.qexp == 5);
    CHECK(d.xdeg == 0);
    CHECK(d.lhs == 0);
    CHECK(d.rhs == 1);
    CHECK(diff_report(poly({{0, 0, 1}}, 3), poly({{0, 0, 1}, {5, 0, 1}}, 3)).equal);
}

TEST_CASE("rescale and truncate") {
    const Series f = poly({{0, 0, 1}, {1, 1, 2}}, 4);
    const Series g = f.rescaled(6);
    CHECK(g.scale() == 6);
    CHECK(g.order() == 24);
    CHECK(g.coeff(6, 1) == 2);
    CHECK(f.truncated(1) == poly({{0, 0, 1}}, 1));
}

TEST_CASE("print format round trip") {
    const Series f = poly({{-2, 1, 3}, {0, 0, 1}, {5, -3, -7}}, 9, 4);
    const std::string text = format_series(f);
    CHECK(text == "scale=4 order=9\n-2 1 3/1\n0 0 1/1\n5 -3 -7/1\n");
    CHECK(parse_series(text) == f);
    CHECK(parse_series(format_series(Series::one())).is_exact());
    CHECK_THROWS_AS(parse_series(std::string("bogus\n")), Error);
}

TEST_CASE("invariants: no zero coefficients, exponents below order") {
    Series s(1, 5);
    s.add_term(1, 0, Rational(2));
    s.add_term(1, 0, Rational(-2));
    s.add_term(7, 0, Rational(1));
    CHECK(s.is_zero());
}

TEST_CASE("overflow is checked") {
    const Series big = poly({{std::numeric_limits<std::int64_t>::max() / 2 + 1, 0, 1}});
    CHECK_THROWS_AS((void)(big * big), Error);
}

}
