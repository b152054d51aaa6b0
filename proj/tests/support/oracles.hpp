#pragma once

// Independent reference implementations. Everything here is written from the
// defining formulas with plain loops so it shares no code paths with the
// library's builders beyond the Series container itself.

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "qseries/series.hpp"

namespace oracle {

using qseries::MonomialArg;
using qseries::QExp;
using qseries::Rational;
using qseries::Series;

using Dense = std::map<std::pair<std::int64_t, std::int64_t>, Rational>;

Dense to_dense(const Series& s);
Series from_dense(const Dense& d, std::int64_t scale, std::int64_t order);

/// Small random series with `terms` terms, q-exponents in [lo, order) and
/// x-degrees in [-xspan, xspan], integer coefficients in [-5, 5].
Series random_series(std::mt19937_64& rng, std::int64_t order, int terms, std::int64_t lo = 0,
                     std::int64_t xspan = 2, std::int64_t scale = 1);
/// Random series whose lowest term is a single monomial.
Series random_unit(std::mt19937_64& rng, std::int64_t order);

Series naive_mul(const Series& a, const Series& b);

/// (q;q)_inf from the pentagonal number theorem.
Series euler_pentagonal(std::int64_t order, std::int64_t scale = 1);
/// sum_n (-1)^n q^(base C(n,2)) arg^n over a generous window.
Series theta_sum(const MonomialArg& arg, std::int64_t base, std::int64_t order);
/// q-binomial as a sum over k-subsets of {0..n-1}.
Series gaussian_subsets(std::int64_t n, std::int64_t k);
/// H_n(t, m; b; q) by plain nested chain loops.
Series gordon_h_chains(std::int64_t t, std::int64_t m, int b, std::int64_t n);
/// Gordon frequency generating function by exhaustive enumeration.
Series gordon_g_brute(std::int64_t k, std::int64_t i, std::int64_t i_end, std::int64_t length,
                      std::int64_t order);
/// theta_{p,m} over the box |r|, |s| <= radius on lattice `scale`.
Series theta_pm_box(std::int64_t t, std::int64_t p, std::int64_t m, std::int64_t order, std::int64_t radius);
/// f_{a,b,c}(x, y; q) over the box |r|, |s| <= radius.
Series f_abc_box(std::int64_t a, std::int64_t b, std::int64_t c, const MonomialArg& x, const MonomialArg& y,
                 std::int64_t order, std::int64_t radius);

struct PropertyResult {
    std::string name;
    std::size_t checks = 0;
    std::size_t failures = 0;
    std::string first_failure;
};

PropertyResult ring_axioms(std::uint64_t seed, int trials);
PropertyResult mul_matches_naive(std::uint64_t seed, int trials);
PropertyResult invert_round_trip(std::uint64_t seed, int trials);
PropertyResult geometric_round_trip(std::uint64_t seed, int trials);
PropertyResult substitute_homomorphism(std::uint64_t seed, int trials);
PropertyResult theta_over_factor_reconstruction(std::int64_t max_h, std::int64_t order);
PropertyResult q_pascal(std::int64_t max_n);
PropertyResult gaussian_at_one(std::int64_t max_n);

std::vector<PropertyResult> all_properties();

} // namespace oracle
