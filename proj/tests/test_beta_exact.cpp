#include <doctest.h>

#include <algorithm>
#include <set>

#include "betamaps/beta_exact.hpp"

using namespace betamaps;

namespace {

const BivariatePoly kN = BivariatePoly::var_N();
const BivariatePoly kU = BivariatePoly::var_u();
const BivariatePoly kOne = BivariatePoly(Rational(1));

Rational int_pow(int base, int e) {
    Rational r = 1;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

}  // namespace

TEST_CASE("theta_of_profile") {
    CHECK(theta_of_profile({{2, 3}}) == parse_perm("(1,2)(3,4,5)"));
    CHECK(theta_of_profile({{4}}) == parse_perm("(1,2,3,4)"));
    CHECK(theta_of_profile({{1, 1}}) == Perm::identity(range_set(2)));
}

TEST_CASE("bernoulli") {
    CHECK(bernoulli(0) == 1);
    CHECK(bernoulli(1) == Rational(1, 2));
    CHECK(bernoulli(2) == Rational(1, 6));
    CHECK(bernoulli(3) == 0);
    CHECK(bernoulli(4) == Rational(-1, 30));
    CHECK(bernoulli(5) == 0);
    CHECK(bernoulli(6) == Rational(1, 42));
}

TEST_CASE("faulhaber") {
    CHECK(faulhaber_sum(0) == kN);
    CHECK(faulhaber_sum(1) ==
          BivariatePoly::term(2, 0, Rational(1, 2)) +
              BivariatePoly::term(1, 0, Rational(1, 2)));
    CHECK(faulhaber_sum(2) == BivariatePoly::term(3, 0, Rational(1, 3)) +
                                  BivariatePoly::term(2, 0, Rational(1, 2)) +
                                  BivariatePoly::term(1, 0, Rational(1, 6)));
    for (int u = 0; u <= 6; ++u)
        for (int N = 0; N <= 8; ++N) {
            Rational direct = 0;
            for (int h = 1; h <= N; ++h) direct += int_pow(h, u);
            CHECK(faulhaber_sum(u).evaluate(N, 0) == direct);
        }
}

TEST_CASE("gaussian and chi moments") {
    CHECK(gaussian_moment(0) == 1);
    CHECK(gaussian_moment(4) == 3);
    CHECK(gaussian_moment(5) == 0);
    CHECK(gaussian_moment(8) == 105);

    CHECK(chi_even_moment(1) == UniPoly{0, 1});
    CHECK(chi_even_moment(2) == UniPoly{0, 1, 1});
    CHECK(chi_even_moment(3) == UniPoly{0, 2, 3, 1});
    for (int n = 1; n <= 6; ++n)
        CHECK(chi_even_moment(n) == chi_even_moment_stirling(n));
}

TEST_CASE("worked n=2 cumulant") {
    BivariatePoly expected = kN * kN + (kU - kOne) * kN;
    CHECK(cumulant_exact({{2}}) == expected);
    CHECK(moment_exact({{2}}) == expected);
    CHECK(moment_exact({{1}}).is_zero());
    CHECK(cumulant_exact({{1, 2}}).is_zero());
}

TEST_CASE("kappa_2(1,1) = uN") {
    CHECK(cumulant_exact({{1, 1}}) == kU * kN);
}

TEST_CASE("moment-cumulant partition identity on (2,2)") {
    PolyTable cums;
    cums[{2}] = cumulant_exact({{2}});
    cums[{2, 2}] = cumulant_exact({{2, 2}});
    PolyTable moms = moments_from_cumulants(cums);
    CHECK(moms.at({2, 2}) == moment_exact({{2, 2}}));
    CHECK(cumulants_from_moments(moms) == cums);
    PolyTable incomplete;
    incomplete[{2, 2}] = moment_exact({{2, 2}});
    CHECK_THROWS(cumulants_from_moments(incomplete));
}

TEST_CASE("set partitions") {
    // Bell numbers, and every visit is a genuine partition of {0,...,n-1}
    const int bell[] = {1, 1, 2, 5, 15, 52};
    for (int n = 0; n <= 5; ++n) {
        int count = 0;
        std::set<std::vector<std::vector<int>>> seen;
        for_each_set_partition(n, [&](const std::vector<std::vector<int>>& blocks) {
            ++count;
            std::vector<int> all;
            for (const auto& b : blocks) {
                CHECK_FALSE(b.empty());
                all.insert(all.end(), b.begin(), b.end());
            }
            std::sort(all.begin(), all.end());
            std::vector<int> expect(n);
            for (int i = 0; i < n; ++i) expect[i] = i;
            CHECK(all == expect);
            CHECK(seen.insert(blocks).second);
        });
        CHECK(count == bell[n]);
    }
}

TEST_CASE("brackets for the edge profile") {
    Perm theta = parse_perm("(1,2)");
    CHECK(bracket(theta, 0, 0) == 2);
    CHECK(bracket(theta, 1, 0) == 1);
    CHECK(bracket(theta, 0, 1) == 2);
    CHECK(bracket(theta, 0, 2) == 0);
    // conjugation invariance: (2,4) versus (4,2) block orders
    Perm a = theta_of_profile({{2, 4}});
    Perm b = theta_of_profile({{4, 2}});
    for (int p = 0; p <= 3; ++p)
        for (int q = 0; q <= 3; ++q) CHECK(bracket(a, p, q) == bracket(b, p, q));
}

TEST_CASE("expansion terms of kappa_1(2)") {
    auto terms = cumulant_expansion_terms({{2}});
    CHECK(terms.size() == 4);
    CHECK(terms.at({0, 0, 0, 1}) == kN * kN);
    CHECK(terms.at({1, 0, 0, 0}) == kU * kN);
    CHECK(terms.at({0, 1, 0, 0}) == BivariatePoly::term(1, 0, -2));
    CHECK(terms.at({0, 0, 1, 0}) == kN);
}

TEST_CASE("expansion reassembles the exact cumulant") {
    for (const Profile& p :
         {Profile{{2}}, Profile{{4}}, Profile{{2, 2}}, Profile{{1, 3}}}) {
        int n = p.total(), l = p.l();
        BivariatePoly sum;
        for (const auto& [v, c] : cumulant_expansion(p)) {
            BivariatePoly scale = BivariatePoly::term(n / 2 - l + 2 - v, l - 1, 1);
            sum += c * scale;
        }
        CHECK(sum == cumulant_exact(p));
    }
}

TEST_CASE("Catalan leading coefficients") {
    for (int n : {2, 4, 6}) {
        auto exp = cumulant_expansion({{n}});
        REQUIRE(!exp.empty());
        CHECK(exp.front().first == 0);
        BigInt cat[] = {1, 1, 2, 5, 14};
        CHECK(exp.front().second == BivariatePoly(Rational(cat[n / 2])));
    }
}

TEST_CASE("parallel reduction matches sequential") {
    for (const Profile& p : {Profile{{4}}, Profile{{2, 2}}, Profile{{3, 3}}}) {
        CHECK(cumulant_exact(p, 4) == cumulant_exact(p, 1));
        CHECK(moment_exact(p, 3) == moment_exact(p, 1));
    }
}
