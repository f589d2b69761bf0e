#include <doctest.h>

#include <set>

#include "betamaps/perm.hpp"

using namespace betamaps;

TEST_CASE("label ordering and bar") {
    CHECK(L(3) < L(4));
    CHECK(L(7) < LB(1));
    CHECK(LB(2) < LB(5));
    CHECK(L(3).bar() == LB(3));
    CHECK(LB(3).bar() == L(3));
    CHECK(to_string(L(3)) == "3");
    CHECK(to_string(LB(3)) == "3'");
}

TEST_CASE("cycle notation round trip") {
    for (const char* s : {"(1,2)", "(1,2)(3',4)", "(1)(2,3)(4,9,6,5)(7,8,10)"}) {
        Perm p = parse_perm(s);
        CHECK(parse_perm(p.to_cycle_string()) == p);
    }
    Perm p = parse_perm("(3',4)");
    CHECK(p.apply(LB(3)) == L(4));
    CHECK(p.apply(L(4)) == LB(3));
    CHECK_THROWS(parse_perm("(1,2"));
    CHECK_THROWS(parse_perm("(1,1)"));
}

TEST_CASE("composition order and length identity") {
    Perm a = parse_perm("(1,2)", range_set(3));
    Perm b = parse_perm("(2,3)", range_set(3));
    // (a*b)(x) = a(b(x))
    CHECK((a * b).apply(L(2)) == L(3));
    CHECK((a * b).apply(L(3)) == L(1));
    for (const Perm& p : {a, b, a * b}) CHECK(p.length() + p.num_cycles() == p.size());
    CHECK((a * b).length() == 2);
    CHECK(a.inverse() == a);
    CHECK((a * b).inverse() == b * a);
}

TEST_CASE("jump") {
    Perm pi = parse_perm("(1,2,3,4)");
    CHECK(jump(pi, make_label_set({L(1), L(2)}), L(2)) == 3);
    CHECK(jump(Perm::identity(range_set(2)), range_set(2), L(1)) == 1);
    Perm pi2 = parse_perm("(5,6,7)");
    CHECK(jump(pi2, make_label_set({L(5), L(6)}), L(6)) == 2);
    CHECK_THROWS(jump(pi, make_label_set({L(1), L(2)}), L(3)));
}

TEST_CASE("restriction") {
    Perm theta = parse_perm("(1,2,3,4)(5,6,7)(8,9,10,11,12)(13,14,15,16)");
    LabelSet I = make_label_set(
        {L(1), L(2), L(5), L(6), L(8), L(11), L(12), L(13), L(14)});
    CHECK(restriction(theta, I) == parse_perm("(1,2)(5,6)(8,11,12)(13,14)"));
    CHECK(restriction(theta, theta.universe()) == theta);
    CHECK(restriction(parse_perm("(1,2,3)"), make_label_set({L(2)})) ==
          Perm::identity(make_label_set({L(2)})));
    CHECK(restriction(theta, {}).size() == 0);
}

TEST_CASE("orbits and transitivity") {
    Perm a = parse_perm("(1,2)", range_set(3));
    Perm b = parse_perm("(2,3)", range_set(3));
    CHECK(orbits({a, b}).size() == 1);
    CHECK(is_transitive({a, b}));
    CHECK(orbits({Perm::identity(range_set(2))}).size() == 2);
    CHECK(is_transitive({parse_perm("(1,2)(3,4)", range_set(4)),
                         parse_perm("(2,3)", range_set(4))}));
    CHECK_THROWS(orbits({parse_perm("(1,2)"), parse_perm("(2,3)")}));
}

TEST_CASE("matchings") {
    CHECK(enumerate_matchings(range_set(2)) ==
          std::vector<Perm>{parse_perm("(1,2)")});
    auto m4 = enumerate_matchings(range_set(4));
    CHECK(m4.size() == 3);
    std::set<Perm> distinct(m4.begin(), m4.end());
    CHECK(distinct.size() == 3);
    for (const auto& m : m4) CHECK(m.is_matching());
    CHECK(enumerate_matchings(range_set(3)).empty());
    CHECK(enumerate_matchings(range_set(8)).size() == 105);
    CHECK(double_factorial(-1) == 1);
    CHECK(double_factorial(7) == 105);
}

TEST_CASE("count_by_length") {
    CHECK(count_by_length(3, 0) == 1);
    CHECK(count_by_length(3, 1) == 3);
    CHECK(count_by_length(3, 2) == 2);
    CHECK(count_by_length(3, 3) == 0);
    for (int n = 1; n <= 6; ++n) {
        BigInt total = 0, fact = 1;
        for (int i = 0; i < n; ++i) total += count_by_length(n, i);
        for (int i = 2; i <= n; ++i) fact *= i;
        CHECK(total == fact);
    }
}

TEST_CASE("bar_conjugate") {
    CHECK(bar_conjugate(parse_perm("(1,2,3)")) == parse_perm("(3',2',1')"));
    CHECK(bar_conjugate(Perm::identity(range_set(2))) ==
          Perm::identity(make_label_set({LB(1), LB(2)})));
    CHECK(bar_conjugate(parse_perm("(1,2)", range_set(3))) ==
          parse_perm("(2',1')", make_label_set({LB(1), LB(2), LB(3)})));
    // reverses composition, commutes with inversion
    Perm a = parse_perm("(1,2,3)", range_set(4));
    Perm b = parse_perm("(2,4)", range_set(4));
    CHECK(bar_conjugate(a) * bar_conjugate(b) == bar_conjugate(b * a));
    CHECK(bar_conjugate(a).inverse() == bar_conjugate(a.inverse()));
}
