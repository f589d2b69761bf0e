#pragma once

// Exact sparse bivariate polynomials in N and u := 2/beta.

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace betamaps {

using Rational = boost::multiprecision::cpp_rational;

std::string rational_to_string(const Rational& r);     // "p/q", or "p" when q = 1
Rational rational_from_string(const std::string& s);

class BivariatePoly {
  public:
    // key: (N-exponent, u-exponent)
    using Key = std::pair<int, int>;
    using Terms = std::map<Key, Rational>;

    BivariatePoly() = default;
    explicit BivariatePoly(const Rational& c);
    static BivariatePoly term(int n_exp, int u_exp, const Rational& coeff);
    static BivariatePoly var_N() { return term(1, 0, 1); }
    static BivariatePoly var_u() { return term(0, 1, 1); }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Rational coeff(int n_exp, int u_exp) const;

    BivariatePoly& operator+=(const BivariatePoly& o);
    BivariatePoly& operator-=(const BivariatePoly& o);
    friend BivariatePoly operator+(BivariatePoly a, const BivariatePoly& b) { return a += b; }
    friend BivariatePoly operator-(BivariatePoly a, const BivariatePoly& b) { return a -= b; }
    friend BivariatePoly operator*(const BivariatePoly& a, const BivariatePoly& b);
    BivariatePoly& operator*=(const BivariatePoly& o) { return *this = *this * o; }
    BivariatePoly& operator*=(const Rational& c);
    friend bool operator==(const BivariatePoly&, const BivariatePoly&) = default;

    Rational evaluate(const Rational& N, const Rational& u) const;
    // coefficient of N^k, as a polynomial in u
    BivariatePoly coeff_of_N(int k) const;
    int degree_N() const;  // -1 for the zero polynomial
    int degree_u() const;
    // divide by u^k; throws if not divisible
    BivariatePoly shift_down_u(int k) const;

    // canonical interchange format:
    // {"vars":["N","u"],"terms":[{"N":2,"u":0,"coeff":"1"},...]}
    // terms ordered by N-exponent descending, then u-exponent descending
    std::string to_json() const;
    static BivariatePoly from_json(const std::string& json_text);

    std::string to_pretty_string() const;  // human-readable, e.g. "N^2 + (u-1)*N"

  private:
    void prune(const Key& k);
    Terms terms_;
};

}  // namespace betamaps
