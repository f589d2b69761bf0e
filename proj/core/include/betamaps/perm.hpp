#pragma once

// Permutation algebra on finite label sets, with optional "barred" labels
// (written with a trailing apostrophe in ASCII cycle notation: "(3',4)").

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace betamaps {

using BigInt = boost::multiprecision::cpp_int;

struct Label {
    int index = 0;   // positive
    bool barred = false;

    friend constexpr auto operator<=>(const Label& a, const Label& b) {
        // all unbarred labels precede all barred ones; numeric within a class
        if (a.barred != b.barred) return a.barred <=> b.barred;
        return a.index <=> b.index;
    }
    friend constexpr bool operator==(const Label&, const Label&) = default;

    Label bar() const { return Label{index, !barred}; }
};

inline Label L(int i) { return Label{i, false}; }
inline Label LB(int i) { return Label{i, true}; }

std::string to_string(const Label& l);

using LabelSet = std::vector<Label>;  // kept sorted, unique

LabelSet make_label_set(std::vector<Label> v);
LabelSet range_set(int n);                      // {1,...,n}
LabelSet barred_range_set(int n);               // {1,...,n, 1',...,n'}
bool set_contains(const LabelSet& s, const Label& l);
LabelSet set_union(const LabelSet& a, const LabelSet& b);

// A permutation of a finite set of labels. Stored as a dense image array
// over the sorted universe.
class Perm {
  public:
    Perm() = default;
    static Perm identity(LabelSet universe);
    // cycles given as label lists; labels not mentioned are fixed points of
    // the given universe. If universe is empty it is taken to be the support.
    static Perm from_cycles(const std::vector<std::vector<Label>>& cycles,
                            LabelSet universe = {});
    static Perm from_images(LabelSet universe, std::vector<Label> images);

    const LabelSet& universe() const { return uni_; }
    int size() const { return static_cast<int>(uni_.size()); }

    Label apply(const Label& l) const { return uni_[img_[pos(l)]]; }
    Label operator()(const Label& l) const { return apply(l); }
    Label apply_inverse(const Label& l) const;
    Label apply_power(const Label& l, long long p) const;

    Perm inverse() const;
    // (a * b)(x) = a(b(x)); universes must coincide
    friend Perm operator*(const Perm& a, const Perm& b);

    bool is_identity() const;
    // canonical cycle form: each cycle starts at its smallest label,
    // cycles sorted by smallest label; includes fixed points
    std::vector<std::vector<Label>> cycles() const;
    std::vector<std::vector<Label>> nontrivial_cycles() const;
    int num_cycles() const;                      // #sigma
    int length() const { return size() - num_cycles(); }  // |sigma|
    bool is_matching() const;                    // fixed-point-free involution

    // positional access (universe index space), for hot loops
    int pos(const Label& l) const;
    int img_at(int p) const { return img_[p]; }

    friend bool operator==(const Perm& a, const Perm& b) = default;
    friend auto operator<=>(const Perm& a, const Perm& b) = default;

    std::string to_cycle_string() const;

  private:
    LabelSet uni_;
    std::vector<int> img_;  // img_[pos(x)] = pos(sigma(x))
};

// Parse cycle notation, e.g. "(1,2)(3',4)". Whitespace is ignored.
// The universe is the set of labels that appear.
Perm parse_perm(const std::string& text);
// Same, but with an explicit universe (labels not mentioned are fixed).
Perm parse_perm(const std::string& text, const LabelSet& universe);

// min{p >= 1 : pi^p(j) in I}
int jump(const Perm& pi, const LabelSet& I, const Label& j);

// pi|_{I->I}(j) = pi^{jump(pi,I,j)}(j)
Perm restriction(const Perm& pi, const LabelSet& I);

// orbits of the group generated by gens on the common universe
std::vector<LabelSet> orbits(const std::vector<Perm>& gens);
bool is_transitive(const std::vector<Perm>& gens);

// all fixed-point-free involutions of I, smallest-unmatched-first order;
// empty when #I is odd
void enumerate_matchings(const LabelSet& I,
                         const std::function<void(const Perm&)>& emit);
std::vector<Perm> enumerate_matchings(const LabelSet& I);
BigInt double_factorial(long long k);  // k!! with (-1)!! = 1

// #{sigma in S_n : |sigma| = i} (unsigned Stirling count c(n, n-i))
BigInt count_by_length(int n, int i);

// cycles (u1,...,ud) -> (bar(ud),...,bar(u1)) on the barred universe
Perm bar_conjugate(const Perm& sigma);

}  // namespace betamaps
