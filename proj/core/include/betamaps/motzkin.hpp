#pragma once

// Motzkin bridges with a permutation profile, step classification and the
// enumeration of compatible permutations S^gamma.

#include <functional>
#include <string>
#include <vector>

#include "betamaps/perm.hpp"

namespace betamaps {

// A height function gamma on [k] with |gamma(i) - gamma(theta(i))| <= 1.
struct MotzkinBridge {
    Perm theta;               // profile, on {1,...,k} unbarred
    std::vector<int> gamma;   // gamma[i-1] = height at label i

    int k() const { return static_cast<int>(gamma.size()); }
    int height(const Label& l) const { return gamma[l.index - 1]; }
    int min_height() const;
    int max_height() const;
    bool is_valid() const;        // step constraint, nonnegative heights
    bool is_normalized() const;   // min gamma = 0

    std::string heights_string() const;  // "0,1,0,1"
    friend bool operator==(const MotzkinBridge&, const MotzkinBridge&) = default;
};

struct StepClasses {
    LabelSet plus, zero, minus;  // Delta_+, Delta_0, Delta_-
};

StepClasses step_sets(const MotzkinBridge& b);

// All bridges in Motz_{k,0}(theta) (min 0, heights capped at k/2), each
// exactly once, in a deterministic order (cycle by cycle, lexicographic).
void enumerate_bridges(const Perm& theta,
                       const std::function<void(const MotzkinBridge&)>& emit);
std::vector<MotzkinBridge> enumerate_bridges(const Perm& theta);

// All sigma compatible with gamma: gamma o sigma = gamma, identity on
// Delta_+, level-preserving permutation of Delta_-, level-wise matching
// on Delta_0. Empty iff some Delta_0 level has odd size.
void compatible_perms(const MotzkinBridge& b,
                      const std::function<void(const Perm&)>& emit);
std::vector<Perm> compatible_perms(const MotzkinBridge& b);

bool is_compatible(const MotzkinBridge& b, const Perm& sigma);

}  // namespace betamaps
