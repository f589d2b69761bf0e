#include "betamaps/motzkin.hpp"

#include <algorithm>
#include <map>

namespace betamaps {

int MotzkinBridge::min_height() const {
    return *std::min_element(gamma.begin(), gamma.end());
}

int MotzkinBridge::max_height() const {
    return *std::max_element(gamma.begin(), gamma.end());
}

bool MotzkinBridge::is_valid() const {
    if (static_cast<int>(gamma.size()) != theta.size()) return false;
    for (int i = 1; i <= k(); ++i) {
        if (gamma[i - 1] < 0) return false;
        int j = theta.apply(L(i)).index;
        if (std::abs(gamma[i - 1] - gamma[j - 1]) > 1) return false;
    }
    return true;
}

bool MotzkinBridge::is_normalized() const { return is_valid() && min_height() == 0; }

std::string MotzkinBridge::heights_string() const {
    std::string s;
    for (size_t i = 0; i < gamma.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(gamma[i]);
    }
    return s;
}

StepClasses step_sets(const MotzkinBridge& b) {
    StepClasses sc;
    for (int i = 1; i <= b.k(); ++i) {
        int d = b.gamma[b.theta.apply(L(i)).index - 1] - b.gamma[i - 1];
        if (d == 1)
            sc.plus.push_back(L(i));
        else if (d == -1)
            sc.minus.push_back(L(i));
        else
            sc.zero.push_back(L(i));
    }
    return sc;
}

namespace {

// heights along one cycle of theta, assigned in cycle order, all in [0, cap]
void cycle_walks(const std::vector<Label>& cycle, int cap, size_t idx,
                 std::vector<int>& walk,
                 const std::function<void(const std::vector<int>&)>& emit) {
    if (idx == cycle.size()) {
        if (std::abs(walk.back() - walk.front()) <= 1) emit(walk);
        return;
    }
    for (int step = -1; step <= 1; ++step) {
        int h = walk[idx - 1] + step;
        if (h < 0 || h > cap) continue;
        walk.push_back(h);
        cycle_walks(cycle, cap, idx + 1, walk, emit);
        walk.pop_back();
    }
}

void bridges_rec(const std::vector<std::vector<Label>>& cycles, size_t ci, int cap,
                 std::vector<int>& gamma, const Perm& theta,
                 const std::function<void(const MotzkinBridge&)>& emit) {
    if (ci == cycles.size()) {
        if (*std::min_element(gamma.begin(), gamma.end()) == 0)
            emit(MotzkinBridge{theta, gamma});
        return;
    }
    const auto& cycle = cycles[ci];
    for (int h0 = 0; h0 <= cap; ++h0) {
        std::vector<int> walk{h0};
        cycle_walks(cycle, cap, 1, walk, [&](const std::vector<int>& w) {
            for (size_t t = 0; t < cycle.size(); ++t) gamma[cycle[t].index - 1] = w[t];
            bridges_rec(cycles, ci + 1, cap, gamma, theta, emit);
        });
    }
}

}  // namespace

void enumerate_bridges(const Perm& theta,
                       const std::function<void(const MotzkinBridge&)>& emit) {
    int k = theta.size();
    if (k == 0) return;
    int cap = k / 2;
    auto cycles = theta.cycles();
    std::vector<int> gamma(k, 0);
    bridges_rec(cycles, 0, cap, gamma, theta, emit);
}

std::vector<MotzkinBridge> enumerate_bridges(const Perm& theta) {
    std::vector<MotzkinBridge> out;
    enumerate_bridges(theta, [&](const MotzkinBridge& b) { out.push_back(b); });
    return out;
}

namespace {

// enumerate all permutations of each set in `blocks` (heights of Delta_-),
// then all matchings of each set in `match_blocks` (heights of Delta_0),
// composing everything into sigma
void perms_of_blocks(const std::vector<LabelSet>& blocks, size_t bi,
                     std::vector<std::pair<Label, Label>>& assignment,
                     const std::function<void()>& done) {
    if (bi == blocks.size()) {
        done();
        return;
    }
    const LabelSet& block = blocks[bi];
    std::vector<Label> perm(block.begin(), block.end());
    std::sort(perm.begin(), perm.end());
    do {
        size_t base = assignment.size();
        for (size_t i = 0; i < block.size(); ++i) assignment.push_back({block[i], perm[i]});
        perms_of_blocks(blocks, bi + 1, assignment, done);
        assignment.resize(base);
    } while (std::next_permutation(perm.begin(), perm.end()));
}

void matchings_of_blocks(const std::vector<LabelSet>& blocks, size_t bi,
                         std::vector<std::pair<Label, Label>>& assignment,
                         const std::function<void()>& done) {
    if (bi == blocks.size()) {
        done();
        return;
    }
    enumerate_matchings(blocks[bi], [&](const Perm& m) {
        size_t base = assignment.size();
        for (const auto& l : blocks[bi]) assignment.push_back({l, m.apply(l)});
        matchings_of_blocks(blocks, bi + 1, assignment, done);
        assignment.resize(base);
    });
}

}  // namespace

void compatible_perms(const MotzkinBridge& b,
                      const std::function<void(const Perm&)>& emit) {
    StepClasses sc = step_sets(b);
    std::map<int, LabelSet> minus_levels, zero_levels;
    for (const auto& l : sc.minus) minus_levels[b.height(l)].push_back(l);
    for (const auto& l : sc.zero) zero_levels[b.height(l)].push_back(l);
    for (const auto& [h, s] : zero_levels)
        if (s.size() % 2 != 0) return;  // no matching possible

    std::vector<LabelSet> mblocks, zblocks;
    for (auto& [h, s] : minus_levels) mblocks.push_back(s);
    for (auto& [h, s] : zero_levels) zblocks.push_back(s);

    LabelSet uni = range_set(b.k());
    std::vector<std::pair<Label, Label>> assignment;
    perms_of_blocks(mblocks, 0, assignment, [&] {
        matchings_of_blocks(zblocks, 0, assignment, [&] {
            std::vector<Label> images;
            images.reserve(uni.size());
            for (const auto& l : uni) images.push_back(l);
            for (const auto& [from, to] : assignment) images[from.index - 1] = to;
            emit(Perm::from_images(uni, std::move(images)));
        });
    });
}

std::vector<Perm> compatible_perms(const MotzkinBridge& b) {
    std::vector<Perm> out;
    compatible_perms(b, [&](const Perm& p) { out.push_back(p); });
    return out;
}

bool is_compatible(const MotzkinBridge& b, const Perm& sigma) {
    if (sigma.universe() != range_set(b.k())) return false;
    StepClasses sc = step_sets(b);
    for (int i = 1; i <= b.k(); ++i) {
        Label x = L(i), y = sigma.apply(x);
        if (b.height(x) != b.height(y)) return false;
    }
    for (const auto& l : sc.plus)
        if (sigma.apply(l) != l) return false;
    for (const auto& l : sc.minus)
        if (!set_contains(sc.minus, sigma.apply(l))) return false;
    for (const auto& l : sc.zero) {
        Label m = sigma.apply(l);
        if (m == l || !set_contains(sc.zero, m)) return false;
        if (sigma.apply(m) != l) return false;
    }
    return true;
}

}  // namespace betamaps
