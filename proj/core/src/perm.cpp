#include "betamaps/perm.hpp"

#include <cctype>
#include <numeric>
#include <sstream>

namespace betamaps {

std::string to_string(const Label& l) {
    std::string s = std::to_string(l.index);
    if (l.barred) s += '\'';
    return s;
}

LabelSet make_label_set(std::vector<Label> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

LabelSet range_set(int n) {
    LabelSet s;
    s.reserve(n);
    for (int i = 1; i <= n; ++i) s.push_back(L(i));
    return s;
}

LabelSet barred_range_set(int n) {
    LabelSet s;
    s.reserve(2 * n);
    for (int i = 1; i <= n; ++i) s.push_back(L(i));
    for (int i = 1; i <= n; ++i) s.push_back(LB(i));
    return s;
}

bool set_contains(const LabelSet& s, const Label& l) {
    return std::binary_search(s.begin(), s.end(), l);
}

LabelSet set_union(const LabelSet& a, const LabelSet& b) {
    LabelSet out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

Perm Perm::identity(LabelSet universe) {
    Perm p;
    p.uni_ = std::move(universe);
    p.img_.resize(p.uni_.size());
    std::iota(p.img_.begin(), p.img_.end(), 0);
    return p;
}

int Perm::pos(const Label& l) const {
    auto it = std::lower_bound(uni_.begin(), uni_.end(), l);
    if (it == uni_.end() || *it != l)
        throw std::domain_error("label " + to_string(l) + " not in universe");
    return static_cast<int>(it - uni_.begin());
}

Perm Perm::from_cycles(const std::vector<std::vector<Label>>& cycles, LabelSet universe) {
    if (universe.empty()) {
        std::vector<Label> all;
        for (const auto& c : cycles) all.insert(all.end(), c.begin(), c.end());
        universe = make_label_set(std::move(all));
    }
    Perm p = identity(universe);
    std::vector<char> seen(universe.size(), 0);
    for (const auto& c : cycles) {
        for (size_t i = 0; i < c.size(); ++i) {
            int from = p.pos(c[i]);
            int to = p.pos(c[(i + 1) % c.size()]);
            if (seen[from]) throw std::domain_error("label repeated in cycles");
            seen[from] = 1;
            p.img_[from] = to;
        }
    }
    return p;
}

Perm Perm::from_images(LabelSet universe, std::vector<Label> images) {
    Perm p = identity(universe);
    if (images.size() != p.uni_.size())
        throw std::domain_error("image list size mismatch");
    std::vector<char> hit(p.uni_.size(), 0);
    for (size_t i = 0; i < images.size(); ++i) {
        int to = p.pos(images[i]);
        if (hit[to]) throw std::domain_error("image not a bijection");
        hit[to] = 1;
        p.img_[i] = to;
    }
    return p;
}

Label Perm::apply_inverse(const Label& l) const {
    int target = pos(l);
    for (size_t i = 0; i < img_.size(); ++i)
        if (img_[i] == target) return uni_[i];
    throw std::logic_error("broken permutation");
}

Label Perm::apply_power(const Label& l, long long p) const {
    int cur = pos(l);
    if (p >= 0) {
        for (long long i = 0; i < p; ++i) cur = img_[cur];
        return uni_[cur];
    }
    Perm inv = inverse();
    return inv.apply_power(l, -p);
}

Perm Perm::inverse() const {
    Perm p;
    p.uni_ = uni_;
    p.img_.resize(img_.size());
    for (size_t i = 0; i < img_.size(); ++i) p.img_[img_[i]] = static_cast<int>(i);
    return p;
}

Perm operator*(const Perm& a, const Perm& b) {
    if (a.uni_ != b.uni_) throw std::domain_error("universe mismatch in composition");
    Perm p;
    p.uni_ = a.uni_;
    p.img_.resize(a.img_.size());
    for (size_t i = 0; i < a.img_.size(); ++i) p.img_[i] = a.img_[b.img_[i]];
    return p;
}

bool Perm::is_identity() const {
    for (size_t i = 0; i < img_.size(); ++i)
        if (img_[i] != static_cast<int>(i)) return false;
    return true;
}

std::vector<std::vector<Label>> Perm::cycles() const {
    std::vector<std::vector<Label>> out;
    std::vector<char> seen(uni_.size(), 0);
    for (size_t i = 0; i < uni_.size(); ++i) {
        if (seen[i]) continue;
        std::vector<Label> cyc;
        int cur = static_cast<int>(i);
        do {
            seen[cur] = 1;
            cyc.push_back(uni_[cur]);
            cur = img_[cur];
        } while (cur != static_cast<int>(i));
        out.push_back(std::move(cyc));
    }
    // universe is sorted, so each cycle already starts at its smallest label
    // and cycles are ordered by smallest label
    return out;
}

std::vector<std::vector<Label>> Perm::nontrivial_cycles() const {
    auto cs = cycles();
    std::erase_if(cs, [](const auto& c) { return c.size() < 2; });
    return cs;
}

int Perm::num_cycles() const {
    int count = 0;
    std::vector<char> seen(uni_.size(), 0);
    for (size_t i = 0; i < uni_.size(); ++i) {
        if (seen[i]) continue;
        ++count;
        int cur = static_cast<int>(i);
        do {
            seen[cur] = 1;
            cur = img_[cur];
        } while (cur != static_cast<int>(i));
    }
    return count;
}

bool Perm::is_matching() const {
    for (size_t i = 0; i < img_.size(); ++i) {
        if (img_[i] == static_cast<int>(i)) return false;
        if (img_[img_[i]] != static_cast<int>(i)) return false;
    }
    return true;
}

std::string Perm::to_cycle_string() const {
    if (uni_.empty()) return "()";
    std::string s;
    for (const auto& c : cycles()) {
        s += '(';
        for (size_t i = 0; i < c.size(); ++i) {
            if (i) s += ',';
            s += to_string(c[i]);
        }
        s += ')';
    }
    return s;
}

Perm parse_perm(const std::string& text) { return parse_perm(text, {}); }

Perm parse_perm(const std::string& text, const LabelSet& universe) {
    std::vector<std::vector<Label>> cycles;
    size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    skip_ws();
    while (i < text.size()) {
        if (text[i] != '(') throw std::invalid_argument("expected '(' in cycle notation");
        ++i;
        std::vector<Label> cyc;
        skip_ws();
        while (i < text.size() && text[i] != ')') {
            if (!std::isdigit(static_cast<unsigned char>(text[i])))
                throw std::invalid_argument("expected digit in cycle notation");
            int v = 0;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
                v = v * 10 + (text[i++] - '0');
            bool barred = false;
            if (i < text.size() && text[i] == '\'') {
                barred = true;
                ++i;
            }
            cyc.push_back(Label{v, barred});
            skip_ws();
            if (i < text.size() && text[i] == ',') {
                ++i;
                skip_ws();
            }
        }
        if (i >= text.size()) throw std::invalid_argument("unterminated cycle");
        ++i;  // ')'
        if (!cyc.empty()) cycles.push_back(std::move(cyc));
        skip_ws();
    }
    return Perm::from_cycles(cycles, universe);
}

int jump(const Perm& pi, const LabelSet& I, const Label& j) {
    if (!set_contains(I, j)) throw std::domain_error("jump: label not in I");
    Label cur = pi.apply(j);
    int p = 1;
    while (!set_contains(I, cur)) {
        cur = pi.apply(cur);
        ++p;
    }
    return p;
}

Perm restriction(const Perm& pi, const LabelSet& I) {
    std::vector<Label> images;
    images.reserve(I.size());
    for (const auto& j : I) {
        Label cur = pi.apply(j);
        while (!set_contains(I, cur)) cur = pi.apply(cur);
        images.push_back(cur);
    }
    return Perm::from_images(I, std::move(images));
}

namespace {
int uf_find(std::vector<int>& parent, int x) {
    while (parent[x] != x) {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    return x;
}
}  // namespace

std::vector<LabelSet> orbits(const std::vector<Perm>& gens) {
    if (gens.empty()) return {};
    const LabelSet& uni = gens.front().universe();
    for (const auto& g : gens)
        if (g.universe() != uni) throw std::domain_error("orbits: universe mismatch");
    std::vector<int> parent(uni.size());
    std::iota(parent.begin(), parent.end(), 0);
    for (const auto& g : gens) {
        for (size_t i = 0; i < uni.size(); ++i) {
            int a = uf_find(parent, static_cast<int>(i));
            int b = uf_find(parent, g.img_at(static_cast<int>(i)));
            if (a != b) parent[a] = b;
        }
    }
    std::map<int, LabelSet> blocks;
    for (size_t i = 0; i < uni.size(); ++i)
        blocks[uf_find(parent, static_cast<int>(i))].push_back(uni[i]);
    std::vector<LabelSet> out;
    for (auto& [root, block] : blocks) out.push_back(std::move(block));
    return out;
}

bool is_transitive(const std::vector<Perm>& gens) { return orbits(gens).size() == 1; }

namespace {
void matchings_rec(const LabelSet& I, std::vector<Label>& remaining,
                   std::vector<std::vector<Label>>& pairs,
                   const std::function<void(const Perm&)>& emit) {
    if (remaining.empty()) {
        emit(Perm::from_cycles(pairs, I));
        return;
    }
    Label first = remaining.front();
    for (size_t j = 1; j < remaining.size(); ++j) {
        Label partner = remaining[j];
        std::vector<Label> rest;
        rest.reserve(remaining.size() - 2);
        for (size_t t = 1; t < remaining.size(); ++t)
            if (t != j) rest.push_back(remaining[t]);
        pairs.push_back({first, partner});
        matchings_rec(I, rest, pairs, emit);
        pairs.pop_back();
    }
}
}  // namespace

void enumerate_matchings(const LabelSet& I, const std::function<void(const Perm&)>& emit) {
    if (I.size() % 2 != 0) return;
    if (I.empty()) {
        emit(Perm::identity({}));
        return;
    }
    std::vector<Label> remaining(I.begin(), I.end());
    std::vector<std::vector<Label>> pairs;
    matchings_rec(I, remaining, pairs, emit);
}

std::vector<Perm> enumerate_matchings(const LabelSet& I) {
    std::vector<Perm> out;
    enumerate_matchings(I, [&](const Perm& m) { out.push_back(m); });
    return out;
}

BigInt double_factorial(long long k) {
    BigInt r = 1;
    for (long long v = k; v >= 2; v -= 2) r *= v;
    return r;
}

BigInt count_by_length(int n, int i) {
    // c(n, n-i) by the recursion over decompositions into strictly
    // increasing transpositions: c(n+1, k) = c(n, k-1) + n * c(n, k)
    if (i < 0 || i >= n) return 0;
    std::vector<BigInt> row(1, 1);  // c(1, 1) = 1, indexed by cycle count - 1
    for (int m = 1; m < n; ++m) {
        std::vector<BigInt> next(m + 1, 0);
        for (int c = 0; c < m; ++c) {
            next[c + 1] += row[c];
            next[c] += BigInt(m) * row[c];
        }
        row = std::move(next);
    }
    int cycles = n - i;
    return row[cycles - 1];
}

Perm bar_conjugate(const Perm& sigma) {
    std::vector<Label> new_uni;
    new_uni.reserve(sigma.universe().size());
    for (const auto& l : sigma.universe()) new_uni.push_back(l.bar());
    LabelSet uni = make_label_set(std::move(new_uni));
    std::vector<std::vector<Label>> new_cycles;
    for (const auto& c : sigma.cycles()) {
        std::vector<Label> rc;
        rc.reserve(c.size());
        for (auto it = c.rbegin(); it != c.rend(); ++it) rc.push_back(it->bar());
        new_cycles.push_back(std::move(rc));
    }
    return Perm::from_cycles(new_cycles, uni);
}

}  // namespace betamaps
