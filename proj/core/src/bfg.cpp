#include "betamaps/bfg.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

namespace betamaps {

namespace {

std::vector<Label> cycle_of(const Perm& p, const Label& l) {
    std::vector<Label> c{l};
    for (Label cur = p.apply(l); cur != l; cur = p.apply(cur)) c.push_back(cur);
    return c;
}

Label cycle_min(const Perm& p, const Label& l) {
    Label m = l;
    for (Label cur = p.apply(l); cur != l; cur = p.apply(cur)) m = std::min(m, cur);
    return m;
}

}  // namespace

int WellLabelledHypermap::label_of(const Label& edge) const {
    auto it = white_labels.find(cycle_min(hypermap.sigma, edge));
    if (it == white_labels.end())
        throw std::domain_error("label_of: unlabelled white vertex at edge " +
                                to_string(edge));
    return it->second;
}

bool SuitablyLabelledMap::is_suitably_labelled() const {
    if (labels.empty()) return false;
    if (*std::min_element(labels.begin(), labels.end()) != 0) return false;
    for (const auto& l : labels)
        if (l < 0) return false;
    for (const auto& h : map.theta_m.universe()) {
        if (label_at(map.theta_m.apply(h)) != label_at(h)) return false;  // per vertex
        if (std::abs(label_at(map.alpha.apply(h)) - label_at(h)) > 1) return false;
    }
    return is_connected(map);
}

LabelSet SuitablyLabelledMap::frustrated_edges() const {
    std::vector<Label> out;
    for (const auto& h : map.theta_m.universe())
        if (label_at(map.alpha.apply(h)) == label_at(h)) out.push_back(h);
    return make_label_set(std::move(out));
}

bool SuitablyLabelledMap::is_local_min(const Label& h) const {
    for (const auto& x : cycle_of(map.theta_m, h))
        if (label_at(map.alpha.apply(x)) < label_at(x)) return false;
    return true;
}

LabelSet SuitablyLabelledMap::local_min_vertices() const {
    std::vector<Label> out;
    for (const auto& c : map.theta_m.cycles())
        if (is_local_min(c.front())) out.push_back(c.front());
    return make_label_set(std::move(out));
}

LabelSet SuitablyLabelledMap::non_min_vertices() const {
    std::vector<Label> out;
    for (const auto& c : map.theta_m.cycles())
        if (!is_local_min(c.front())) out.push_back(c.front());
    return make_label_set(std::move(out));
}

std::string SuitablyLabelledMap::to_json() const {
    nlohmann::json j;
    j["theta_m"] = map.theta_m.to_cycle_string();
    j["alpha"] = map.alpha.to_cycle_string();
    nlohmann::json lab = nlohmann::json::object();
    for (const auto& c : map.theta_m.cycles())
        lab[std::to_string(c.front().index)] = label_at(c.front());
    j["labels"] = lab;
    nlohmann::json fr = nlohmann::json::array();
    for (const auto& h : frustrated_edges())
        if (h < map.alpha.apply(h))
            fr.push_back({h.index, map.alpha.apply(h).index});
    j["frustrated"] = fr;
    return j.dump();
}

SuitablyLabelledMap SuitablyLabelledMap::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    LabelSet uni =
        set_union(parse_perm(j.at("theta_m").get<std::string>()).universe(),
                  parse_perm(j.at("alpha").get<std::string>()).universe());
    HalfEdgeMap m{parse_perm(j.at("theta_m").get<std::string>(), uni),
                  parse_perm(j.at("alpha").get<std::string>(), uni)};
    int n = static_cast<int>(uni.size());
    std::vector<int> labels(n, -1);
    for (const auto& [key, val] : j.at("labels").items()) {
        Label rep = L(std::stoi(key));
        for (const auto& x : cycle_of(m.theta_m, rep))
            labels[x.index - 1] = val.get<int>();
    }
    for (const auto& l : labels)
        if (l < 0) throw std::domain_error("from_json: vertex without a label");
    return SuitablyLabelledMap{m, std::move(labels)};
}

WellLabelledHypermap hypermap_from_config(const MotzkinBridge& gamma,
                                          const Perm& sigma) {
    if (!gamma.is_valid() || !gamma.is_normalized())
        throw std::domain_error("hypermap_from_config: invalid bridge");
    if (!is_compatible(gamma, sigma))
        throw std::domain_error("hypermap_from_config: sigma not compatible");
    if (!is_transitive({gamma.theta, sigma}))
        throw std::domain_error("hypermap_from_config: non-transitive input");
    StepClasses sc = step_sets(gamma);
    LabelSet I = set_union(sc.minus, sc.zero);
    WellLabelledHypermap h;
    h.hypermap = Hypermap{restriction(gamma.theta, I), restriction(sigma, I)};
    h.ambient_theta = gamma.theta;
    std::vector<Label> frustrated;
    for (const auto& c : h.hypermap.sigma.cycles()) {
        if (set_contains(sc.zero, c.front())) {
            h.white_labels[c.front()] = gamma.height(c.front()) + 1;
            frustrated.push_back(c.front());
        } else {
            h.white_labels[c.front()] = gamma.height(c.front());
        }
    }
    h.frustrated = make_label_set(std::move(frustrated));
    return h;
}

std::optional<std::string> well_labelled_violation(const WellLabelledHypermap& h) {
    const LabelSet& I = h.hypermap.theta.universe();
    if (I.empty()) return "empty edge set";
    if (h.hypermap.sigma.universe() != I) return "theta/sigma universe mismatch";
    for (const auto& e : I)
        if (!set_contains(h.ambient_theta.universe(), e))
            return "edge label outside the ambient set";
    if (h.hypermap.theta != restriction(h.ambient_theta, I))
        return "theta_h is not the restriction of theta";
    if (!is_connected(h.hypermap)) return "disconnected hypermap";

    int min_label = std::numeric_limits<int>::max();
    for (const auto& c : h.hypermap.sigma.cycles()) {
        auto it = h.white_labels.find(c.front());
        if (it == h.white_labels.end()) return "unlabelled white vertex";
        if (it->second < 1) return "non-positive white label";
        min_label = std::min(min_label, it->second);
    }
    if (min_label != 1) return "minimum white label is not 1";

    // edges at frustrated vertices
    std::vector<Label> fvec;
    for (const auto& w : h.frustrated) {
        if (h.white_labels.find(w) == h.white_labels.end() ||
            cycle_min(h.hypermap.sigma, w) != w)
            return "frustrated mark is not a white vertex";
        auto c = cycle_of(h.hypermap.sigma, w);
        if (c.size() != 2) return "frustrated vertex of degree != 2";
        fvec.insert(fvec.end(), c.begin(), c.end());
    }
    LabelSet F = make_label_set(std::move(fvec));

    for (const auto& i : I) {
        Label img = h.hypermap.theta.apply(i);
        int lhs = h.label_of(img) - (set_contains(F, img) ? 1 : 0);
        int rhs = h.label_of(i) + jump(h.ambient_theta, I, i) - 2;
        if (lhs != rhs) return "label identity fails at edge " + to_string(i);
        if (h.label_of(img) < h.label_of(i) - 1)
            return "clockwise condition fails at edge " + to_string(i);
    }
    for (const auto& w : h.frustrated)
        for (const auto& e : cycle_of(h.hypermap.sigma, w))
            if (h.label_of(h.hypermap.theta.apply_inverse(e)) > h.label_of(w))
                return "frustrated marking condition fails at " + to_string(w);
    return std::nullopt;
}

std::pair<MotzkinBridge, Perm> config_from_hypermap(const WellLabelledHypermap& h) {
    if (auto v = well_labelled_violation(h))
        throw std::domain_error("config_from_hypermap: " + *v);
    const Perm& theta = h.ambient_theta;
    const LabelSet& I = h.hypermap.theta.universe();
    int n = theta.size();
    std::vector<int> lt(n, std::numeric_limits<int>::min());
    for (const auto& u : I) lt[u.index - 1] = h.label_of(u);
    for (const auto& u : I) {
        int p = jump(theta, I, u);
        Label cur = u;
        for (int i = 1; i < p; ++i) {
            cur = theta.apply(cur);
            lt[cur.index - 1] = lt[u.index - 1] - 2 + i;
        }
    }
    LabelSet F;
    for (const auto& w : h.frustrated)
        for (const auto& e : cycle_of(h.hypermap.sigma, w)) F.push_back(e);
    F = make_label_set(std::move(F));
    std::vector<int> g(n);
    for (int i = 0; i < n; ++i)
        g[i] = lt[i] - (set_contains(F, L(i + 1)) ? 1 : 0);
    MotzkinBridge gamma{theta, std::move(g)};
    if (!gamma.is_valid() || !gamma.is_normalized())
        throw std::domain_error("config_from_hypermap: reconstructed path invalid");
    Perm sigma = Perm::from_cycles(h.hypermap.sigma.cycles(), theta.universe());
    if (!is_compatible(gamma, sigma))
        throw std::domain_error("config_from_hypermap: sigma incompatible");
    return {std::move(gamma), std::move(sigma)};
}

SuitablyLabelledMap psi(const MotzkinBridge& gamma, const Perm& sigma) {
    const Perm& theta = gamma.theta;
    if (!gamma.is_valid() || !gamma.is_normalized())
        throw std::domain_error("psi: invalid bridge");
    if (!is_compatible(gamma, sigma)) throw std::domain_error("psi: incompatible sigma");
    if (!is_transitive({theta, sigma})) throw std::domain_error("psi: non-transitive");

    StepClasses sc = step_sets(gamma);
    const LabelSet& uni = theta.universe();
    int n = theta.size();

    // alpha matches Delta_0 within levels through sigma, and Delta_+ at
    // level g with Delta_- at level g+1; the level bijections are pinned
    // down by sigma_- appearing as the clockwise order of decreasing
    // half-edges around each vertex: (alpha theta^-1)|_{Delta_- -> Delta_-}
    // = sigma|_{Delta_-}, together with connectedness
    std::map<int, std::vector<Label>> ups, downs;
    for (const auto& i : sc.plus) ups[gamma.height(i)].push_back(i);
    for (const auto& j : sc.minus) downs[gamma.height(j) - 1].push_back(j);
    if (ups.size() != downs.size())
        throw std::logic_error("psi: level mismatch");
    std::vector<std::pair<std::vector<Label>, std::vector<Label>>> levels;
    for (const auto& [g, a] : ups) {
        auto it = downs.find(g);
        if (it == downs.end() || it->second.size() != a.size())
            throw std::logic_error("psi: level mismatch");
        levels.emplace_back(a, it->second);
    }

    Perm sigma_minus =
        sc.minus.empty() ? Perm() : restriction(sigma, sc.minus);
    std::vector<Label> base(n);
    for (int i = 0; i < n; ++i) base[i] = uni[i];
    for (const auto& i : sc.zero) base[sigma.pos(i)] = sigma.apply(i);

    std::vector<Perm> found;
    std::vector<Label> images = base;
    auto check = [&]() {
        Perm alpha = Perm::from_images(uni, images);
        Perm theta_m = alpha * theta.inverse();
        if (!sc.minus.empty() && restriction(theta_m, sc.minus) != sigma_minus)
            return;
        if (!is_transitive({theta_m, alpha})) return;
        found.push_back(std::move(alpha));
    };
    std::function<void(size_t)> rec = [&](size_t li) {
        if (li == levels.size()) {
            check();
            return;
        }
        auto& [a, b] = levels[li];
        std::vector<int> idx(b.size());
        std::iota(idx.begin(), idx.end(), 0);
        do {
            for (size_t t = 0; t < a.size(); ++t) {
                images[theta.pos(a[t])] = b[idx[t]];
                images[theta.pos(b[idx[t]])] = a[t];
            }
            rec(li + 1);
        } while (std::next_permutation(idx.begin(), idx.end()));
    };
    rec(0);
    if (found.size() != 1)
        throw std::logic_error("psi: expected a unique map, found " +
                               std::to_string(found.size()));
    return SuitablyLabelledMap{HalfEdgeMap{found[0] * theta.inverse(), found[0]},
                               gamma.gamma};
}

std::pair<MotzkinBridge, Perm> psi_inverse(const SuitablyLabelledMap& m) {
    if (!m.is_suitably_labelled())
        throw std::domain_error("psi_inverse: not a suitably labelled map");
    Perm theta = faces(m.map);
    MotzkinBridge gamma{theta, m.labels};
    if (!gamma.is_valid() || !gamma.is_normalized())
        throw std::domain_error("psi_inverse: labels do not form a bridge");
    StepClasses sc = step_sets(gamma);
    std::vector<std::vector<Label>> cycles;
    if (!sc.minus.empty())
        for (auto& c : restriction(m.map.theta_m, sc.minus).cycles())
            cycles.push_back(std::move(c));
    for (const auto& i : sc.zero)
        if (i < m.map.alpha.apply(i)) cycles.push_back({i, m.map.alpha.apply(i)});
    Perm sigma = Perm::from_cycles(cycles, theta.universe());
    if (!is_compatible(gamma, sigma))
        throw std::domain_error("psi_inverse: reconstructed sigma incompatible");
    if (!is_transitive({theta, sigma}))
        throw std::domain_error("psi_inverse: reconstructed config not transitive");
    return {std::move(gamma), std::move(sigma)};
}

SuitablyLabelledMap bfg_forward(const WellLabelledHypermap& h) {
    auto [gamma, sigma] = config_from_hypermap(h);
    return psi(gamma, sigma);
}

WellLabelledHypermap bfg_inverse(const SuitablyLabelledMap& m) {
    auto [gamma, sigma] = psi_inverse(m);
    return hypermap_from_config(gamma, sigma);
}

std::map<Label, int> distance_table(const SuitablyLabelledMap& m) {
    // vertex representatives and adjacency through the edges
    std::map<Label, std::vector<Label>> adj;
    std::map<Label, Label> rep;
    for (const auto& c : m.map.theta_m.cycles()) {
        adj[c.front()];
        for (const auto& x : c) rep[x] = c.front();
    }
    for (const auto& h : m.map.theta_m.universe())
        adj[rep[h]].push_back(rep[m.map.alpha.apply(h)]);

    constexpr int kInf = std::numeric_limits<int>::max();
    std::map<Label, int> dist;
    for (const auto& [v, _] : adj) dist[v] = kInf;
    for (const auto& v : m.local_min_vertices()) dist[v] = m.label_at(v);
    // offsets are bounded, plain relaxation converges quickly on these sizes
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& [v, nb] : adj)
            for (const auto& w : nb)
                if (dist[v] != kInf && dist[v] + 1 < dist[w]) {
                    dist[w] = dist[v] + 1;
                    changed = true;
                }
    }
    return dist;
}

std::map<Label, int> distances(const SuitablyLabelledMap& m) {
    std::map<Label, int> dist = distance_table(m);
    std::map<Label, int> out;
    for (const auto& v : m.non_min_vertices()) {
        if (dist.at(v) != m.label_at(v))
            throw std::domain_error("distances: d_v != l(v) at vertex " + to_string(v));
        out[v] = dist.at(v);
    }
    return out;
}

std::vector<int> normalize_cyclic(std::vector<int> v) {
    if (v.empty()) return v;
    std::vector<int> best = v;
    for (size_t r = 1; r < v.size(); ++r) {
        std::rotate(v.begin(), v.begin() + 1, v.end());
        best = std::min(best, v);
    }
    return best;
}

std::vector<int> face_cw_type(const SuitablyLabelledMap& m, const Label& h) {
    std::vector<int> out;
    for (const auto& x : cycle_of(faces(m.map), h)) out.push_back(m.label_at(x));
    return out;
}

std::vector<int> black_cw_type(const WellLabelledHypermap& h, const Label& e) {
    std::vector<int> out;
    for (const auto& x : cycle_of(h.hypermap.theta, e)) out.push_back(h.label_of(x));
    return out;
}

std::vector<int> lower_completion(const std::vector<int>& tau) {
    std::vector<int> out;
    for (size_t t = 0; t < tau.size(); ++t) {
        int i = tau[t];
        int j = tau[(t + 1) % tau.size()];
        out.push_back(i);
        for (int x = i - 1; x <= j - 1; ++x) out.push_back(x);
    }
    return out;
}

}  // namespace betamaps
