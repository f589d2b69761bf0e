#include "betamaps/rp2.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>
#include <stdexcept>

#include <json.hpp>

namespace betamaps {

namespace {

struct VertexView {
    std::map<Label, Label> rep;               // half-edge -> vertex representative
    std::map<Label, std::vector<Label>> cyc;  // representative -> theta_m cycle
};

VertexView vertex_view(const Perm& theta_m) {
    VertexView v;
    for (auto& c : theta_m.cycles()) {
        for (const auto& x : c) v.rep[x] = c.front();
        v.cyc[c.front()] = std::move(c);
    }
    return v;
}

std::vector<Label> cycle_of(const Perm& p, const Label& l) {
    std::vector<Label> c{l};
    for (Label cur = p.apply(l); cur != l; cur = p.apply(cur)) c.push_back(cur);
    return c;
}

// cycle containing x, rotated to start at x
std::vector<Label> cycle_from(const Perm& p, const Label& x) { return cycle_of(p, x); }

std::vector<int> labels_for(const Perm& theta_m, const std::map<Label, int>& by_half_edge) {
    std::vector<int> out(theta_m.universe().size(), -1);
    for (const auto& [h, v] : by_half_edge) out[theta_m.pos(h)] = v;
    for (int v : out)
        if (v < 0) throw std::logic_error("labels_for: half-edge without a label");
    return out;
}

bool same_edge(const Label& a, const Label& b, const std::pair<Label, Label>& e) {
    return (a == e.first && b == e.second) || (a == e.second && b == e.first);
}

}  // namespace

bool is_path(const HalfEdgeMap& m, const PathSeq& g) {
    if (g.empty() || g.size() % 2 != 0) return false;
    for (const auto& x : g)
        if (!set_contains(m.theta_m.universe(), x)) return false;
    for (size_t i = 0; i + 1 < g.size(); i += 2)
        if (m.alpha.apply(g[i]) != g[i + 1]) return false;
    VertexView vv = vertex_view(m.theta_m);
    for (size_t i = 1; i + 1 < g.size(); i += 2)
        if (vv.rep.at(g[i]) != vv.rep.at(g[i + 1])) return false;
    return true;
}

std::vector<Label> path_vertices(const HalfEdgeMap& m, const PathSeq& g) {
    VertexView vv = vertex_view(m.theta_m);
    std::vector<Label> out{vv.rep.at(g.front())};
    for (size_t i = 1; i < g.size(); i += 2) out.push_back(vv.rep.at(g[i]));
    return out;
}

std::vector<int> label_trace(const SuitablyLabelledMap& m, const PathSeq& g) {
    std::vector<int> out{m.label_at(g.front())};
    for (size_t i = 1; i < g.size(); i += 2) out.push_back(m.label_at(g[i]));
    return out;
}

PathSeq reverse_path(const PathSeq& g) { return PathSeq(g.rbegin(), g.rend()); }

bool is_simple_path(const HalfEdgeMap& m, const PathSeq& g) {
    if (!is_path(m, g)) return false;
    auto v = path_vertices(m, g);
    std::set<Label> seen(v.begin(), v.end());
    return seen.size() == v.size();
}

bool is_simple_loop(const HalfEdgeMap& m, const PathSeq& g) {
    if (!is_path(m, g)) return false;
    auto v = path_vertices(m, g);
    if (v.front() != v.back()) return false;
    std::set<Label> seen(v.begin(), v.end());
    return seen.size() + 1 == v.size();
}

bool is_good_trace(const std::vector<int>& t) {
    if (t.size() < 2) return false;
    if (t.front() != t.back()) return false;
    size_t i = 0;
    while (i + 1 < t.size() && t[i + 1] == t[i] + 1) ++i;
    size_t j = t.size() - 1;
    while (j >= 1 && t[j - 1] == t[j] + 1) --j;
    if (j == i) return true;  // single maximum
    return j == i + 1 && t[i] == t[j];  // two consecutive maxima
}

bool is_good_path(const SuitablyLabelledMap& m, const PathSeq& g) {
    if (!is_path(m.map, g)) return false;
    return is_good_trace(label_trace(m, g));
}

bool is_good_loop(const SuitablyLabelledMap& m, const PathSeq& g) {
    if (!is_simple_loop(m.map, g)) return false;
    for (size_t r = 0; r < g.size(); r += 2) {
        PathSeq rot(g.begin() + r, g.end());
        rot.insert(rot.end(), g.begin(), g.begin() + r);
        for (size_t s = 2; s < rot.size(); s += 2) {
            PathSeq g1(rot.begin(), rot.begin() + s);
            PathSeq g2(rot.begin() + s, rot.end());
            auto t1 = label_trace(m, g1);
            auto t2 = label_trace(m, g2);
            if (t1 == t2 && is_good_trace(t1)) return true;
        }
    }
    return false;
}

std::vector<std::vector<Label>> interior_faces(const BoundaryMap& bm) {
    std::vector<std::vector<Label>> out;
    for (auto& c : faces(bm.map.map).cycles())
        if (!set_contains(make_label_set({bm.boundary.begin(), bm.boundary.end()}),
                          c.front()))
            out.push_back(std::move(c));
    return out;
}

PathSeq boundary_loop(const BoundaryMap& bm) {
    const PathSeq& p = bm.path;
    int l = static_cast<int>(p.size()) / 2;
    PathSeq loop;
    for (int i = 1; i <= l; ++i) {
        loop.push_back(p[2 * i - 2]);
        loop.push_back(p[2 * l - 2 * i + 1].bar());
    }
    for (int i = l; i >= 1; --i) {
        loop.push_back(p[2 * i - 1]);
        loop.push_back(p[2 * l - 2 * i].bar());
    }
    return loop;
}

BoundaryMap open_slit(const SuitablyLabelledMap& m, const PathSeq& g) {
    if (!is_good_path(m, g))
        throw std::domain_error("open_slit: not a good path");
    if (!is_simple_path(m.map, g))
        throw std::domain_error("open_slit: path is not simple");
    VertexView vv = vertex_view(m.map.theta_m);
    if (vv.rep.at(g.front()) == vv.rep.at(g.back()))
        throw std::domain_error("open_slit: path endpoints coincide");
    for (const auto& x : g)
        if (set_contains(m.map.theta_m.universe(), x.bar()))
            throw std::domain_error("open_slit: barred half-edge already present");

    const PathSeq& p = g;
    int l = static_cast<int>(p.size()) / 2;
    auto verts = path_vertices(m.map, g);

    std::vector<Label> add;
    for (const auto& x : p) add.push_back(x.bar());
    LabelSet U = set_union(m.map.theta_m.universe(), make_label_set(add));

    std::set<Label> on_path(verts.begin(), verts.end());
    std::vector<std::vector<Label>> cycles;
    std::map<Label, int> label_of;
    for (const auto& [r, c] : vv.cyc) {
        if (on_path.count(r)) continue;
        cycles.push_back(c);
        for (const auto& x : c) label_of[x] = m.label_at(x);
    }
    auto record = [&](std::vector<Label> c, int lab) {
        for (const auto& x : c) label_of[x] = lab;
        cycles.push_back(std::move(c));
    };

    // v_0: (g_1, u...) -> (g_1, u..., bar g_{2l-1})
    {
        auto c = cycle_from(m.map.theta_m, p[0]);
        c.push_back(p[2 * l - 2].bar());
        record(std::move(c), m.label_at(p[0]));
    }
    // v_l: (g_{2l}, v...) -> (g_{2l}, v..., bar g_2)
    {
        auto c = cycle_from(m.map.theta_m, p[2 * l - 1]);
        c.push_back(p[1].bar());
        record(std::move(c), m.label_at(p[2 * l - 1]));
    }
    // interior v_i: (g_{2i}, u..., g_{2i+1}, v...) splits into
    // (g_{2i}, u..., bar g_{2l-2i-1}) and (g_{2i+1}, v..., bar g_{2l-2i+2})
    for (int i = 1; i < l; ++i) {
        Label arriving = p[2 * i - 1];
        Label departing = p[2 * i];
        auto c = cycle_from(m.map.theta_m, arriving);
        auto it = std::find(c.begin(), c.end(), departing);
        if (it == c.end()) throw std::logic_error("open_slit: departing half-edge lost");
        std::vector<Label> u(c.begin(), it);
        std::vector<Label> v(it, c.end());
        int lab = m.label_at(arriving);
        u.push_back(p[2 * l - 2 * i - 2].bar());
        record(std::move(u), lab);
        v.push_back(p[2 * l - 2 * i + 1].bar());
        record(std::move(v), lab);
    }

    // edges: path edges are replaced by the slit pairs
    std::vector<std::vector<Label>> pairs;
    for (const auto& c : m.map.alpha.cycles()) {
        bool on = false;
        for (int i = 1; i <= l && !on; ++i)
            on = same_edge(c[0], c[1], {p[2 * i - 2], p[2 * i - 1]});
        if (!on) pairs.push_back(c);
    }
    for (int i = 1; i <= l; ++i) {
        pairs.push_back({p[2 * i - 2], p[2 * l - 2 * i + 1].bar()});
        pairs.push_back({p[2 * i - 1], p[2 * l - 2 * i].bar()});
    }

    BoundaryMap bm;
    bm.map.map.theta_m = Perm::from_cycles(cycles, U);
    bm.map.map.alpha = Perm::from_cycles(pairs, U);
    bm.map.labels = labels_for(bm.map.map.theta_m, label_of);
    bm.path = g;
    for (int i = l; i >= 1; --i) bm.boundary.push_back(p[2 * i - 2].bar());
    for (int i = 1; i <= l; ++i) bm.boundary.push_back(p[2 * i - 1].bar());

    // the boundary must come out as a face, and the slit map stays suitable
    auto f = cycle_of(faces(bm.map.map), bm.boundary.front());
    auto it = std::find(f.begin(), f.end(), bm.boundary.front());
    std::rotate(f.begin(), it, f.end());
    if (f != bm.boundary)
        throw std::logic_error("open_slit: boundary face mismatch");
    if (!bm.map.is_suitably_labelled())
        throw std::logic_error("open_slit: result not suitably labelled");
    if (!is_good_loop(bm.map, boundary_loop(bm)))
        throw std::logic_error("open_slit: boundary is not a good loop");
    return bm;
}

SuitablyLabelledMap close_slit(const BoundaryMap& bm) {
    const PathSeq& p = bm.path;
    int l = static_cast<int>(p.size()) / 2;
    const SuitablyLabelledMap& ms = bm.map;
    VertexView vv = vertex_view(ms.map.theta_m);

    auto drop = [&](std::vector<Label> c, const Label& x) {
        c.erase(std::remove(c.begin(), c.end(), x), c.end());
        return c;
    };
    // the cycle containing `after`, rotated to start right after it, with
    // `after` removed
    auto segment_after = [&](const Label& after) {
        auto c = cycle_from(ms.map.theta_m, after);
        return std::vector<Label>(c.begin() + 1, c.end());
    };

    std::set<Label> touched;
    std::vector<std::vector<Label>> cycles;
    std::map<Label, int> label_of;

    // v_0 and v_l just lose their barred half-edge
    {
        auto c0 = vv.cyc.at(vv.rep.at(p[0]));
        touched.insert(vv.rep.at(p[0]));
        auto cl = vv.cyc.at(vv.rep.at(p[2 * l - 1]));
        touched.insert(vv.rep.at(p[2 * l - 1]));
        cycles.push_back(drop(c0, p[2 * l - 2].bar()));
        cycles.push_back(drop(cl, p[1].bar()));
        for (const auto& x : cycles[0]) label_of[x] = ms.label_at(p[0]);
        for (const auto& x : cycles[1]) label_of[x] = ms.label_at(p[2 * l - 1]);
    }
    // interior vertices are re-merged
    for (int i = 1; i < l; ++i) {
        Label arriving = p[2 * i - 1];
        Label departing = p[2 * i];
        touched.insert(vv.rep.at(arriving));
        touched.insert(vv.rep.at(departing));
        auto a = cycle_from(ms.map.theta_m, arriving);   // (g_{2i}, u..., barred)
        auto b = cycle_from(ms.map.theta_m, departing);  // (g_{2i+1}, v..., barred)
        std::vector<Label> merged;
        for (const auto& x : a)
            if (!x.barred) merged.push_back(x);
        for (const auto& x : b)
            if (!x.barred) merged.push_back(x);
        for (const auto& x : merged) label_of[x] = ms.label_at(arriving);
        cycles.push_back(std::move(merged));
    }
    for (const auto& [r, c] : vv.cyc) {
        if (touched.count(r)) continue;
        if (r.barred || c.front().barred)
            throw std::domain_error("close_slit: stray barred vertex");
        cycles.push_back(c);
        for (const auto& x : c) label_of[x] = ms.label_at(x);
    }

    LabelSet U;
    for (const auto& x : ms.map.theta_m.universe())
        if (!x.barred) U.push_back(x);
    std::vector<std::vector<Label>> pairs;
    for (const auto& c : ms.map.alpha.cycles())
        if (!c[0].barred && !c[1].barred) pairs.push_back(c);
    for (int i = 1; i <= l; ++i) pairs.push_back({p[2 * i - 2], p[2 * i - 1]});

    SuitablyLabelledMap out;
    out.map.theta_m = Perm::from_cycles(cycles, U);
    out.map.alpha = Perm::from_cycles(pairs, U);
    out.labels = labels_for(out.map.theta_m, label_of);
    if (!out.is_suitably_labelled())
        throw std::domain_error("close_slit: result not suitably labelled");
    return out;
}

SuitablyLabelledMap mirror(const SuitablyLabelledMap& m) {
    Perm sigma_bar = bar_conjugate(m.map.theta_m);
    Perm alpha_bar = bar_conjugate(m.map.alpha);
    SuitablyLabelledMap out;
    out.map.theta_m = alpha_bar * sigma_bar * alpha_bar;
    out.map.alpha = alpha_bar;
    // the mirror image of half-edge x is bar(alpha(x)), so labels are
    // transported along alpha before barring
    std::map<Label, int> label_of;
    for (const auto& x : m.map.theta_m.universe())
        label_of[m.map.alpha.apply(x).bar()] = m.label_at(x);
    out.labels = labels_for(out.map.theta_m, label_of);
    return out;
}

GluedMap glue_mirror(const BoundaryMap& bm) {
    const SuitablyLabelledMap& ms = bm.map;
    if (!is_good_loop(ms, boundary_loop(bm)))
        throw std::domain_error("glue_mirror: boundary is not a good loop");
    int genus_in = euler_genus(ms.map);

    LabelSet W;
    {
        std::vector<Label> w;
        for (const auto& x : ms.map.theta_m.universe()) {
            w.push_back(x);
            w.push_back(x.bar());
        }
        W = make_label_set(std::move(w));
    }
    const LabelSet& U = ms.map.theta_m.universe();

    std::vector<Label> alpha_img;
    for (const auto& x : W)
        alpha_img.push_back(set_contains(U, x) ? ms.map.alpha.apply(x)
                                               : ms.map.alpha.apply(x.bar()).bar());
    Perm alpha_hat = Perm::from_images(W, std::move(alpha_img));
    if (!alpha_hat.is_matching())
        throw std::logic_error("glue_mirror: glued alpha is not a matching");

    std::vector<std::vector<Label>> face_cycles;
    for (auto& c : interior_faces(bm)) {
        std::vector<Label> rc;
        for (auto it = c.rbegin(); it != c.rend(); ++it) rc.push_back(it->bar());
        face_cycles.push_back(std::move(c));
        face_cycles.push_back(std::move(rc));
    }
    Perm phi_hat = Perm::from_cycles(face_cycles, W);
    Perm theta_hat = alpha_hat * phi_hat.inverse();

    // the mirror image of a slit half-edge x sits at bar(alpha'(x)): the
    // mirror's vertex permutation is the bar-conjugated one conjugated by
    // the mirrored alpha, which rearranges the flags accordingly
    std::map<Label, int> label_of;
    for (const auto& x : U) {
        label_of[x] = ms.label_at(x);
        label_of[ms.map.alpha.apply(x).bar()] = ms.label_at(x);
    }

    GluedMap gm;
    gm.map.map = HalfEdgeMap{theta_hat, alpha_hat};
    gm.map.labels = labels_for(theta_hat, label_of);
    for (const auto& c : theta_hat.cycles())
        for (const auto& x : c)
            if (label_of.at(x) != label_of.at(c.front()))
                throw std::logic_error("glue_mirror: inconsistent vertex labels");

    std::vector<std::vector<Label>> inv_pairs;
    for (const auto& x : W)
        if (!x.barred) inv_pairs.push_back({x, x.bar()});
    gm.inv = Perm::from_cycles(inv_pairs, W);
    gm.loop = boundary_loop(bm);

    InvReport rep = verify_orientation_reversing(gm.map.map, gm.inv);
    if (!rep.ok)
        throw std::logic_error("glue_mirror: inv not orientation-reversing: " +
                               rep.violations.front());
    if (euler_genus(gm.map.map) != 2 * genus_in)
        throw std::logic_error("glue_mirror: genus did not double");
    if (!gm.map.is_suitably_labelled())
        throw std::logic_error("glue_mirror: result not suitably labelled");
    if (!is_good_loop(gm.map, gm.loop))
        throw std::logic_error("glue_mirror: glued boundary is not a good loop");
    return gm;
}

Label root_half_edge(const SuitablyLabelledMap& m) {
    for (const auto& x : m.map.theta_m.universe())
        if (m.label_at(x) == 0) return x;
    throw std::domain_error("root_half_edge: no label-0 vertex");
}

std::map<Label, int> vertex_distances(const HalfEdgeMap& m, const Label& from) {
    VertexView vv = vertex_view(m.theta_m);
    std::map<Label, int> d;
    std::deque<Label> q{vv.rep.at(from)};
    d[vv.rep.at(from)] = 0;
    while (!q.empty()) {
        Label v = q.front();
        q.pop_front();
        for (const auto& x : vv.cyc.at(v)) {
            Label w = vv.rep.at(m.alpha.apply(x));
            if (!d.count(w)) {
                d[w] = d[v] + 1;
                q.push_back(w);
            }
        }
    }
    return d;
}

PathSeq leftmost_geodesic(const SuitablyLabelledMap& m, const Label& root,
                          const Label& target) {
    VertexView vv = vertex_view(m.map.theta_m);
    Label start = vv.rep.at(root);
    Label goal = vv.rep.at(target);
    auto d1 = vertex_distances(m.map, start);
    auto d2 = vertex_distances(m.map, goal);
    if (!d1.count(goal)) throw std::domain_error("leftmost_geodesic: unreachable");
    int D = d1.at(goal);
    PathSeq path;
    Label local_root = root;
    for (int i = 0; i < D; ++i) {
        // clockwise around a vertex runs against theta_m, so the candidates
        // left of the local root are visited in theta_m^{-1} order
        auto cyc = cycle_from(m.map.theta_m, local_root);
        std::reverse(cyc.begin() + 1, cyc.end());
        bool found = false;
        for (const auto& h : cyc) {
            Label other = m.map.alpha.apply(h);
            Label w = vv.rep.at(other);
            if (d1.at(w) == i + 1 && d2.at(w) == D - i - 1) {
                path.push_back(h);
                path.push_back(other);
                local_root = other;
                found = true;
                break;
            }
        }
        if (!found) throw std::logic_error("leftmost_geodesic: dead end");
    }
    return path;
}

GoodGeodesic leftmost_good_geodesic(const SuitablyLabelledMap& m) {
    LabelSet mins = m.local_min_vertices();
    if (mins.size() != 2)
        throw std::domain_error("leftmost_good_geodesic: need exactly two local minima");
    Label h_star = root_half_edge(m);
    VertexView vv = vertex_view(m.map.theta_m);
    Label v_star = vv.rep.at(h_star);
    Label v_circ = mins[0] == v_star ? mins[1] : mins[0];
    if (v_circ == v_star)
        throw std::logic_error("leftmost_good_geodesic: degenerate minima");

    PathSeq h = leftmost_geodesic(m, h_star, v_circ);
    auto trace = label_trace(m, h);
    int goal = trace.back();
    size_t p = trace.size();  // position of v_bullet in the vertex sequence
    for (size_t i = 0; i + 1 < trace.size(); ++i)
        if (trace[i] == goal) p = i;
    if (p >= trace.size())
        throw std::logic_error("leftmost_good_geodesic: no equal-label vertex");

    GoodGeodesic gg;
    gg.path = PathSeq(h.begin() + 2 * p, h.end());
    gg.v_bullet = path_vertices(m.map, h)[p];
    gg.v_circ = v_circ;
    if (!is_good_path(m, gg.path))
        throw std::logic_error("leftmost_good_geodesic: tail is not good");
    if (!is_simple_path(m.map, gg.path))
        throw std::logic_error("leftmost_good_geodesic: tail is not simple");
    return gg;
}

PathSeq equilibrium_loop(const SuitablyLabelledMap& m_hat, const Perm& inv) {
    InvReport rep = verify_orientation_reversing(m_hat.map, inv);
    if (!rep.ok)
        throw std::domain_error("equilibrium_loop: inv not orientation-reversing: " +
                                rep.violations.front());
    auto tau = [&](const Label& x) { return m_hat.map.alpha.apply(inv.apply(x)); };
    for (const auto& x : m_hat.map.theta_m.universe())
        if (m_hat.label_at(x) != m_hat.label_at(tau(x)))
            throw std::domain_error("equilibrium_loop: inv does not preserve labels");

    VertexView vv = vertex_view(m_hat.map.theta_m);
    Label h_star = root_half_edge(m_hat);
    Label v_star = vv.rep.at(h_star);
    Label v_bar = vv.rep.at(tau(h_star));
    if (v_bar == v_star)
        throw std::domain_error("equilibrium_loop: root vertex fixed by inv");

    PathSeq h = leftmost_geodesic(m_hat, h_star, v_bar);
    PathSeq h_inv;
    for (const auto& x : h) h_inv.push_back(tau(x));
    if (!is_path(m_hat.map, h_inv))
        throw std::logic_error("equilibrium_loop: mirrored geodesic is not a path");

    auto hv = path_vertices(m_hat.map, h);
    auto iv = path_vertices(m_hat.map, h_inv);
    std::set<Label> iset(iv.begin(), iv.end());
    std::vector<size_t> common;  // positions in hv
    for (size_t i = 0; i < hv.size(); ++i)
        if (iset.count(hv[i])) common.push_back(i);
    size_t k = common.size();
    if (k < 2 || k % 2 != 0)
        throw std::logic_error("equilibrium_loop: common vertex count not even");
    if (hv[common.front()] != v_star || hv[common.back()] != v_bar)
        throw std::logic_error("equilibrium_loop: endpoints not common");

    size_t pa = common[k / 2 - 1], pb = common[k / 2];
    PathSeq part1(h.begin() + 2 * pa, h.begin() + 2 * pb);
    Label a = hv[pa], b = hv[pb];
    auto ia = std::find(iv.begin(), iv.end(), a) - iv.begin();
    auto ib = std::find(iv.begin(), iv.end(), b) - iv.begin();
    PathSeq part2;
    if (ib < ia)
        part2 = PathSeq(h_inv.begin() + 2 * ib, h_inv.begin() + 2 * ia);
    else
        part2 = reverse_path(PathSeq(h_inv.begin() + 2 * ia, h_inv.begin() + 2 * ib));

    PathSeq loop = part1;
    loop.insert(loop.end(), part2.begin(), part2.end());
    if (!is_simple_loop(m_hat.map, loop))
        throw std::logic_error("equilibrium_loop: loop is not simple");
    if (!is_good_loop(m_hat, loop))
        throw std::logic_error("equilibrium_loop: loop is not good");

    // invariance: the mirror of the i-th vertex is the antipodal vertex
    auto lv = path_vertices(m_hat.map, loop);
    size_t edges = loop.size() / 2;
    if (edges % 2 != 0)
        throw std::logic_error("equilibrium_loop: odd loop length");
    for (size_t i = 0; i < edges; ++i) {
        Label mirror_v = vv.rep.at(tau(loop[2 * i]));
        if (mirror_v != lv[(i + edges / 2) % edges])
            throw std::logic_error("equilibrium_loop: loop is not invariant");
    }
    return loop;
}

std::vector<Label> base_vertex_reps(const FlaggedMap& fm) {
    auto [cover, inv] = lift_flagged(fm);
    std::vector<Label> out;
    for (const auto& orb : orbits({cover.theta_m, cover.alpha * inv}))
        out.push_back(orb.front());
    return out;
}

PointedFlaggedMap normalize_point(PointedFlaggedMap p) {
    auto [cover, inv] = lift_flagged(p.fm);
    for (const auto& orb : orbits({cover.theta_m, cover.alpha * inv}))
        if (set_contains(orb, p.point)) {
            p.point = orb.front();
            return p;
        }
    throw std::domain_error("normalize_point: point not a flag of the map");
}

std::string PointedFlaggedMap::to_json() const {
    nlohmann::json j = nlohmann::json::parse(flagged_to_json(fm));
    auto [cover, inv] = lift_flagged(fm);
    for (const auto& orb : orbits({cover.theta_m, cover.alpha * inv}))
        if (set_contains(orb, point)) {
            std::string repr = "(";
            for (size_t i = 0; i < orb.size(); ++i) {
                if (i) repr += ",";
                repr += to_string(orb[i]);
            }
            repr += ")";
            j["point"] = repr;
            return j.dump();
        }
    throw std::domain_error("to_json: point not a flag of the map");
}

PointedFlaggedMap PointedFlaggedMap::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    PointedFlaggedMap p;
    p.fm = flagged_from_json(text);
    Perm cyc = parse_perm(j.at("point").get<std::string>());
    if (cyc.universe().empty()) throw std::domain_error("from_json: empty point");
    p.point = cyc.universe().front();
    return normalize_point(p);
}

PointedFlaggedMap to_projective(const SuitablyLabelledMap& m_tilde) {
    GoodGeodesic gg = leftmost_good_geodesic(m_tilde);
    BoundaryMap bm = open_slit(m_tilde, gg.path);
    GluedMap gm = glue_mirror(bm);
    PointedFlaggedMap p;
    p.fm = project_covering(gm.map.map, gm.inv);
    p.point = root_half_edge(gm.map);
    return normalize_point(p);
}

namespace {

// the face cycles of phi grouped as unbarred theta plus its bar-conjugate
Perm theta_of_faces(const Perm& phi) {
    std::vector<std::vector<Label>> unbarred;
    std::vector<Label> support;
    for (const auto& c : phi.cycles()) {
        bool barred = c.front().barred;
        for (const auto& x : c)
            if (x.barred != barred)
                throw std::domain_error("face profile mixes barred and unbarred flags");
        if (!barred) {
            unbarred.push_back(c);
            for (const auto& x : c) support.push_back(x);
        }
    }
    Perm theta = Perm::from_cycles(unbarred, make_label_set(std::move(support)));
    std::vector<std::vector<Label>> all = unbarred;
    for (const auto& c : bar_conjugate(theta).cycles()) all.push_back(c);
    if (Perm::from_cycles(all, phi.universe()) != phi)
        throw std::domain_error("face permutation is not theta bar(theta)");
    return theta;
}

}  // namespace

SuitablyLabelledMap from_projective(const PointedFlaggedMap& pfm,
                                    const std::string& flips) {
    if (!flagged_valid(pfm.fm) || !flagged_connected(pfm.fm))
        throw std::domain_error("from_projective: invalid flagged map");
    if (flagged_euler(pfm.fm) != 1)
        throw std::domain_error("from_projective: Euler characteristic is not 1");
    auto [cover, inv] = lift_flagged(pfm.fm);
    Perm theta = theta_of_faces(faces(cover));
    int l = theta.num_cycles();
    if (!flips.empty()) {
        if (static_cast<int>(flips.size()) != l - 1)
            throw std::domain_error("from_projective: flip vector length must be " +
                                    std::to_string(l - 1));
        for (char c : flips)
            if (c != '0' && c != '1')
                throw std::domain_error("from_projective: flip vector must be 0/1");
    }

    // vertex labels: distance to the two lifts of the pointed vertex
    VertexView vv = vertex_view(cover.theta_m);
    if (!set_contains(cover.theta_m.universe(), pfm.point))
        throw std::domain_error("from_projective: point is not a flag");
    Label v1 = vv.rep.at(pfm.point);
    Label v2 = vv.rep.at(cover.alpha.apply(inv.apply(pfm.point)));
    if (v1 == v2)
        throw std::domain_error("from_projective: pointed vertex has a single lift");
    auto d1 = vertex_distances(cover, v1);
    auto d2 = vertex_distances(cover, v2);
    std::map<Label, int> label_of;
    for (const auto& [r, c] : vv.cyc) {
        int d = std::min(d1.at(r), d2.at(r));
        for (const auto& x : c) label_of[x] = d;
    }
    SuitablyLabelledMap m_hat{cover, labels_for(cover.theta_m, label_of)};
    if (!m_hat.is_suitably_labelled())
        throw std::logic_error("from_projective: distance labels not suitable");

    PathSeq loop = equilibrium_loop(m_hat, inv);
    std::vector<std::pair<Label, Label>> loop_edges;
    for (size_t i = 0; i + 1 < loop.size(); i += 2)
        loop_edges.push_back({loop[i], loop[i + 1]});
    auto on_loop = [&](const Label& x) {
        for (const auto& e : loop_edges)
            if (x == e.first || x == e.second) return true;
        return false;
    };

    // split the faces along the loop; the side of the root face is kept
    Perm phi = faces(cover);
    std::map<Label, Label> face_rep;
    std::map<Label, std::vector<Label>> face_cyc;
    for (auto& c : phi.cycles()) {
        for (const auto& x : c) face_rep[x] = c.front();
        face_cyc[c.front()] = std::move(c);
    }
    std::map<Label, Label> side;  // union-find over face representatives
    std::function<Label(Label)> find = [&](Label x) {
        while (side.at(x) != x) x = side.at(x);
        return x;
    };
    for (const auto& [r, c] : face_cyc) side[r] = r;
    for (const auto& x : cover.theta_m.universe()) {
        Label y = cover.alpha.apply(x);
        if (x < y && !on_loop(x) && !on_loop(y))
            side[find(face_rep.at(x))] = find(face_rep.at(y));
    }
    std::set<Label> comps;
    for (const auto& [r, c] : face_cyc) comps.insert(find(r));
    if (comps.size() != 2)
        throw std::logic_error("from_projective: loop does not split the faces in two");
    Label plus = find(face_rep.at(root_half_edge(m_hat)));

    // normalization: relabel barred plus-side faces through inv (this also
    // undoes any flip choice applied upstream)
    std::vector<Label> psi_img;
    {
        std::set<Label> swapped;
        for (const auto& [r, c] : face_cyc)
            if (find(r) == plus && r.barred)
                for (const auto& x : c) {
                    swapped.insert(x);
                    swapped.insert(inv.apply(x));
                }
        for (const auto& x : cover.theta_m.universe())
            psi_img.push_back(swapped.count(x) ? inv.apply(x) : x);
    }
    Perm psi = Perm::from_images(cover.theta_m.universe(), std::move(psi_img));
    Perm alpha_n = psi * cover.alpha * psi;
    Perm theta_n = psi * cover.theta_m * psi;
    if (psi * inv * psi != inv)
        throw std::logic_error("from_projective: relabelling broke the matching");
    std::map<Label, int> label_n;
    for (const auto& x : cover.theta_m.universe())
        label_n[x] = label_of.at(psi.apply(x));

    // the kept side must now carry exactly the faces of theta
    Perm phi_n = faces(HalfEdgeMap{theta_n, alpha_n});
    std::set<Label> plus_flags;
    for (const auto& [r, c] : face_cyc)
        if (find(r) == plus)
            for (const auto& x : c) plus_flags.insert(psi.apply(x));
    std::vector<std::vector<Label>> plus_cycles;
    for (auto& c : phi_n.cycles())
        if (plus_flags.count(c.front())) plus_cycles.push_back(std::move(c));
    LabelSet n_set;
    for (const auto& x : cover.theta_m.universe())
        if (!x.barred) n_set.push_back(x);
    for (const auto& c : plus_cycles)
        for (const auto& x : c)
            if (x.barred)
                throw std::logic_error("from_projective: barred flag on the kept side");
    if (Perm::from_cycles(plus_cycles, n_set) != theta)
        throw std::logic_error("from_projective: kept faces do not form theta");

    // close the slit: pair the i-th loop edge with its reflection
    size_t E = loop_edges.size();
    std::vector<std::pair<Label, Label>> edges_n;
    for (const auto& e : loop_edges)
        edges_n.push_back({psi.apply(e.first), psi.apply(e.second)});
    auto plus_flag = [&](const std::pair<Label, Label>& e) {
        bool fb = e.first.barred, sb = e.second.barred;
        if (fb == sb)
            throw std::logic_error("from_projective: loop edge without a plus flag");
        return fb ? e.second : e.first;
    };
    std::vector<std::vector<Label>> pairs;
    std::set<Label> loop_plus;
    for (size_t i = 0; i < E / 2; ++i) {
        Label a = plus_flag(edges_n[i]);
        Label b = plus_flag(edges_n[E - 1 - i]);
        pairs.push_back({a, b});
        loop_plus.insert(a);
        loop_plus.insert(b);
    }
    for (const auto& x : n_set) {
        Label y = alpha_n.apply(x);
        if (x < y && !loop_plus.count(x)) {
            if (y.barred)
                throw std::logic_error("from_projective: interior edge leaves the side");
            pairs.push_back({x, y});
        }
    }
    SuitablyLabelledMap out;
    out.map.alpha = Perm::from_cycles(pairs, n_set);
    out.map.theta_m = out.map.alpha * theta.inverse();
    std::map<Label, int> final_labels;
    for (const auto& c : out.map.theta_m.cycles()) {
        int lab = label_n.at(c.front());
        for (const auto& x : c) {
            if (label_n.at(x) != lab)
                throw std::logic_error("from_projective: glued vertex labels differ");
            final_labels[x] = lab;
        }
    }
    out.labels = labels_for(out.map.theta_m, final_labels);
    if (!out.is_suitably_labelled())
        throw std::logic_error("from_projective: result not suitably labelled");
    if (out.local_min_vertices().size() != 2)
        throw std::logic_error("from_projective: result does not have two minima");
    if (euler_genus(out.map) != 0)
        throw std::logic_error("from_projective: result is not planar");
    return out;
}

SuitablyLabelledMap phi1(const SuitablyLabelledMap& m, const Label& v, int k) {
    if (!m.is_suitably_labelled())
        throw std::domain_error("phi1: input not suitably labelled");
    LabelSet mins = m.local_min_vertices();
    if (mins.size() != 1)
        throw std::domain_error("phi1: input must have a unique local minimum");
    VertexView vv = vertex_view(m.map.theta_m);
    Label v_star = mins[0];
    Label vr = vv.rep.at(v);
    if (vr == v_star) throw std::domain_error("phi1: v must not be the minimum");
    auto d_star = vertex_distances(m.map, v_star);
    auto d_v = vertex_distances(m.map, vr);
    if (k < 1 || k >= d_star.at(vr))
        throw std::domain_error("phi1: k out of range");
    std::map<Label, int> label_of;
    for (const auto& [r, c] : vv.cyc) {
        int lab = std::min(d_star.at(r), k + d_v.at(r));
        for (const auto& x : c) label_of[x] = lab;
    }
    SuitablyLabelledMap out{m.map, labels_for(m.map.theta_m, label_of)};
    if (!out.is_suitably_labelled() || out.local_min_vertices().size() != 2)
        throw std::logic_error("phi1: relabelling failed");
    return out;
}

std::tuple<SuitablyLabelledMap, Label, int> phi1_inverse(
    const SuitablyLabelledMap& m2) {
    LabelSet mins = m2.local_min_vertices();
    if (mins.size() != 2)
        throw std::domain_error("phi1_inverse: input must have two local minima");
    Label v_star, v;
    if (m2.label_at(mins[0]) == 0 && m2.label_at(mins[1]) > 0) {
        v_star = mins[0];
        v = mins[1];
    } else if (m2.label_at(mins[1]) == 0 && m2.label_at(mins[0]) > 0) {
        v_star = mins[1];
        v = mins[0];
    } else {
        throw std::domain_error("phi1_inverse: need exactly one label-0 minimum");
    }
    int k = m2.label_at(v);
    auto d_star = vertex_distances(m2.map, v_star);
    VertexView vv = vertex_view(m2.map.theta_m);
    std::map<Label, int> label_of;
    for (const auto& [r, c] : vv.cyc)
        for (const auto& x : c) label_of[x] = d_star.at(r);
    SuitablyLabelledMap out{m2.map, labels_for(m2.map.theta_m, label_of)};
    if (!out.is_suitably_labelled() || out.local_min_vertices().size() != 1)
        throw std::logic_error("phi1_inverse: relabelling failed");
    return {out, v, k};
}

SuitablyLabelledMap phi2(const SuitablyLabelledMap& m, const Label& v) {
    if (!m.is_suitably_labelled())
        throw std::domain_error("phi2: input not suitably labelled");
    LabelSet mins = m.local_min_vertices();
    if (mins.size() != 1)
        throw std::domain_error("phi2: input must have a unique local minimum");
    VertexView vv = vertex_view(m.map.theta_m);
    Label v_star = mins[0];
    Label vr = vv.rep.at(v);
    if (vr == v_star) throw std::domain_error("phi2: v must not be the minimum");
    auto d_star = vertex_distances(m.map, v_star);
    auto d_v = vertex_distances(m.map, vr);
    std::map<Label, int> label_of;
    for (const auto& [r, c] : vv.cyc) {
        int lab = std::min(d_star.at(r), d_v.at(r));
        for (const auto& x : c) label_of[x] = lab;
    }
    SuitablyLabelledMap out{m.map, labels_for(m.map.theta_m, label_of)};
    if (!out.is_suitably_labelled() || out.local_min_vertices().size() != 2)
        throw std::logic_error("phi2: relabelling failed");
    return out;
}

}  // namespace betamaps
