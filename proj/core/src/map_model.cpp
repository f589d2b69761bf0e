#include "betamaps/map_model.hpp"

#include <stdexcept>

#include <json.hpp>

namespace betamaps {

Perm faces(const Hypermap& h) { return h.theta.inverse() * h.sigma.inverse(); }
Perm faces(const HalfEdgeMap& m) { return m.theta_m.inverse() * m.alpha.inverse(); }

bool is_connected(const Hypermap& h) { return is_transitive({h.theta, h.sigma}); }
bool is_connected(const HalfEdgeMap& m) { return is_transitive({m.theta_m, m.alpha}); }

namespace {
int genus_from_counts(int v, int w, int n, int f) {
    int chi = v + w - n + f;
    if (chi > 2 || (2 - chi) % 2 != 0)
        throw std::domain_error("invalid Euler characteristic " + std::to_string(chi));
    return (2 - chi) / 2;
}
}  // namespace

int euler_genus(const Hypermap& h) {
    if (!is_connected(h)) throw std::domain_error("euler_genus: disconnected hypermap");
    return genus_from_counts(h.theta.num_cycles(), h.sigma.num_cycles(), h.theta.size(),
                             faces(h).num_cycles());
}

int euler_genus(const HalfEdgeMap& m) {
    return euler_genus(Hypermap{m.theta_m, m.alpha});
}

Perm flagged_faces(const FlaggedMap& fm) { return fm.rho * fm.mu; }

bool flagged_connected(const FlaggedMap& fm) {
    return is_transitive({fm.tau, fm.rho, fm.mu});
}

bool flagged_valid(const FlaggedMap& fm) {
    if (!fm.tau.is_matching() || !fm.rho.is_matching() || !fm.mu.is_matching())
        return false;
    // tau and rho act on each edge's four flags as a Klein group: they
    // commute and their product (the half-edge pairing) is fixed-point-free
    if (fm.tau * fm.rho != fm.rho * fm.tau) return false;
    return (fm.tau * fm.rho).is_matching();
}

int flagged_euler(const FlaggedMap& fm) {
    if (!flagged_connected(fm)) throw std::domain_error("flagged_euler: disconnected map");
    int v2 = (fm.mu * fm.tau).num_cycles();
    int e2 = (fm.tau * fm.rho).num_cycles();
    int f2 = (fm.rho * fm.mu).num_cycles();
    if (v2 % 2 || e2 % 2 || f2 % 2)
        throw std::domain_error("flagged_euler: odd cycle counts");
    return v2 / 2 - e2 / 2 + f2 / 2;
}

bool is_orientable(const FlaggedMap& fm) {
    return orbits({fm.mu * fm.tau, fm.tau * fm.rho}).size() == 2;
}

namespace {

// the cycle containing l, as a sequence
std::vector<Label> cycle_of(const Perm& p, const Label& l) {
    std::vector<Label> c{l};
    for (Label cur = p.apply(l); cur != l; cur = p.apply(cur)) c.push_back(cur);
    return c;
}

// does pi -> (inv pi inv)^-1 send the cycle containing l to itself?
// (inv pi inv)^-1 has cycle (inv applied elementwise, order reversed)
bool cycle_fixed_by_inv_reversal(const Perm& p, const Perm& inv, const Label& l) {
    auto c = cycle_of(p, l);
    std::vector<Label> image;
    image.reserve(c.size());
    for (auto it = c.rbegin(); it != c.rend(); ++it) image.push_back(inv.apply(*it));
    // same cycle iff image's support intersects c's support and the cyclic
    // words agree; supports of distinct cycles are disjoint, so a single
    // membership test plus an alignment check suffices
    auto pos = std::find(c.begin(), c.end(), image.front());
    if (pos == c.end()) return false;
    size_t off = static_cast<size_t>(pos - c.begin());
    for (size_t i = 0; i < c.size(); ++i)
        if (c[(off + i) % c.size()] != image[i]) return false;
    return true;
}

}  // namespace

InvReport verify_orientation_reversing(const HalfEdgeMap& m, const Perm& inv) {
    InvReport rep;
    auto fail = [&](const std::string& msg) {
        rep.ok = false;
        rep.violations.push_back(msg);
    };
    if (!inv.is_matching()) fail("inv is not a fixed-point-free involution");
    Perm phi = faces(m);
    if (phi * inv != inv * phi.inverse())
        fail("clause 1: phi inv != inv phi^-1");
    if (m.alpha * inv != inv * m.alpha.inverse())
        fail("clause 1: alpha inv != inv alpha^-1");
    if (!rep.ok) return rep;

    std::vector<char> seen(phi.universe().size(), 0);
    auto check_cycles = [&](const Perm& p, const std::string& name, bool twist) {
        std::fill(seen.begin(), seen.end(), 0);
        for (const auto& l : p.universe()) {
            if (seen[p.pos(l)]) continue;
            for (const auto& x : cycle_of(p, l)) seen[p.pos(x)] = 1;
            if (!twist) {
                if (cycle_fixed_by_inv_reversal(p, inv, l))
                    fail("clause 2: " + name + " cycle of " + to_string(l) +
                         " fixed under inv-reversal");
            } else {
                // vertex condition: (inv pi inv)^-1 != alpha pi alpha, i.e.
                // the cycle of alpha(l) in alpha p alpha is not the
                // inv-reversal of the cycle of l in p
                auto c = cycle_of(p, l);
                std::vector<Label> image;
                for (auto it = c.rbegin(); it != c.rend(); ++it)
                    image.push_back(inv.apply(*it));
                std::vector<Label> twisted;
                for (const auto& x : c) twisted.push_back(m.alpha.apply(x));
                auto pos = std::find(twisted.begin(), twisted.end(), image.front());
                if (pos == twisted.end()) continue;
                size_t off = static_cast<size_t>(pos - twisted.begin());
                bool same = true;
                for (size_t i = 0; i < twisted.size() && same; ++i)
                    if (twisted[(off + i) % twisted.size()] != image[i]) same = false;
                if (same)
                    fail("clause 2: vertex cycle of " + to_string(l) +
                         " fixed under twisted inv-reversal");
            }
        }
    };
    check_cycles(phi, "face", false);
    check_cycles(m.alpha, "edge", false);
    check_cycles(m.theta_m, "vertex", true);
    return rep;
}

FlaggedMap project_covering(const HalfEdgeMap& m, const Perm& inv) {
    InvReport rep = verify_orientation_reversing(m, inv);
    if (!rep.ok)
        throw std::domain_error("project_covering: inv is not orientation-reversing: " +
                                rep.violations.front());
    Perm phi = faces(m);
    return FlaggedMap{m.alpha * inv, inv, inv * phi};
}

std::pair<HalfEdgeMap, Perm> lift_flagged(const FlaggedMap& fm) {
    if (!flagged_valid(fm)) throw std::domain_error("lift_flagged: invalid matchings");
    if (!flagged_connected(fm)) throw std::domain_error("lift_flagged: disconnected map");
    if (is_orientable(fm))
        throw std::domain_error("lift_flagged: orientable input, cover has two sheets");
    // alpha = tau rho, inv = rho, faces phi = rho mu, theta = alpha phi^-1
    Perm alpha = fm.tau * fm.rho;
    Perm theta = alpha * (fm.rho * fm.mu).inverse();
    return {HalfEdgeMap{theta, alpha}, fm.rho};
}

std::string hypermap_to_json(const Hypermap& h) {
    nlohmann::json j;
    j["theta"] = h.theta.to_cycle_string();
    j["sigma"] = h.sigma.to_cycle_string();
    return j.dump();
}

Hypermap hypermap_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    Perm theta = parse_perm(j.at("theta").get<std::string>());
    Perm sigma = parse_perm(j.at("sigma").get<std::string>());
    LabelSet uni = set_union(theta.universe(), sigma.universe());
    return Hypermap{parse_perm(j.at("theta").get<std::string>(), uni),
                    parse_perm(j.at("sigma").get<std::string>(), uni)};
}

std::string flagged_to_json(const FlaggedMap& fm) {
    nlohmann::json j;
    j["tau"] = fm.tau.to_cycle_string();
    j["rho"] = fm.rho.to_cycle_string();
    j["mu"] = fm.mu.to_cycle_string();
    return j.dump();
}

FlaggedMap flagged_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    LabelSet uni = set_union(
        set_union(parse_perm(j.at("tau").get<std::string>()).universe(),
                  parse_perm(j.at("rho").get<std::string>()).universe()),
        parse_perm(j.at("mu").get<std::string>()).universe());
    return FlaggedMap{parse_perm(j.at("tau").get<std::string>(), uni),
                      parse_perm(j.at("rho").get<std::string>(), uni),
                      parse_perm(j.at("mu").get<std::string>(), uni)};
}

}  // namespace betamaps
