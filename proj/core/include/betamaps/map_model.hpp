#pragma once

// Permutational encodings of orientable hypermaps and maps, flag encodings
// of possibly non-orientable maps, Euler characteristic, and the
// orientation double cover.

#include <string>
#include <utility>
#include <vector>

#include "betamaps/perm.hpp"

namespace betamaps {

// bipartite map: black vertices theta, white vertices sigma, shared
// universe of edge labels; faces are theta^-1 sigma^-1
struct Hypermap {
    Perm theta;
    Perm sigma;

    friend bool operator==(const Hypermap&, const Hypermap&) = default;
    friend auto operator<=>(const Hypermap&, const Hypermap&) = default;
};

// map given by vertices (theta_m, acting on half-edge labels) and edges
// (alpha, a matching); equivalently the hypermap (theta_m, alpha) whose
// white vertices all have degree 2
struct HalfEdgeMap {
    Perm theta_m;
    Perm alpha;

    friend bool operator==(const HalfEdgeMap&, const HalfEdgeMap&) = default;
    friend auto operator<=>(const HalfEdgeMap&, const HalfEdgeMap&) = default;
};

// a possibly non-orientable map encoded by three fixed-point-free
// involutions on the flag set (two flags per half-edge)
struct FlaggedMap {
    Perm tau;  // the two flags of a half-edge
    Perm rho;  // flags on the same side of an edge
    Perm mu;   // the two flags of a corner

    friend bool operator==(const FlaggedMap&, const FlaggedMap&) = default;
    friend auto operator<=>(const FlaggedMap&, const FlaggedMap&) = default;
};

Perm faces(const Hypermap& h);
Perm faces(const HalfEdgeMap& m);

bool is_connected(const Hypermap& h);
bool is_connected(const HalfEdgeMap& m);

// genus from #theta + #sigma - n + #faces = 2 - 2g; throws on a
// disconnected input or when g is not a nonnegative integer
int euler_genus(const Hypermap& h);
int euler_genus(const HalfEdgeMap& m);

Perm flagged_faces(const FlaggedMap& fm);  // rho mu
bool flagged_connected(const FlaggedMap& fm);
// Euler characteristic V - E + F with V = #cyc(mu tau)/2, E = #cyc(tau rho)/2,
// F = #cyc(rho mu)/2; throws on disconnected input
int flagged_euler(const FlaggedMap& fm);
// orientable iff <mu tau, tau rho> has exactly two orbits on the flags
bool is_orientable(const FlaggedMap& fm);
bool flagged_valid(const FlaggedMap& fm);  // all three fixed-point-free involutions

struct InvReport {
    bool ok = true;
    std::vector<std::string> violations;
};

// checks both clauses of the orientation-reversing definition:
// (1) phi inv = inv phi^-1 and alpha inv = inv alpha^-1,
// (2) no cycle of phi, alpha is sent to itself by pi -> (inv pi inv)^-1,
//     and no cycle pi of theta_m satisfies (inv pi inv)^-1 = alpha pi alpha
InvReport verify_orientation_reversing(const HalfEdgeMap& m, const Perm& inv);

// tau = alpha inv, rho = inv, mu = inv phi; throws if inv is not
// orientation-reversing
FlaggedMap project_covering(const HalfEdgeMap& m, const Perm& inv);

// inverse: inv = rho, alpha = tau rho, theta_m = mu tau;
// throws if fm is orientable (the cover splits into two sheets)
std::pair<HalfEdgeMap, Perm> lift_flagged(const FlaggedMap& fm);

// JSON interchange: {"theta":"(1,2,10)...","sigma":"..."} and
// {"tau":"...","rho":"...","mu":"..."}
std::string hypermap_to_json(const Hypermap& h);
Hypermap hypermap_from_json(const std::string& text);
std::string flagged_to_json(const FlaggedMap& fm);
FlaggedMap flagged_from_json(const std::string& text);

}  // namespace betamaps
