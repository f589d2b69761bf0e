#pragma once

// Paths, good paths and loops, slit opening and closing, mirror maps,
// gluing along a good loop, equilibrium loops, and the 2^{#theta - 1}-to-1
// correspondence between suitably labelled maps with two local minima and
// pointed maps on the projective plane.

#include <string>
#include <tuple>
#include <vector>

#include "betamaps/bfg.hpp"
#include "betamaps/map_model.hpp"
#include "betamaps/perm.hpp"

namespace betamaps {

// a path of length l is a half-edge sequence (g_1,...,g_{2l}):
// {g_{2i-1}, g_{2i}} is an edge and g_{2i}, g_{2i+1} share a vertex
using PathSeq = std::vector<Label>;

bool is_path(const HalfEdgeMap& m, const PathSeq& g);
// visited vertices v_0,...,v_l as smallest-label representatives
std::vector<Label> path_vertices(const HalfEdgeMap& m, const PathSeq& g);
std::vector<int> label_trace(const SuitablyLabelledMap& m, const PathSeq& g);
PathSeq reverse_path(const PathSeq& g);
// all visited vertices distinct (endpoints included)
bool is_simple_path(const HalfEdgeMap& m, const PathSeq& g);
// v_0 = v_l, all other vertices distinct
bool is_simple_loop(const HalfEdgeMap& m, const PathSeq& g);

// equal endpoint values, strict ascent, then one maximum or a single
// plateau step, then strict descent
bool is_good_trace(const std::vector<int>& t);
bool is_good_path(const SuitablyLabelledMap& m, const PathSeq& g);
// a simple loop splitting (at some rotation) into two good paths with
// identical label traces
bool is_good_loop(const SuitablyLabelledMap& m, const PathSeq& g);

// a map with a distinguished simple boundary face, remembering the good
// path that was slit open
struct BoundaryMap {
    SuitablyLabelledMap map;
    std::vector<Label> boundary;  // the boundary face cycle
    PathSeq path;                 // the path the slit was opened along

    friend bool operator==(const BoundaryMap&, const BoundaryMap&) = default;
};

// faces of the map minus the boundary face
std::vector<std::vector<Label>> interior_faces(const BoundaryMap& bm);

// cut the map open along a good path with distinct endpoints; the new
// boundary face is (bar g_{2l-1}, bar g_{2l-3}, ..., bar g_1, bar g_2,
// bar g_4, ..., bar g_{2l})
BoundaryMap open_slit(const SuitablyLabelledMap& m, const PathSeq& g);
// exact inverse of open_slit
SuitablyLabelledMap close_slit(const BoundaryMap& bm);

// the boundary of the slit map as a loop from the slit path's start
// vertex: edges (g_{2i-1}, bar g_{2l-2i+2}) out and (g_{2i}, bar
// g_{2l-2i+1}) back
PathSeq boundary_loop(const BoundaryMap& bm);

// the mirror map on the barred universe: alpha bar-conjugated, vertex
// permutation conjugated accordingly, labels transported
SuitablyLabelledMap mirror(const SuitablyLabelledMap& m);

struct GluedMap {
    SuitablyLabelledMap map;  // on [n] u [n-bar]
    Perm inv;                 // the orientation-reversing matching i <-> i-bar
    PathSeq loop;             // the glued boundary, a good loop

    friend bool operator==(const GluedMap&, const GluedMap&) = default;
};

// glue the slit map to its mirror along the boundary; doubles the genus,
// and bar becomes an orientation-reversing matching preserving labels
GluedMap glue_mirror(const BoundaryMap& bm);

// the global root: smallest half-edge at a vertex labelled 0
Label root_half_edge(const SuitablyLabelledMap& m);

// vertex-level BFS distances from the vertex of `from` (keyed by
// smallest-label vertex representatives)
std::map<Label, int> vertex_distances(const HalfEdgeMap& m, const Label& from);

// the leftmost geodesic from the vertex of root to the vertex of target;
// ties are broken by the clockwise order seeded at root and propagated
// through the arriving half-edges
PathSeq leftmost_geodesic(const SuitablyLabelledMap& m, const Label& root,
                          const Label& target);

struct GoodGeodesic {
    PathSeq path;    // from v_bullet to v_circ
    Label v_bullet;  // vertex representatives
    Label v_circ;
};

// for a map with exactly two local minima: the tail of the leftmost
// geodesic from the root vertex to the second minimum, starting at the
// last vertex sharing the label of the endpoint
GoodGeodesic leftmost_good_geodesic(const SuitablyLabelledMap& m);

// the canonical simple invariant good loop cut out by a label-preserving
// orientation-reversing matching
PathSeq equilibrium_loop(const SuitablyLabelledMap& m_hat, const Perm& inv);

// a flagged map with a distinguished vertex, stored as the smallest flag
// incident to it
struct PointedFlaggedMap {
    FlaggedMap fm;
    Label point;

    std::string to_json() const;
    static PointedFlaggedMap from_json(const std::string& text);
    friend bool operator==(const PointedFlaggedMap&,
                           const PointedFlaggedMap&) = default;
    friend auto operator<=>(const PointedFlaggedMap&,
                            const PointedFlaggedMap&) = default;
};

// smallest flag per vertex of the underlying (non-orientable) map, i.e.
// per orbit of the lifted vertex permutation together with the mirror
// involution alpha o rho
std::vector<Label> base_vertex_reps(const FlaggedMap& fm);
// replace the point by its vertex's smallest flag
PointedFlaggedMap normalize_point(PointedFlaggedMap p);

// slit open along the leftmost good geodesic, glue to the mirror, and
// project to the projective plane; pointed at the image of the
// label-0 vertices
PointedFlaggedMap to_projective(const SuitablyLabelledMap& m_tilde);

// inverse direction: lift to the orientation covering, label vertices by
// the distance to the pointed vertex, cut along the equilibrium loop and
// close the slit. flips selects which non-root face pairs to relabel
// before the canonical normalization (which undoes them), so every flip
// vector yields the same map; its length must be #faces - 1
SuitablyLabelledMap from_projective(const PointedFlaggedMap& pfm,
                                    const std::string& flips = "");

// relabellings between maps with one and two local minima. v names a
// vertex by any incident half-edge.
// phi1: (m, v, k) with 1 <= k < d(v, v_min) -> labels min(d(v*,u), k + d(v,u));
// a bijection onto the two-minima maps with a single label-0 vertex
SuitablyLabelledMap phi1(const SuitablyLabelledMap& m, const Label& v, int k);
std::tuple<SuitablyLabelledMap, Label, int> phi1_inverse(
    const SuitablyLabelledMap& m2);
// phi2: the k = 0 case; two-to-one onto the two-minima maps with two
// label-0 vertices
SuitablyLabelledMap phi2(const SuitablyLabelledMap& m, const Label& v);

}  // namespace betamaps
