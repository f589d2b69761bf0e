#pragma once

// The Bouttier-Fusy-Guitter pipeline: bridge configurations <->
// well-labelled hypermaps <-> suitably labelled maps.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "betamaps/map_model.hpp"
#include "betamaps/motzkin.hpp"
#include "betamaps/perm.hpp"

namespace betamaps {

// hypermap on an edge-label set I inside the ambient [n], with positive
// labels on white vertices (cycles of sigma) and marked frustrated
// degree-2 white vertices
struct WellLabelledHypermap {
    Hypermap hypermap;            // theta, sigma on I
    Perm ambient_theta;           // theta on [n]; theta_h = theta|_{I->I}
    std::map<Label, int> white_labels;  // keyed by smallest label of the cycle
    LabelSet frustrated;                // smallest labels of frustrated cycles

    int label_of(const Label& edge) const;  // label of the white vertex at edge
    friend bool operator==(const WellLabelledHypermap&,
                           const WellLabelledHypermap&) = default;
};

// half-edge labelled map with vertex labels; vertices are cycles of
// map.theta_m, a vertex's label is read through any of its half-edges
struct SuitablyLabelledMap {
    HalfEdgeMap map;
    // labels[k] = label of the vertex at the k-th half-edge of the universe
    // of theta_m (for a map on [n], labels[i-1] is the label at half-edge i)
    std::vector<int> labels;

    int n() const { return static_cast<int>(labels.size()); }
    int label_at(const Label& h) const { return labels[map.theta_m.pos(h)]; }
    bool is_suitably_labelled() const;  // min 0, |dl| <= 1 across edges
    LabelSet frustrated_edges() const;  // half-edges on equal-label edges
    bool is_local_min(const Label& h) const;   // the vertex at h
    LabelSet local_min_vertices() const;       // smallest half-edge per vertex
    LabelSet non_min_vertices() const;         // V^* representatives
    std::string to_json() const;
    static SuitablyLabelledMap from_json(const std::string& text);
    friend auto operator<=>(const SuitablyLabelledMap&,
                            const SuitablyLabelledMap&) = default;
    friend bool operator==(const SuitablyLabelledMap&,
                           const SuitablyLabelledMap&) = default;
};

// Construction Psi, first half: (gamma, sigma) in c(theta) to the
// well-labelled hypermap on I = Delta_- u Delta_0
WellLabelledHypermap hypermap_from_config(const MotzkinBridge& gamma, const Perm& sigma);

// inverse: reconstructs (gamma, sigma); throws if h is not in H(theta)
std::pair<MotzkinBridge, Perm> config_from_hypermap(const WellLabelledHypermap& h);

// membership in H(theta): theta_h = theta|_{I->I} and
// (l - 1_F) o theta_h = l + J_{theta,I} - 2, where F is the set of edges at
// frustrated vertices; returns the failed clause if any
std::optional<std::string> well_labelled_violation(const WellLabelledHypermap& h);

// BFG bijection, full pipeline on matching domains; theta is recovered
// from the face permutation on the way back
SuitablyLabelledMap bfg_forward(const WellLabelledHypermap& h);
WellLabelledHypermap bfg_inverse(const SuitablyLabelledMap& m);

// Psi = bfg_forward o hypermap_from_config and its inverse
SuitablyLabelledMap psi(const MotzkinBridge& gamma, const Perm& sigma);
std::pair<MotzkinBridge, Perm> psi_inverse(const SuitablyLabelledMap& m);

// graph distances d_v = min over local minima v* of (l(v*) + d(v*, v)),
// keyed by the V^* representatives; throws unless d_v = l(v) throughout
std::map<Label, int> distances(const SuitablyLabelledMap& m);
// the same distance-with-offset table for every vertex representative
std::map<Label, int> distance_table(const SuitablyLabelledMap& m);

// cyclic label lists; a cyclic list is normalized to its lexicographically
// smallest rotation for comparison
std::vector<int> normalize_cyclic(std::vector<int> v);
// cw-type of the face of m containing half-edge h (labels along the face)
std::vector<int> face_cw_type(const SuitablyLabelledMap& m, const Label& h);
// cw-type of the black vertex of h containing edge e
std::vector<int> black_cw_type(const WellLabelledHypermap& h, const Label& e);
// insert the ascending run i-1, ..., j-1 between consecutive entries i <= j
// (a single i-1 when i = j); nothing is inserted when i > j
std::vector<int> lower_completion(const std::vector<int>& tau);

}  // namespace betamaps
