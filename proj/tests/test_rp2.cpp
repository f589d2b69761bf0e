#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "betamaps/oracle.hpp"
#include "betamaps/rp2.hpp"

using namespace betamaps;

namespace {

// square cycle, vertices labelled 0, 1, 0, 1; two local minima, faces (4,4)
SuitablyLabelledMap square() {
    return SuitablyLabelledMap{
        HalfEdgeMap{parse_perm("(1,8)(2,3)(4,5)(6,7)"),
                    parse_perm("(1,2)(3,4)(5,6)(7,8)")},
        {0, 1, 1, 0, 0, 1, 1, 0}};
}

// three-edge path, labels 0, 1, 2, 3 along it; unique local minimum
SuitablyLabelledMap path_map() {
    return SuitablyLabelledMap{
        HalfEdgeMap{parse_perm("(2,3)(4,5)", range_set(6)),
                    parse_perm("(1,2)(3,4)(5,6)")},
        {0, 1, 1, 2, 2, 3}};
}

std::vector<Label> rotate_to_min(std::vector<Label> v) {
    auto it = std::min_element(v.begin(), v.end());
    std::rotate(v.begin(), it, v.end());
    return v;
}

}  // namespace

TEST_CASE("path predicates") {
    SuitablyLabelledMap m = path_map();
    CHECK(m.is_suitably_labelled());
    PathSeq g{L(1), L(2), L(3), L(4)};
    CHECK(is_path(m.map, g));
    CHECK(is_simple_path(m.map, g));
    CHECK(path_vertices(m.map, g) == std::vector<Label>{L(1), L(2), L(4)});
    CHECK(label_trace(m, g) == std::vector<int>{0, 1, 2});
    CHECK(reverse_path(g) == PathSeq{L(4), L(3), L(2), L(1)});
    CHECK(is_path(m.map, reverse_path(g)));

    CHECK_FALSE(is_path(m.map, {L(1), L(3)}));
    CHECK_FALSE(is_path(m.map, {L(1)}));
    CHECK_FALSE(is_path(m.map, {L(1), L(2), L(5), L(6)}));
    CHECK_FALSE(is_simple_loop(m.map, g));
}

TEST_CASE("good traces") {
    CHECK(is_good_trace({0, 1, 0}));
    CHECK(is_good_trace({0, 1, 1, 0}));
    CHECK(is_good_trace({0, 1, 2, 1, 0}));
    CHECK(is_good_trace({0, 1, 2, 2, 1, 0}));
    CHECK(is_good_trace({1, 2, 1}));
    CHECK(is_good_trace({0, 0}));
    CHECK_FALSE(is_good_trace({0}));
    CHECK_FALSE(is_good_trace({0, 1}));
    CHECK_FALSE(is_good_trace({0, 1, 1, 1, 0}));
    CHECK_FALSE(is_good_trace({0, 1, 0, 1, 0}));
    CHECK_FALSE(is_good_trace({0, 2, 0}));
}

TEST_CASE("flat triangle has no good path or loop") {
    SuitablyLabelledMap t{HalfEdgeMap{parse_perm("(1,6)(2,3)(4,5)"),
                                      parse_perm("(1,2)(3,4)(5,6)")},
                          {0, 0, 0, 0, 0, 0}};
    CHECK(t.is_suitably_labelled());
    CHECK_FALSE(is_good_path(t, {L(1), L(2), L(3), L(4)}));
    PathSeq loop{L(1), L(2), L(3), L(4), L(5), L(6)};
    CHECK(is_simple_loop(t.map, loop));
    CHECK_FALSE(is_good_loop(t, loop));
}

TEST_CASE("square loop is good") {
    SuitablyLabelledMap sq = square();
    CHECK(sq.is_suitably_labelled());
    CHECK(sq.local_min_vertices() == make_label_set({L(1), L(4)}));
    PathSeq loop{L(1), L(2), L(3), L(4), L(5), L(6), L(7), L(8)};
    CHECK(is_simple_loop(sq.map, loop));
    CHECK(is_good_loop(sq, loop));
    CHECK(is_good_path(sq, {L(1), L(2), L(3), L(4)}));
}

TEST_CASE("slit open and close") {
    SuitablyLabelledMap sq = square();
    PathSeq g{L(1), L(2), L(3), L(4)};
    BoundaryMap bm = open_slit(sq, g);
    CHECK(bm.path == g);
    CHECK(bm.map.map.theta_m.size() == 12);
    CHECK(rotate_to_min(bm.boundary) ==
          rotate_to_min({LB(3), LB(1), LB(2), LB(4)}));
    CHECK(interior_faces(bm).size() == faces(sq.map).num_cycles());
    CHECK(close_slit(bm) == sq);

    PathSeq bl = boundary_loop(bm);
    CHECK(is_simple_loop(bm.map.map, bl));
    CHECK(path_vertices(bm.map.map, bl).front() == L(1));
}

TEST_CASE("mirror transports labels onto the barred universe") {
    SuitablyLabelledMap m = path_map();
    SuitablyLabelledMap mir = mirror(m);
    CHECK(mir.map.theta_m.size() == 6);
    CHECK(mir.map.alpha == bar_conjugate(m.map.alpha));
    // the mirror image of half-edge x is bar(alpha(x))
    for (const auto& h : m.map.theta_m.universe())
        CHECK(mir.label_at(m.map.alpha.apply(h).bar()) == m.label_at(h));
    CHECK(faces(mir.map).num_cycles() == faces(m.map).num_cycles());
    CHECK(euler_genus(mir.map) == euler_genus(m.map));
    CHECK(mir.is_suitably_labelled());
}

TEST_CASE("glue to the mirror along a good path") {
    SuitablyLabelledMap sq = square();
    BoundaryMap bm = open_slit(sq, {L(1), L(2), L(3), L(4)});
    GluedMap gm = glue_mirror(bm);
    CHECK(gm.map.map.theta_m.size() == 16);
    CHECK(gm.map.is_suitably_labelled());
    CHECK(euler_genus(gm.map.map) == 0);
    CHECK(is_good_loop(gm.map, gm.loop));
    InvReport rep = verify_orientation_reversing(gm.map.map, gm.inv);
    CHECK(rep.ok);
    // the matching pairs each half-edge with the mirror of its alpha-partner
    for (const auto& h : gm.map.map.theta_m.universe())
        CHECK(gm.map.label_at(gm.inv.apply(gm.map.map.alpha.apply(h))) ==
              gm.map.label_at(h));
}

TEST_CASE("leftmost geodesic breaks ties clockwise") {
    SuitablyLabelledMap sq = square();
    PathSeq g = leftmost_geodesic(sq, L(1), L(4));
    CHECK(g == PathSeq{L(1), L(2), L(3), L(4)});
    PathSeq g2 = leftmost_geodesic(sq, L(8), L(5));
    CHECK(is_path(sq.map, g2));
    CHECK(path_vertices(sq.map, g2).back() == L(4));
}

namespace {

// planar maps with exactly two local minima
bool in_s2(const SuitablyLabelledMap& m) {
    return m.local_min_vertices().size() == 2 && euler_genus(m.map) == 0;
}

}  // namespace

TEST_CASE("leftmost good geodesic on two-minima maps") {
    for (const char* ts : {"(1,2,3,4)", "(1,2)(3,4)"}) {
        auto two_min = enumerate_suitably_labelled(parse_perm(ts), in_s2);
        for (const auto& m : two_min) {
            GoodGeodesic gg = leftmost_good_geodesic(m);
            CHECK(is_good_path(m, gg.path));
            CHECK(is_simple_path(m.map, gg.path));
            CHECK(path_vertices(m.map, gg.path).front() == gg.v_bullet);
            CHECK(path_vertices(m.map, gg.path).back() == gg.v_circ);
            CHECK(m.label_at(gg.v_bullet) == m.label_at(gg.v_circ));
        }
    }
}

TEST_CASE("equilibrium loop of a glued map") {
    SuitablyLabelledMap sq = square();
    GoodGeodesic gg = leftmost_good_geodesic(sq);
    GluedMap gm = glue_mirror(open_slit(sq, gg.path));
    PathSeq eq = equilibrium_loop(gm.map, gm.inv);
    CHECK(is_good_loop(gm.map, eq));
    // invariance: the loop's edge set is preserved by the matching
    std::set<Label> on_loop(eq.begin(), eq.end());
    std::set<Label> image;
    for (const auto& h : eq) image.insert(gm.inv.apply(h));
    CHECK(on_loop == image);
    CHECK(rotate_to_min(PathSeq(eq)) == rotate_to_min(PathSeq(gm.loop)));
}

TEST_CASE("projective round trips and fibers") {
    for (const char* ts : {"(1,2)", "(1,2)(3,4)", "(1,2,3,4)"}) {
        Perm theta = parse_perm(ts);
        int l = theta.num_cycles();
        auto s2 = enumerate_suitably_labelled(theta, in_s2);
        std::set<SuitablyLabelledMap> s2_set(s2.begin(), s2.end());

        // round trips, and to_projective lands on valid pointed maps
        std::set<PointedFlaggedMap> sections;
        for (const auto& m : s2) {
            PointedFlaggedMap p = to_projective(m);
            CHECK(flagged_valid(p.fm));
            CHECK(flagged_euler(p.fm) == 1);
            CHECK_FALSE(is_orientable(p.fm));
            CHECK(normalize_point(p) == p);
            CHECK(from_projective(p) == m);
            sections.insert(p);
        }

        // every pointed flagged map closes to a map in S2, with fibers
        // of size 2^{l-1}; the to_projective image lies in its own fiber
        std::map<SuitablyLabelledMap, int> fibers;
        int pointed = 0;
        for (const auto& fm : enumerate_flagged_rp2(theta))
            for (const auto& rep : base_vertex_reps(fm)) {
                PointedFlaggedMap p = normalize_point({fm, rep});
                ++pointed;
                fibers[from_projective(p)]++;
                if (l == 2) {
                    CHECK(from_projective(p, "0") == from_projective(p));
                    CHECK(from_projective(p, "1") == from_projective(p));
                }
            }
        CHECK(fibers.size() == s2_set.size());
        for (const auto& [m, cnt] : fibers) {
            CHECK(cnt == (1 << (l - 1)));
            CHECK(s2_set.count(m) == 1);
        }
        CHECK(sections.size() == s2_set.size());
        CHECK(pointed == static_cast<int>(s2_set.size()) * (1 << (l - 1)));
    }
}

TEST_CASE("pointed flagged json round trip") {
    PointedFlaggedMap p = to_projective(square());
    CHECK(PointedFlaggedMap::from_json(p.to_json()) == p);
}

TEST_CASE("phi1 relabelling") {
    SuitablyLabelledMap m = path_map();
    REQUIRE(m.local_min_vertices() == make_label_set({L(1)}));
    SuitablyLabelledMap m2 = phi1(m, L(4), 1);
    CHECK(m2.map == m.map);
    CHECK(m2.labels == std::vector<int>{0, 1, 1, 1, 1, 2});
    CHECK(m2.local_min_vertices() == make_label_set({L(1), L(4)}));
    auto [back, v, k] = phi1_inverse(m2);
    CHECK(back == m);
    CHECK((v == L(4) || v == L(5)));
    CHECK(k == 1);
}

TEST_CASE("phi2 relabelling") {
    SuitablyLabelledMap m = path_map();
    SuitablyLabelledMap m2 = phi2(m, L(4));
    CHECK(m2.map == m.map);
    CHECK(m2.labels == std::vector<int>{0, 1, 1, 0, 0, 1});
    CHECK(m2.local_min_vertices().size() == 2);
    int zeros = 0;
    for (const auto& v : m2.local_min_vertices())
        if (m2.label_at(v) == 0) ++zeros;
    CHECK(zeros == 2);
}
