#include <doctest.h>

#include "foamtft/foams.hpp"

using namespace foamtft;

namespace {
GraphClass theta() {
    return canonical_class({2, {{0, 1, "a"}, {0, 1, "b"}, {0, 1, "c"}}});
}
}  // namespace

TEST_CASE("compose two segments into a bigon") {
    auto ia = segment_class("a");
    auto f = compose({ia, ia});
    REQUIRE(f.has_value());
    CHECK(f->num_vertices == 2);
    CHECK(f->seam_edges.size() == 2);
    REQUIRE(f->disks.size() == 1);
    CHECK(f->disks[0].boundary.size() == 2);
    CHECK(f->vertex_graph(0) == ia);
    CHECK(f->vertex_graph(1) == ia);
    CHECK(validate_cyclic(*f).ok());
}

TEST_CASE("compose theta with itself") {
    auto th = theta();
    auto f = compose({th, th});
    REQUIRE(f.has_value());
    CHECK(f->num_vertices == 2);
    CHECK(f->seam_edges.size() == 2);
    CHECK(f->disks.size() == 3);
    CHECK(f->vertex_graph(0) == th);
    CHECK(f->vertex_graph(1) == involute(th));
}

TEST_CASE("compose fails when a color appears once") {
    CHECK(compose({segment_class("a"), segment_class("b")}) == std::nullopt);
}

TEST_CASE("compose rejects bad input") {
    CHECK_THROWS_AS(compose({segment_class("a")}), std::invalid_argument);
    auto disc = canonical_class({4, {{0, 1, "a"}, {2, 3, "a"}}});
    CHECK_THROWS_AS(compose({disc, disc}), std::invalid_argument);
}

TEST_CASE("triangle of segments and its graph-cut") {
    auto ia = segment_class("a");
    auto f = compose({ia, ia, ia});
    REQUIRE(f.has_value());
    CHECK(f->num_vertices == 3);
    CHECK(f->seam_edges.size() == 3);
    CHECK(f->disks.size() == 1);

    auto cut = graph_cut(*f, 0, 1);
    CHECK(cut.cut_class == ia);
    CHECK(cut.piece_first.num_vertices == 2);
    CHECK(cut.piece_second.num_vertices == 3);
    // New vertex comes last; its graph is the cut class (resp. its dual).
    CHECK(cut.piece_first.vertex_graph(1) == ia);
    CHECK(cut.piece_second.vertex_graph(2) == involute(ia));
    CHECK(cut.first_orig_vertices == std::vector<int>{0});
    CHECK(cut.second_orig_vertices == std::vector<int>{1, 2});
    cut.piece_first.validate();
    cut.piece_second.validate();
}

TEST_CASE("graph-cut of the theta surface") {
    auto th = theta();
    auto f = compose({th, th});
    REQUIRE(f.has_value());
    auto cut = graph_cut(*f, 0, 1);
    CHECK(cut.cut_class == th);
    // Both pieces are the bigon over theta.
    CHECK(cut.piece_first.num_vertices == 2);
    CHECK(cut.piece_first.disks.size() == 3);
    CHECK(cut.piece_first.vertex_graph(0) == th);
    CHECK(cut.piece_first.vertex_graph(1) == involute(th));
    CHECK(cut.piece_second.vertex_graph(1) == involute(th));
}

TEST_CASE("graph-cut rejects empty sides") {
    auto ia = segment_class("a");
    auto f = compose({ia, ia});
    REQUIRE(f.has_value());
    CHECK_THROWS_AS(graph_cut(*f, 0, 0), NoCut);
    CHECK_THROWS_AS(graph_cut(*f, 0, 2), NoCut);
}

TEST_CASE("cut pieces recompose to the original vertex graphs") {
    auto th = theta();
    auto ia = segment_class("a");
    // theta, then a vertex seen only by disk a: needs sigma with color a only
    auto f = compose({th, th, th, th});
    REQUIRE(f.has_value());
    auto cut = graph_cut(*f, 1, 2);  // {1,2} | {3,0}
    std::vector<GraphClass> first_seq;
    for (int q = 0; q < cut.piece_first.num_vertices; ++q)
        first_seq.push_back(cut.piece_first.vertex_graph(q));
    auto re = compose(first_seq);
    REQUIRE(re.has_value());
    CHECK(re->disks.size() == cut.piece_first.disks.size());
    (void)ia;
}

TEST_CASE("film as foam validates") {
    auto f = compose({theta(), theta()});
    REQUIRE(f.has_value());
    auto foam = film_as_foam(*f, {"q0", "q1"});
    foam.validate();
    CHECK(foam.seams.size() == 1);
    CHECK(foam.patches.size() == 3);
    CHECK(foam.components().size() == 1);
    CHECK(foam.seam_vertex_graph(0, 0) == theta());
    CHECK(foam.seam_vertex_name(0, 1) == "q1");
}

TEST_CASE("foam validation catches duplicate names and repeated colors") {
    auto f = compose({theta(), theta()});
    REQUIRE(f.has_value());
    auto foam = film_as_foam(*f, {"q", "q"});
    CHECK_THROWS_AS(foam.validate(), InvalidSurface);

    CyclicFoam two;
    Patch p1, p2;
    p1.color = p2.color = "a";
    p1.genus = p2.genus = 1;
    two.patches = {p1, p2};
    two.validate();  // separate components: same color is fine
    CHECK(two.components().size() == 2);
}

TEST_CASE("handle and crosscap cuts") {
    CyclicFoam foam;
    Patch p;
    p.color = "a";
    p.genus = 1;
    foam.patches.push_back(p);

    CutSpec cut;
    cut.kind = CutSpec::Kind::Handle;
    cut.patch = 0;
    auto [foam2, ins] = apply_cut(foam, cut, "h");
    CHECK(foam2.patches[0].genus == 0);
    CHECK(foam2.patches[0].points.size() == 2);
    CHECK(ins.tensor == InsertionDescriptor::Tensor::K_s);
    CHECK(ins.color == "a");
    CHECK(ins.slots == std::vector<std::string>{"h_p0", "h_p1"});

    CutSpec bad;
    bad.kind = CutSpec::Kind::Crosscap;
    CHECK_THROWS_AS(apply_cut(foam, bad, "x"), InvalidCut);

    CyclicFoam k;
    Patch np;
    np.color = "a";
    np.orientable = false;
    np.crosscaps = 2;
    k.patches.push_back(np);
    CutSpec cc;
    cc.kind = CutSpec::Kind::Crosscap;
    auto [k2, ins2] = apply_cut(k, cc, "c");
    CHECK(k2.patches[0].crosscaps == 1);
    CHECK_FALSE(k2.patches[0].orientable);
    CHECK(ins2.tensor == InsertionDescriptor::Tensor::U_s);
    auto [k3, ins3] = apply_cut(k2, cc, "c2");
    CHECK(k3.patches[0].crosscaps == 0);
    CHECK(k3.patches[0].orientable);
}

TEST_CASE("detach a glued circle") {
    auto f = compose({segment_class("a"), segment_class("a")});
    REQUIRE(f.has_value());
    auto foam = film_as_foam(*f, {"q0", "q1"});
    CutSpec cut;
    cut.kind = CutSpec::Kind::DetachGlued;
    cut.patch = 0;
    cut.glued_index = 0;
    auto [foam2, ins] = apply_cut(foam, cut, "d");
    CHECK(foam2.patches.size() == 2);
    CHECK(foam2.patches[0].glued.empty());          // detached cap
    CHECK(foam2.patches[0].points.size() == 1);
    CHECK(foam2.patches[1].is_disk());              // annulus side became a disk
    CHECK(foam2.patches[1].points.size() == 1);
    CHECK(ins.tensor == InsertionDescriptor::Tensor::K_s);
    CHECK(ins.slots.size() == 2);
}

TEST_CASE("segment cuts on free circles") {
    CyclicFoam foam;
    Patch p;
    p.color = "a";
    p.free_circles.push_back({{{"x0", 1}, {"x1", 1}, {"x2", 1}}});
    p.free_circles.push_back({{{"y0", 1}}});
    foam.patches.push_back(p);

    CutSpec merge;
    merge.kind = CutSpec::Kind::SegmentMerge;
    merge.circle_a = 0;
    merge.circle_b = 1;
    auto [m, insm] = apply_cut(foam, merge, "m");
    REQUIRE(m.patches[0].free_circles.size() == 1);
    CHECK(m.patches[0].free_circles[0].vertices.size() == 6);
    CHECK(insm.tensor == InsertionDescriptor::Tensor::K_Is);

    CutSpec split;
    split.kind = CutSpec::Kind::SegmentSplit;
    split.circle_a = 0;
    split.gap_a = 0;
    split.gap_b = 2;  // x0, x1 detach
    auto [s, inss] = apply_cut(foam, split, "s");
    REQUIRE(s.patches.size() == 2);
    REQUIRE(s.patches[0].free_circles.size() == 2);  // kept: cut circle + y-circle
    REQUIRE(s.patches[1].free_circles.size() == 1);
    CHECK(s.patches[1].free_circles[0].vertices.size() == 3);  // x0, x1, new
    CHECK(s.patches[0].free_circles.back().vertices.size() == 2);  // x2, new
    CHECK(inss.tensor == InsertionDescriptor::Tensor::K_Is);
}

TEST_CASE("graph-cut on a foam seam") {
    auto ia = segment_class("a");
    auto f = compose({ia, ia, ia});
    REQUIRE(f.has_value());
    auto foam = film_as_foam(*f, {"q0", "q1", "q2"});
    CutSpec cut;
    cut.kind = CutSpec::Kind::Graph;
    cut.seam = 0;
    cut.arc_start = 0;
    cut.arc_len = 1;
    auto [foam2, ins] = apply_cut(foam, cut, "g");
    CHECK(foam2.seams.size() == 2);
    CHECK(foam2.patches.size() == 2);
    CHECK(ins.tensor == InsertionDescriptor::Tensor::K_sigma);
    CHECK(ins.sigma == ia);
    CHECK(ins.slots == std::vector<std::string>{"g_qp", "g_qm"});
    CHECK(foam2.seam_vertex_name(0, 0) == "q0");
    CHECK(foam2.seam_vertex_name(0, 1) == "g_qp");
    CHECK(foam2.seam_vertex_name(1, 2) == "g_qm");
    // New seam vertices carry the cut class and its dual.
    CHECK(foam2.seam_vertex_graph(0, 1) == ia);
    CHECK(foam2.seam_vertex_graph(1, 2) == involute(ia));

    // Cutting through a marked disk patch is rejected.
    foam.patches[0].points.push_back({"pt", 1});
    CHECK_THROWS_AS(apply_cut(foam, cut, "g"), InvalidCut);
}
