#include <doctest.h>

#include "foamtft/graphs.hpp"

using namespace foamtft;

namespace {
GraphClass theta() {
    return canonical_class({2, {{0, 1, "a"}, {0, 1, "b"}, {0, 1, "c"}}});
}
}  // namespace

TEST_CASE("segment class") {
    auto ia = segment_class("a");
    CHECK(ia.connected());
    CHECK(ia.rep().num_nodes == 2);
    REQUIRE(ia.rep().edges.size() == 1);
    CHECK(ia.rep().edges[0].color == "a");
    CHECK(ia.colors() == std::vector<std::string>{"a"});
    CHECK(ia.has_color("a"));
    CHECK_FALSE(ia.has_color("b"));
    CHECK(segment_class("a") == ia);
    CHECK(segment_class("b") != ia);
}

TEST_CASE("canonical form is label independent") {
    auto g1 = canonical_class({3, {{0, 1, "a"}, {1, 2, "b"}, {2, 0, "c"}}});
    auto g2 = canonical_class({3, {{2, 0, "b"}, {0, 1, "c"}, {1, 2, "a"}}});  // relabeled
    CHECK(g1 == g2);
    CHECK(g1.enc() == g2.enc());
    auto g3 = canonical_class({3, {{0, 1, "a"}, {2, 1, "b"}, {2, 0, "c"}}});  // b reversed
    CHECK(g1 != g3);
}

TEST_CASE("involution") {
    auto ia = segment_class("a");
    CHECK(involute(ia) == ia);  // I_s* = I_s

    auto th = theta();
    CHECK(involute(th) == th);  // node swap restores the orientation

    // A directed 3-cycle is not isomorphic to its reverse.
    auto cyc = canonical_class({3, {{0, 1, "a"}, {1, 2, "b"}, {2, 0, "c"}}});
    CHECK(involute(cyc) != cyc);
    CHECK(involute(involute(cyc)) == cyc);
}

TEST_CASE("edge lookup on connected classes") {
    auto th = theta();
    CHECK(th.colors() == std::vector<std::string>{"a", "b", "c"});
    const auto& eb = th.edge_of_color("b");
    CHECK(eb.color == "b");
    CHECK_THROWS_AS((void)th.edge_of_color("z"), UnknownColor);
}

TEST_CASE("validation") {
    CHECK_THROWS_AS(canonical_class({2, {{0, 0, "a"}}}), InvalidGraph);       // loop
    CHECK_THROWS_AS(canonical_class({2, {{0, 1, "a"}, {1, 0, "a"}}}),         // repeated color
                    InvalidGraph);
    CHECK_THROWS_AS(canonical_class({3, {{0, 1, "a"}}}), InvalidGraph);       // isolated node
    CHECK_THROWS_AS(canonical_class({2, {{0, 2, "a"}}}), InvalidGraph);       // out of range
}

TEST_CASE("disconnected classes may repeat colors across components") {
    auto g = canonical_class({4, {{0, 1, "a"}, {2, 3, "a"}}});
    CHECK_FALSE(g.connected());
    CHECK(g.colors() == std::vector<std::string>{"a"});
    // Component order does not matter.
    auto h = canonical_class({4, {{2, 3, "a"}, {0, 1, "a"}}});
    CHECK(g == h);
}
