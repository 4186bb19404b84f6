#include <doctest.h>

#include <foamtft/groupcover.hpp>

using namespace foamtft;

namespace {

GraphClass theta_class() {
    return canonical_class(ColoredGraph{2, {{0, 1, "a"}, {0, 1, "b"}, {0, 1, "c"}}});
}

ActionSystem regular_system(const FiniteGroup& g, std::vector<std::string> colors) {
    ActionSystem sys;
    for (auto& c : colors) sys.per_color.emplace(c, regular_action(g));
    return sys;
}

}  // namespace

TEST_CASE("group constructors and conjugacy classes") {
    auto t = make_trivial_group();
    CHECK(t.n == 1);
    auto z3 = make_cyclic_group(3);
    z3.validate();
    CHECK(z3.inv(1) == 2);
    CHECK(conjugacy_classes(z3).size() == 3);

    auto s3 = make_symmetric_group(3);
    s3.validate();
    CHECK(s3.n == 6);
    auto cls = conjugacy_classes(s3);
    REQUIRE(cls.size() == 3);
    CHECK(cls[0] == std::vector<int>{0});  // identity class first
    std::size_t total = 0;
    for (auto& c : cls) total += c.size();
    CHECK(total == 6);
}

TEST_CASE("center algebra of a group ring") {
    SUBCASE("trivial group") {
        auto a = build_center_algebra(regular_system(make_trivial_group(), {"a"}), "a");
        CHECK(verify_equipped(a).ok());
        CHECK(a.casimir() == Vec{1});
        CHECK(a.lv(a.unit) == 1);
    }
    SUBCASE("Z/2") {
        auto a = build_center_algebra(regular_system(make_cyclic_group(2), {"a"}), "a");
        auto rep = verify_equipped(a);
        INFO((rep.failures.empty() ? std::string() : rep.failures.front()));
        CHECK(rep.ok());
        CHECK(a.casimir() == Vec{4, 0});
        CHECK(a.twisted_casimir() == Vec{4, 0});
    }
    SUBCASE("S3 is commutative on the center") {
        auto a = build_center_algebra(regular_system(make_symmetric_group(3), {"a"}), "a");
        CHECK(a.basis.size() == 3);
        CHECK(verify_equipped(a).ok());
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) CHECK(a.mul[i][j] == a.mul[j][i]);
    }
}

TEST_CASE("equipment enumeration oracles") {
    GraphClass ia = segment_class("a");
    SUBCASE("trivial group, one color") {
        auto sys = regular_system(make_trivial_group(), {"a"});
        auto eqs = enumerate_equipments(ia, sys);
        REQUIRE(eqs.size() == 1);
        CHECK(eqs[0].aut == 1);
    }
    SUBCASE("segment over Z/2, single-color palette") {
        auto sys = regular_system(make_cyclic_group(2), {"a"});
        auto eqs = enumerate_equipments(ia, sys);
        REQUIRE(eqs.size() == 2);  // diagonal and antidiagonal pair orbits
        for (auto& e : eqs) CHECK(e.aut == 1);
    }
    SUBCASE("absent palette colors do not change the orbits") {
        auto sys = regular_system(make_cyclic_group(2), {"a", "b", "c"});
        auto eqs = enumerate_equipments(ia, sys);
        REQUIRE(eqs.size() == 2);
        for (auto& e : eqs) CHECK(e.aut == 1);
    }
    SUBCASE("theta over (Z/2)^3") {
        auto sys = regular_system(make_cyclic_group(2), {"a", "b", "c"});
        auto eqs = enumerate_equipments(theta_class(), sys);
        CHECK(eqs.size() == 8);
        for (auto& e : eqs) CHECK(e.aut == 1);
    }
    SUBCASE("involution swaps pair components") {
        auto sys = regular_system(make_cyclic_group(3), {"a"});
        auto eqs = enumerate_equipments(ia, sys);
        REQUIRE(eqs.size() == 3);
        for (auto& e : eqs) {
            auto f = involute_equipment(segment_class("a"), e, sys);
            auto g = involute_equipment(segment_class("a"), f, sys);
            CHECK(g.pairs == e.pairs);
        }
    }
}

TEST_CASE("film partition function on the bigon gives the pairing law") {
    GraphClass ia = segment_class("a");
    auto sys = regular_system(make_cyclic_group(2), {"a"});
    auto eqs = enumerate_equipments(ia, sys);
    REQUIRE(eqs.size() == 2);

    auto film = compose({ia, involute(ia)});
    REQUIRE(film.has_value());
    FilmPhiTable table(*film, sys);
    for (auto& e1 : eqs)
        for (auto& e2 : eqs) {
            auto e2s = involute_equipment(involute(ia), e2, sys);
            Rat expect = (e1.pairs == e2s.pairs) ? Rat(1) / Rat(e1.aut) : Rat(0);
            CHECK(table.phi({e1, e2}) == expect);
            CHECK(table.orbit_phi({e1, e2}) == expect);
        }
}

TEST_CASE("film_phi cross-checks the two counting oracles") {
    auto sys = regular_system(make_cyclic_group(3), {"a", "b", "c"});
    auto th = theta_class();
    auto film = compose({th, th});
    REQUIRE(film.has_value());
    auto eqs = enumerate_equipments(th, sys);
    REQUIRE(!eqs.empty());
    CHECK(film_phi(*film, {eqs[0], eqs[0]}, sys) ==
          FilmPhiTable(*film, sys).orbit_phi({eqs[0], eqs[0]}));
}

TEST_CASE("mismatched boundary equipment is rejected") {
    GraphClass ia = segment_class("a");
    auto sys = regular_system(make_cyclic_group(2), {"a"});
    auto film = compose({ia, involute(ia)});
    REQUIRE(film.has_value());
    FilmPhiTable table(*film, sys);
    auto eqs = enumerate_equipments(ia, sys);
    CHECK_THROWS_AS(table.phi({eqs[0]}), MismatchedBoundary);
}

TEST_CASE("bundle construction over small groups passes verification") {
    std::vector<GraphClass> w = {segment_class("a"), segment_class("b"), segment_class("c"),
                                 theta_class()};
    SUBCASE("trivial group") {
        ActionSystem sys;
        for (auto c : {"a", "b", "c"})
            sys.per_color.emplace(c, regular_action(make_trivial_group()));
        auto bundle = build_bundle(sys, w);
        CHECK(verify_graph_cardy(bundle).ok());
        CHECK(bundle.A.at("a").basis.size() == 1);
    }
    SUBCASE("Z/2 regular on every color") {
        auto sys = regular_system(make_cyclic_group(2), {"a", "b", "c"});
        auto bundle = build_bundle(sys, w);
        auto rep = verify_graph_cardy(bundle);
        INFO((rep.failures.empty() ? std::string() : rep.failures.front()));
        CHECK(rep.ok());
        CHECK(bundle.A.at("a").basis.size() == 2);
        CHECK(bundle.B.dim(theta_class()) == 8);
    }
    SUBCASE("Z/3 regular: nontrivial involution on the closed sector") {
        auto sys = regular_system(make_cyclic_group(3), {"a", "b", "c"});
        auto bundle = build_bundle(sys, w);
        auto rep = verify_graph_cardy(bundle);
        INFO((rep.failures.empty() ? std::string() : rep.failures.front()));
        CHECK(rep.ok());
        // The class {1} and the class {2} are swapped by the involution.
        CHECK(bundle.A.at("a").star != Mat::identity(3));
        CHECK(bundle.B.dim(theta_class()) == 27);
    }
}

TEST_CASE("corrupted data is caught by the verifiers") {
    auto sys = regular_system(make_cyclic_group(2), {"a"});
    std::vector<GraphClass> w = {segment_class("a")};
    auto bundle = build_bundle(sys, w);
    REQUIRE(verify_graph_cardy(bundle).ok());

    SUBCASE("zeroed boundary element U") {
        auto broken = bundle;
        broken.U["a"] = Vec(bundle.U.at("a").size(), Rat(0));
        CHECK_FALSE(verify_graph_cardy(broken).ok());
    }
    SUBCASE("perturbed trilinear form") {
        auto b2 = bundle.B;
        GraphClass ia = segment_class("a");
        std::size_t d = b2.dim(ia);
        std::vector<Rat> flat(d * d * d);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                for (std::size_t k = 0; k < d; ++k)
                    flat[(i * d + j) * d + k] = b2.form3(ia, ia, ia, i, j, k);
        flat[0] += 1;
        GraphFrobeniusData rebuilt;
        rebuilt.add_space(ia, b2.space(ia).basis);
        rebuilt.set_form2(ia, b2.form2(ia));
        rebuilt.set_form3(ia, ia, ia, flat);
        auto broken = bundle;
        broken.B = rebuilt;
        CHECK_FALSE(verify_graph_cardy(broken).ok());
    }
}
