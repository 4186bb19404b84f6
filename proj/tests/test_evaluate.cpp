#include <doctest.h>

#include <foamtft/evaluate.hpp>
#include <foamtft/groupcover.hpp>

using namespace foamtft;

namespace {

GraphClass theta_class() {
    return canonical_class(ColoredGraph{2, {{0, 1, "a"}, {0, 1, "b"}, {0, 1, "c"}}});
}

std::vector<GraphClass> working_set() {
    return {segment_class("a"), segment_class("b"), segment_class("c"), theta_class()};
}

ActionSystem regular_system(const FiniteGroup& g, std::vector<std::string> colors) {
    ActionSystem sys;
    for (auto& c : colors) sys.per_color.emplace(c, regular_action(g));
    return sys;
}

const ActionSystem& z2_sys() {
    static ActionSystem sys = regular_system(make_cyclic_group(2), {"a", "b", "c"});
    return sys;
}
const GraphCardyBundle& z2_bundle() {
    static GraphCardyBundle b = build_bundle(z2_sys(), working_set());
    return b;
}
const ActionSystem& z3_sys() {
    static ActionSystem sys = regular_system(make_cyclic_group(3), {"a", "b", "c"});
    return sys;
}
const GraphCardyBundle& z3_bundle() {
    static GraphCardyBundle b = build_bundle(z3_sys(), working_set());
    return b;
}

/// Foam of a single closed or free-boundary patch.
LabeledFoam patch_foam(Patch p) {
    LabeledFoam lf;
    lf.foam.patches.push_back(std::move(p));
    return lf;
}

}  // namespace

TEST_CASE("chain evaluation matches the counting oracle over Z/2") {
    const auto& bundle = z2_bundle();
    const auto& sys = z2_sys();
    auto w = working_set();
    std::map<std::string, std::vector<Equipment>> eqs;
    for (const auto& c : w) eqs[c.enc()] = enumerate_equipments(c, sys);

    for (std::size_t n = 2; n <= 4; ++n) {
        std::vector<std::size_t> pick(n, 0);
        while (true) {
            std::vector<GraphClass> classes;
            for (auto k : pick) classes.push_back(w[k]);
            if (auto film = compose(classes)) {
                FilmPhiTable table(*film, sys);
                std::vector<std::size_t> idx(n, 0);
                bool all_ok = true;
                while (true) {
                    std::vector<std::pair<GraphClass, Vec>> seq;
                    std::vector<Equipment> boundary;
                    for (std::size_t t = 0; t < n; ++t) {
                        std::size_t d = bundle.B.dim(classes[t]);
                        seq.emplace_back(classes[t], unit_vec(d, idx[t]));
                        boundary.push_back(eqs[classes[t].enc()][idx[t]]);
                    }
                    if (eval_film(bundle, seq) != table.phi(boundary)) all_ok = false;
                    std::size_t t = 0;
                    for (; t < n; ++t) {
                        if (++idx[t] < bundle.B.dim(classes[t])) break;
                        idx[t] = 0;
                    }
                    if (t == n) break;
                }
                CHECK(all_ok);
            }
            std::size_t t = 0;
            for (; t < n; ++t) {
                if (++pick[t] < w.size()) break;
                pick[t] = 0;
            }
            if (t == n) break;
        }
    }
}

TEST_CASE("chain evaluation matches the counting oracle over Z/3 (spot checks)") {
    const auto& bundle = z3_bundle();
    const auto& sys = z3_sys();
    auto th = theta_class();
    auto eqs = enumerate_equipments(th, sys);
    REQUIRE(eqs.size() == bundle.B.dim(th));

    auto film = compose({th, th, th});
    REQUIRE(film.has_value());
    FilmPhiTable table(*film, sys);
    std::size_t d = bundle.B.dim(th);
    // A deterministic stride keeps this to a sample of the 27^3 tuples.
    for (std::size_t i = 0; i < d; i += 5)
        for (std::size_t j = 0; j < d; j += 7)
            for (std::size_t k = 0; k < d; k += 3) {
                std::vector<std::pair<GraphClass, Vec>> seq = {
                    {th, unit_vec(d, i)}, {th, unit_vec(d, j)}, {th, unit_vec(d, k)}};
                CHECK(eval_film(bundle, seq) == table.phi({eqs[i], eqs[j], eqs[k]}));
            }
}

TEST_CASE("cyclic invariance of the chain") {
    const auto& bundle = z2_bundle();
    auto th = theta_class();
    std::size_t d = bundle.B.dim(th);
    std::vector<Vec> x;
    for (std::size_t t = 0; t < 4; ++t) {
        Vec v(d, Rat(0));
        for (std::size_t i = 0; i < d; ++i) v[i] = Rat((int)(3 * t + 2 * i + 1), (int)(i + 2));
        x.push_back(v);
    }
    std::vector<std::pair<GraphClass, Vec>> seq;
    for (std::size_t t = 0; t < 4; ++t) seq.emplace_back(th, x[t]);
    Rat base = eval_film(bundle, seq);
    for (int r = 1; r < 4; ++r) {
        std::rotate(seq.begin(), seq.begin() + 1, seq.end());
        CHECK(eval_film(bundle, seq) == base);
    }
}

TEST_CASE("structural facts on closed surfaces") {
    const auto& bundle = z2_bundle();
    const auto& a = bundle.A.at("a");
    SUBCASE("torus evaluates to dim A") {
        Patch p;
        p.color = "a";
        p.genus = 1;
        CHECK(eval_foam(bundle, patch_foam(p)) == Rat(2));
    }
    SUBCASE("Klein bottle evaluates to l(K_A*)") {
        Patch p;
        p.color = "a";
        p.crosscaps = 2;
        p.orientable = false;
        CHECK(eval_foam(bundle, patch_foam(p)) == a.lv(a.twisted_casimir()));
    }
    SUBCASE("Klein bottle over Z/3") {
        const auto& b3 = z3_bundle();
        const auto& a3 = b3.A.at("a");
        Patch p;
        p.color = "a";
        p.crosscaps = 2;
        p.orientable = false;
        CHECK(eval_foam(b3, patch_foam(p)) == a3.lv(a3.twisted_casimir()));
    }
    SUBCASE("three-point sphere evaluates to l(a1 a2 a3)") {
        Patch p;
        p.color = "a";
        p.points = {{"p1", +1}, {"p2", +1}, {"p3", +1}};
        LabeledFoam lf = patch_foam(p);
        Vec a1 = {1, 2}, a2 = {Rat(1, 3), 1}, a3 = {0, 5};
        lf.point_labels = {{"p1", a1}, {"p2", a2}, {"p3", a3}};
        CHECK(eval_foam(bundle, lf) == a.lv(a.mulv(a.mulv(a1, a2), a3)));
    }
}

TEST_CASE("a pure film foam evaluates like eval_film") {
    const auto& bundle = z2_bundle();
    auto th = theta_class();
    auto film = compose({th, th, th});
    REQUIRE(film.has_value());
    LabeledFoam lf;
    lf.foam = film_as_foam(*film, {"v0", "v1", "v2"});
    std::size_t d = bundle.B.dim(th);
    std::vector<std::pair<GraphClass, Vec>> seq;
    for (int t = 0; t < 3; ++t) {
        Vec v(d, Rat(0));
        for (std::size_t i = 0; i < d; ++i) v[i] = Rat((int)(i + t + 1), 3);
        lf.vertex_labels["v" + std::to_string(t)] = v;
        seq.emplace_back(th, v);
    }
    CHECK(eval_foam(bundle, lf) == eval_film(bundle, seq));
}

TEST_CASE("marked points absorb through phi") {
    const auto& bundle = z2_bundle();
    auto th = theta_class();
    auto film = compose({th, th});
    REQUIRE(film.has_value());
    std::size_t d = bundle.B.dim(th);
    Vec x0(d, Rat(0)), x1(d, Rat(0));
    for (std::size_t i = 0; i < d; ++i) {
        x0[i] = Rat((int)i + 1, 2);
        x1[i] = Rat(2 * (int)i + 1, 3);
    }
    LabeledFoam lf;
    lf.foam = film_as_foam(*film, {"v0", "v1"});
    lf.vertex_labels = {{"v0", x0}, {"v1", x1}};
    // Place a point on the b-colored disk patch.
    int bpatch = -1;
    for (int pi = 0; pi < (int)lf.foam.patches.size(); ++pi)
        if (lf.foam.patches[pi].color == "b") bpatch = pi;
    REQUIRE(bpatch >= 0);
    lf.foam.patches[bpatch].points.push_back({"m", +1});

    SUBCASE("unit label equals the unmarked surface") {
        lf.point_labels["m"] = bundle.A.at("b").unit;
        CHECK(eval_foam(bundle, lf) == bundle.B.pair(th, x0, x1));
    }
    SUBCASE("class-sum label and slot independence") {
        Vec g = {0, 1};  // the nontrivial class of Z/2
        lf.point_labels["m"] = g;
        Rat at0 = bundle.B.pair(th, bundle.phi_op("b", th, g) * x0, x1);
        Rat at1 = bundle.B.pair(th, x0, bundle.phi_op("b", involute(th), g) * x1);
        CHECK(eval_foam(bundle, lf) == at0);
        CHECK(at0 == at1);
    }
}

TEST_CASE("multiplicativity over disjoint components") {
    const auto& bundle = z2_bundle();
    auto th = theta_class();
    auto film = compose({th, th});
    REQUIRE(film.has_value());
    LabeledFoam lf;
    lf.foam = film_as_foam(*film, {"v0", "v1"});
    std::size_t d = bundle.B.dim(th);
    lf.vertex_labels = {{"v0", unit_vec(d, 1)}, {"v1", unit_vec(d, 1)}};
    Rat film_val = eval_foam(bundle, lf);

    Patch torus;
    torus.color = "b";
    torus.genus = 1;
    lf.foam.patches.push_back(torus);
    CHECK(eval_foam(bundle, lf) == film_val * Rat(2));
}

TEST_CASE("normalization: orientation flips and removable points") {
    const auto& bundle = z3_bundle();
    const auto& a = bundle.A.at("a");
    Patch p;
    p.color = "a";
    p.points = {{"p1", +1}, {"p2", +1}};
    LabeledFoam lf = patch_foam(p);
    Vec x = {1, 2, 7}, y = {Rat(1, 2), 3, 0};
    lf.point_labels = {{"p1", x}, {"p2", y}};
    Rat base = eval_foam(bundle, lf);

    SUBCASE("flipping a local orientation stars the label") {
        LabeledFoam flipped = lf;
        flipped.foam.patches[0].points[0].sign = -1;
        flipped.point_labels["p1"] = a.starv(x);
        // star is an involution, so starring the label of a flipped point
        // restores the original value.
        CHECK(eval_foam(bundle, flipped) == base);
        CHECK(a.starv(a.starv(x)) == x);
    }
    SUBCASE("a unit-labeled point is removable") {
        LabeledFoam more = lf;
        more.foam.patches[0].points.push_back({"p3", +1});
        more.point_labels["p3"] = a.unit;
        CHECK(eval_foam(bundle, more) == base);
        auto norm = normalize_foam(bundle, more);
        CHECK(norm.foam.patches[0].points.size() == 2);
    }
}

TEST_CASE("cut invariance over a mixed corpus") {
    const auto& bundle = z2_bundle();
    auto th = theta_class();
    GraphClass ia = segment_class("a");
    std::vector<LabeledFoam> corpus;

    {  // triangle film over I_a
        auto film = compose({ia, ia, ia});
        REQUIRE(film.has_value());
        LabeledFoam lf;
        lf.foam = film_as_foam(*film, {"v0", "v1", "v2"});
        std::size_t d = bundle.B.dim(ia);
        lf.vertex_labels = {{"v0", unit_vec(d, 0)},
                            {"v1", Vec{1, Rat(1, 2)}},
                            {"v2", Vec{3, 2}}};
        corpus.push_back(lf);
    }
    {  // theta bigon film
        auto film = compose({th, th});
        REQUIRE(film.has_value());
        LabeledFoam lf;
        lf.foam = film_as_foam(*film, {"v0", "v1"});
        std::size_t d = bundle.B.dim(th);
        Vec x(d, Rat(0)), y(d, Rat(0));
        for (std::size_t i = 0; i < d; ++i) {
            x[i] = Rat((int)i + 1, 2);
            y[i] = Rat((int)(2 * i) + 1, 5);
        }
        lf.vertex_labels = {{"v0", x}, {"v1", y}};
        corpus.push_back(lf);
    }
    {  // genus-1 patch a on the theta seam, disks b and c
        auto film = compose({th, th});
        REQUIRE(film.has_value());
        LabeledFoam lf;
        lf.foam = film_as_foam(*film, {"v0", "v1"});
        for (auto& p : lf.foam.patches)
            if (p.color == "a") p.genus = 1;
        std::size_t d = bundle.B.dim(th);
        lf.vertex_labels = {{"v0", unit_vec(d, 2)}, {"v1", Vec(d, Rat(1, 3))}};
        corpus.push_back(lf);
    }
    {  // annulus with a free circle on the triangle seam
        auto film = compose({ia, ia, ia});
        REQUIRE(film.has_value());
        LabeledFoam lf;
        lf.foam = film_as_foam(*film, {"v0", "v1", "v2"});
        FreeCircle c;
        c.vertices = {{"w0", +1}, {"w1", +1}};
        lf.foam.patches[0].free_circles.push_back(c);
        std::size_t d = bundle.B.dim(ia);
        lf.vertex_labels = {{"v0", Vec{1, 1}},
                            {"v1", Vec{2, Rat(1, 2)}},
                            {"v2", unit_vec(d, 1)},
                            {"w0", Vec{1, 4}},
                            {"w1", unit_vec(d, 0)}};
        corpus.push_back(lf);
    }
    {  // four-vertex theta chain: its off-center cuts exercise the crossing identity
        auto film = compose({th, th, th, th});
        REQUIRE(film.has_value());
        LabeledFoam lf;
        lf.foam = film_as_foam(*film, {"v0", "v1", "v2", "v3"});
        std::size_t d = bundle.B.dim(th);
        lf.vertex_labels = {{"v0", unit_vec(d, 1)},
                            {"v1", unit_vec(d, 3)},
                            {"v2", Vec(d, Rat(1, 2))},
                            {"v3", unit_vec(d, 0)}};
        corpus.push_back(lf);
    }
    {  // closed torus and Klein bottle
        Patch t;
        t.color = "c";
        t.genus = 1;
        corpus.push_back(patch_foam(t));
        Patch k;
        k.color = "a";
        k.crosscaps = 2;
        k.orientable = false;
        corpus.push_back(patch_foam(k));
    }

    auto rep = check_axioms(bundle, corpus);
    INFO((rep.failures.empty() ? std::string() : rep.failures.front()));
    CHECK(rep.ok());

    SUBCASE("a corrupted form is detected") {
        GraphCardyBundle broken = bundle;
        GraphFrobeniusData b2;
        for (const auto& c : bundle.B.class_list()) b2.add_space(c, bundle.B.space(c).basis);
        for (const auto& c : bundle.B.class_list()) {
            if (c == ia) {
                // A rank-one matrix violates the non-degeneracy axiom.
                Mat m(bundle.B.dim(c), bundle.B.dim(c));
                for (std::size_t i = 0; i < m.rows(); ++i)
                    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = 1;
                b2.set_form2(c, m);
            } else {
                b2.set_form2(c, bundle.B.form2(c));
            }
        }
        for (const auto& c1 : bundle.B.class_list())
            for (const auto& c2 : bundle.B.class_list())
                for (const auto& c3 : bundle.B.class_list())
                    if (bundle.B.has_form3(c1, c2, c3)) {
                        std::vector<Rat> flat;
                        for (std::size_t i = 0; i < bundle.B.dim(c1); ++i)
                            for (std::size_t j = 0; j < bundle.B.dim(c2); ++j)
                                for (std::size_t k = 0; k < bundle.B.dim(c3); ++k)
                                    flat.push_back(bundle.B.form3(c1, c2, c3, i, j, k));
                        b2.set_form3(c1, c2, c3, flat);
                    }
        broken.B = std::move(b2);
        CHECK_FALSE(check_axioms(broken, corpus).ok());
    }
}
