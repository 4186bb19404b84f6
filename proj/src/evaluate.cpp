#include "foamtft/evaluate.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace foamtft {

namespace {

const Vec& label_of(const std::map<std::string, Vec>& labels, const std::string& name,
                    const char* what) {
    auto it = labels.find(name);
    if (it == labels.end())
        throw UnlabeledPoint(std::string(what) + " '" + name + "' has no label");
    return it->second;
}

/// The sub-foam of one connected component, with seam indices remapped.
CyclicFoam subfoam(const CyclicFoam& foam, const CyclicFoam::Component& comp) {
    CyclicFoam out;
    std::map<int, int> seam_map;
    for (int si : comp.seams) {
        seam_map[si] = (int)out.seams.size();
        out.seams.push_back(foam.seams[si]);
    }
    for (int pi : comp.patches) {
        Patch p = foam.patches[pi];
        for (auto& g : p.glued) g.seam = seam_map.at(g.seam);
        out.patches.push_back(std::move(p));
    }
    return out;
}

Rat eval_component(const GraphCardyBundle& bundle, const LabeledFoam& lf, int& counter);

Rat eval_foam_impl(const GraphCardyBundle& bundle, const LabeledFoam& lf, int& counter) {
    lf.foam.validate();
    Rat out = 1;
    for (const auto& comp : lf.foam.components()) {
        LabeledFoam part{subfoam(lf.foam, comp), lf.point_labels, lf.vertex_labels};
        out *= eval_component(bundle, part, counter);
    }
    return out;
}

Rat eval_insertion_impl(const GraphCardyBundle& bundle, const LabeledFoam& lf,
                        const InsertionDescriptor& ins, int& counter) {
    switch (ins.tensor) {
        case InsertionDescriptor::Tensor::U_s: {
            LabeledFoam leg = lf;
            leg.point_labels[ins.slots.at(0)] = bundle.U.at(ins.color);
            return eval_foam_impl(bundle, leg, counter);
        }
        case InsertionDescriptor::Tensor::K_s: {
            const auto& a = bundle.A.at(ins.color);
            Mat finv = a.pairing_inverse();
            std::size_t n = a.basis.size();
            Rat out = 0;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) {
                    if (finv(i, j) == 0) continue;
                    LabeledFoam leg = lf;
                    leg.point_labels[ins.slots.at(0)] = unit_vec(n, i);
                    leg.point_labels[ins.slots.at(1)] = unit_vec(n, j);
                    out += finv(i, j) * eval_foam_impl(bundle, leg, counter);
                }
            return out;
        }
        case InsertionDescriptor::Tensor::K_Is:
        case InsertionDescriptor::Tensor::K_sigma: {
            GraphClass sigma = ins.tensor == InsertionDescriptor::Tensor::K_Is
                                   ? segment_class(ins.color)
                                   : ins.sigma;
            Mat c = bundle.B.casimir_coeffs(sigma);
            std::size_t n = bundle.B.dim(sigma), m = bundle.B.dim(involute(sigma));
            Rat out = 0;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < m; ++j) {
                    if (c(i, j) == 0) continue;
                    LabeledFoam leg = lf;
                    leg.vertex_labels[ins.slots.at(0)] = unit_vec(n, i);
                    leg.vertex_labels[ins.slots.at(1)] = unit_vec(m, j);
                    out += c(i, j) * eval_foam_impl(bundle, leg, counter);
                }
            return out;
        }
    }
    throw std::logic_error("unreachable");
}

Rat eval_film_marked_impl(const GraphCardyBundle& bundle, const LabeledFoam& lf) {
    if (lf.foam.seams.size() != 1)
        throw std::invalid_argument("marked film evaluation needs exactly one seam");
    FilmSurface film = lf.foam.underlying_film(0);
    int n = film.num_vertices;
    std::vector<std::pair<GraphClass, Vec>> seq;
    for (int q = 0; q < n; ++q) {
        GraphClass cls = film.vertex_graph(q);
        std::string name = lf.foam.seam_vertex_name(0, q);
        Vec x = label_of(lf.vertex_labels, name, "vertex");
        if (x.size() != bundle.B.dim(cls))
            throw DimensionMismatch("label at vertex '" + name + "' has the wrong size");
        seq.emplace_back(cls, std::move(x));
    }
    for (const auto& p : lf.foam.patches) {
        for (const auto& pt : p.points) {
            Vec a = label_of(lf.point_labels, pt.name, "point");
            if (pt.sign < 0) a = bundle.A.at(p.color).starv(a);
            int q = 0;
            while (q < n && !seq[q].first.has_color(p.color)) ++q;
            if (q == n)
                throw MixedColors("no vertex can absorb a point of color " + p.color);
            seq[q].second = bundle.phi_op(p.color, seq[q].first, a) * seq[q].second;
        }
    }
    return eval_film(bundle, seq);
}

Rat eval_klein_impl(const GraphCardyBundle& bundle, const LabeledFoam& lf) {
    if (lf.foam.patches.size() != 1 || !lf.foam.seams.empty())
        throw MixedColors("closed-surface evaluation needs a single free patch");
    const Patch& p = lf.foam.patches.front();
    if (!p.glued.empty())
        throw std::invalid_argument("closed-surface evaluation needs free boundary only");
    const std::string& s = p.color;
    auto ai = bundle.A.find(s);
    if (ai == bundle.A.end()) throw MixedColors("no closed sector for color " + s);
    const EquippedFrobenius& a = ai->second;

    Vec acc = a.unit;
    for (const auto& pt : p.points) {
        Vec x = label_of(lf.point_labels, pt.name, "point");
        if ((int)x.size() != (int)a.basis.size())
            throw DimensionMismatch("label at point '" + pt.name + "' has the wrong size");
        if (pt.sign < 0) x = a.starv(x);
        acc = a.mulv(acc, x);
    }
    if (!p.free_circles.empty()) {
        EquippedFrobenius eb = bundle.open_algebra(s);
        for (const auto& c : p.free_circles) {
            // Start the boundary product at the least vertex name; cyclicity
            // of the trace makes the starting point immaterial (tested).
            std::size_t start = 0;
            for (std::size_t k = 1; k < c.vertices.size(); ++k)
                if (c.vertices[k].name < c.vertices[start].name) start = k;
            Vec beta = eb.unit;
            for (std::size_t k = 0; k < c.vertices.size(); ++k) {
                const FreeVertex& v = c.vertices[(start + k) % c.vertices.size()];
                Vec x = label_of(lf.vertex_labels, v.name, "vertex");
                if (v.sign < 0) x = eb.starv(x);
                beta = eb.mulv(beta, x);
            }
            acc = a.mulv(acc, bundle.phi_star(s, beta));
        }
    }
    for (int g = 0; g < p.genus; ++g) acc = a.mulv(acc, a.casimir());
    for (int k = 0; k < p.crosscaps; ++k) acc = a.mulv(acc, bundle.U.at(s));
    return a.lv(acc);
}

Rat eval_component(const GraphCardyBundle& bundle, const LabeledFoam& lf, int& counter) {
    if (lf.foam.seams.empty()) return eval_klein_impl(bundle, lf);
    // Detach every glued circle of every non-disk patch through Casimir legs.
    for (int pi = 0; pi < (int)lf.foam.patches.size(); ++pi) {
        const Patch& p = lf.foam.patches[pi];
        if (!p.glued.empty() && !p.is_disk()) {
            CutSpec cut;
            cut.kind = CutSpec::Kind::DetachGlued;
            cut.patch = pi;
            cut.glued_index = 0;
            auto [foam2, ins] = apply_cut(lf.foam, cut, "detach" + std::to_string(counter++));
            LabeledFoam next{std::move(foam2), lf.point_labels, lf.vertex_labels};
            return eval_insertion_impl(bundle, next, ins, counter);
        }
    }
    return eval_film_marked_impl(bundle, lf);
}

}  // namespace

LabeledFoam normalize_foam(const GraphCardyBundle& bundle, LabeledFoam lf) {
    // Materialize default seam vertex names so they survive the seam
    // reindexing that happens when components are split off.
    for (std::size_t si = 0; si < lf.foam.seams.size(); ++si) {
        auto& s = lf.foam.seams[si];
        for (int q = (int)s.vertex_names.size(); q < s.num_vertices; ++q)
            s.vertex_names.push_back(lf.foam.seam_vertex_name((int)si, q));
    }
    for (auto& p : lf.foam.patches) {
        const auto& a = bundle.A.at(p.color);
        std::vector<InteriorPoint> kept;
        for (auto& pt : p.points) {
            auto it = lf.point_labels.find(pt.name);
            if (it == lf.point_labels.end())
                throw UnlabeledPoint("point '" + pt.name + "' has no label");
            if (pt.sign < 0) {
                it->second = a.starv(it->second);
                pt.sign = +1;
            }
            if (it->second == a.unit)
                lf.point_labels.erase(it);
            else
                kept.push_back(pt);
        }
        p.points = std::move(kept);
        for (auto& c : p.free_circles)
            for (auto& v : c.vertices)
                if (v.sign < 0) {
                    auto it = lf.vertex_labels.find(v.name);
                    if (it == lf.vertex_labels.end())
                        throw UnlabeledPoint("vertex '" + v.name + "' has no label");
                    it->second = bundle.star_of(segment_class(p.color), it->second);
                    v.sign = +1;
                }
    }
    return lf;
}

Rat eval_film(const GraphCardyBundle& bundle,
              const std::vector<std::pair<GraphClass, Vec>>& seq) {
    std::size_t n = seq.size();
    if (n < 2) throw std::invalid_argument("film evaluation needs at least two vertices");
    std::vector<GraphClass> classes;
    for (const auto& [c, x] : seq) {
        if (x.size() != bundle.B.dim(c))
            throw DimensionMismatch("boundary vector does not match dim B_" + c.enc());
        classes.push_back(c);
    }
    auto film = compose(classes);
    if (!film) throw NotComposable("boundary sequence does not compose");
    if (n == 2) return bundle.B.pair(classes[0], seq[0].second, seq[1].second);
    if (n == 3)
        return bundle.B.tri(classes[0], classes[1], classes[2], seq[0].second, seq[1].second,
                            seq[2].second);
    GraphClass delta = graph_cut(*film, 0, 2).cut_class;
    if (!bundle.B.has_space(delta))
        throw MissingClass("cut class " + delta.enc() + " is outside the working set");
    GraphClass deltad = involute(delta);
    Mat c = bundle.B.casimir_coeffs(delta);
    std::size_t m = bundle.B.dim(delta), md = bundle.B.dim(deltad);
    Vec y(md, Rat(0));
    for (std::size_t i = 0; i < m; ++i) {
        Rat t = bundle.B.tri(classes[0], classes[1], delta, seq[0].second, seq[1].second,
                             unit_vec(m, i));
        if (t == 0) continue;
        for (std::size_t j = 0; j < md; ++j) y[j] += t * c(i, j);
    }
    std::vector<std::pair<GraphClass, Vec>> rest;
    rest.emplace_back(deltad, std::move(y));
    for (std::size_t k = 2; k < n; ++k) rest.push_back(seq[k]);
    return eval_film(bundle, rest);
}

Rat eval_film_marked(const GraphCardyBundle& bundle, const LabeledFoam& lf) {
    return eval_film_marked_impl(bundle, normalize_foam(bundle, lf));
}

Rat eval_klein(const GraphCardyBundle& bundle, const LabeledFoam& lf) {
    return eval_klein_impl(bundle, normalize_foam(bundle, lf));
}

Rat eval_foam(const GraphCardyBundle& bundle, const LabeledFoam& lf) {
    int counter = 0;
    return eval_foam_impl(bundle, normalize_foam(bundle, lf), counter);
}

Rat eval_insertion(const GraphCardyBundle& bundle, const LabeledFoam& lf,
                   const InsertionDescriptor& ins) {
    int counter = 0;
    return eval_insertion_impl(bundle, lf, ins, counter);
}

Report check_axioms(const GraphCardyBundle& bundle, const std::vector<LabeledFoam>& corpus) {
    Report rep;
    for (const auto& sig : bundle.B.class_list())
        if (!bundle.B.form2(sig).invertible())
            rep.fail("degenerate two-point form on " + sig.enc());

    int idx = 0;
    for (const auto& lf : corpus) {
        std::string tag = "foam #" + std::to_string(idx++);
        Rat base;
        try {
            base = eval_foam(bundle, lf);
        } catch (const std::exception& e) {
            rep.fail(tag + ": evaluation failed: " + e.what());
            continue;
        }

        // Every enumerable admissible cut must preserve Phi.
        std::vector<CutSpec> cuts;
        for (int pi = 0; pi < (int)lf.foam.patches.size(); ++pi) {
            const Patch& p = lf.foam.patches[pi];
            if (p.crosscaps > 0) {
                CutSpec c;
                c.kind = CutSpec::Kind::Crosscap;
                c.patch = pi;
                cuts.push_back(c);
            }
            if (p.genus > 0) {
                CutSpec c;
                c.kind = CutSpec::Kind::Handle;
                c.patch = pi;
                cuts.push_back(c);
            }
            for (int gi = 0; gi < (int)p.glued.size(); ++gi) {
                CutSpec c;
                c.kind = CutSpec::Kind::DetachGlued;
                c.patch = pi;
                c.glued_index = gi;
                cuts.push_back(c);
            }
        }
        for (int si = 0; si < (int)lf.foam.seams.size(); ++si) {
            int n = lf.foam.seams[si].num_vertices;
            for (int start = 0; start < n; ++start)
                for (int len = 1; len < n; ++len) {
                    CutSpec c;
                    c.kind = CutSpec::Kind::Graph;
                    c.seam = si;
                    c.arc_start = start;
                    c.arc_len = len;
                    cuts.push_back(c);
                }
        }
        int ci = 0;
        for (const auto& cut : cuts) {
            std::pair<CyclicFoam, InsertionDescriptor> opened;
            try {
                opened = apply_cut(lf.foam, cut, "ax" + std::to_string(ci++));
            } catch (const NoCut&) {
                continue;  // inadmissible arc
            } catch (const InvalidCut&) {
                continue;
            }
            try {
                LabeledFoam open{std::move(opened.first), lf.point_labels, lf.vertex_labels};
                Rat v = eval_insertion(bundle, open, opened.second);
                if (v != base) {
                    std::ostringstream os;
                    os << tag << ": cut invariance fails (cut kind " << (int)cut.kind
                       << " on patch/seam " << cut.patch << "/" << cut.seam
                       << "): " << rat_str(v) << " != " << rat_str(base);
                    rep.fail(os.str());
                }
            } catch (const std::exception& e) {
                rep.fail(tag + ": cut evaluation failed: " + e.what());
            }
        }

        // Renaming every marked point and vertex consistently is a foam
        // isomorphism and must not change Phi.
        LabeledFoam renamed = lf;
        auto rename = [](const std::string& s) { return s + "_iso"; };
        for (auto& p : renamed.foam.patches) {
            for (auto& pt : p.points) pt.name = rename(pt.name);
            for (auto& c : p.free_circles)
                for (auto& v : c.vertices) v.name = rename(v.name);
        }
        for (auto& s : renamed.foam.seams)
            for (auto& nme : s.vertex_names) nme = rename(nme);
        renamed.point_labels.clear();
        renamed.vertex_labels.clear();
        for (const auto& [k, v] : lf.point_labels) renamed.point_labels[rename(k)] = v;
        for (const auto& [k, v] : lf.vertex_labels) renamed.vertex_labels[rename(k)] = v;
        if (eval_foam(bundle, renamed) != base)
            rep.fail(tag + ": renaming invariance fails");
    }
    return rep;
}

}  // namespace foamtft
