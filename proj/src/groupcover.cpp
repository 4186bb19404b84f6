#include "foamtft/groupcover.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace foamtft {

// ---------------------------------------------------------------------------
// Groups and actions
// ---------------------------------------------------------------------------

int FiniteGroup::identity() const {
    for (int e = 0; e < n; ++e) {
        bool ok = true;
        for (int h = 0; h < n && ok; ++h)
            if (table[e][h] != h || table[h][e] != h) ok = false;
        if (ok) return e;
    }
    throw InvalidTables("no identity element");
}

int FiniteGroup::inv(int g) const {
    int e = identity();
    for (int h = 0; h < n; ++h)
        if (table[g][h] == e) return h;
    throw InvalidTables("no inverse for element " + std::to_string(g));
}

void FiniteGroup::validate() const {
    if (n < 1 || (int)table.size() != n) throw InvalidTables("bad multiplication table size");
    for (const auto& row : table) {
        if ((int)row.size() != n) throw InvalidTables("bad multiplication table row");
        for (int x : row)
            if (x < 0 || x >= n) throw InvalidTables("table entry out of range");
    }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (table[table[a][b]][c] != table[a][table[b][c]])
                    throw InvalidTables("multiplication is not associative");
    identity();
    for (int g = 0; g < n; ++g) inv(g);
}

FiniteGroup make_trivial_group() { return FiniteGroup{1, {{0}}}; }

FiniteGroup make_cyclic_group(int n) {
    FiniteGroup g;
    g.n = n;
    g.table.assign(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) g.table[a][b] = (a + b) % n;
    return g;
}

FiniteGroup make_symmetric_group(int n) {
    if (n < 1 || n > 4) throw InvalidTables("symmetric group helper supports n in 1..4");
    std::vector<int> base(n);
    std::iota(base.begin(), base.end(), 0);
    std::vector<std::vector<int>> perms;
    std::vector<int> p = base;
    do {
        perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    auto index_of = [&](const std::vector<int>& q) {
        return (int)(std::find(perms.begin(), perms.end(), q) - perms.begin());
    };
    FiniteGroup g;
    g.n = (int)perms.size();
    g.table.assign(g.n, std::vector<int>(g.n));
    for (int a = 0; a < g.n; ++a)
        for (int b = 0; b < g.n; ++b) {
            std::vector<int> q(n);
            for (int x = 0; x < n; ++x) q[x] = perms[a][perms[b][x]];
            g.table[a][b] = index_of(q);
        }
    return g;
}

std::vector<std::vector<int>> conjugacy_classes(const FiniteGroup& g) {
    std::vector<std::vector<int>> classes;
    std::vector<bool> seen(g.n, false);
    for (int x = 0; x < g.n; ++x) {
        if (seen[x]) continue;
        std::set<int> cls;
        for (int h = 0; h < g.n; ++h) cls.insert(g.table[g.table[h][x]][g.inv(h)]);
        for (int y : cls) seen[y] = true;
        classes.emplace_back(cls.begin(), cls.end());
    }
    std::sort(classes.begin(), classes.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return classes;
}

void GroupAction::validate() const {
    group.validate();
    if ((int)act.size() != group.n) throw InvalidTables("action table has wrong group size");
    for (const auto& row : act) {
        if ((int)row.size() != set_size) throw InvalidTables("action table row size");
        for (int x : row)
            if (x < 0 || x >= set_size) throw InvalidTables("action value out of range");
    }
    int e = group.identity();
    for (int x = 0; x < set_size; ++x)
        if (act[e][x] != x) throw InvalidTables("identity does not act trivially");
    for (int a = 0; a < group.n; ++a)
        for (int b = 0; b < group.n; ++b)
            for (int x = 0; x < set_size; ++x)
                if (act[group.table[a][b]][x] != act[a][act[b][x]])
                    throw InvalidTables("action is not compatible with multiplication");
}

GroupAction regular_action(const FiniteGroup& g) {
    GroupAction a;
    a.group = g;
    a.set_size = g.n;
    a.act = g.table;
    return a;
}

GroupAction trivial_action(const FiniteGroup& g, int set_size) {
    GroupAction a;
    a.group = g;
    a.set_size = set_size;
    a.act.assign(g.n, std::vector<int>(set_size));
    for (auto& row : a.act) std::iota(row.begin(), row.end(), 0);
    return a;
}

std::vector<std::string> ActionSystem::palette() const {
    std::vector<std::string> p;
    for (const auto& [s, a] : per_color) p.push_back(s);
    return p;
}

const GroupAction& ActionSystem::at(const std::string& s) const {
    auto it = per_color.find(s);
    if (it == per_color.end()) throw UnknownColor(s);
    return it->second;
}

Int ActionSystem::full_order() const {
    Int o = 1;
    for (const auto& [s, a] : per_color) o *= a.group.n;
    return o;
}

void ActionSystem::validate() const {
    for (const auto& [s, a] : per_color) a.validate();
}

// ---------------------------------------------------------------------------
// Equipments
// ---------------------------------------------------------------------------

namespace {

// Odometer over the product of the groups of the given colors.
// Calls f(g) with g[i] an element of colors[i]'s group.
template <typename F>
void for_each_group_tuple(const std::vector<std::string>& colors, const ActionSystem& act,
                          F&& f) {
    std::vector<int> g(colors.size(), 0);
    while (true) {
        f(g);
        std::size_t i = 0;
        for (; i < g.size(); ++i) {
            if (++g[i] < act.at(colors[i]).group.n) break;
            g[i] = 0;
        }
        if (i == g.size()) break;
    }
}

std::vector<std::pair<int, int>> transform_pairs(const std::vector<std::string>& colors,
                                                 const std::vector<std::pair<int, int>>& pairs,
                                                 const std::vector<int>& g,
                                                 const ActionSystem& act) {
    std::vector<std::pair<int, int>> r(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto& a = act.at(colors[i]).act;
        r[i] = {a[g[i]][pairs[i].first], a[g[i]][pairs[i].second]};
    }
    return r;
}

}  // namespace

std::vector<std::pair<int, int>> canonical_equipment(const std::vector<std::string>& colors,
                                                     std::vector<std::pair<int, int>> pairs,
                                                     const ActionSystem& act) {
    auto best = pairs;
    for_each_group_tuple(colors, act, [&](const std::vector<int>& g) {
        auto t = transform_pairs(colors, pairs, g, act);
        if (t < best) best = t;
    });
    return best;
}

std::vector<Equipment> enumerate_equipments(const GraphClass& sigma, const ActionSystem& act) {
    if (!sigma.connected()) throw std::invalid_argument("equipments need a connected class");
    const auto& colors = sigma.colors();
    std::set<std::vector<std::pair<int, int>>> reps;
    std::vector<std::pair<int, int>> pairs(colors.size(), {0, 0});
    // Odometer over all raw pair tuples.
    while (true) {
        reps.insert(canonical_equipment(colors, pairs, act));
        std::size_t i = 0;
        for (; i < pairs.size(); ++i) {
            int m = act.at(colors[i]).set_size;
            if (++pairs[i].second < m) break;
            pairs[i].second = 0;
            if (++pairs[i].first < m) break;
            pairs[i].first = 0;
        }
        if (i == pairs.size()) break;
    }
    std::vector<Equipment> out;
    for (const auto& rep : reps) {
        Equipment e;
        e.pairs = rep;
        Int stab = 0;
        for_each_group_tuple(colors, act, [&](const std::vector<int>& g) {
            if (transform_pairs(colors, rep, g, act) == rep) ++stab;
        });
        e.aut = stab;
        out.push_back(std::move(e));
    }
    return out;
}

Equipment involute_equipment(const GraphClass& sigma, const Equipment& e,
                             const ActionSystem& act) {
    std::vector<std::pair<int, int>> swapped(e.pairs.size());
    for (std::size_t i = 0; i < e.pairs.size(); ++i)
        swapped[i] = {e.pairs[i].second, e.pairs[i].first};
    Equipment r;
    r.pairs = canonical_equipment(sigma.colors(), swapped, act);
    r.aut = e.aut;
    return r;
}

// ---------------------------------------------------------------------------
// FilmPhiTable
// ---------------------------------------------------------------------------

namespace {

struct EdgeInfo {
    std::vector<std::string> colors;  // sorted colors of disks through the edge
    int values = 1;                   // prod |X_s|
};

struct Corner {
    int color_idx;         // index into the vertex's sorted color list
    int e_in, e_out;       // seam edges
    int pos_in, pos_out;   // index of the color within each edge's color list
};

}  // namespace

FilmPhiTable::FilmPhiTable(const FilmSurface& film, const ActionSystem& act)
    : film_(film), act_(act) {
    for (int q = 0; q < film_.num_vertices; ++q)
        vertex_colors_.push_back(film_.vertex_graph(q).colors());

    std::vector<EdgeInfo> edges(film_.seam_edges.size());
    {
        std::vector<std::set<std::string>> cs(film_.seam_edges.size());
        for (const auto& d : film_.disks)
            for (const auto& b : d.boundary) cs[b.edge].insert(d.color);
        for (std::size_t e = 0; e < edges.size(); ++e) {
            edges[e].colors.assign(cs[e].begin(), cs[e].end());
            for (const auto& s : edges[e].colors) edges[e].values *= act_.at(s).set_size;
        }
    }
    std::vector<std::vector<Corner>> corners(film_.num_vertices);
    for (const auto& d : film_.disks)
        for (std::size_t i = 0; i < d.boundary.size(); ++i) {
            int q = film_.step_to(d.boundary[i]);
            int e_in = d.boundary[i].edge;
            int e_out = d.boundary[(i + 1) % d.boundary.size()].edge;
            Corner c;
            c.e_in = e_in;
            c.e_out = e_out;
            auto pos = [&](int e) {
                const auto& cc = edges[e].colors;
                return (int)(std::find(cc.begin(), cc.end(), d.color) - cc.begin());
            };
            c.pos_in = pos(e_in);
            c.pos_out = pos(e_out);
            const auto& vc = vertex_colors_[q];
            c.color_idx = (int)(std::find(vc.begin(), vc.end(), d.color) - vc.begin());
            corners[q].push_back(c);
        }

    // The covering group of the film is the product over the colors that
    // actually appear on its disks.
    std::set<std::string> present;
    for (const auto& d : film_.disks) present.insert(d.color);
    std::vector<std::string> pal(present.begin(), present.end());
    order_ = 1;
    for (const auto& s : pal) order_ *= act_.at(s).group.n;

    // Per-vertex canonicalization memo.
    std::vector<std::map<std::vector<std::pair<int, int>>, std::vector<std::pair<int, int>>>>
        memo(film_.num_vertices);

    // Assignment: per edge, one value per color of that edge.
    std::vector<std::vector<int>> val(edges.size());
    for (std::size_t e = 0; e < edges.size(); ++e) val[e].assign(edges[e].colors.size(), 0);

    while (true) {
        Key key(film_.num_vertices);
        for (int q = 0; q < film_.num_vertices; ++q) {
            std::vector<std::pair<int, int>> pairs(vertex_colors_[q].size());
            for (const auto& c : corners[q])
                pairs[c.color_idx] = {val[c.e_in][c.pos_in], val[c.e_out][c.pos_out]};
            auto [it, fresh] = memo[q].try_emplace(pairs);
            if (fresh) it->second = canonical_equipment(vertex_colors_[q], pairs, act_);
            key[q] = it->second;
        }
        ++counts_[key];

        std::size_t e = 0;
        bool done = true;
        for (; e < val.size(); ++e) {
            std::size_t c = 0;
            for (; c < val[e].size(); ++c) {
                if (++val[e][c] < act_.at(edges[e].colors[c]).set_size) break;
                val[e][c] = 0;
            }
            if (c < val[e].size()) {
                done = false;
                break;
            }
        }
        if (done) break;
    }

    // Second pass: orbit representatives and stabilizers for the orbit-sum
    // oracle. The covering group acts color-wise on every edge value.
    // Flattened slot arrays keep the inner loop allocation-free.
    std::vector<int> slot_pal, slot_edge, slot_pos, slot_size;
    for (std::size_t e = 0; e < edges.size(); ++e)
        for (std::size_t c = 0; c < edges[e].colors.size(); ++c) {
            slot_pal.push_back(
                (int)(std::find(pal.begin(), pal.end(), edges[e].colors[c]) - pal.begin()));
            slot_edge.push_back((int)e);
            slot_pos.push_back((int)c);
            slot_size.push_back(act_.at(edges[e].colors[c]).set_size);
        }
    std::size_t ns = slot_pal.size();
    std::vector<std::vector<int>> flat_of(edges.size());  // (edge,pos) -> flat index
    for (std::size_t i = 0; i < ns; ++i) {
        auto& fo = flat_of[slot_edge[i]];
        if (fo.size() <= (std::size_t)slot_pos[i]) fo.resize(slot_pos[i] + 1);
        fo[slot_pos[i]] = (int)i;
    }

    std::vector<int> flat(ns, 0), buf(ns);
    while (true) {
        Int stab = 0;
        bool is_rep = true;
        for_each_group_tuple(pal, act_, [&](const std::vector<int>& g) {
            if (!is_rep) return;
            for (std::size_t i = 0; i < ns; ++i)
                buf[i] = act_.at(pal[slot_pal[i]]).act[g[slot_pal[i]]][flat[i]];
            if (buf < flat) is_rep = false;
            if (buf == flat) ++stab;
        });
        if (is_rep) {
            Key key(film_.num_vertices);
            for (int q = 0; q < film_.num_vertices; ++q) {
                std::vector<std::pair<int, int>> pairs(vertex_colors_[q].size());
                for (const auto& c : corners[q])
                    pairs[c.color_idx] = {flat[flat_of[c.e_in][c.pos_in]],
                                          flat[flat_of[c.e_out][c.pos_out]]};
                key[q] = canonical_equipment(vertex_colors_[q], pairs, act_);
            }
            orbit_sums_[key] += Rat(1, stab);
        }

        std::size_t i = 0;
        for (; i < ns; ++i) {
            if (++flat[i] < slot_size[i]) break;
            flat[i] = 0;
        }
        if (i == ns) break;
    }
}

FilmPhiTable::Key FilmPhiTable::key_of(const std::vector<Equipment>& boundary) const {
    if ((int)boundary.size() != film_.num_vertices)
        throw MismatchedBoundary("boundary size does not match the vertex count");
    Key key(film_.num_vertices);
    for (int q = 0; q < film_.num_vertices; ++q) {
        if (boundary[q].pairs.size() != vertex_colors_[q].size())
            throw MismatchedBoundary("equipment at vertex " + std::to_string(q) +
                                     " does not match the vertex graph colors");
        key[q] = canonical_equipment(vertex_colors_[q], boundary[q].pairs, act_);
    }
    return key;
}

Rat FilmPhiTable::phi(const std::vector<Equipment>& boundary) const {
    auto it = counts_.find(key_of(boundary));
    long long c = it == counts_.end() ? 0 : it->second;
    return Rat(Int(c), order_);
}

Rat FilmPhiTable::orbit_phi(const std::vector<Equipment>& boundary) const {
    auto it = orbit_sums_.find(key_of(boundary));
    return it == orbit_sums_.end() ? Rat(0) : it->second;
}

Rat film_phi(const FilmSurface& film, const std::vector<Equipment>& boundary,
             const ActionSystem& act) {
    FilmPhiTable table(film, act);
    Rat direct = table.phi(boundary);
    Rat orbit = table.orbit_phi(boundary);
    if (direct != orbit)
        throw BundleVerificationFailed("internal oracle mismatch: count/|G| = " +
                                       rat_str(direct) + " but orbit sum = " + rat_str(orbit));
    return direct;
}

// ---------------------------------------------------------------------------
// The section-6 construction
// ---------------------------------------------------------------------------

EquippedFrobenius build_center_algebra(const ActionSystem& act, const std::string& s) {
    const FiniteGroup& g = act.at(s).group;
    g.validate();
    auto classes = conjugacy_classes(g);
    std::size_t n = classes.size();
    std::vector<int> class_of(g.n);
    for (std::size_t i = 0; i < n; ++i)
        for (int x : classes[i]) class_of[x] = (int)i;

    EquippedFrobenius a;
    for (std::size_t i = 0; i < n; ++i) a.basis.push_back("c" + std::to_string(i));
    a.mul.assign(n, std::vector<Vec>(n, zero_vec(n)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            // Coefficients of the product of two class sums are constant on
            // classes; read them off at each class representative.
            std::vector<Rat> coeff(g.n, Rat(0));
            for (int x : classes[i])
                for (int y : classes[j]) coeff[g.table[x][y]] += 1;
            for (std::size_t k = 0; k < n; ++k) a.mul[i][j][k] = coeff[classes[k].front()];
        }
    int e = g.identity();
    a.unit = unit_vec(n, class_of[e]);
    a.l = zero_vec(n);
    a.l[class_of[e]] = Rat(1, g.n);
    a.star = Mat(n, n);
    for (std::size_t i = 0; i < n; ++i) a.star(class_of[g.inv(classes[i].front())], i) = 1;
    return a;
}

GraphFrobeniusData build_graph_frobenius(const ActionSystem& act,
                                         const std::vector<GraphClass>& w) {
    GraphFrobeniusData b;
    std::map<std::string, std::vector<Equipment>> bases;
    for (const auto& c : w) {
        auto eqs = enumerate_equipments(c, act);
        std::vector<std::string> labels;
        for (std::size_t i = 0; i < eqs.size(); ++i) labels.push_back("o" + std::to_string(i));
        b.add_space(c, labels);
        bases[c.enc()] = std::move(eqs);
    }
    for (const auto& c : w) {
        GraphClass cd = involute(c);
        if (!b.has_space(cd))
            throw MissingClass("working set not involution-closed at " + c.enc());
        auto film = compose({c, cd});
        if (!film) throw MissingClass("no bigon for " + c.enc());
        FilmPhiTable table(*film, act);
        const auto& bi = bases[c.enc()];
        const auto& bj = bases[cd.enc()];
        Mat m(bi.size(), bj.size());
        for (std::size_t i = 0; i < bi.size(); ++i)
            for (std::size_t j = 0; j < bj.size(); ++j) m(i, j) = table.phi({bi[i], bj[j]});
        b.set_form2(c, std::move(m));
    }
    for (const auto& s1 : w)
        for (const auto& s2 : w)
            for (const auto& s3 : w) {
                if (b.has_form3(s1, s2, s3)) continue;
                auto film = compose({s1, s2, s3});
                if (!film) continue;
                FilmPhiTable table(*film, act);
                const auto& b1 = bases[s1.enc()];
                const auto& b2 = bases[s2.enc()];
                const auto& b3 = bases[s3.enc()];
                std::vector<Rat> flat;
                flat.reserve(b1.size() * b2.size() * b3.size());
                for (const auto& x1 : b1)
                    for (const auto& x2 : b2)
                        for (const auto& x3 : b3) flat.push_back(table.phi({x1, x2, x3}));
                b.set_form3(s1, s2, s3, std::move(flat));
            }
    return b;
}

std::vector<Mat> phi_action(const GraphClass& sigma, const std::string& s,
                            const ActionSystem& act) {
    if (!sigma.has_color(s))
        throw std::invalid_argument("phi_action needs an s-edge on the class");
    auto basis = enumerate_equipments(sigma, act);
    const auto& colors = sigma.colors();
    std::size_t sidx = std::find(colors.begin(), colors.end(), s) - colors.begin();
    const GroupAction& ga = act.at(s);
    auto classes = conjugacy_classes(ga.group);

    std::map<std::vector<std::pair<int, int>>, std::size_t> index;
    for (std::size_t i = 0; i < basis.size(); ++i) index[basis[i].pairs] = i;

    auto column = [&](const std::vector<std::pair<int, int>>& pairs,
                      const std::vector<int>& cls) {
        Vec col = zero_vec(basis.size());
        for (int g : cls) {
            auto t = pairs;
            t[sidx].first = ga.act[g][t[sidx].first];
            col[index.at(canonical_equipment(colors, t, act))] += 1;
        }
        return col;
    };

    std::vector<Mat> ops;
    for (const auto& cls : classes) {
        Mat m(basis.size(), basis.size());
        for (std::size_t j = 0; j < basis.size(); ++j) {
            Vec col = column(basis[j].pairs, cls);
            for (std::size_t i = 0; i < basis.size(); ++i) m(i, j) = col[i];
        }
        ops.push_back(std::move(m));
    }

    // The action must not depend on the chosen orbit representative:
    // exhaust every raw tuple and compare against its orbit's column.
    std::vector<std::pair<int, int>> pairs(colors.size(), {0, 0});
    while (true) {
        auto rep = canonical_equipment(colors, pairs, act);
        for (std::size_t ci = 0; ci < classes.size(); ++ci)
            if (column(pairs, classes[ci]) != column(rep, classes[ci]))
                throw BundleVerificationFailed("phi_sigma^" + s +
                                               " is not well defined on orbits of " +
                                               sigma.enc());
        std::size_t i = 0;
        for (; i < pairs.size(); ++i) {
            int m = act.at(colors[i]).set_size;
            if (++pairs[i].second < m) break;
            pairs[i].second = 0;
            if (++pairs[i].first < m) break;
            pairs[i].first = 0;
        }
        if (i == pairs.size()) break;
    }
    return ops;
}

GraphCardyBundle build_bundle(const ActionSystem& act, const std::vector<GraphClass>& w) {
    act.validate();
    GraphCardyBundle bundle;
    bundle.palette = act.palette();
    for (const auto& s : bundle.palette) {
        bool found = false;
        for (const auto& c : w)
            if (c == segment_class(s)) found = true;
        if (!found)
            throw BundleVerificationFailed("working set must contain I_" + s);
        bundle.A[s] = build_center_algebra(act, s);
    }
    bundle.B = build_graph_frobenius(act, w);

    std::map<std::string, std::vector<Equipment>> bases;
    for (const auto& c : w) bases[c.enc()] = enumerate_equipments(c, act);

    for (const auto& c : w) {
        GraphClass cd = involute(c);
        const auto& bi = bases[c.enc()];
        const auto& bj = bases[cd.enc()];
        std::map<std::vector<std::pair<int, int>>, std::size_t> index;
        for (std::size_t j = 0; j < bj.size(); ++j) index[bj[j].pairs] = j;
        Mat st(bj.size(), bi.size());
        for (std::size_t i = 0; i < bi.size(); ++i)
            st(index.at(involute_equipment(c, bi[i], act).pairs), i) = 1;
        bundle.starB[c.enc()] = std::move(st);
    }

    for (const auto& s : bundle.palette)
        for (const auto& c : w)
            if (c.has_color(s)) bundle.phi[{s, c.enc()}] = phi_action(c, s, act);

    for (const auto& s : bundle.palette) bundle.unitB[s] = find_unit(bundle.B, segment_class(s));

    // U candidates: sum over involutions, then the pushforward of squaring,
    // then a direct linear solve of phi(U) = K_B*; each must also satisfy
    // U^2 = K_A*.
    for (const auto& s : bundle.palette) {
        const EquippedFrobenius& a = bundle.A.at(s);
        const FiniteGroup& g = act.at(s).group;
        auto classes = conjugacy_classes(g);
        Vec cand1 = zero_vec(a.dim()), cand2 = zero_vec(a.dim());
        for (std::size_t i = 0; i < classes.size(); ++i) {
            int rep = classes[i].front();
            if (g.table[rep][rep] == g.identity()) cand1[i] = 1;
            int count = 0;
            for (int x = 0; x < g.n; ++x)
                if (g.table[x][x] == rep) ++count;
            cand2[i] = count;
        }
        EquippedFrobenius eb = bundle.open_algebra(s);
        Vec kb = eb.twisted_casimir();
        Vec ka = a.twisted_casimir();
        std::vector<Vec> candidates = {cand1, cand2};
        {
            Mat p(eb.dim(), a.dim());
            for (std::size_t i = 0; i < a.dim(); ++i) {
                Vec col = bundle.phiB(s, unit_vec(a.dim(), i));
                for (std::size_t r = 0; r < eb.dim(); ++r) p(r, i) = col[r];
            }
            if (auto solved = solve_rect(p, kb)) candidates.push_back(*solved);
        }
        bool found = false;
        for (const auto& u : candidates)
            if (a.mulv(u, u) == ka && bundle.phiB(s, u) == kb) {
                bundle.U[s] = u;
                found = true;
                break;
            }
        if (!found)
            throw BundleVerificationFailed(
                "no U with U^2 = K_A* and phi(U) = K_B* exists for color " + s);
    }

    Report rep = verify_graph_cardy(bundle);
    if (!rep.ok())
        throw BundleVerificationFailed("assembled bundle fails verification: " +
                                       rep.failures.front(), rep);
    return bundle;
}

}  // namespace foamtft
