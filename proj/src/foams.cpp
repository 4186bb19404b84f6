#include "foamtft/foams.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace foamtft {

namespace {

struct DSU {
    std::vector<int> parent;
    explicit DSU(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

std::vector<int> FilmSurface::disk_vertices(const Disk& d) const {
    std::vector<int> vs;
    vs.reserve(d.boundary.size());
    for (const auto& s : d.boundary) vs.push_back(step_from(s));
    return vs;
}

void FilmSurface::validate() const {
    int n = num_vertices;
    if (n < 2) throw InvalidSurface("film surface needs at least 2 vertices");
    std::vector<int> edge_cover(seam_edges.size(), 0);
    for (const auto& e : seam_edges) {
        if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n)
            throw InvalidSurface("seam edge endpoint out of range");
        if (e.u == e.v) throw InvalidSurface("seam graph has a loop");
    }
    std::set<std::string> colors;
    for (const auto& d : disks) {
        if (!colors.insert(d.color).second)
            throw InvalidSurface("repeated disk color " + d.color);
        if (d.boundary.size() < 2) throw InvalidSurface("disk boundary too short");
        std::set<int> used_edges, used_verts;
        for (std::size_t i = 0; i < d.boundary.size(); ++i) {
            const auto& s = d.boundary[i];
            if (s.edge < 0 || s.edge >= (int)seam_edges.size())
                throw InvalidSurface("disk references unknown seam edge");
            ++edge_cover[s.edge];
            if (!used_edges.insert(s.edge).second)
                throw InvalidSurface("disk traverses a seam edge twice");
            if (!used_verts.insert(step_from(s)).second)
                throw InvalidSurface("disk visits a vertex twice");
            const auto& nx = d.boundary[(i + 1) % d.boundary.size()];
            if (step_to(s) != step_from(nx))
                throw InvalidSurface("disk boundary does not chain");
        }
        // Cyclic-order compatibility: the visited sequence must wrap the
        // global cyclic order exactly once.
        auto vs = disk_vertices(d);
        int descents = 0;
        for (std::size_t i = 0; i < vs.size(); ++i)
            if (vs[(i + 1) % vs.size()] < vs[i]) ++descents;
        if (descents != 1)
            throw InvalidSurface("disk " + d.color + " violates the cyclic order");
    }
    for (std::size_t e = 0; e < seam_edges.size(); ++e)
        if (edge_cover[e] == 0) throw InvalidSurface("seam edge lies on no disk");

    DSU dsu(n);
    for (const auto& e : seam_edges) dsu.unite(e.u, e.v);
    for (int v = 1; v < n; ++v)
        if (dsu.find(v) != dsu.find(0)) throw InvalidSurface("surface is disconnected");

    for (int q = 0; q < n; ++q) {
        if (!vertex_graph(q).connected())
            throw InvalidSurface("vertex graph at " + std::to_string(q) + " is disconnected");
    }
}

GraphClass FilmSurface::vertex_graph(int q) const {
    if (q < 0 || q >= num_vertices) throw UnknownVertex("vertex " + std::to_string(q));
    // Half-edge (e, end): end 0 at u, 1 at v.
    std::map<std::pair<int, int>, int> node_of;
    for (std::size_t e = 0; e < seam_edges.size(); ++e) {
        if (seam_edges[e].u == q) node_of[{(int)e, 0}] = 0;
        if (seam_edges[e].v == q) node_of[{(int)e, 1}] = 0;
    }
    int next = 0;
    for (auto& [k, v] : node_of) v = next++;

    ColoredGraph g;
    g.num_nodes = next;
    for (const auto& d : disks) {
        for (std::size_t i = 0; i < d.boundary.size(); ++i) {
            if (step_to(d.boundary[i]) != q) continue;
            const auto& in = d.boundary[i];
            const auto& out = d.boundary[(i + 1) % d.boundary.size()];
            int in_end = in.forward ? 1 : 0;
            int out_end = out.forward ? 0 : 1;
            g.edges.push_back({node_of.at({in.edge, in_end}), node_of.at({out.edge, out_end}),
                               d.color});
        }
    }
    if (g.num_nodes == 0) throw UnknownVertex("vertex " + std::to_string(q) + " has no seam edges");
    return canonical_class(g);
}

std::vector<GraphClass> FilmSurface::vertex_graphs() const {
    std::vector<GraphClass> r;
    r.reserve(num_vertices);
    for (int q = 0; q < num_vertices; ++q) r.push_back(vertex_graph(q));
    return r;
}

std::optional<FilmSurface> compose(const std::vector<GraphClass>& seq) {
    int n = (int)seq.size();
    if (n < 2) throw std::invalid_argument("compose needs at least 2 vertex graphs");
    for (const auto& c : seq)
        if (!c.connected()) throw std::invalid_argument("compose needs connected classes");

    std::set<std::string> colors;
    for (const auto& c : seq)
        for (const auto& s : c.colors()) colors.insert(s);

    std::vector<int> offset(n + 1, 0);
    for (int i = 0; i < n; ++i) offset[i + 1] = offset[i] + seq[i].rep().num_nodes;
    int total_slots = offset[n];
    auto slot = [&](int pos, int node) { return offset[pos] + node; };
    auto slot_pos = [&](int s) {
        int p = 0;
        while (offset[p + 1] <= s) ++p;
        return p;
    };

    // Forced seam pairing: for color s, consecutive s-positions i -> j give
    // a traversal from (i, head of s-edge) to (j, tail of s-edge).
    struct Traversal {
        std::string color;
        int exit_slot, entry_slot;
    };
    std::vector<Traversal> traversals;
    std::map<std::string, std::vector<int>> positions;
    for (const auto& s : colors) {
        auto& ps = positions[s];
        for (int i = 0; i < n; ++i)
            if (seq[i].has_color(s)) ps.push_back(i);
        if ((int)ps.size() < 2) return std::nullopt;  // a disk must visit >= 2 vertices
        for (std::size_t t = 0; t < ps.size(); ++t) {
            int i = ps[t], j = ps[(t + 1) % ps.size()];
            const auto& ei = seq[i].edge_of_color(s);
            const auto& ej = seq[j].edge_of_color(s);
            traversals.push_back({s, slot(i, ei.head), slot(j, ej.tail)});
        }
    }

    DSU dsu(total_slots);
    for (const auto& t : traversals) dsu.unite(t.exit_slot, t.entry_slot);
    std::map<int, std::vector<int>> groups;
    for (int s = 0; s < total_slots; ++s) groups[dsu.find(s)].push_back(s);
    std::map<int, int> edge_of_slot;  // slot -> seam edge index
    FilmSurface f;
    f.num_vertices = n;
    for (auto& [root, members] : groups) {
        if (members.size() != 2) return std::nullopt;
        int a = members[0], b = members[1];
        int pa = slot_pos(a), pb = slot_pos(b);
        if (pa == pb) return std::nullopt;  // seam loop
        int id = (int)f.seam_edges.size();
        f.seam_edges.push_back({pa, pb});
        edge_of_slot[a] = id;
        edge_of_slot[b] = id;
    }
    // Seam edge endpoint order: u side corresponds to the smaller slot.
    std::map<int, std::pair<int, int>> edge_slots;  // edge -> (u-slot, v-slot)
    for (auto& [s, e] : edge_of_slot) {
        auto it = edge_slots.find(e);
        if (it == edge_slots.end())
            edge_slots[e] = {s, -1};
        else
            it->second.second = s;
    }
    for (auto& [e, ss] : edge_slots) {
        f.seam_edges[e] = {slot_pos(ss.first), slot_pos(ss.second)};
    }

    for (const auto& s : colors) {
        Disk d;
        d.color = s;
        for (std::size_t t = 0; t < positions[s].size(); ++t) {
            int i = positions[s][t];
            const auto& ei = seq[i].edge_of_color(s);
            int exit = slot(i, ei.head);
            int e = edge_of_slot.at(exit);
            d.boundary.push_back({e, edge_slots.at(e).first == exit});
        }
        f.disks.push_back(std::move(d));
    }

    try {
        f.validate();
    } catch (const InvalidSurface&) {
        return std::nullopt;
    }
    if (!validate_cyclic(f).ok()) return std::nullopt;

    // Uniqueness sanity: the reconstruction must reproduce the inputs.
    for (int i = 0; i < n; ++i)
        if (!(f.vertex_graph(i) == seq[i]))
            throw NonUniqueInternal("compose round-trip mismatch at position " +
                                    std::to_string(i));
    return f;
}

namespace {

struct CutData {
    std::vector<int> cut_edges;  // seam edges joining the two sides
    struct CrossingDisk {
        int disk;
        std::size_t exit_step, entry_step;  // indices into the disk boundary
    };
    std::vector<CrossingDisk> crossings;
};

// Builds the forced graph-cut for the bipartition, or a failure reason.
std::pair<std::optional<CutData>, std::string> build_cut(const FilmSurface& f, int arc_start,
                                                         int arc_len) {
    int n = f.num_vertices;
    if (arc_len < 1 || arc_len >= n) return {std::nullopt, "empty side"};
    auto in_arc = [&](int v) {
        int d = (v - arc_start + n) % n;
        return d < arc_len;
    };
    CutData cd;
    std::map<int, int> gamma_node;
    for (std::size_t e = 0; e < f.seam_edges.size(); ++e)
        if (in_arc(f.seam_edges[e].u) != in_arc(f.seam_edges[e].v)) {
            gamma_node[(int)e] = (int)cd.cut_edges.size();
            cd.cut_edges.push_back((int)e);
        }
    for (std::size_t di = 0; di < f.disks.size(); ++di) {
        const auto& d = f.disks[di];
        std::optional<std::size_t> exit, entry;
        for (std::size_t i = 0; i < d.boundary.size(); ++i) {
            bool a = in_arc(f.step_from(d.boundary[i]));
            bool b = in_arc(f.step_to(d.boundary[i]));
            if (a == b) continue;
            if (a)
                exit = i;
            else
                entry = i;
        }
        if (exit.has_value() != entry.has_value())
            return {std::nullopt, "disk crosses the split an odd number of times"};
        if (exit) cd.crossings.push_back({(int)di, *exit, *entry});
    }
    if (cd.crossings.empty() || cd.cut_edges.empty()) return {std::nullopt, "no crossing"};
    // gamma must be connected.
    DSU dsu((int)cd.cut_edges.size());
    for (const auto& c : cd.crossings) {
        const auto& d = f.disks[c.disk];
        dsu.unite(gamma_node.at(d.boundary[c.exit_step].edge),
                  gamma_node.at(d.boundary[c.entry_step].edge));
    }
    for (std::size_t i = 1; i < cd.cut_edges.size(); ++i)
        if (dsu.find((int)i) != dsu.find(0)) return {std::nullopt, "cut graph disconnected"};
    return {cd, ""};
}

GraphClass gamma_class(const FilmSurface& f, const CutData& cd, bool from_first_side) {
    std::map<int, int> node_of;
    for (std::size_t i = 0; i < cd.cut_edges.size(); ++i) node_of[cd.cut_edges[i]] = (int)i;
    ColoredGraph g;
    g.num_nodes = (int)cd.cut_edges.size();
    for (const auto& c : cd.crossings) {
        const auto& d = f.disks[c.disk];
        int e_exit = node_of.at(d.boundary[c.exit_step].edge);
        int e_entry = node_of.at(d.boundary[c.entry_step].edge);
        if (from_first_side)
            g.edges.push_back({e_exit, e_entry, d.color});
        else
            g.edges.push_back({e_entry, e_exit, d.color});
    }
    return canonical_class(g);
}

// One contracted piece. `keep` selects the side.
struct PieceOut {
    FilmSurface piece;
    std::vector<int> orig_vertices;
    std::vector<int> edge_orig;
    std::vector<int> disk_orig;
};

PieceOut contract_side(const FilmSurface& f, const CutData& cd, int arc_start, int arc_len,
                       bool keep_arc) {
    int n = f.num_vertices;
    auto in_arc = [&](int v) {
        int d = (v - arc_start + n) % n;
        return d < arc_len;
    };
    auto keep = [&](int v) { return in_arc(v) == keep_arc; };

    PieceOut out;
    int start = keep_arc ? arc_start : (arc_start + arc_len) % n;
    int len = keep_arc ? arc_len : n - arc_len;
    std::map<int, int> vmap;
    for (int k = 0; k < len; ++k) {
        int v = (start + k) % n;
        vmap[v] = k;
        out.orig_vertices.push_back(v);
    }
    int qnew = len;
    out.piece.num_vertices = len + 1;

    std::set<int> cut_set(cd.cut_edges.begin(), cd.cut_edges.end());
    std::map<int, int> emap;
    for (std::size_t e = 0; e < f.seam_edges.size(); ++e) {
        const auto& se = f.seam_edges[e];
        bool ku = keep(se.u), kv = keep(se.v);
        if (ku && kv) {
            emap[(int)e] = (int)out.piece.seam_edges.size();
            out.piece.seam_edges.push_back({vmap.at(se.u), vmap.at(se.v)});
            out.edge_orig.push_back((int)e);
        } else if (cut_set.count((int)e)) {
            int p = ku ? se.u : se.v;
            emap[(int)e] = (int)out.piece.seam_edges.size();
            out.piece.seam_edges.push_back({vmap.at(p), qnew});
            out.edge_orig.push_back((int)e);
        }
    }

    std::map<int, const CutData::CrossingDisk*> crossing_of;
    for (const auto& c : cd.crossings) crossing_of[c.disk] = &c;

    for (std::size_t di = 0; di < f.disks.size(); ++di) {
        const auto& d = f.disks[di];
        auto itc = crossing_of.find((int)di);
        if (itc == crossing_of.end()) {
            if (!keep(f.step_from(d.boundary[0]))) continue;
            Disk nd;
            nd.color = d.color;
            for (const auto& s : d.boundary) nd.boundary.push_back({emap.at(s.edge), s.forward});
            out.disk_orig.push_back((int)di);
            out.piece.disks.push_back(std::move(nd));
            continue;
        }
        const auto& c = *itc->second;
        // Crossing disk: replace the far side by the corner at the new vertex.
        std::size_t exit_i = keep_arc ? c.exit_step : c.entry_step;
        std::size_t entry_i = keep_arc ? c.entry_step : c.exit_step;
        Disk nd;
        nd.color = d.color;
        // Step toward the new vertex along the cut half of the exit edge.
        {
            const auto& s = d.boundary[exit_i];
            int ne = emap.at(s.edge);
            nd.boundary.push_back({ne, out.piece.seam_edges[ne].v == qnew});
        }
        // Step back from the new vertex along the entry edge.
        {
            const auto& s = d.boundary[entry_i];
            int ne = emap.at(s.edge);
            nd.boundary.push_back({ne, out.piece.seam_edges[ne].u == qnew});
        }
        // Kept-side steps following the entry step, up to the exit step.
        for (std::size_t k = (entry_i + 1) % d.boundary.size(); k != exit_i;
             k = (k + 1) % d.boundary.size()) {
            const auto& s = d.boundary[k];
            nd.boundary.push_back({emap.at(s.edge), s.forward});
        }
        out.disk_orig.push_back((int)di);
        out.piece.disks.push_back(std::move(nd));
    }
    return out;
}

}  // namespace

CyclicReport validate_cyclic(const FilmSurface& f) {
    CyclicReport rep;
    int n = f.num_vertices;
    for (int len = 1; 2 * len <= n; ++len) {
        for (int start = 0; start < n; ++start) {
            if (2 * len == n && start >= n / 2) continue;  // complement already seen
            auto [cd, why] = build_cut(f, start, len);
            if (!cd) rep.failures.push_back({{start, len}, why});
        }
    }
    return rep;
}

GraphCutResult graph_cut(const FilmSurface& f, int arc_start, int arc_len) {
    auto [cd, why] = build_cut(f, arc_start, arc_len);
    if (!cd) throw NoCut("no graph-cut for this split: " + why);
    GraphCutResult r;
    r.cut_class = gamma_class(f, *cd, true);
    if (!r.cut_class.connected()) throw NoCut("cut graph disconnected");

    auto p1 = contract_side(f, *cd, arc_start, arc_len, true);
    auto p2 = contract_side(f, *cd, arc_start, arc_len, false);
    try {
        p1.piece.validate();
        p2.piece.validate();
    } catch (const InvalidSurface& e) {
        throw NoCut(std::string("cut piece invalid: ") + e.what());
    }
    r.piece_first = std::move(p1.piece);
    r.piece_second = std::move(p2.piece);
    r.first_orig_vertices = std::move(p1.orig_vertices);
    r.second_orig_vertices = std::move(p2.orig_vertices);
    r.first_edge_orig = std::move(p1.edge_orig);
    r.second_edge_orig = std::move(p2.edge_orig);
    r.first_disk_orig = std::move(p1.disk_orig);
    r.second_disk_orig = std::move(p2.disk_orig);
    return r;
}

// ---------------------------------------------------------------------------
// Cyclic foams
// ---------------------------------------------------------------------------

FilmSurface CyclicFoam::underlying_film(int seam_index) const {
    const Seam& s = seams.at(seam_index);
    FilmSurface f;
    f.num_vertices = s.num_vertices;
    f.seam_edges = s.edges;
    for (const auto& p : patches)
        for (const auto& g : p.glued)
            if (g.seam == seam_index) f.disks.push_back({p.color, g.boundary});
    return f;
}

GraphClass CyclicFoam::seam_vertex_graph(int seam_index, int vertex) const {
    return underlying_film(seam_index).vertex_graph(vertex);
}

std::string CyclicFoam::seam_vertex_name(int seam_index, int vertex) const {
    const Seam& s = seams.at(seam_index);
    if (vertex < (int)s.vertex_names.size()) return s.vertex_names[vertex];
    return "s" + std::to_string(seam_index) + "v" + std::to_string(vertex);
}

std::vector<CyclicFoam::Component> CyclicFoam::components() const {
    int np = (int)patches.size(), ns = (int)seams.size();
    DSU dsu(np + ns);
    for (int p = 0; p < np; ++p)
        for (const auto& g : patches[p].glued) dsu.unite(p, np + g.seam);
    std::map<int, Component> comps;
    for (int p = 0; p < np; ++p) comps[dsu.find(p)].patches.push_back(p);
    for (int s = 0; s < ns; ++s) comps[dsu.find(np + s)].seams.push_back(s);
    std::vector<Component> out;
    for (auto& [root, c] : comps) out.push_back(std::move(c));
    return out;
}

void CyclicFoam::validate() const {
    for (const auto& s : seams) {
        for (const auto& e : s.edges) {
            if (e.u < 0 || e.u >= s.num_vertices || e.v < 0 || e.v >= s.num_vertices)
                throw InvalidSurface("seam edge endpoint out of range");
            if (e.u == e.v) throw InvalidSurface("seam graph has a loop");
        }
    }
    std::set<std::string> names;
    auto add_name = [&](const std::string& n) {
        if (!names.insert(n).second) throw InvalidSurface("duplicate marked-point name " + n);
    };
    for (std::size_t si = 0; si < seams.size(); ++si)
        for (int v = 0; v < seams[si].num_vertices; ++v)
            add_name(seam_vertex_name((int)si, v));

    for (const auto& p : patches) {
        if (p.genus < 0 || p.crosscaps < 0) throw InvalidSurface("negative topology counters");
        if (p.orientable && p.crosscaps != 0)
            throw InvalidSurface("orientable patch with crosscaps");
        std::set<int> glued_seams;
        for (const auto& g : p.glued) {
            if (g.seam < 0 || g.seam >= (int)seams.size())
                throw InvalidSurface("glued circle references unknown seam");
            if (!glued_seams.insert(g.seam).second)
                throw InvalidSurface("two glued circles of one patch on the same seam component");
        }
        for (const auto& c : p.free_circles) {
            if (c.vertices.empty()) throw InvalidSurface("free circle without a vertex");
            for (const auto& v : c.vertices) add_name(v.name);
        }
        for (const auto& pt : p.points) add_name(pt.name);
    }
    // Each seam, with its incident glued circles as disks, must be a valid
    // film surface (covers seam edges, respects the cyclic order, ...).
    for (std::size_t si = 0; si < seams.size(); ++si) underlying_film((int)si).validate();

    // Per foam component, patch colors pairwise distinct.
    for (const auto& comp : components()) {
        std::set<std::string> colors;
        for (int p : comp.patches)
            if (!colors.insert(patches[p].color).second)
                throw InvalidSurface("repeated patch color " + patches[p].color +
                                     " in a connected component");
    }
}

CyclicFoam film_as_foam(const FilmSurface& f, const std::vector<std::string>& vertex_names) {
    CyclicFoam foam;
    Seam s;
    s.num_vertices = f.num_vertices;
    s.edges = f.seam_edges;
    s.vertex_names = vertex_names;
    foam.seams.push_back(std::move(s));
    for (const auto& d : f.disks) {
        Patch p;
        p.color = d.color;
        p.glued.push_back({0, d.boundary});
        foam.patches.push_back(std::move(p));
    }
    return foam;
}

std::pair<CyclicFoam, InsertionDescriptor> apply_cut(const CyclicFoam& foam, const CutSpec& cut,
                                                     const std::string& prefix) {
    CyclicFoam out = foam;
    InsertionDescriptor ins;
    auto& p = out.patches.at(cut.patch);
    ins.color = p.color;

    auto take = [](auto& vec, const std::vector<int>& idx) {
        using T = typename std::decay_t<decltype(vec)>::value_type;
        std::vector<T> taken;
        std::set<int> s(idx.begin(), idx.end());
        std::vector<T> kept;
        for (int i = 0; i < (int)vec.size(); ++i)
            (s.count(i) ? taken : kept).push_back(vec[i]);
        vec = std::move(kept);
        return taken;
    };

    switch (cut.kind) {
        case CutSpec::Kind::Crosscap: {
            if (p.crosscaps < 1) throw InvalidCut("patch has no crosscap");
            p.crosscaps -= 1;
            if (p.crosscaps == 0) p.orientable = true;
            p.points.push_back({prefix + "_p", +1});
            ins.tensor = InsertionDescriptor::Tensor::U_s;
            ins.slots = {prefix + "_p"};
            break;
        }
        case CutSpec::Kind::Handle: {
            if (p.genus < 1) throw InvalidCut("patch has no handle");
            p.genus -= 1;
            p.points.push_back({prefix + "_p0", +1});
            p.points.push_back({prefix + "_p1", +1});
            ins.tensor = InsertionDescriptor::Tensor::K_s;
            ins.slots = {prefix + "_p0", prefix + "_p1"};
            break;
        }
        case CutSpec::Kind::DetachGlued: {
            if (cut.glued_index < 0 || cut.glued_index >= (int)p.glued.size())
                throw InvalidCut("no such glued circle");
            GluedCircle g = p.glued[cut.glued_index];
            p.glued.erase(p.glued.begin() + cut.glued_index);
            p.points.push_back({prefix + "_p1", +1});
            Patch annulus;
            annulus.color = p.color;
            annulus.glued.push_back(std::move(g));
            annulus.points.push_back({prefix + "_p0", +1});
            out.patches.push_back(std::move(annulus));
            ins.tensor = InsertionDescriptor::Tensor::K_s;
            ins.slots = {prefix + "_p0", prefix + "_p1"};
            break;
        }
        case CutSpec::Kind::SplitContour: {
            Patch off;
            off.color = p.color;
            if (cut.genus_off > p.genus || cut.crosscaps_off > p.crosscaps)
                throw InvalidCut("split exceeds the patch topology");
            off.genus = cut.genus_off;
            off.crosscaps = cut.crosscaps_off;
            p.genus -= cut.genus_off;
            p.crosscaps -= cut.crosscaps_off;
            off.glued = take(p.glued, cut.glued_off);
            off.free_circles = take(p.free_circles, cut.free_off);
            off.points = take(p.points, cut.points_off);
            off.orientable = off.crosscaps == 0;
            p.orientable = p.crosscaps == 0;
            p.points.push_back({prefix + "_p0", +1});
            off.points.push_back({prefix + "_p1", +1});
            out.patches.push_back(std::move(off));
            ins.tensor = InsertionDescriptor::Tensor::K_s;
            ins.slots = {prefix + "_p0", prefix + "_p1"};
            break;
        }
        case CutSpec::Kind::SegmentSplit: {
            if (cut.circle_a < 0 || cut.circle_a >= (int)p.free_circles.size())
                throw InvalidCut("segment cut must end on a free contour");
            FreeCircle c = p.free_circles[cut.circle_a];
            int m = (int)c.vertices.size();
            int ga = ((cut.gap_a % m) + m) % m, gb = ((cut.gap_b % m) + m) % m;
            if (ga == gb) throw InvalidCut("segment endpoints coincide");
            p.free_circles.erase(p.free_circles.begin() + cut.circle_a);
            FreeCircle keep, off;
            for (int k = gb; k != ga; k = (k + 1) % m) keep.vertices.push_back(c.vertices[k]);
            keep.vertices.push_back({prefix + "_v0", +1});
            for (int k = ga; k != gb; k = (k + 1) % m) off.vertices.push_back(c.vertices[k]);
            off.vertices.push_back({prefix + "_v1", +1});

            Patch offp;
            offp.color = p.color;
            if (cut.genus_off > p.genus || cut.crosscaps_off > p.crosscaps)
                throw InvalidCut("split exceeds the patch topology");
            offp.genus = cut.genus_off;
            offp.crosscaps = cut.crosscaps_off;
            p.genus -= cut.genus_off;
            p.crosscaps -= cut.crosscaps_off;
            offp.glued = take(p.glued, cut.glued_off);
            offp.free_circles = take(p.free_circles, cut.free_off);
            offp.points = take(p.points, cut.points_off);
            offp.orientable = offp.crosscaps == 0;
            p.orientable = p.crosscaps == 0;
            p.free_circles.push_back(std::move(keep));
            offp.free_circles.push_back(std::move(off));
            out.patches.push_back(std::move(offp));
            ins.tensor = InsertionDescriptor::Tensor::K_Is;
            ins.slots = {prefix + "_v0", prefix + "_v1"};
            break;
        }
        case CutSpec::Kind::SegmentMerge: {
            if (cut.circle_a == cut.circle_b) throw InvalidCut("merge needs two distinct circles");
            if (cut.circle_a < 0 || cut.circle_a >= (int)p.free_circles.size() ||
                cut.circle_b < 0 || cut.circle_b >= (int)p.free_circles.size())
                throw InvalidCut("segment cut must end on free contours");
            FreeCircle a = p.free_circles[cut.circle_a];
            FreeCircle b = p.free_circles[cut.circle_b];
            int ma = (int)a.vertices.size(), mb = (int)b.vertices.size();
            FreeCircle merged;
            for (int k = 0; k < ma; ++k)
                merged.vertices.push_back(a.vertices[(cut.gap_a + k) % ma]);
            merged.vertices.push_back({prefix + "_v0", +1});
            for (int k = 0; k < mb; ++k)
                merged.vertices.push_back(b.vertices[(cut.gap_b + k) % mb]);
            merged.vertices.push_back({prefix + "_v1", +1});
            std::vector<FreeCircle> rest;
            for (int i = 0; i < (int)p.free_circles.size(); ++i)
                if (i != cut.circle_a && i != cut.circle_b) rest.push_back(p.free_circles[i]);
            rest.push_back(std::move(merged));
            p.free_circles = std::move(rest);
            ins.tensor = InsertionDescriptor::Tensor::K_Is;
            ins.slots = {prefix + "_v0", prefix + "_v1"};
            break;
        }
        case CutSpec::Kind::Graph: {
            FilmSurface film = foam.underlying_film(cut.seam);
            // disks of `film` in patch/glued order:
            std::vector<std::pair<int, int>> disk_src;
            for (int pi = 0; pi < (int)foam.patches.size(); ++pi)
                for (int gi = 0; gi < (int)foam.patches[pi].glued.size(); ++gi)
                    if (foam.patches[pi].glued[gi].seam == cut.seam)
                        disk_src.emplace_back(pi, gi);
            GraphCutResult gcr = graph_cut(film, cut.arc_start, cut.arc_len);

            auto crossing = [&](int disk) {
                for (int d : gcr.first_disk_orig)
                    if (d == disk)
                        for (int d2 : gcr.second_disk_orig)
                            if (d2 == disk) return true;
                return false;
            };
            for (std::size_t di = 0; di < disk_src.size(); ++di) {
                const Patch& src = foam.patches[disk_src[di].first];
                if (crossing((int)di) && !(src.is_disk() && src.points.empty()))
                    throw InvalidCut("graph-cut crosses a non-disk or marked patch");
            }

            int new_seam_a = cut.seam;
            int new_seam_b = (int)out.seams.size();
            std::string qp = prefix + "_qp", qm = prefix + "_qm";
            Seam sa, sb;
            sa.num_vertices = gcr.piece_first.num_vertices;
            sa.edges = gcr.piece_first.seam_edges;
            sb.num_vertices = gcr.piece_second.num_vertices;
            sb.edges = gcr.piece_second.seam_edges;
            for (int k = 0; k + 1 < sa.num_vertices; ++k)
                sa.vertex_names.push_back(
                    foam.seam_vertex_name(cut.seam, gcr.first_orig_vertices[k]));
            sa.vertex_names.push_back(qp);
            for (int k = 0; k + 1 < sb.num_vertices; ++k)
                sb.vertex_names.push_back(
                    foam.seam_vertex_name(cut.seam, gcr.second_orig_vertices[k]));
            sb.vertex_names.push_back(qm);
            out.seams[new_seam_a] = std::move(sa);
            out.seams.push_back(std::move(sb));

            // Reattach glued circles from the pieces.
            for (std::size_t k = 0; k < gcr.first_disk_orig.size(); ++k) {
                auto [pi, gi] = disk_src[gcr.first_disk_orig[k]];
                auto& g = out.patches[pi].glued[gi];
                g.seam = new_seam_a;
                g.boundary = gcr.piece_first.disks[k].boundary;
            }
            for (std::size_t k = 0; k < gcr.second_disk_orig.size(); ++k) {
                int orig = gcr.second_disk_orig[k];
                auto [pi, gi] = disk_src[orig];
                if (crossing(orig)) {
                    // A crossing disk patch ends up on both sides; side A kept
                    // the original patch, side B gets a fresh disk patch.
                    Patch extra;
                    extra.color = out.patches[pi].color;
                    extra.glued.push_back({new_seam_b, gcr.piece_second.disks[k].boundary});
                    out.patches.push_back(std::move(extra));
                } else {
                    auto& g = out.patches[pi].glued[gi];
                    g.seam = new_seam_b;
                    g.boundary = gcr.piece_second.disks[k].boundary;
                }
            }
            ins.tensor = InsertionDescriptor::Tensor::K_sigma;
            ins.sigma = gcr.cut_class;
            ins.color.clear();
            ins.slots = {qp, qm};
            break;
        }
    }
    out.validate();
    return {std::move(out), std::move(ins)};
}

}  // namespace foamtft
