#include "foamtft/graphs.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace foamtft {

namespace {

// Union-find on node ids.
struct DSU {
    std::vector<int> parent;
    explicit DSU(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

std::string encode(const ColoredGraph& g) {
    std::ostringstream os;
    os << g.num_nodes << ';';
    for (const auto& e : g.edges) os << e.color << ':' << e.tail << '>' << e.head << ';';
    return os.str();
}

}  // namespace

bool GraphClass::has_color(const std::string& s) const {
    return std::binary_search(colors_.begin(), colors_.end(), s);
}

const ColoredEdge& GraphClass::edge_of_color(const std::string& s) const {
    for (const auto& e : rep_.edges)
        if (e.color == s) return e;
    throw UnknownColor(s);
}

GraphClass canonical_class(const ColoredGraph& g) {
    for (const auto& e : g.edges) {
        if (e.tail < 0 || e.tail >= g.num_nodes || e.head < 0 || e.head >= g.num_nodes)
            throw InvalidGraph("edge endpoint out of range");
        if (e.tail == e.head) throw InvalidGraph("loop edge (color " + e.color + ")");
    }

    DSU dsu(g.num_nodes);
    for (const auto& e : g.edges) dsu.unite(e.tail, e.head);

    // Group edges by component; reject nodes incident to no edge.
    std::vector<bool> touched(g.num_nodes, false);
    for (const auto& e : g.edges) touched[e.tail] = touched[e.head] = true;
    for (int v = 0; v < g.num_nodes; ++v)
        if (!touched[v]) throw InvalidGraph("isolated node " + std::to_string(v));

    std::map<int, std::vector<ColoredEdge>> comps;
    for (const auto& e : g.edges) comps[dsu.find(e.tail)].push_back(e);

    // Per-component color distinctness, then canonical relabeling.
    std::vector<std::pair<std::string, ColoredGraph>> canon_comps;
    for (auto& [root, edges] : comps) {
        std::sort(edges.begin(), edges.end(),
                  [](const ColoredEdge& a, const ColoredEdge& b) { return a.color < b.color; });
        for (std::size_t i = 0; i + 1 < edges.size(); ++i)
            if (edges[i].color == edges[i + 1].color)
                throw InvalidGraph("duplicate color in component: " + edges[i].color);

        std::map<int, int> relabel;
        ColoredGraph c;
        auto id = [&](int v) {
            auto it = relabel.find(v);
            if (it != relabel.end()) return it->second;
            int nid = c.num_nodes++;
            relabel[v] = nid;
            return nid;
        };
        for (const auto& e : edges) {
            int t = id(e.tail);
            int h = id(e.head);
            c.edges.push_back({t, h, e.color});
        }
        canon_comps.emplace_back(encode(c), std::move(c));
    }
    std::sort(canon_comps.begin(), canon_comps.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    GraphClass cls;
    for (auto& [enc, c] : canon_comps) {
        int base = cls.rep_.num_nodes;
        cls.rep_.num_nodes += c.num_nodes;
        for (const auto& e : c.edges)
            cls.rep_.edges.push_back({e.tail + base, e.head + base, e.color});
    }
    cls.connected_ = canon_comps.size() == 1;
    cls.enc_ = encode(cls.rep_);
    std::set<std::string> cs;
    for (const auto& e : cls.rep_.edges) cs.insert(e.color);
    cls.colors_.assign(cs.begin(), cs.end());
    return cls;
}

GraphClass involute(const GraphClass& c) {
    ColoredGraph g = c.rep();
    for (auto& e : g.edges) std::swap(e.tail, e.head);
    return canonical_class(g);
}

GraphClass segment_class(const std::string& color) {
    ColoredGraph g;
    g.num_nodes = 2;
    g.edges.push_back({0, 1, color});
    return canonical_class(g);
}

}  // namespace foamtft
