#include "foamtft/textio.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace foamtft {
namespace {

struct Line {
    int no = 0;
    std::vector<std::string> tok;
};

/// Strips '#' comments and blank lines; ':' and '=' become standalone
/// tokens, everything else splits on whitespace.
std::vector<Line> lex(const std::string& text) {
    std::vector<Line> out;
    std::istringstream in(text);
    std::string raw;
    int no = 0;
    while (std::getline(in, raw)) {
        ++no;
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        Line line{no, {}};
        std::string cur;
        auto flush = [&] {
            if (!cur.empty()) line.tok.push_back(cur);
            cur.clear();
        };
        for (char c : raw) {
            if (std::isspace(static_cast<unsigned char>(c))) {
                flush();
            } else if (c == ':' || c == '=') {
                flush();
                line.tok.push_back(std::string(1, c));
            } else {
                cur += c;
            }
        }
        flush();
        if (!line.tok.empty()) out.push_back(std::move(line));
    }
    return out;
}

struct Cursor {
    const std::vector<Line>& lines;
    std::size_t i = 0;

    bool done() const { return i >= lines.size(); }
    const Line& peek() const { return lines[i]; }
    const Line& next() { return lines[i++]; }
    int line_no() const { return done() ? (lines.empty() ? 0 : lines.back().no) : lines[i].no; }
};

[[noreturn]] void fail(const Line& l, const std::string& what) { throw ParseError(l.no, what); }

int to_int(const Line& l, const std::string& tok) {
    try {
        std::size_t pos = 0;
        int v = std::stoi(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (...) {
        fail(l, "expected integer, got '" + tok + "'");
    }
}

Rat to_rat(const Line& l, const std::string& tok) {
    auto r = rat_parse(tok);
    if (!r) fail(l, "expected rational p/q, got '" + tok + "'");
    return *r;
}

/// Splits a line at its (unique, required) ':' or '=' separator.
std::pair<std::vector<std::string>, std::vector<std::string>> split_sep(const Line& l) {
    auto it = std::find_if(l.tok.begin(), l.tok.end(),
                           [](const std::string& t) { return t == ":" || t == "="; });
    if (it == l.tok.end()) fail(l, "expected ':' in '" + l.tok[0] + "' line");
    return {{l.tok.begin(), it}, {it + 1, l.tok.end()}};
}

Vec to_vec(const Line& l, const std::vector<std::string>& toks) {
    Vec v;
    v.reserve(toks.size());
    for (const auto& t : toks) v.push_back(to_rat(l, t));
    return v;
}

Mat to_mat(const Line& l, const std::vector<std::string>& toks, std::size_t rows,
           std::size_t cols) {
    if (toks.size() != rows * cols)
        fail(l, "expected " + std::to_string(rows * cols) + " matrix entries, got " +
                    std::to_string(toks.size()));
    Mat m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = to_rat(l, toks[i * cols + j]);
    return m;
}

bool is_top_keyword(const std::string& t) {
    static const char* kws[] = {"graph", "film",  "foam",    "theory", "palette", "algebra",
                                "space", "form2", "form3",   "starB",  "unitB",   "U",
                                "phi",   "group", "action",  "color",  "working", "label",
                                "seam",  "patch"};
    return std::find(std::begin(kws), std::end(kws), t) != std::end(kws);
}

/// `(name, sign)` from a trailing-sign token like "p0+" or "w3-".
std::pair<std::string, int> signed_name(const Line& l, const std::string& tok) {
    if (tok.size() < 2 || (tok.back() != '+' && tok.back() != '-'))
        fail(l, "expected <name>+ or <name>-, got '" + tok + "'");
    return {tok.substr(0, tok.size() - 1), tok.back() == '+' ? +1 : -1};
}

// -------------------------------------------------------------------------
// graph blocks
// -------------------------------------------------------------------------

std::pair<std::string, GraphClass> parse_graph_block(Cursor& cur) {
    const Line& head = cur.next();  // graph <name>
    if (head.tok.size() != 2) fail(head, "expected 'graph <name>'");
    std::string name = head.tok[1];
    std::map<std::string, int> node_idx;
    ColoredGraph g;
    while (!cur.done() && !is_top_keyword(cur.peek().tok[0])) {
        const Line& l = cur.next();
        auto [hd, tl] = split_sep(l);
        if (hd.size() == 1 && hd[0] == "nodes") {
            for (const auto& n : tl) {
                if (node_idx.count(n)) fail(l, "duplicate node '" + n + "'");
                node_idx[n] = g.num_nodes++;
            }
        } else if (hd.size() == 2 && hd[0] == "edge") {
            if (tl.size() != 2) fail(l, "expected 'edge <color> : <tail> <head>'");
            for (const auto& n : tl)
                if (!node_idx.count(n)) fail(l, "unknown node '" + n + "'");
            g.edges.push_back({node_idx[tl[0]], node_idx[tl[1]], hd[1]});
        } else {
            fail(l, "unexpected line in graph block");
        }
    }
    try {
        return {name, canonical_class(g)};
    } catch (const std::exception& e) {
        throw ParseError(head.no, "invalid graph '" + name + "': " + e.what());
    }
}

const GraphClass& lookup_graph(const Line& l,
                               const std::vector<std::pair<std::string, GraphClass>>& graphs,
                               const std::string& name) {
    for (const auto& [n, c] : graphs)
        if (n == name) return c;
    fail(l, "unknown graph '" + name + "'");
}

// -------------------------------------------------------------------------
// film blocks
// -------------------------------------------------------------------------

NamedFilm parse_film_block(Cursor& cur,
                           const std::vector<std::pair<std::string, GraphClass>>& graphs) {
    const Line& head = cur.next();
    NamedFilm out;
    if (head.tok.size() >= 2) out.name = head.tok[1];
    if (head.tok.empty() || head.tok[0] != "film" || out.name.empty())
        fail(head, "expected 'film <name>'");

    // Convenience form: film <name> from classes : g1 g2 ...
    if (head.tok.size() > 2) {
        if (head.tok.size() < 5 || head.tok[2] != "from" || head.tok[3] != "classes" ||
            head.tok[4] != ":")
            fail(head, "expected 'film <name>' or 'film <name> from classes : ...'");
        std::vector<GraphClass> seq;
        for (std::size_t k = 5; k < head.tok.size(); ++k)
            seq.push_back(lookup_graph(head, graphs, head.tok[k]));
        auto f = compose(seq);
        if (!f) fail(head, "classes do not compose to a film surface");
        out.film = *f;
        for (int q = 0; q < out.film.num_vertices; ++q)
            out.vertex_names.push_back("q" + std::to_string(q));
        return out;
    }

    std::map<std::string, int> vtx, edg;
    bool any_edges = false;
    struct RawDisk {
        Line line;
        std::string color;
        std::vector<std::string> toks;
    };
    std::vector<RawDisk> raw_disks;
    while (!cur.done()) {
        const std::string& kw = cur.peek().tok[0];
        if (kw != "vertices" && kw != "edge" && kw != "disk") break;
        const Line& l = cur.next();
        auto [hd, tl] = split_sep(l);
        if (hd.size() == 1 && hd[0] == "vertices") {
            for (const auto& n : tl) {
                if (vtx.count(n)) fail(l, "duplicate vertex '" + n + "'");
                vtx[n] = out.film.num_vertices++;
                out.vertex_names.push_back(n);
            }
        } else if (hd.size() == 2 && hd[0] == "edge") {
            if (tl.size() != 2) fail(l, "expected 'edge <name> : <u> <v>'");
            if (edg.count(hd[1])) fail(l, "duplicate edge '" + hd[1] + "'");
            for (const auto& n : tl)
                if (!vtx.count(n)) fail(l, "unknown vertex '" + n + "'");
            edg[hd[1]] = static_cast<int>(out.film.seam_edges.size());
            out.film.seam_edges.push_back({vtx[tl[0]], vtx[tl[1]]});
            any_edges = true;
        } else if (hd.size() == 2 && hd[0] == "disk") {
            raw_disks.push_back({l, hd[1], tl});
        } else {
            fail(l, "unexpected line in film block");
        }
    }

    // Map keyed by unordered vertex pair, used only when inferring edges.
    std::map<std::pair<int, int>, int> inferred;
    for (const auto& rd : raw_disks) {
        Disk d;
        d.color = rd.color;
        if (any_edges) {
            for (const auto& t : rd.toks) {
                auto [ename, sign] = signed_name(rd.line, t);
                auto it = edg.find(ename);
                if (it == edg.end()) fail(rd.line, "unknown edge '" + ename + "'");
                d.boundary.push_back({it->second, sign > 0});
            }
        } else {
            // Vertex-sequence form: only valid when the surface has no
            // parallel seam edges, so each consecutive pair determines its
            // edge. Parallel edges require explicit `edge` lines.
            std::vector<int> vs;
            for (const auto& t : rd.toks) {
                auto it = vtx.find(t);
                if (it == vtx.end()) fail(rd.line, "unknown vertex '" + t + "'");
                vs.push_back(it->second);
            }
            if (vs.size() < 2) fail(rd.line, "disk boundary needs at least two vertices");
            for (std::size_t k = 0; k < vs.size(); ++k) {
                int u = vs[k], v = vs[(k + 1) % vs.size()];
                if (u == v) fail(rd.line, "disk boundary repeats a vertex consecutively");
                auto key = std::minmax(u, v);
                auto it = inferred.find(key);
                if (it == inferred.end()) {
                    it = inferred.emplace(key, static_cast<int>(out.film.seam_edges.size()))
                             .first;
                    out.film.seam_edges.push_back({u, v});
                }
                d.boundary.push_back({it->second, out.film.seam_edges[it->second].u == u});
            }
        }
        out.film.disks.push_back(std::move(d));
    }
    try {
        out.film.validate();
    } catch (const std::exception& e) {
        throw ParseError(head.no,
                         "invalid film '" + out.name + "': " + e.what() +
                             (any_edges ? "" : " (parallel seam edges need explicit edge lines)"));
    }
    return out;
}

// -------------------------------------------------------------------------
// foam blocks
// -------------------------------------------------------------------------

NamedFoam parse_foam_block(Cursor& cur) {
    const Line& head = cur.next();
    if (head.tok.size() != 2) fail(head, "expected 'foam <name>'");
    NamedFoam out;
    out.name = head.tok[1];
    std::map<std::string, int> seam_idx;
    // Per seam: vertex and edge name maps.
    std::vector<std::map<std::string, int>> vtx, edg;

    while (!cur.done()) {
        const std::string& kw = cur.peek().tok[0];
        if (kw == "seam") {
            const Line& l = cur.next();
            if (l.tok.size() != 2) fail(l, "expected 'seam <name>'");
            if (seam_idx.count(l.tok[1])) fail(l, "duplicate seam '" + l.tok[1] + "'");
            seam_idx[l.tok[1]] = static_cast<int>(out.foam.seams.size());
            out.foam.seams.emplace_back();
            vtx.emplace_back();
            edg.emplace_back();
            Seam& s = out.foam.seams.back();
            while (!cur.done()) {
                const std::string& k2 = cur.peek().tok[0];
                if (k2 != "vertices" && k2 != "edge") break;
                const Line& l2 = cur.next();
                auto [hd, tl] = split_sep(l2);
                if (hd.size() == 1 && hd[0] == "vertices") {
                    for (const auto& n : tl) {
                        if (vtx.back().count(n)) fail(l2, "duplicate vertex '" + n + "'");
                        vtx.back()[n] = s.num_vertices++;
                        s.vertex_names.push_back(n);
                    }
                } else if (hd.size() == 2 && hd[0] == "edge") {
                    if (tl.size() != 2) fail(l2, "expected 'edge <name> : <u> <v>'");
                    if (edg.back().count(hd[1])) fail(l2, "duplicate edge '" + hd[1] + "'");
                    for (const auto& n : tl)
                        if (!vtx.back().count(n)) fail(l2, "unknown vertex '" + n + "'");
                    edg.back()[hd[1]] = static_cast<int>(s.edges.size());
                    s.edges.push_back({vtx.back()[tl[0]], vtx.back()[tl[1]]});
                } else {
                    fail(l2, "unexpected line in seam block");
                }
            }
        } else if (kw == "patch") {
            const Line& l = cur.next();
            // patch <color> orientable|nonorientable genus <g> crosscaps <k>
            if (l.tok.size() != 7 || l.tok[3] != "genus" || l.tok[5] != "crosscaps")
                fail(l, "expected 'patch <color> orientable|nonorientable genus <g> crosscaps <k>'");
            Patch p;
            p.color = l.tok[1];
            if (l.tok[2] == "orientable")
                p.orientable = true;
            else if (l.tok[2] == "nonorientable")
                p.orientable = false;
            else
                fail(l, "expected 'orientable' or 'nonorientable'");
            p.genus = to_int(l, l.tok[4]);
            p.crosscaps = to_int(l, l.tok[6]);
            while (!cur.done()) {
                const std::string& k2 = cur.peek().tok[0];
                if (k2 != "glued" && k2 != "free" && k2 != "points") break;
                const Line& l2 = cur.next();
                auto [hd, tl] = split_sep(l2);
                if (hd.size() == 2 && hd[0] == "glued") {
                    auto it = seam_idx.find(hd[1]);
                    if (it == seam_idx.end()) fail(l2, "unknown seam '" + hd[1] + "'");
                    GluedCircle gc;
                    gc.seam = it->second;
                    for (const auto& t : tl) {
                        auto [ename, sign] = signed_name(l2, t);
                        auto eit = edg[gc.seam].find(ename);
                        if (eit == edg[gc.seam].end()) fail(l2, "unknown edge '" + ename + "'");
                        gc.boundary.push_back({eit->second, sign > 0});
                    }
                    p.glued.push_back(std::move(gc));
                } else if (hd.size() == 1 && hd[0] == "free") {
                    FreeCircle fc;
                    for (const auto& t : tl) {
                        auto [n, sign] = signed_name(l2, t);
                        fc.vertices.push_back({n, sign});
                    }
                    if (fc.vertices.empty()) fail(l2, "free circle needs at least one vertex");
                    p.free_circles.push_back(std::move(fc));
                } else if (hd.size() == 1 && hd[0] == "points") {
                    for (const auto& t : tl) {
                        auto [n, sign] = signed_name(l2, t);
                        p.points.push_back({n, sign});
                    }
                } else {
                    fail(l2, "unexpected line in patch block");
                }
            }
            out.foam.patches.push_back(std::move(p));
        } else {
            break;
        }
    }
    try {
        out.foam.validate();
    } catch (const std::exception& e) {
        throw ParseError(head.no, "invalid foam '" + out.name + "': " + e.what());
    }
    return out;
}

}  // namespace

// -------------------------------------------------------------------------
// surface files
// -------------------------------------------------------------------------

SurfaceDoc parse_surfaces(const std::string& text) {
    auto lines = lex(text);
    Cursor cur{lines};
    SurfaceDoc doc;
    while (!cur.done()) {
        const std::string& kw = cur.peek().tok[0];
        if (kw == "graph")
            doc.graphs.push_back(parse_graph_block(cur));
        else if (kw == "film")
            doc.films.push_back(parse_film_block(cur, doc.graphs));
        else if (kw == "foam")
            doc.foams.push_back(parse_foam_block(cur));
        else
            fail(cur.peek(), "expected a graph, film or foam block");
    }
    return doc;
}

std::string serialize_graph_block(const std::string& name, const GraphClass& c) {
    std::ostringstream os;
    os << "graph " << name << "\n";
    const ColoredGraph& g = c.rep();
    os << "nodes :";
    for (int i = 0; i < g.num_nodes; ++i) os << " n" << i;
    os << "\n";
    for (const auto& e : g.edges)
        os << "edge " << e.color << " : n" << e.tail << " n" << e.head << "\n";
    return os.str();
}

namespace {

std::string film_vertex(const NamedFilm& f, int q) {
    if (q < static_cast<int>(f.vertex_names.size())) return f.vertex_names[q];
    return "q" + std::to_string(q);
}

void serialize_film(std::ostringstream& os, const NamedFilm& f) {
    os << "film " << f.name << "\n";
    os << "vertices :";
    for (int q = 0; q < f.film.num_vertices; ++q) os << " " << film_vertex(f, q);
    os << "\n";
    for (std::size_t j = 0; j < f.film.seam_edges.size(); ++j)
        os << "edge e" << j << " : " << film_vertex(f, f.film.seam_edges[j].u) << " "
           << film_vertex(f, f.film.seam_edges[j].v) << "\n";
    for (const auto& d : f.film.disks) {
        os << "disk " << d.color << " :";
        for (const auto& s : d.boundary) os << " e" << s.edge << (s.forward ? "+" : "-");
        os << "\n";
    }
}

void serialize_foam(std::ostringstream& os, const NamedFoam& nf) {
    os << "foam " << nf.name << "\n";
    for (std::size_t si = 0; si < nf.foam.seams.size(); ++si) {
        const Seam& s = nf.foam.seams[si];
        os << "seam s" << si << "\n";
        os << "vertices :";
        for (int q = 0; q < s.num_vertices; ++q)
            os << " " << nf.foam.seam_vertex_name(static_cast<int>(si), q);
        os << "\n";
        for (std::size_t j = 0; j < s.edges.size(); ++j)
            os << "edge e" << j << " : "
               << nf.foam.seam_vertex_name(static_cast<int>(si), s.edges[j].u) << " "
               << nf.foam.seam_vertex_name(static_cast<int>(si), s.edges[j].v) << "\n";
    }
    for (const auto& p : nf.foam.patches) {
        os << "patch " << p.color << " " << (p.orientable ? "orientable" : "nonorientable")
           << " genus " << p.genus << " crosscaps " << p.crosscaps << "\n";
        for (const auto& gc : p.glued) {
            os << "glued s" << gc.seam << " :";
            for (const auto& st : gc.boundary) os << " e" << st.edge << (st.forward ? "+" : "-");
            os << "\n";
        }
        for (const auto& fc : p.free_circles) {
            os << "free :";
            for (const auto& v : fc.vertices) os << " " << v.name << (v.sign > 0 ? "+" : "-");
            os << "\n";
        }
        if (!p.points.empty()) {
            os << "points :";
            for (const auto& pt : p.points) os << " " << pt.name << (pt.sign > 0 ? "+" : "-");
            os << "\n";
        }
    }
}

}  // namespace

std::string serialize_surfaces(const SurfaceDoc& doc) {
    std::ostringstream os;
    for (const auto& [name, c] : doc.graphs) os << serialize_graph_block(name, c);
    for (const auto& f : doc.films) serialize_film(os, f);
    for (const auto& nf : doc.foams) serialize_foam(os, nf);
    return os.str();
}

// -------------------------------------------------------------------------
// theory files
// -------------------------------------------------------------------------

const GraphClass& TheoryFile::graph_named(const std::string& n) const {
    for (const auto& [name, c] : graphs)
        if (name == n) return c;
    throw MissingClass("no graph named '" + n + "' in theory");
}

std::string TheoryFile::graph_name(const GraphClass& c) const {
    for (const auto& [name, cls] : graphs)
        if (cls == c) return name;
    throw MissingClass("class without a name in theory file");
}

TheoryFile parse_theory(const std::string& text) {
    auto lines = lex(text);
    Cursor cur{lines};
    TheoryFile t;
    if (!cur.done() && cur.peek().tok[0] == "theory") {
        const Line& l = cur.next();
        if (l.tok.size() != 2) fail(l, "expected 'theory <name>'");
        t.name = l.tok[1];
    }
    auto class_by_name = [&](const Line& l, const std::string& n) -> const GraphClass& {
        return lookup_graph(l, t.graphs, n);
    };
    while (!cur.done()) {
        const Line& l = cur.peek();
        const std::string& kw = l.tok[0];
        if (kw == "palette") {
            t.bundle.palette = split_sep(cur.next()).second;
        } else if (kw == "graph") {
            t.graphs.push_back(parse_graph_block(cur));
        } else if (kw == "algebra") {
            const Line& hl = cur.next();
            if (hl.tok.size() != 3 || hl.tok[1] != "A") fail(hl, "expected 'algebra A <color>'");
            EquippedFrobenius a;
            while (!cur.done()) {
                const std::string& k2 = cur.peek().tok[0];
                if (k2 != "basis" && k2 != "unit" && k2 != "functional" && k2 != "mul" &&
                    k2 != "star")
                    break;
                const Line& l2 = cur.next();
                auto [hd, tl] = split_sep(l2);
                std::size_t n = a.basis.size();
                if (hd[0] == "basis" && hd.size() == 1) {
                    a.basis = tl;
                    n = a.basis.size();
                    a.mul.assign(n, std::vector<Vec>(n, zero_vec(n)));
                    a.unit = zero_vec(n);
                    a.l = zero_vec(n);
                    a.star = Mat(n, n);
                } else if (n == 0) {
                    fail(l2, "'basis:' must come first in an algebra block");
                } else if (hd[0] == "unit" && hd.size() == 1) {
                    a.unit = to_vec(l2, tl);
                } else if (hd[0] == "functional" && hd.size() == 1) {
                    a.l = to_vec(l2, tl);
                } else if (hd[0] == "mul" && hd.size() == 3) {
                    std::size_t i = to_int(l2, hd[1]), j = to_int(l2, hd[2]);
                    if (i >= n || j >= n) fail(l2, "mul index out of range");
                    a.mul[i][j] = to_vec(l2, tl);
                    if (a.mul[i][j].size() != n) fail(l2, "mul vector has wrong dimension");
                } else if (hd[0] == "star" && hd.size() == 2) {
                    std::size_t j = to_int(l2, hd[1]);
                    if (j >= n) fail(l2, "star index out of range");
                    Vec col = to_vec(l2, tl);
                    if (col.size() != n) fail(l2, "star vector has wrong dimension");
                    for (std::size_t i = 0; i < n; ++i) a.star(i, j) = col[i];
                } else {
                    fail(l2, "unexpected line in algebra block");
                }
            }
            if (a.unit.size() != a.basis.size() || a.l.size() != a.basis.size())
                fail(hl, "algebra block has inconsistent dimensions");
            t.bundle.A[hl.tok[2]] = std::move(a);
        } else if (kw == "space") {
            const Line& sl = cur.next();
            // space B <graph> dim <n>
            if (sl.tok.size() != 5 || sl.tok[1] != "B" || sl.tok[3] != "dim")
                fail(sl, "expected 'space B <graph> dim <n>'");
            const GraphClass& cls = class_by_name(sl, sl.tok[2]);
            int n = to_int(sl, sl.tok[4]);
            std::vector<std::string> labels;
            if (!cur.done() && cur.peek().tok[0] == "basis") {
                labels = split_sep(cur.next()).second;
            } else {
                for (int k = 0; k < n; ++k) labels.push_back("o" + std::to_string(k));
            }
            if (static_cast<int>(labels.size()) != n)
                fail(sl, "basis label count does not match dim");
            t.bundle.B.add_space(cls, labels);
        } else if (kw == "form2") {
            const Line& fl = cur.next();
            auto [hd, tl] = split_sep(fl);
            if (hd.size() != 2) fail(fl, "expected 'form2 <graph> : entries'");
            const GraphClass& cls = class_by_name(fl, hd[1]);
            std::size_t d = t.bundle.B.dim(cls);
            std::size_t ds = t.bundle.B.dim(involute(cls));
            t.bundle.B.set_form2(cls, to_mat(fl, tl, d, ds));
        } else if (kw == "form3") {
            const Line& fl = cur.next();
            auto [hd, tl] = split_sep(fl);
            if (hd.size() != 4) fail(fl, "expected 'form3 <g1> <g2> <g3> : entries'");
            const GraphClass &c1 = class_by_name(fl, hd[1]), &c2 = class_by_name(fl, hd[2]),
                             &c3 = class_by_name(fl, hd[3]);
            std::size_t d1 = t.bundle.B.dim(c1), d2 = t.bundle.B.dim(c2),
                        d3 = t.bundle.B.dim(c3);
            if (tl.size() != d1 * d2 * d3) fail(fl, "form3 entry count mismatch");
            t.bundle.B.set_form3(c1, c2, c3, to_vec(fl, tl));
        } else if (kw == "starB") {
            const Line& fl = cur.next();
            auto [hd, tl] = split_sep(fl);
            if (hd.size() != 2) fail(fl, "expected 'starB <graph> : entries'");
            const GraphClass& cls = class_by_name(fl, hd[1]);
            std::size_t d = t.bundle.B.dim(cls);
            t.bundle.starB[cls.enc()] = to_mat(fl, tl, t.bundle.B.dim(involute(cls)), d);
        } else if (kw == "unitB" || kw == "U") {
            const Line& fl = cur.next();
            auto [hd, tl] = split_sep(fl);
            if (hd.size() != 2) fail(fl, "expected '" + kw + " <color> : entries'");
            (kw == "U" ? t.bundle.U : t.bundle.unitB)[hd[1]] = to_vec(fl, tl);
        } else if (kw == "phi") {
            const Line& fl = cur.next();
            auto [hd, tl] = split_sep(fl);
            if (hd.size() != 4) fail(fl, "expected 'phi <color> <graph> <i> : entries'");
            const std::string& s = hd[1];
            const GraphClass& cls = class_by_name(fl, hd[2]);
            std::size_t i = to_int(fl, hd[3]);
            auto ait = t.bundle.A.find(s);
            if (ait == t.bundle.A.end()) fail(fl, "phi before 'algebra A " + s + "'");
            std::size_t da = ait->second.dim();
            if (i >= da) fail(fl, "phi index out of range");
            std::size_t d = t.bundle.B.dim(cls);
            auto& ops = t.bundle.phi[{s, cls.enc()}];
            if (ops.empty()) ops.assign(da, Mat(d, d));
            ops[i] = to_mat(fl, tl, d, d);
        } else {
            fail(l, "unexpected '" + kw + "' in theory file");
        }
    }
    return t;
}

std::string serialize_theory(const TheoryFile& t) {
    std::ostringstream os;
    os << "theory " << t.name << "\n";
    os << "palette :";
    for (const auto& s : t.bundle.palette) os << " " << s;
    os << "\n";

    auto graphs = t.graphs;
    std::sort(graphs.begin(), graphs.end());
    for (const auto& [name, c] : graphs) os << serialize_graph_block(name, c);

    auto put_vec = [&](const Vec& v) {
        for (const auto& x : v) os << " " << rat_str(x);
        os << "\n";
    };
    auto put_mat = [&](const Mat& m) {
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) os << " " << rat_str(m(i, j));
        os << "\n";
    };

    for (const auto& s : t.bundle.palette) {
        auto it = t.bundle.A.find(s);
        if (it == t.bundle.A.end()) continue;
        const EquippedFrobenius& a = it->second;
        os << "algebra A " << s << "\n";
        os << "basis :";
        for (const auto& b : a.basis) os << " " << b;
        os << "\n";
        os << "unit :";
        put_vec(a.unit);
        os << "functional :";
        put_vec(a.l);
        for (std::size_t i = 0; i < a.dim(); ++i)
            for (std::size_t j = 0; j < a.dim(); ++j) {
                os << "mul " << i << " " << j << " :";
                put_vec(a.mul[i][j]);
            }
        for (std::size_t j = 0; j < a.dim(); ++j) {
            os << "star " << j << " :";
            Vec col(a.dim());
            for (std::size_t i = 0; i < a.dim(); ++i) col[i] = a.star(i, j);
            put_vec(col);
        }
    }

    // Classes in graph-name order (sorted above).
    for (const auto& [name, cls] : graphs) {
        if (!t.bundle.B.has_space(cls)) continue;
        os << "space B " << name << " dim " << t.bundle.B.dim(cls) << "\n";
        os << "basis :";
        for (const auto& b : t.bundle.B.space(cls).basis) os << " " << b;
        os << "\n";
    }
    for (const auto& [name, cls] : graphs) {
        if (!t.bundle.B.has_form2(cls)) continue;
        os << "form2 " << name << " :";
        put_mat(t.bundle.B.form2(cls));
    }
    // One line per cyclic orbit: emit only the lexicographically least
    // rotation (by graph name triple).
    for (const auto& [n1, c1] : graphs)
        for (const auto& [n2, c2] : graphs)
            for (const auto& [n3, c3] : graphs) {
                if (!t.bundle.B.has_form3(c1, c2, c3)) continue;
                std::array<std::string, 3> me = {n1, n2, n3};
                std::array<std::string, 3> r1 = {n2, n3, n1}, r2 = {n3, n1, n2};
                if (r1 < me || r2 < me) continue;
                os << "form3 " << n1 << " " << n2 << " " << n3 << " :";
                std::size_t d1 = t.bundle.B.dim(c1), d2 = t.bundle.B.dim(c2),
                            d3 = t.bundle.B.dim(c3);
                for (std::size_t i = 0; i < d1; ++i)
                    for (std::size_t j = 0; j < d2; ++j)
                        for (std::size_t k = 0; k < d3; ++k)
                            os << " " << rat_str(t.bundle.B.form3(c1, c2, c3, i, j, k));
                os << "\n";
            }
    for (const auto& [name, cls] : graphs) {
        auto it = t.bundle.starB.find(cls.enc());
        if (it == t.bundle.starB.end()) continue;
        os << "starB " << name << " :";
        put_mat(it->second);
    }
    for (const auto& s : t.bundle.palette) {
        auto it = t.bundle.unitB.find(s);
        if (it == t.bundle.unitB.end()) continue;
        os << "unitB " << s << " :";
        put_vec(it->second);
    }
    for (const auto& s : t.bundle.palette) {
        auto it = t.bundle.U.find(s);
        if (it == t.bundle.U.end()) continue;
        os << "U " << s << " :";
        put_vec(it->second);
    }
    for (const auto& s : t.bundle.palette)
        for (const auto& [name, cls] : graphs) {
            auto it = t.bundle.phi.find({s, cls.enc()});
            if (it == t.bundle.phi.end()) continue;
            for (std::size_t i = 0; i < it->second.size(); ++i) {
                os << "phi " << s << " " << name << " " << i << " :";
                put_mat(it->second[i]);
            }
        }
    return os.str();
}

// -------------------------------------------------------------------------
// groups files
// -------------------------------------------------------------------------

const GroupAction& GroupsFile::action_named(const std::string& n) const {
    for (const auto& [name, ga] : actions)
        if (name == n) return ga.second;
    throw MissingClass("no action named '" + n + "' in groups file");
}

GroupsFile parse_groups(const std::string& text) {
    auto lines = lex(text);
    Cursor cur{lines};
    GroupsFile g;
    auto read_rows = [&](const Line& at, int rows, int cols,
                         int bound) -> std::vector<std::vector<int>> {
        std::vector<std::vector<int>> out;
        for (int r = 0; r < rows; ++r) {
            if (cur.done() || is_top_keyword(cur.peek().tok[0]))
                fail(at, "expected " + std::to_string(rows) + " table rows");
            const Line& l = cur.next();
            if (static_cast<int>(l.tok.size()) != cols)
                fail(l, "expected " + std::to_string(cols) + " entries per row");
            std::vector<int> row;
            for (const auto& t : l.tok) {
                int v = to_int(l, t);
                if (v < 0 || v >= bound) fail(l, "table entry out of range");
                row.push_back(v);
            }
            out.push_back(std::move(row));
        }
        return out;
    };
    while (!cur.done()) {
        const std::string& kw = cur.peek().tok[0];
        if (kw == "group") {
            const Line& l = cur.next();
            if (l.tok.size() != 4 || l.tok[2] != "order")
                fail(l, "expected 'group <name> order <n>'");
            FiniteGroup grp;
            grp.n = to_int(l, l.tok[3]);
            grp.table = read_rows(l, grp.n, grp.n, grp.n);
            try {
                grp.validate();
            } catch (const std::exception& e) {
                throw ParseError(l.no, std::string("invalid group table: ") + e.what());
            }
            g.groups.emplace_back(l.tok[1], std::move(grp));
        } else if (kw == "action") {
            const Line& l = cur.next();
            if (l.tok.size() != 5 || l.tok[3] != "set")
                fail(l, "expected 'action <name> <group> set <m>'");
            const FiniteGroup* grp = nullptr;
            for (const auto& [name, gr] : g.groups)
                if (name == l.tok[2]) grp = &gr;
            if (!grp) fail(l, "unknown group '" + l.tok[2] + "'");
            GroupAction act;
            act.group = *grp;
            act.set_size = to_int(l, l.tok[4]);
            act.act = read_rows(l, act.group.n, act.set_size, act.set_size);
            try {
                act.validate();
            } catch (const std::exception& e) {
                throw ParseError(l.no, std::string("invalid action table: ") + e.what());
            }
            g.actions.emplace_back(l.tok[1], std::make_pair(l.tok[2], std::move(act)));
        } else if (kw == "color") {
            const Line& l = cur.next();
            auto [hd, tl] = split_sep(l);
            if (hd.size() != 2 || tl.size() != 1) fail(l, "expected 'color <s> : <action>'");
            try {
                g.system.per_color.emplace(hd[1], g.action_named(tl[0]));
            } catch (const MissingClass& e) {
                fail(l, e.what());
            }
        } else if (kw == "graph") {
            g.graphs.push_back(parse_graph_block(cur));
        } else if (kw == "working") {
            const Line& l = cur.next();
            for (const auto& n : split_sep(l).second)
                g.working_set.push_back(lookup_graph(l, g.graphs, n));
        } else {
            fail(cur.peek(), "unexpected '" + kw + "' in groups file");
        }
    }
    return g;
}

// -------------------------------------------------------------------------
// labels files
// -------------------------------------------------------------------------

LabelsFile parse_labels(const std::string& text) {
    auto lines = lex(text);
    Cursor cur{lines};
    LabelsFile out;
    while (!cur.done()) {
        const Line& l = cur.next();
        auto [hd, tl] = split_sep(l);
        if (hd.size() != 3 || hd[0] != "label" || (hd[1] != "point" && hd[1] != "vertex"))
            fail(l, "expected 'label point|vertex <id> = coefficients'");
        auto& dest = hd[1] == "point" ? out.point_labels : out.vertex_labels;
        if (dest.count(hd[2])) fail(l, "duplicate label for '" + hd[2] + "'");
        dest[hd[2]] = to_vec(l, tl);
    }
    return out;
}

std::string serialize_labels(const LabelsFile& l) {
    std::ostringstream os;
    auto put = [&](const char* kind, const std::map<std::string, Vec>& m) {
        for (const auto& [name, v] : m) {
            os << "label " << kind << " " << name << " =";
            for (const auto& x : v) os << " " << rat_str(x);
            os << "\n";
        }
    };
    put("point", l.point_labels);
    put("vertex", l.vertex_labels);
    return os.str();
}

// -------------------------------------------------------------------------
// files
// -------------------------------------------------------------------------

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << text;
}

}  // namespace foamtft
