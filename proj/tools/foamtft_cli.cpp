// Command-line front end: verify theories, evaluate surfaces, build
// theories from group data, run the counting oracle and the axiom harness.
//
// Exit codes: 0 success, 1 verification or evaluation failure, 2 parse
// error, 3 missing graph class, 4 non-composable boundary.

#include <CLI11.hpp>

#include <foamtft/evaluate.hpp>
#include <foamtft/groupcover.hpp>
#include <foamtft/textio.hpp>

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <iostream>

namespace fs = std::filesystem;
using namespace foamtft;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitParse = 2;
constexpr int kExitMissingClass = 3;
constexpr int kExitNotComposable = 4;

struct Options {
    bool trace = false;
    std::string format = "text";  // text | table
    std::string cache_dir;
};

void emit(const Options& opt, const std::string& name, const std::string& value) {
    if (opt.format == "table")
        std::cout << name << "\t" << value << "\n";
    else
        std::cout << name << " = " << value << "\n";
}

std::uint64_t fnv64(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string default_cache_dir(const Options& opt) {
    if (!opt.cache_dir.empty()) return opt.cache_dir;
    if (const char* env = std::getenv("FOAMTFT_CACHE_DIR")) return env;
    return {};
}

/// Labeled foams from a surface doc: films become one-seam disk foams with
/// their vertex names; labels are attached wholesale (dimensions are
/// checked during evaluation).
std::vector<std::pair<std::string, LabeledFoam>> collect_foams(const SurfaceDoc& doc,
                                                               const LabelsFile& labels) {
    std::vector<std::pair<std::string, LabeledFoam>> out;
    for (const auto& nf : doc.films) {
        LabeledFoam lf;
        lf.foam = film_as_foam(nf.film, nf.vertex_names);
        lf.point_labels = labels.point_labels;
        lf.vertex_labels = labels.vertex_labels;
        out.emplace_back(nf.name, std::move(lf));
    }
    for (const auto& nf : doc.foams) {
        LabeledFoam lf;
        lf.foam = nf.foam;
        lf.point_labels = labels.point_labels;
        lf.vertex_labels = labels.vertex_labels;
        out.emplace_back(nf.name, std::move(lf));
    }
    return out;
}

LabelsFile load_labels(const std::string& path) {
    if (path.empty()) return {};
    return parse_labels(read_file(path));
}

/// Names every class stored in the bundle, reusing the given names and
/// generating cls<k> for the rest.
std::vector<std::pair<std::string, GraphClass>> name_bundle_classes(
    const GraphCardyBundle& bundle, std::vector<std::pair<std::string, GraphClass>> names) {
    int k = 0;
    for (const auto& cls : bundle.B.class_list()) {
        bool found = false;
        for (const auto& [n, c] : names) found = found || c == cls;
        if (!found) names.emplace_back("cls" + std::to_string(k++), cls);
    }
    return names;
}

int cmd_verify(const Options& opt, const std::string& theory_path) {
    TheoryFile t = parse_theory(read_file(theory_path));
    Report rep = verify_graph_frobenius(t.bundle.B);
    rep.merge(verify_graph_cardy(t.bundle));
    if (rep.ok()) {
        emit(opt, t.name, "ok");
        return 0;
    }
    for (const auto& f : rep.failures) std::cerr << "fail: " << f << "\n";
    emit(opt, t.name, "failed (" + std::to_string(rep.failures.size()) + " axiom violations)");
    return kExitFail;
}

int cmd_eval(const Options& opt, const std::string& theory_path, const std::string& surface_path,
             const std::string& labels_path) {
    TheoryFile t = parse_theory(read_file(theory_path));
    SurfaceDoc doc = parse_surfaces(read_file(surface_path));
    LabelsFile labels = load_labels(labels_path);
    for (auto& [name, lf] : collect_foams(doc, labels)) {
        if (opt.trace) {
            LabeledFoam norm = normalize_foam(t.bundle, lf);
            std::cerr << "trace: " << name << ": " << norm.foam.seams.size() << " seams, "
                      << norm.foam.patches.size() << " patches, "
                      << norm.foam.components().size() << " components after normalization\n";
            for (const auto& comp : norm.foam.components())
                std::cerr << "trace:   component: " << comp.patches.size() << " patches on "
                          << comp.seams.size() << " seams\n";
        }
        emit(opt, name, rat_str(eval_foam(t.bundle, lf)));
    }
    return 0;
}

int cmd_build(const Options& opt, const std::string& groups_path, const std::string& out_path) {
    std::string text = read_file(groups_path);

    std::string cache = default_cache_dir(opt);
    fs::path cache_file;
    if (!cache.empty()) {
        char hex[17];
        std::snprintf(hex, sizeof hex, "%016llx",
                      static_cast<unsigned long long>(fnv64(text)));
        cache_file = fs::path(cache) / (std::string(hex) + ".theory");
        if (fs::exists(cache_file)) {
            if (opt.trace) std::cerr << "trace: cache hit " << cache_file.string() << "\n";
            std::string cached = read_file(cache_file.string());
            if (out_path.empty())
                std::cout << cached;
            else
                write_file(out_path, cached);
            return 0;
        }
    }

    GroupsFile g = parse_groups(text);
    if (g.working_set.empty()) {
        std::cerr << "error: groups file has no 'working:' line\n";
        return kExitParse;
    }
    TheoryFile t;
    t.name = fs::path(groups_path).stem().string();
    t.bundle = build_bundle(g.system, g.working_set);
    t.graphs = name_bundle_classes(t.bundle, g.graphs);
    std::string serialized = serialize_theory(t);
    if (!cache_file.empty()) {
        fs::create_directories(cache_file.parent_path());
        write_file(cache_file.string(), serialized);
    }
    if (out_path.empty())
        std::cout << serialized;
    else
        write_file(out_path, serialized);
    return 0;
}

int cmd_oracle(const Options& opt, const std::string& groups_path,
               const std::string& surface_path, const std::string& labels_path) {
    GroupsFile g = parse_groups(read_file(groups_path));
    SurfaceDoc doc = parse_surfaces(read_file(surface_path));
    LabelsFile labels = load_labels(labels_path);
    if (!doc.foams.empty()) {
        std::cerr << "error: the oracle evaluates film surfaces only\n";
        return kExitFail;
    }
    for (const auto& nf : doc.films) {
        FilmPhiTable table(nf.film, g.system);
        // Per-vertex equipment bases and label vectors.
        std::vector<std::vector<Equipment>> eqs;
        std::vector<Vec> vecs;
        for (int q = 0; q < nf.film.num_vertices; ++q) {
            eqs.push_back(enumerate_equipments(nf.film.vertex_graph(q), g.system));
            auto it = labels.vertex_labels.find(nf.vertex_names[q]);
            if (it == labels.vertex_labels.end())
                throw UnlabeledPoint("no label for vertex '" + nf.vertex_names[q] + "'");
            if (it->second.size() != eqs.back().size())
                throw DimensionMismatch("label for '" + nf.vertex_names[q] +
                                        "' has wrong dimension");
            vecs.push_back(it->second);
        }
        // Multilinear extension over nonzero coordinates.
        std::vector<std::vector<std::size_t>> support;
        for (const auto& v : vecs) {
            support.emplace_back();
            for (std::size_t i = 0; i < v.size(); ++i)
                if (v[i] != 0) support.back().push_back(i);
        }
        Rat total = 0;
        std::vector<std::size_t> pick(vecs.size(), 0);
        bool empty = false;
        for (const auto& s : support) empty = empty || s.empty();
        while (!empty) {
            Rat coeff = 1;
            std::vector<Equipment> boundary;
            for (std::size_t q = 0; q < pick.size(); ++q) {
                std::size_t i = support[q][pick[q]];
                coeff *= vecs[q][i];
                boundary.push_back(eqs[q][i]);
            }
            total += coeff * table.phi(boundary);
            std::size_t q = 0;
            while (q < pick.size() && ++pick[q] == support[q].size()) pick[q++] = 0;
            if (q == pick.size()) break;
        }
        emit(opt, nf.name, rat_str(total));
    }
    return 0;
}

int cmd_axioms(const Options& opt, const std::string& theory_path, const std::string& dir) {
    TheoryFile t = parse_theory(read_file(theory_path));
    std::vector<LabeledFoam> corpus;
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.path().extension() == ".surface") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    for (const auto& path : files) {
        SurfaceDoc doc = parse_surfaces(read_file(path.string()));
        fs::path lp = path;
        lp.replace_extension(".labels");
        LabelsFile labels = fs::exists(lp) ? parse_labels(read_file(lp.string())) : LabelsFile{};
        for (auto& [name, lf] : collect_foams(doc, labels)) corpus.push_back(std::move(lf));
        if (opt.trace) std::cerr << "trace: loaded " << path.string() << "\n";
    }
    if (corpus.empty()) {
        std::cerr << "error: no .surface files in " << dir << "\n";
        return kExitFail;
    }
    Report rep = check_axioms(t.bundle, corpus);
    if (rep.ok()) {
        emit(opt, "axioms", "ok (" + std::to_string(corpus.size()) + " surfaces)");
        return 0;
    }
    for (const auto& f : rep.failures) std::cerr << "fail: " << f << "\n";
    emit(opt, "axioms", "failed (" + std::to_string(rep.failures.size()) + " violations)");
    return kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cyclic-foam topological field theory toolkit"};
    app.require_subcommand(1);
    Options opt;
    app.add_flag("--trace", opt.trace, "print evaluation traces to stderr");
    app.add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"text", "table"}));
    app.add_option("--cache-dir", opt.cache_dir,
                   "theory cache directory (default: $FOAMTFT_CACHE_DIR)");

    std::string theory, surface, labels, groups, out, corpus;

    auto* verify = app.add_subcommand("verify", "verify all axioms of a theory file");
    verify->add_option("theory", theory)->required();

    auto* eval = app.add_subcommand("eval", "evaluate surfaces in a theory");
    eval->add_option("theory", theory)->required();
    eval->add_option("surface", surface)->required();
    eval->add_option("labels", labels);

    auto* build = app.add_subcommand("build", "build a theory from group data");
    build->add_option("groups", groups)->required();
    build->add_option("-o,--out", out, "output theory file (default: stdout)");

    auto* oracle = app.add_subcommand("oracle", "brute-force counting oracle on film surfaces");
    oracle->add_option("groups", groups)->required();
    oracle->add_option("surface", surface)->required();
    oracle->add_option("labels", labels);

    auto* axioms = app.add_subcommand("axioms", "run the axiom harness over a surface corpus");
    axioms->add_option("theory", theory)->required();
    axioms->add_option("corpus", corpus)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (verify->parsed()) return cmd_verify(opt, theory);
        if (eval->parsed()) return cmd_eval(opt, theory, surface, labels);
        if (build->parsed()) return cmd_build(opt, groups, out);
        if (oracle->parsed()) return cmd_oracle(opt, groups, surface, labels);
        if (axioms->parsed()) return cmd_axioms(opt, theory, corpus);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const MissingClass& e) {
        std::cerr << "missing class: " << e.what() << "\n";
        return kExitMissingClass;
    } catch (const MissingCutClass& e) {
        std::cerr << "missing cut class: " << e.what() << "\n";
        return kExitMissingClass;
    } catch (const NotComposable& e) {
        std::cerr << "not composable: " << e.what() << "\n";
        return kExitNotComposable;
    } catch (const BundleVerificationFailed& e) {
        std::cerr << "verification failed: " << e.what() << "\n";
        for (const auto& f : e.report.failures) std::cerr << "fail: " << f << "\n";
        return kExitFail;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFail;
    }
    return 0;
}
