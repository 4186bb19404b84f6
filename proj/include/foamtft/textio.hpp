#pragma once

#include "foamtft/frobenius.hpp"
#include "foamtft/groupcover.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace foamtft {

/// Reported with the 1-based line number of the offending input line.
struct ParseError : std::runtime_error {
    int line;
    ParseError(int l, const std::string& what)
        : std::runtime_error("line " + std::to_string(l) + ": " + what), line(l) {}
};

struct NamedFilm {
    std::string name;
    FilmSurface film;
    std::vector<std::string> vertex_names;  // size == film.num_vertices
};

struct NamedFoam {
    std::string name;
    CyclicFoam foam;  // seams carry vertex_names
};

/// A surface file: optional named graph blocks, then film and foam blocks.
struct SurfaceDoc {
    std::vector<std::pair<std::string, GraphClass>> graphs;
    std::vector<NamedFilm> films;
    std::vector<NamedFoam> foams;
};

/// A theory file: named graph classes plus the full algebraic bundle.
struct TheoryFile {
    std::string name = "theory";
    std::vector<std::pair<std::string, GraphClass>> graphs;  // sorted by name
    GraphCardyBundle bundle;

    const GraphClass& graph_named(const std::string& n) const;  // throws MissingClass
    std::string graph_name(const GraphClass& c) const;          // throws MissingClass
};

/// A groups file: group/action tables, per-color action bindings, named
/// graphs and the working set of classes.
struct GroupsFile {
    std::vector<std::pair<std::string, FiniteGroup>> groups;
    // action name -> (group name, action)
    std::vector<std::pair<std::string, std::pair<std::string, GroupAction>>> actions;
    std::vector<std::pair<std::string, GraphClass>> graphs;
    ActionSystem system;                  // from `color <s> : <action>` lines
    std::vector<GraphClass> working_set;  // from the `working:` line

    const GroupAction& action_named(const std::string& n) const;
};

struct LabelsFile {
    std::map<std::string, Vec> point_labels;
    std::map<std::string, Vec> vertex_labels;
};

SurfaceDoc parse_surfaces(const std::string& text);
TheoryFile parse_theory(const std::string& text);
GroupsFile parse_groups(const std::string& text);
LabelsFile parse_labels(const std::string& text);

/// Canonical serializers: deterministic ordering, rationals as p/q with
/// q > 0. parse(serialize(x)) reproduces x and serialize is idempotent
/// across the round trip.
std::string serialize_surfaces(const SurfaceDoc& doc);
std::string serialize_theory(const TheoryFile& t);
std::string serialize_labels(const LabelsFile& l);

std::string serialize_graph_block(const std::string& name, const GraphClass& c);

std::string read_file(const std::string& path);          // throws std::runtime_error
void write_file(const std::string& path, const std::string& text);

}  // namespace foamtft
