#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace foamtft {

struct InvalidGraph : std::runtime_error {
    explicit InvalidGraph(const std::string& what) : std::runtime_error(what) {}
};

struct UnknownColor : std::runtime_error {
    explicit UnknownColor(const std::string& c) : std::runtime_error("unknown color: " + c) {}
};

struct ColoredEdge {
    int tail = 0;
    int head = 0;
    std::string color;
};

/// Oriented colored multigraph. Nodes are 0..num_nodes-1. Loops are
/// rejected, and within any connected component edge colors must be
/// pairwise distinct; both are checked by canonical_class.
struct ColoredGraph {
    int num_nodes = 0;
    std::vector<ColoredEdge> edges;
};

/// Isomorphism class of a colored graph under color- and
/// orientation-preserving isomorphism. The representative is canonical:
/// equal classes have identical representatives, so equality is a string
/// compare on the encoding.
class GraphClass {
public:
    GraphClass() = default;

    const ColoredGraph& rep() const { return rep_; }
    bool connected() const { return connected_; }
    const std::string& enc() const { return enc_; }

    /// Sorted distinct edge colors of the representative.
    const std::vector<std::string>& colors() const { return colors_; }
    bool has_color(const std::string& s) const;

    /// For a connected class: the unique edge of the given color.
    /// Node indices refer to the canonical representative.
    const ColoredEdge& edge_of_color(const std::string& s) const;

    bool operator==(const GraphClass& o) const { return enc_ == o.enc_; }
    bool operator!=(const GraphClass& o) const { return enc_ != o.enc_; }
    bool operator<(const GraphClass& o) const { return enc_ < o.enc_; }

private:
    friend GraphClass canonical_class(const ColoredGraph&);
    ColoredGraph rep_;
    bool connected_ = false;
    std::string enc_;
    std::vector<std::string> colors_;
};

/// Canonical form under color/orientation-preserving isomorphism.
/// Distinct colors per component force the node bijection, so the
/// canonical representative is obtained by relabeling nodes in order of
/// first appearance along the color-sorted edge list.
GraphClass canonical_class(const ColoredGraph& g);

/// Reverses every edge orientation, then canonicalizes.
GraphClass involute(const GraphClass& c);

/// The one-edge class I_s.
GraphClass segment_class(const std::string& color);

}  // namespace foamtft
