#pragma once

#include "foamtft/graphs.hpp"

#include <optional>
#include <string>
#include <vector>

namespace foamtft {

struct InvalidSurface : std::runtime_error {
    explicit InvalidSurface(const std::string& w) : std::runtime_error(w) {}
};
struct UnknownVertex : std::runtime_error {
    explicit UnknownVertex(const std::string& w) : std::runtime_error(w) {}
};
struct NoCut : std::runtime_error {
    explicit NoCut(const std::string& w) : std::runtime_error(w) {}
};
struct InvalidCut : std::runtime_error {
    explicit InvalidCut(const std::string& w) : std::runtime_error(w) {}
};
// compose is deterministic; this fires only if its result fails the
// round-trip check, i.e. an implementation bug.
struct NonUniqueInternal : std::runtime_error {
    explicit NonUniqueInternal(const std::string& w) : std::runtime_error(w) {}
};

struct SeamEdge {
    int u = 0, v = 0;  // u != v; endpoint order fixes half-edge identity
};

struct BoundaryStep {
    int edge = 0;
    bool forward = true;  // true: traversed u -> v
};

struct Disk {
    std::string color;
    std::vector<BoundaryStep> boundary;  // cyclic, alternating with vertices
};

/// One connected film surface. Vertices 0..n-1 in cyclic order; the seam
/// graph is regular; each disk's oriented boundary traverses seam edges
/// injectively and visits its vertices in the global cyclic order.
struct FilmSurface {
    int num_vertices = 0;
    std::vector<SeamEdge> seam_edges;
    std::vector<Disk> disks;

    int step_from(const BoundaryStep& s) const {
        return s.forward ? seam_edges[s.edge].u : seam_edges[s.edge].v;
    }
    int step_to(const BoundaryStep& s) const {
        return s.forward ? seam_edges[s.edge].v : seam_edges[s.edge].u;
    }

    /// Cyclic vertex sequence visited by a disk.
    std::vector<int> disk_vertices(const Disk& d) const;

    /// Throws InvalidSurface on any structural violation (loops, uncovered
    /// seam edges, non-injective boundaries, repeated colors, cyclic-order
    /// incompatibility, disconnectedness). Does not check the cyclic-complex
    /// condition; see validate_cyclic.
    void validate() const;

    /// Link of a vertex: nodes are the seam half-edges at q, one edge per
    /// disk corner, colored by the disk and oriented incoming -> outgoing.
    GraphClass vertex_graph(int q) const;
    std::vector<GraphClass> vertex_graphs() const;
};

/// Reconstructs the connected film surface with the given cyclic vertex
/// graph sequence, or nullopt if none exists. The surface is unique: the
/// seam pairing is forced color by color.
std::optional<FilmSurface> compose(const std::vector<GraphClass>& seq);

struct CyclicReport {
    // Violating contiguous bipartitions as (arc_start, arc_len), with reasons.
    std::vector<std::pair<std::pair<int, int>, std::string>> failures;
    bool ok() const { return failures.empty(); }
};

/// Checks the cyclic-complex condition: every contiguous bipartition of the
/// cyclic vertex order is realized by a graph-cut.
CyclicReport validate_cyclic(const FilmSurface& f);

struct GraphCutResult {
    GraphClass cut_class;     // sigma, oriented from the first side
    FilmSurface piece_first;  // vertices arc..., then the new vertex (graph sigma)
    FilmSurface piece_second; // remaining vertices..., then the new vertex (graph sigma*)
    // piece vertex i < n_side corresponds to original vertex:
    std::vector<int> first_orig_vertices;
    std::vector<int> second_orig_vertices;
    // seam edge provenance: for each piece edge, the original edge id
    // (cut edges keep their id; they appear in both pieces).
    std::vector<int> first_edge_orig;
    std::vector<int> second_edge_orig;
    // disk provenance: piece disk index -> original disk index
    std::vector<int> first_disk_orig;
    std::vector<int> second_disk_orig;
};

/// Cuts f along the graph-cut realizing the contiguous bipartition
/// {arc_start..arc_start+arc_len-1} | rest, and contracts each side's copy
/// of the cut graph to a new vertex. Throws NoCut when no graph-cut
/// realizes the split.
GraphCutResult graph_cut(const FilmSurface& f, int arc_start, int arc_len);

// ---------------------------------------------------------------------------
// Cyclic foams
// ---------------------------------------------------------------------------

struct FreeVertex {
    std::string name;
    int sign = +1;  // local orientation
};

struct FreeCircle {
    std::vector<FreeVertex> vertices;  // cyclic; at least one
};

struct InteriorPoint {
    std::string name;
    int sign = +1;
};

struct GluedCircle {
    int seam = 0;  // index into CyclicFoam::seams
    std::vector<BoundaryStep> boundary;
};

struct Patch {
    std::string color;
    bool orientable = true;
    int genus = 0;
    int crosscaps = 0;
    std::vector<GluedCircle> glued;
    std::vector<FreeCircle> free_circles;
    std::vector<InteriorPoint> points;

    bool is_disk() const {
        return orientable && genus == 0 && crosscaps == 0 && glued.size() == 1 &&
               free_circles.empty();
    }
    bool has_boundary() const { return !glued.empty() || !free_circles.empty(); }
};

/// One connected component of the seamed graph, with its cyclic order.
struct Seam {
    int num_vertices = 0;
    std::vector<SeamEdge> edges;
    std::vector<std::string> vertex_names;  // optional; filled by parsers
};

struct CyclicFoam {
    std::vector<Seam> seams;
    std::vector<Patch> patches;

    void validate() const;

    /// Connected components: patch indices + seam indices reachable
    /// through glued circles.
    struct Component {
        std::vector<int> patches;
        std::vector<int> seams;
    };
    std::vector<Component> components() const;

    /// The film surface generated by one seam: every glued circle of every
    /// patch on that seam becomes a disk of the patch color.
    FilmSurface underlying_film(int seam_index) const;

    /// Vertex graph of a seam vertex (via the underlying film) or of a
    /// free-circle vertex (a segment of the patch color).
    GraphClass seam_vertex_graph(int seam_index, int vertex) const;

    std::string seam_vertex_name(int seam_index, int vertex) const;
};

/// Wraps a film surface as a foam of disk patches over a single seam.
CyclicFoam film_as_foam(const FilmSurface& f,
                        const std::vector<std::string>& vertex_names = {});

// Cut specifications. `patch` indexes CyclicFoam::patches.
struct CutSpec {
    enum class Kind {
        Crosscap,      // (a): non-coorientable contour at a crosscap
        Handle,        // (b): coorientable contour around a handle
        DetachGlued,   // (b): coorientable contour parallel to a glued circle
        SplitContour,  // (b): separating coorientable contour
        SegmentSplit,  // (c): segment with both ends on one free circle, separating
        SegmentMerge,  // (c): segment joining two free circles of one patch
        Graph          // (d): graph-cut on the underlying film of a seam
    };
    Kind kind = Kind::Graph;
    int patch = 0;

    int glued_index = 0;  // DetachGlued

    // SplitContour / SegmentSplit: what goes to the detached side.
    int genus_off = 0;
    int crosscaps_off = 0;
    std::vector<int> glued_off;
    std::vector<int> free_off;
    std::vector<int> points_off;

    // SegmentSplit: free circle and the two gaps (gap g = between vertex
    // g-1 and g); vertices [gap_a, gap_b) detach.
    // SegmentMerge: circle_a/gap_a and circle_b/gap_b.
    int circle_a = 0, gap_a = 0;
    int circle_b = 0, gap_b = 0;

    // Graph:
    int seam = 0;
    int arc_start = 0, arc_len = 1;
};

struct InsertionDescriptor {
    enum class Tensor { U_s, K_s, K_Is, K_sigma };
    Tensor tensor = Tensor::K_s;
    std::string color;
    GraphClass sigma;                // K_sigma only
    std::vector<std::string> slots;  // new marked point / vertex names; 1 for U_s, else 2
};

/// Applies a cut morphism and reports which tensor to insert at which new
/// slots. New names are derived from `slot_prefix`.
std::pair<CyclicFoam, InsertionDescriptor> apply_cut(const CyclicFoam& foam, const CutSpec& cut,
                                                     const std::string& slot_prefix = "cut");

}  // namespace foamtft
