#pragma once

#include "foamtft/frobenius.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace foamtft {

struct InvalidTables : std::runtime_error {
    explicit InvalidTables(const std::string& w) : std::runtime_error(w) {}
};
struct MismatchedBoundary : std::runtime_error {
    explicit MismatchedBoundary(const std::string& w) : std::runtime_error(w) {}
};
struct BundleVerificationFailed : std::runtime_error {
    Report report;
    explicit BundleVerificationFailed(const std::string& w, Report r = {})
        : std::runtime_error(w), report(std::move(r)) {}
};

struct FiniteGroup {
    int n = 1;
    std::vector<std::vector<int>> table;  // table[g][h] = g*h

    int identity() const;
    int inv(int g) const;
    void validate() const;  // throws InvalidTables
};

FiniteGroup make_trivial_group();
FiniteGroup make_cyclic_group(int n);
FiniteGroup make_symmetric_group(int n);  // n <= 4

/// Conjugacy classes, deterministically ordered (by least element; the
/// identity's class comes first).
std::vector<std::vector<int>> conjugacy_classes(const FiniteGroup& g);

struct GroupAction {
    FiniteGroup group;
    int set_size = 1;
    std::vector<std::vector<int>> act;  // act[g][x]

    void validate() const;
};

GroupAction regular_action(const FiniteGroup& g);
GroupAction trivial_action(const FiniteGroup& g, int set_size = 1);

/// One group action per palette color.
struct ActionSystem {
    std::map<std::string, GroupAction> per_color;

    std::vector<std::string> palette() const;
    const GroupAction& at(const std::string& s) const;
    Int full_order() const;  // |G| = prod over the palette
    void validate() const;
};

/// An equipment orbit of a connected class sigma: one (x', x'') pair per
/// color, aligned with sigma.colors(); stored as the canonical (least)
/// orbit representative.
struct Equipment {
    std::vector<std::pair<int, int>> pairs;
    Int aut = 1;  // stabilizer order under the full-palette product

    bool operator==(const Equipment& o) const { return pairs == o.pairs; }
    bool operator<(const Equipment& o) const { return pairs < o.pairs; }
};

/// All equipment orbits of sigma — the basis of B_sigma, sorted.
std::vector<Equipment> enumerate_equipments(const GraphClass& sigma, const ActionSystem& act);

/// Canonical representative of the orbit of a raw pair tuple.
std::vector<std::pair<int, int>> canonical_equipment(const std::vector<std::string>& colors,
                                                     std::vector<std::pair<int, int>> pairs,
                                                     const ActionSystem& act);

/// The involution: reversed orientation, swapped pair components, re-canonicalized
/// as an equipment of sigma*.
Equipment involute_equipment(const GraphClass& sigma, const Equipment& e,
                             const ActionSystem& act);

/// One-pass state-sum table for a film surface: counts seam-edge maps per
/// tuple of induced (canonical) vertex equipments.
class FilmPhiTable {
public:
    FilmPhiTable(const FilmSurface& film, const ActionSystem& act);

    /// Phi = (#matching maps) / |G|.
    Rat phi(const std::vector<Equipment>& boundary) const;

    /// Independent orbit sum: sum over matching film-equipment orbits of
    /// 1/|Aut(Psi)|. Equals phi() by orbit-stabilizer; computed separately.
    Rat orbit_phi(const std::vector<Equipment>& boundary) const;

    const FilmSurface& film() const { return film_; }

private:
    using Key = std::vector<std::vector<std::pair<int, int>>>;  // per vertex
    Key key_of(const std::vector<Equipment>& boundary) const;

    FilmSurface film_;
    const ActionSystem& act_;
    std::vector<std::vector<std::string>> vertex_colors_;
    std::map<Key, long long> counts_;
    std::map<Key, Rat> orbit_sums_;
    Int order_ = 1;
};

/// Phi on a film surface with equipment boundary labels; cross-checks the
/// direct count against the orbit sum and throws on mismatch.
Rat film_phi(const FilmSurface& film, const std::vector<Equipment>& boundary,
             const ActionSystem& act);

/// Center of the group algebra of G_s in the class-sum basis.
EquippedFrobenius build_center_algebra(const ActionSystem& act, const std::string& s);

/// Populates all spaces and forms over the working set W via state sums.
GraphFrobeniusData build_graph_frobenius(const ActionSystem& act,
                                         const std::vector<GraphClass>& w);

/// Operators of the A^s class-sum basis on B_sigma (requires an s-edge).
/// Checks that the action is well defined on orbits; throws
/// BundleVerificationFailed otherwise.
std::vector<Mat> phi_action(const GraphClass& sigma, const std::string& s,
                            const ActionSystem& act);

/// The full finite-group theory assembly; the result passes verify_graph_cardy or
/// BundleVerificationFailed is thrown with the offending report.
GraphCardyBundle build_bundle(const ActionSystem& act, const std::vector<GraphClass>& w);

}  // namespace foamtft
