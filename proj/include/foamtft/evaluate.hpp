#pragma once

#include "foamtft/foams.hpp"
#include "foamtft/frobenius.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace foamtft {

struct NotComposable : std::runtime_error {
    explicit NotComposable(const std::string& w) : std::runtime_error(w) {}
};
struct MixedColors : std::runtime_error {
    explicit MixedColors(const std::string& w) : std::runtime_error(w) {}
};
struct UnlabeledPoint : std::runtime_error {
    explicit UnlabeledPoint(const std::string& w) : std::runtime_error(w) {}
};

/// A cyclic foam together with label vectors: interior points carry elements
/// of A^s (s the patch color), named vertices carry elements of B_sigma in
/// the bundle's bases.
struct LabeledFoam {
    CyclicFoam foam;
    std::map<std::string, Vec> point_labels;
    std::map<std::string, Vec> vertex_labels;
};

/// Canonical form: local orientations flipped to +1 with the involution
/// applied to the affected labels; interior points labeled exactly with the
/// unit of A^s are dropped. Phi is unchanged.
LabeledFoam normalize_foam(const GraphCardyBundle& bundle, LabeledFoam lf);

/// Phi on the film surface composed from the cyclic boundary sequence.
/// n = 2 and n = 3 read the stored forms; n >= 4 contracts the chain through
/// the forced cut class of each split, with Casimir coefficients between the
/// factors.
Rat eval_film(const GraphCardyBundle& bundle,
              const std::vector<std::pair<GraphClass, Vec>>& seq);

/// Phi on a one-seam foam whose patches are all disks; interior point labels
/// are absorbed through phi_sigma^s at the first eligible vertex.
Rat eval_film_marked(const GraphCardyBundle& bundle, const LabeledFoam& lf);

/// Phi on a single 2-manifold patch with free boundary only:
/// l_A(prod points . prod_c phi*(beta_c) . K^genus . U^crosscaps).
Rat eval_klein(const GraphCardyBundle& bundle, const LabeledFoam& lf);

/// Phi on an arbitrary labeled foam: multiplicative over components; glued
/// circles of non-disk patches are detached through Casimir legs, closed
/// pieces go to eval_klein, seam pieces to eval_film_marked.
Rat eval_foam(const GraphCardyBundle& bundle, const LabeledFoam& lf);

/// Phi of a cut-open foam with the descriptor's tensor summed into the new
/// slots; cut invariance says this equals Phi of the original foam.
Rat eval_insertion(const GraphCardyBundle& bundle, const LabeledFoam& lf,
                   const InsertionDescriptor& ins);

/// Axiom harness: cut invariance over every enumerable admissible cut,
/// invariance under renaming, nondegeneracy of the two-point forms.
Report check_axioms(const GraphCardyBundle& bundle, const std::vector<LabeledFoam>& corpus);

}  // namespace foamtft
