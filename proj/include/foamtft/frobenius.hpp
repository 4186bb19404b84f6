#pragma once

#include "foamtft/foams.hpp"
#include "foamtft/matrix.hpp"

#include <array>
#include <map>
#include <string>
#include <vector>

namespace foamtft {

struct DimensionMismatch : std::runtime_error {
    explicit DimensionMismatch(const std::string& w) : std::runtime_error(w) {}
};
struct SingularPairing : std::runtime_error {
    explicit SingularPairing(const std::string& w) : std::runtime_error(w) {}
};
struct MissingClass : std::runtime_error {
    explicit MissingClass(const std::string& w) : std::runtime_error(w) {}
};
struct MissingCutClass : std::runtime_error {
    explicit MissingCutClass(const std::string& w) : std::runtime_error(w) {}
};
struct NoUnit : std::runtime_error {
    explicit NoUnit(const std::string& w) : std::runtime_error(w) {}
};

struct Report {
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
    void fail(const std::string& what) { failures.push_back(what); }
    void merge(const Report& o) {
        failures.insert(failures.end(), o.failures.begin(), o.failures.end());
    }
};

/// Finite-dimensional algebra with functional and involution, all exact.
/// Coordinates are always relative to `basis`.
struct EquippedFrobenius {
    std::vector<std::string> basis;
    std::vector<std::vector<Vec>> mul;  // mul[i][j] = coordinates of d_i d_j
    Vec unit;
    Vec l;     // functional: l(x) = sum_i l[i] x[i]
    Mat star;  // column j = coordinates of (d_j)*

    std::size_t dim() const { return basis.size(); }
    Vec mulv(const Vec& x, const Vec& y) const;
    Rat lv(const Vec& x) const;
    Vec starv(const Vec& x) const;

    Mat pairing() const;          // F_ij = l(d_i d_j)
    Mat pairing_inverse() const;  // throws SingularPairing
    Vec casimir() const;          // K = F^ij d_i d_j
    Vec twisted_casimir() const;  // K* = F^ij d_i d_j*
};

Report verify_equipped(const EquippedFrobenius& f);

/// The graph-graded space B with its bilinear and trilinear forms.
/// Trilinear forms are stored once per cyclic orbit of the class triple.
class GraphFrobeniusData {
public:
    struct Space {
        GraphClass cls;
        std::vector<std::string> basis;
    };

    void add_space(const GraphClass& c, std::vector<std::string> basis_labels);
    void set_form2(const GraphClass& sigma, Mat m);
    void set_form3(const GraphClass& s1, const GraphClass& s2, const GraphClass& s3,
                   std::vector<Rat> flat);  // flat[(i*d2 + j)*d3 + k]

    bool has_space(const GraphClass& c) const;
    const Space& space(const GraphClass& c) const;  // throws MissingClass
    std::size_t dim(const GraphClass& c) const;
    std::vector<GraphClass> class_list() const;

    bool has_form2(const GraphClass& sigma) const;
    const Mat& form2(const GraphClass& sigma) const;  // throws MissingClass
    Rat pair(const GraphClass& sigma, const Vec& x, const Vec& y) const;

    /// Casimir coefficients C with K_sigma = sum C_ij b_i^sigma (x) b_j^sigma*;
    /// C = (F^T)^-1 for F = form2(sigma).
    Mat casimir_coeffs(const GraphClass& sigma) const;

    bool has_form3(const GraphClass& s1, const GraphClass& s2, const GraphClass& s3) const;
    Rat form3(const GraphClass& s1, const GraphClass& s2, const GraphClass& s3, std::size_t i,
              std::size_t j, std::size_t k) const;
    Rat tri(const GraphClass& s1, const GraphClass& s2, const GraphClass& s3, const Vec& x1,
            const Vec& x2, const Vec& x3) const;

private:
    struct TriKey {
        std::string key;
        int rot;  // stored tuple = input rotated left by rot
    };
    TriKey tri_key(const GraphClass& s1, const GraphClass& s2, const GraphClass& s3) const;

    std::map<std::string, Space> spaces_;
    std::map<std::string, Mat> form2_;
    struct TriForm {
        std::array<std::size_t, 3> dims;
        std::vector<Rat> flat;
    };
    std::map<std::string, TriForm> form3_;
};

/// Checks the four graph-Frobenius axioms over the stored working set,
/// including the crossing identity for every composable quadruple.
Report verify_graph_frobenius(const GraphFrobeniusData& b);

/// Structure constants on B_{I_s} solved from (x1 x2, x3) = (x1, x2, x3).
std::vector<std::vector<Vec>> product_from_forms(const GraphFrobeniusData& b,
                                                 const GraphClass& i_s);

/// Solves 1 * b_j = b_j for the unit of B_{I_s}; throws NoUnit.
Vec find_unit(const GraphFrobeniusData& b, const GraphClass& i_s);

/// A complete theory: closed sectors A^s, the graded B with forms,
/// involutions, units, U elements and the phi representations.
struct GraphCardyBundle {
    std::vector<std::string> palette;  // sorted colors
    std::map<std::string, EquippedFrobenius> A;
    GraphFrobeniusData B;
    std::map<std::string, Vec> U;              // per color
    std::map<std::string, Vec> unitB;          // unit of B_{I_s}, per color
    std::map<std::string, Mat> starB;          // per class enc: B_sigma -> B_sigma*
    // phi[(s, sigma enc)][i] = operator of the i-th A^s basis element on B_sigma;
    // present only when sigma has an s-edge.
    std::map<std::pair<std::string, std::string>, std::vector<Mat>> phi;

    bool has_phi(const std::string& s, const GraphClass& sigma) const;
    Mat phi_op(const std::string& s, const GraphClass& sigma, const Vec& a) const;
    Vec star_of(const GraphClass& sigma, const Vec& x) const;

    Vec phiB(const std::string& s, const Vec& a) const;       // phi^s(a)
    Vec phi_star(const std::string& s, const Vec& b) const;   // adjoint of phi^s
    Rat lB(const std::string& s, const Vec& x) const;         // (x, 1_B)
    /// B^s = B_{I_s} as an equipped Frobenius algebra.
    EquippedFrobenius open_algebra(const std::string& s) const;
};

Report verify_cardy(const GraphCardyBundle& bundle, const std::string& s);
Report verify_graph_cardy(const GraphCardyBundle& bundle);

}  // namespace foamtft
