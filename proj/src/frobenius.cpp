#include "foamtft/frobenius.hpp"

#include <algorithm>
#include <array>
#include <sstream>

namespace foamtft {

// ---------------------------------------------------------------------------
// EquippedFrobenius
// ---------------------------------------------------------------------------

Vec EquippedFrobenius::mulv(const Vec& x, const Vec& y) const {
    Vec r = zero_vec(dim());
    for (std::size_t i = 0; i < dim(); ++i) {
        if (x[i] == 0) continue;
        for (std::size_t j = 0; j < dim(); ++j) {
            if (y[j] == 0) continue;
            Rat c = x[i] * y[j];
            for (std::size_t k = 0; k < dim(); ++k) r[k] += c * mul[i][j][k];
        }
    }
    return r;
}

Rat EquippedFrobenius::lv(const Vec& x) const {
    Rat r = 0;
    for (std::size_t i = 0; i < dim(); ++i) r += l[i] * x[i];
    return r;
}

Vec EquippedFrobenius::starv(const Vec& x) const { return star * x; }

Mat EquippedFrobenius::pairing() const {
    Mat f(dim(), dim());
    for (std::size_t i = 0; i < dim(); ++i)
        for (std::size_t j = 0; j < dim(); ++j)
            f(i, j) = lv(mulv(unit_vec(dim(), i), unit_vec(dim(), j)));
    return f;
}

Mat EquippedFrobenius::pairing_inverse() const {
    try {
        return pairing().inverse();
    } catch (const SingularMatrix&) {
        throw SingularPairing("the pairing l(xy) is degenerate");
    }
}

Vec EquippedFrobenius::casimir() const {
    Mat fi = pairing_inverse();
    Vec k = zero_vec(dim());
    for (std::size_t i = 0; i < dim(); ++i)
        for (std::size_t j = 0; j < dim(); ++j) {
            if (fi(i, j) == 0) continue;
            Vec p = mulv(unit_vec(dim(), i), unit_vec(dim(), j));
            for (std::size_t m = 0; m < dim(); ++m) k[m] += fi(i, j) * p[m];
        }
    return k;
}

Vec EquippedFrobenius::twisted_casimir() const {
    Mat fi = pairing_inverse();
    Vec k = zero_vec(dim());
    for (std::size_t i = 0; i < dim(); ++i)
        for (std::size_t j = 0; j < dim(); ++j) {
            if (fi(i, j) == 0) continue;
            Vec p = mulv(unit_vec(dim(), i), starv(unit_vec(dim(), j)));
            for (std::size_t m = 0; m < dim(); ++m) k[m] += fi(i, j) * p[m];
        }
    return k;
}

Report verify_equipped(const EquippedFrobenius& f) {
    std::size_t n = f.dim();
    if (f.mul.size() != n || f.unit.size() != n || f.l.size() != n || f.star.rows() != n ||
        f.star.cols() != n)
        throw DimensionMismatch("structure arrays do not match the basis size");
    for (const auto& row : f.mul) {
        if (row.size() != n) throw DimensionMismatch("mul table not square");
        for (const auto& v : row)
            if (v.size() != n) throw DimensionMismatch("mul entry has wrong dimension");
    }

    Report rep;
    auto e = [&](std::size_t i) { return unit_vec(n, i); };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                if (f.mulv(f.mulv(e(i), e(j)), e(k)) != f.mulv(e(i), f.mulv(e(j), e(k)))) {
                    rep.fail("associativity fails at basis triple (" + std::to_string(i) + "," +
                             std::to_string(j) + "," + std::to_string(k) + ")");
                    goto assoc_done;
                }
assoc_done:
    for (std::size_t i = 0; i < n; ++i) {
        if (f.mulv(f.unit, e(i)) != e(i) || f.mulv(e(i), f.unit) != e(i)) {
            rep.fail("unit fails at basis element " + std::to_string(i));
            break;
        }
    }
    if (!f.pairing().invertible()) rep.fail("degenerate pairing l(xy)");
    for (std::size_t i = 0; i < n; ++i)
        if (f.lv(f.starv(e(i))) != f.lv(e(i))) {
            rep.fail("l(x*) != l(x) at basis element " + std::to_string(i));
            break;
        }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (f.starv(f.mulv(e(i), e(j))) != f.mulv(f.starv(e(j)), f.starv(e(i)))) {
                rep.fail("(xy)* != y*x* at basis pair (" + std::to_string(i) + "," +
                         std::to_string(j) + ")");
                goto anti_done;
            }
anti_done:
    if (f.star * f.star != Mat::identity(n)) rep.fail("involution is not of order 2");
    return rep;
}

// ---------------------------------------------------------------------------
// GraphFrobeniusData
// ---------------------------------------------------------------------------

void GraphFrobeniusData::add_space(const GraphClass& c, std::vector<std::string> basis_labels) {
    spaces_[c.enc()] = Space{c, std::move(basis_labels)};
}

void GraphFrobeniusData::set_form2(const GraphClass& sigma, Mat m) {
    form2_[sigma.enc()] = std::move(m);
}

GraphFrobeniusData::TriKey GraphFrobeniusData::tri_key(const GraphClass& s1, const GraphClass& s2,
                                                       const GraphClass& s3) const {
    std::array<std::string, 3> e = {s1.enc(), s2.enc(), s3.enc()};
    int best = 0;
    auto cat = [&](int r) { return e[r] + "|" + e[(r + 1) % 3] + "|" + e[(r + 2) % 3]; };
    for (int r = 1; r < 3; ++r)
        if (cat(r) < cat(best)) best = r;
    return {cat(best), best};
}

void GraphFrobeniusData::set_form3(const GraphClass& s1, const GraphClass& s2,
                                   const GraphClass& s3, std::vector<Rat> flat) {
    std::array<std::size_t, 3> d = {dim(s1), dim(s2), dim(s3)};
    if (flat.size() != d[0] * d[1] * d[2])
        throw DimensionMismatch("trilinear form entry count mismatch");
    TriKey tk = tri_key(s1, s2, s3);
    std::array<std::size_t, 3> sd = {d[tk.rot % 3], d[(tk.rot + 1) % 3], d[(tk.rot + 2) % 3]};
    std::vector<Rat> stored(flat.size());
    std::array<std::size_t, 3> idx;
    for (idx[0] = 0; idx[0] < d[0]; ++idx[0])
        for (idx[1] = 0; idx[1] < d[1]; ++idx[1])
            for (idx[2] = 0; idx[2] < d[2]; ++idx[2]) {
                std::size_t a = idx[tk.rot % 3], b = idx[(tk.rot + 1) % 3],
                            c = idx[(tk.rot + 2) % 3];
                stored[(a * sd[1] + b) * sd[2] + c] =
                    flat[(idx[0] * d[1] + idx[1]) * d[2] + idx[2]];
            }
    form3_[tk.key] = TriForm{sd, std::move(stored)};
}

bool GraphFrobeniusData::has_space(const GraphClass& c) const {
    return spaces_.count(c.enc()) != 0;
}

const GraphFrobeniusData::Space& GraphFrobeniusData::space(const GraphClass& c) const {
    auto it = spaces_.find(c.enc());
    if (it == spaces_.end()) throw MissingClass("class outside the working set: " + c.enc());
    return it->second;
}

std::size_t GraphFrobeniusData::dim(const GraphClass& c) const { return space(c).basis.size(); }

std::vector<GraphClass> GraphFrobeniusData::class_list() const {
    std::vector<GraphClass> r;
    for (const auto& [k, s] : spaces_) r.push_back(s.cls);
    return r;
}

bool GraphFrobeniusData::has_form2(const GraphClass& sigma) const {
    return form2_.count(sigma.enc()) != 0;
}

const Mat& GraphFrobeniusData::form2(const GraphClass& sigma) const {
    auto it = form2_.find(sigma.enc());
    if (it == form2_.end()) throw MissingClass("no bilinear form for class " + sigma.enc());
    return it->second;
}

Rat GraphFrobeniusData::pair(const GraphClass& sigma, const Vec& x, const Vec& y) const {
    const Mat& m = form2(sigma);
    Rat r = 0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (x[i] == 0) continue;
        for (std::size_t j = 0; j < m.cols(); ++j) r += x[i] * m(i, j) * y[j];
    }
    return r;
}

Mat GraphFrobeniusData::casimir_coeffs(const GraphClass& sigma) const {
    try {
        return form2(sigma).transposed().inverse();
    } catch (const SingularMatrix&) {
        throw SingularPairing("degenerate bilinear form on class " + sigma.enc());
    }
}

bool GraphFrobeniusData::has_form3(const GraphClass& s1, const GraphClass& s2,
                                   const GraphClass& s3) const {
    return form3_.count(tri_key(s1, s2, s3).key) != 0;
}

Rat GraphFrobeniusData::form3(const GraphClass& s1, const GraphClass& s2, const GraphClass& s3,
                              std::size_t i, std::size_t j, std::size_t k) const {
    TriKey tk = tri_key(s1, s2, s3);
    auto it = form3_.find(tk.key);
    if (it == form3_.end())
        throw MissingClass("no trilinear form for (" + s1.enc() + ", " + s2.enc() + ", " +
                           s3.enc() + ")");
    std::array<std::size_t, 3> idx = {i, j, k};
    std::size_t a = idx[tk.rot % 3], b = idx[(tk.rot + 1) % 3], c = idx[(tk.rot + 2) % 3];
    const TriForm& f = it->second;
    return f.flat[(a * f.dims[1] + b) * f.dims[2] + c];
}

Rat GraphFrobeniusData::tri(const GraphClass& s1, const GraphClass& s2, const GraphClass& s3,
                            const Vec& x1, const Vec& x2, const Vec& x3) const {
    Rat r = 0;
    for (std::size_t i = 0; i < x1.size(); ++i) {
        if (x1[i] == 0) continue;
        for (std::size_t j = 0; j < x2.size(); ++j) {
            if (x2[j] == 0) continue;
            for (std::size_t k = 0; k < x3.size(); ++k) {
                if (x3[k] == 0) continue;
                r += x1[i] * x2[j] * x3[k] * form3(s1, s2, s3, i, j, k);
            }
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// verify_graph_frobenius
// ---------------------------------------------------------------------------

Report verify_graph_frobenius(const GraphFrobeniusData& b) {
    Report rep;
    auto classes = b.class_list();

    for (const auto& c : classes) {
        GraphClass cd = involute(c);
        if (!b.has_space(cd)) {
            rep.fail("working set not closed under involution at " + c.enc());
            continue;
        }
        if (!b.has_form2(c)) {
            rep.fail("missing bilinear form on " + c.enc());
            continue;
        }
        const Mat& m = b.form2(c);
        if (m.rows() != b.dim(c) || m.cols() != b.dim(cd)) {
            rep.fail("bilinear form shape mismatch on " + c.enc());
            continue;
        }
        if (!m.invertible()) rep.fail("degenerate bilinear form on " + c.enc());
        if (b.has_form2(cd) && b.form2(cd) != m.transposed())
            rep.fail("bilinear form on " + c.enc() + " is not the transpose of its dual's");
    }
    if (!rep.ok()) return rep;  // later sweeps assume the basics

    for (const auto& s1 : classes)
        for (const auto& s2 : classes)
            for (const auto& s3 : classes) {
                bool composable = compose({s1, s2, s3}).has_value();
                bool stored = b.has_form3(s1, s2, s3);
                if (composable && !stored)
                    rep.fail("missing trilinear form for composable (" + s1.enc() + ", " +
                             s2.enc() + ", " + s3.enc() + ")");
                if (!composable && stored) {
                    bool nonzero = false;
                    for (std::size_t i = 0; i < b.dim(s1) && !nonzero; ++i)
                        for (std::size_t j = 0; j < b.dim(s2) && !nonzero; ++j)
                            for (std::size_t k = 0; k < b.dim(s3); ++k)
                                if (b.form3(s1, s2, s3, i, j, k) != 0) {
                                    nonzero = true;
                                    break;
                                }
                    if (nonzero)
                        rep.fail("nonzero trilinear form for non-composable (" + s1.enc() +
                                 ", " + s2.enc() + ", " + s3.enc() + ")");
                }
            }
    if (!rep.ok()) return rep;

    // Crossing identity over all composable quadruples.
    for (const auto& s1 : classes)
        for (const auto& s2 : classes)
            for (const auto& s3 : classes)
                for (const auto& s4 : classes) {
                    auto film = compose({s1, s2, s3, s4});
                    if (!film) continue;
                    GraphClass d12 = graph_cut(*film, 0, 2).cut_class;
                    GraphClass d41 = graph_cut(*film, 3, 2).cut_class;
                    for (const auto& d : {d12, d41})
                        if (!b.has_space(d))
                            throw MissingCutClass("cut class " + d.enc() +
                                                  " outside the working set");
                    GraphClass d12d = involute(d12), d41d = involute(d41);
                    std::size_t n1 = b.dim(s1), n2 = b.dim(s2), n3 = b.dim(s3), n4 = b.dim(s4);
                    // Contract both sides as matrix chains: rows and columns
                    // are the flattened outer index pairs.
                    auto tri_left = [&](const GraphClass& a1, const GraphClass& a2,
                                        const GraphClass& a3) {
                        Mat m(b.dim(a1) * b.dim(a2), b.dim(a3));
                        for (std::size_t i = 0; i < b.dim(a1); ++i)
                            for (std::size_t j = 0; j < b.dim(a2); ++j)
                                for (std::size_t k = 0; k < b.dim(a3); ++k)
                                    m(i * b.dim(a2) + j, k) = b.form3(a1, a2, a3, i, j, k);
                        return m;
                    };
                    auto tri_right = [&](const GraphClass& a1, const GraphClass& a2,
                                         const GraphClass& a3) {
                        Mat m(b.dim(a1), b.dim(a2) * b.dim(a3));
                        for (std::size_t i = 0; i < b.dim(a1); ++i)
                            for (std::size_t j = 0; j < b.dim(a2); ++j)
                                for (std::size_t k = 0; k < b.dim(a3); ++k)
                                    m(i, j * b.dim(a3) + k) = b.form3(a1, a2, a3, i, j, k);
                        return m;
                    };
                    Mat lhs = tri_left(s1, s2, d12) * b.casimir_coeffs(d12) *
                              tri_right(d12d, s3, s4);
                    Mat rhs = tri_left(s4, s1, d41) * b.casimir_coeffs(d41) *
                              tri_right(d41d, s2, s3);
                    bool bad = false;
                    for (std::size_t i1 = 0; i1 < n1 && !bad; ++i1)
                        for (std::size_t i2 = 0; i2 < n2 && !bad; ++i2)
                            for (std::size_t i3 = 0; i3 < n3 && !bad; ++i3)
                                for (std::size_t i4 = 0; i4 < n4 && !bad; ++i4) {
                                    const Rat& l = lhs(i1 * n2 + i2, i3 * n4 + i4);
                                    const Rat& r = rhs(i4 * n1 + i1, i2 * n3 + i3);
                                    if (l != r) {
                                        std::ostringstream os;
                                        os << "crossing identity fails on (" << s1.enc() << ", "
                                           << s2.enc() << ", " << s3.enc() << ", " << s4.enc()
                                           << ") at basis (" << i1 << "," << i2 << "," << i3
                                           << "," << i4 << "): " << rat_str(l)
                                           << " != " << rat_str(r);
                                        rep.fail(os.str());
                                        bad = true;
                                    }
                                }
                }
    return rep;
}

// ---------------------------------------------------------------------------
// Algebra structure on B_{I_s}
// ---------------------------------------------------------------------------

std::vector<std::vector<Vec>> product_from_forms(const GraphFrobeniusData& b,
                                                 const GraphClass& i_s) {
    std::size_t n = b.dim(i_s);
    Mat mt_inv = b.form2(i_s).transposed().inverse();
    std::vector<std::vector<Vec>> mul(n, std::vector<Vec>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Vec v(n);
            for (std::size_t k = 0; k < n; ++k) v[k] = b.form3(i_s, i_s, i_s, i, j, k);
            mul[i][j] = mt_inv * v;
        }
    return mul;
}

Vec find_unit(const GraphFrobeniusData& b, const GraphClass& i_s) {
    std::size_t n = b.dim(i_s);
    auto mul = product_from_forms(b, i_s);
    // Two-sided unit: u . b_j = b_j and b_j . u = b_j.
    Mat a(2 * n * n, n);
    Vec rhs(2 * n * n, Rat(0));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t i = 0; i < n; ++i) {
                a(j * n + r, i) = mul[i][j][r];
                a(n * n + j * n + r, i) = mul[j][i][r];
            }
            rhs[j * n + r] = (j == r) ? 1 : 0;
            rhs[n * n + j * n + r] = (j == r) ? 1 : 0;
        }
    auto u = solve_rect(a, rhs);
    if (!u) throw NoUnit("B_{I_s} has no unit for " + i_s.enc());
    return *u;
}

// ---------------------------------------------------------------------------
// GraphCardyBundle
// ---------------------------------------------------------------------------

bool GraphCardyBundle::has_phi(const std::string& s, const GraphClass& sigma) const {
    return phi.count({s, sigma.enc()}) != 0;
}

Mat GraphCardyBundle::phi_op(const std::string& s, const GraphClass& sigma, const Vec& a) const {
    auto it = phi.find({s, sigma.enc()});
    if (it == phi.end())
        throw MissingClass("no phi operators for color " + s + " on " + sigma.enc());
    std::size_t n = B.dim(sigma);
    Mat r(n, n);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        const Mat& p = it->second[i];
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y) r(x, y) += a[i] * p(x, y);
    }
    return r;
}

Vec GraphCardyBundle::star_of(const GraphClass& sigma, const Vec& x) const {
    auto it = starB.find(sigma.enc());
    if (it == starB.end()) throw MissingClass("no involution stored for " + sigma.enc());
    return it->second * x;
}

Vec GraphCardyBundle::phiB(const std::string& s, const Vec& a) const {
    return phi_op(s, segment_class(s), a) * unitB.at(s);
}

Rat GraphCardyBundle::lB(const std::string& s, const Vec& x) const {
    return B.pair(segment_class(s), x, unitB.at(s));
}

Vec GraphCardyBundle::phi_star(const std::string& s, const Vec& b) const {
    const EquippedFrobenius& a = A.at(s);
    GraphClass i_s = segment_class(s);
    Vec rhs(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        rhs[i] = B.pair(i_s, phiB(s, unit_vec(a.dim(), i)), b);
    return a.pairing().solve(rhs);
}

EquippedFrobenius GraphCardyBundle::open_algebra(const std::string& s) const {
    GraphClass i_s = segment_class(s);
    EquippedFrobenius eb;
    eb.basis = B.space(i_s).basis;
    eb.mul = product_from_forms(B, i_s);
    eb.unit = unitB.at(s);
    eb.l.resize(eb.dim());
    for (std::size_t i = 0; i < eb.dim(); ++i)
        eb.l[i] = B.pair(i_s, unit_vec(eb.dim(), i), eb.unit);
    eb.star = starB.at(i_s.enc());
    return eb;
}

// ---------------------------------------------------------------------------
// Cardy verification
// ---------------------------------------------------------------------------

Report verify_cardy(const GraphCardyBundle& bundle, const std::string& s) {
    Report rep;
    auto it = bundle.A.find(s);
    if (it == bundle.A.end()) {
        rep.fail("no closed algebra A^" + s);
        return rep;
    }
    const EquippedFrobenius& a = it->second;
    std::size_t na = a.dim();
    auto ea = [&](std::size_t i) { return unit_vec(na, i); };

    {
        Report ra = verify_equipped(a);
        for (auto& f : ra.failures) rep.fail("A^" + s + ": " + f);
    }
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < na; ++j)
            if (a.mulv(ea(i), ea(j)) != a.mulv(ea(j), ea(i))) {
                rep.fail("A^" + s + " is not commutative");
                goto comm_done;
            }
comm_done:;

    GraphClass i_s = segment_class(s);
    if (!bundle.B.has_space(i_s)) {
        rep.fail("B_{I_" + s + "} missing from the working set");
        return rep;
    }
    EquippedFrobenius eb = bundle.open_algebra(s);
    std::size_t nb = eb.dim();
    auto e = [&](std::size_t i) { return unit_vec(nb, i); };
    {
        Report rb = verify_equipped(eb);
        for (auto& f : rb.failures) rep.fail("B^" + s + ": " + f);
    }
    if (eb.pairing() != bundle.B.form2(i_s))
        rep.fail("B^" + s + ": l_B(xy) does not reproduce the stored bilinear form");

    // phi^s: homomorphism, unit, centrality, involution compatibility.
    if (bundle.phiB(s, a.unit) != eb.unit) rep.fail("phi^" + s + "(1_A) != 1_B");
    for (std::size_t i = 0; i < na; ++i) {
        Vec pi = bundle.phiB(s, ea(i));
        for (std::size_t j = 0; j < na; ++j)
            if (bundle.phiB(s, a.mulv(ea(i), ea(j))) != eb.mulv(pi, bundle.phiB(s, ea(j)))) {
                rep.fail("phi^" + s + " is not a homomorphism");
                goto hom_done;
            }
    }
hom_done:;
    for (std::size_t i = 0; i < na; ++i) {
        Vec pi = bundle.phiB(s, ea(i));
        for (std::size_t k = 0; k < nb; ++k)
            if (eb.mulv(pi, e(k)) != eb.mulv(e(k), pi)) {
                rep.fail("phi^" + s + "(A) is not central in B^" + s);
                goto center_done;
            }
    }
center_done:;
    for (std::size_t i = 0; i < na; ++i)
        if (bundle.phiB(s, a.starv(ea(i))) != eb.starv(bundle.phiB(s, ea(i)))) {
            rep.fail("phi^" + s + "(x*) != phi^" + s + "(x)*");
            break;
        }
    // phi_{I_s}(a)(b) = phi(a) b.
    for (std::size_t i = 0; i < na; ++i) {
        Mat op = bundle.phi_op(s, i_s, ea(i));
        Vec pi = bundle.phiB(s, ea(i));
        for (std::size_t k = 0; k < nb; ++k)
            if (op * e(k) != eb.mulv(pi, e(k))) {
                rep.fail("phi_{I_s}^" + s + "(a)(b) != phi(a) b");
                goto segact_done;
            }
    }
segact_done:;

    // Cardy trace identity.
    for (std::size_t x = 0; x < nb; ++x)
        for (std::size_t y = 0; y < nb; ++y) {
            Rat trace = 0;
            for (std::size_t k = 0; k < nb; ++k)
                trace += eb.mulv(eb.mulv(e(x), e(k)), e(y))[k];
            Vec px = bundle.phi_star(s, e(x)), py = bundle.phi_star(s, e(y));
            Rat lhs = a.lv(a.mulv(px, py));
            if (lhs != trace) {
                rep.fail("Cardy trace identity fails on B^" + s + " basis pair (" +
                         std::to_string(x) + "," + std::to_string(y) + "): " + rat_str(lhs) +
                         " != " + rat_str(trace));
                goto cardy_done;
            }
        }
cardy_done:;

    // U relations.
    auto uit = bundle.U.find(s);
    if (uit == bundle.U.end()) {
        rep.fail("no U element for color " + s);
    } else {
        const Vec& u = uit->second;
        if (a.mulv(u, u) != a.twisted_casimir())
            rep.fail("U^2 != K_A* for color " + s);
        if (bundle.phiB(s, u) != eb.twisted_casimir())
            rep.fail("phi(U) != K_B* for color " + s);
    }

    // Representation property and bilinear adjointness on every class with
    // an s-edge. (phi_sigma^s with sigma lacking color s is never stored or
    // applied; its vanishing rule is unreachable.)
    for (const auto& sig : bundle.B.class_list()) {
        if (!sig.has_color(s)) continue;
        if (!bundle.has_phi(s, sig)) {
            rep.fail("missing phi operators for color " + s + " on " + sig.enc());
            continue;
        }
        GraphClass sigd = involute(sig);
        for (std::size_t i = 0; i < na; ++i) {
            for (std::size_t j = 0; j < na; ++j) {
                Mat lhs = bundle.phi_op(s, sig, ea(i)) * bundle.phi_op(s, sig, ea(j));
                if (lhs != bundle.phi_op(s, sig, a.mulv(ea(i), ea(j)))) {
                    rep.fail("phi_sigma^" + s + " is not a representation on " + sig.enc());
                    break;
                }
            }
        }
        if (bundle.phi_op(s, sig, a.unit) != Mat::identity(bundle.B.dim(sig)))
            rep.fail("phi_sigma^" + s + "(1) != id on " + sig.enc());
        const Mat& m = bundle.B.form2(sig);
        for (std::size_t i = 0; i < na; ++i) {
            Mat p = bundle.phi_op(s, sig, ea(i));
            Mat q = bundle.phi_op(s, sigd, ea(i));
            if (p.transposed() * m != m * q) {
                rep.fail("bilinear adjointness of phi^" + s + " fails on " + sig.enc());
                break;
            }
        }
    }

    // Trilinear three-slot identity over composable triples, restricted to
    // the slots whose class carries an s-edge.
    auto classes = bundle.B.class_list();
    for (const auto& s1 : classes)
        for (const auto& s2 : classes)
            for (const auto& s3 : classes) {
                if (!compose({s1, s2, s3})) continue;
                std::vector<int> eligible;
                std::array<GraphClass, 3> sig = {s1, s2, s3};
                for (int t = 0; t < 3; ++t)
                    if (sig[t].has_color(s)) eligible.push_back(t);
                if (eligible.size() < 2) continue;
                std::array<std::size_t, 3> d = {bundle.B.dim(s1), bundle.B.dim(s2),
                                                bundle.B.dim(s3)};
                std::vector<Rat> flat(d[0] * d[1] * d[2]);
                for (std::size_t i = 0; i < d[0]; ++i)
                    for (std::size_t j = 0; j < d[1]; ++j)
                        for (std::size_t k = 0; k < d[2]; ++k)
                            flat[(i * d[1] + j) * d[2] + k] =
                                bundle.B.form3(s1, s2, s3, i, j, k);
                // Contract the operator into one slot of the flat form tensor.
                auto contracted = [&](int t, const Mat& op) {
                    std::vector<Rat> out(flat.size());
                    std::array<std::size_t, 3> stride = {d[1] * d[2], d[2], 1};
                    for (std::size_t base = 0; base < flat.size(); ++base) {
                        std::size_t it = (base / stride[t]) % d[t];
                        std::size_t rest = base - it * stride[t];
                        Rat acc = 0;
                        for (std::size_t m = 0; m < d[t]; ++m)
                            if (op(m, it) != 0) acc += op(m, it) * flat[rest + m * stride[t]];
                        out[base] = acc;
                    }
                    return out;
                };
                for (std::size_t ai = 0; ai < na; ++ai) {
                    std::vector<Rat> first;
                    for (int t : eligible) {
                        auto cur = contracted(t, bundle.phi_op(s, sig[t], ea(ai)));
                        if (first.empty()) {
                            first = std::move(cur);
                        } else if (cur != first) {
                            rep.fail("trilinear adjointness of phi^" + s + " fails on (" +
                                     s1.enc() + ", " + s2.enc() + ", " + s3.enc() + ")");
                            break;
                        }
                    }
                }
            }
    return rep;
}

Report verify_graph_cardy(const GraphCardyBundle& bundle) {
    Report rep = verify_graph_frobenius(bundle.B);
    // Involution bookkeeping on every graded piece.
    for (const auto& sig : bundle.B.class_list()) {
        GraphClass sigd = involute(sig);
        std::size_t n = bundle.B.dim(sig);
        bool have = true;
        for (const auto& c : {sig, sigd})
            if (!bundle.starB.count(c.enc())) {
                rep.fail("missing involution on " + c.enc());
                have = false;
            }
        if (!have) continue;
        Mat round = bundle.starB.at(sigd.enc()) * bundle.starB.at(sig.enc());
        if (round != Mat::identity(n)) rep.fail("involution on " + sig.enc() + " not of order 2");
        // (x, y) = (y*, x*) for x in B_sigma, y in B_sigma*.
        std::size_t nd = bundle.B.dim(sigd);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < nd; ++j) {
                Vec x = unit_vec(n, i), y = unit_vec(nd, j);
                if (bundle.B.pair(sig, x, y) !=
                    bundle.B.pair(sig, bundle.star_of(sigd, y), bundle.star_of(sig, x))) {
                    rep.fail("involution is not an isometry on " + sig.enc());
                    goto isom_done;
                }
            }
    isom_done:;
    }
    for (const auto& s : bundle.palette) rep.merge(verify_cardy(bundle, s));
    return rep;
}

}  // namespace foamtft
