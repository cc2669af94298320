#pragma once

#include "l2a/matched.hpp"

namespace l2a {

// Exact inverse of a constant rational matrix; throws std::invalid_argument
// if the matrix is singular.
std::vector<std::vector<Rational>> invert_rational_matrix(const std::vector<std::vector<Rational>>& m);

/// Courant algebroid data with pairing in a vector bundle V. The scalar case
/// stores V as the trivial rank-1 bundle and sets the `scalar` flag, which
/// additionally enables rho o rho^* = 0 and the Lie-derivative/contraction
/// identities in check_courant.
///
/// The bracket is a non-skew symbol table; its extension to polynomial
/// sections uses the Leibniz rule implied by (CA2) in the upper slot and the
/// (CA3)-induced rule in the lower slot, whose D(f v) - f D(v) correction is
/// tabulated in `zeta` (zeta[a][k] pairs every frame e to (rho(e) x_a) v_k).
struct CourantData {
    Bundle e;
    Anchor rho;
    bool scalar = true;
    Bundle v;                                             // scalar_bundle(n) in the scalar case
    std::vector<std::vector<std::vector<Poly>>> pairing;  // [i][j] -> V components
    std::vector<std::vector<std::vector<Poly>>> rho_tilde;  // [e frame][v frame] -> V components
    std::vector<std::vector<std::vector<Poly>>> bracket;    // [i][j][k]
    std::vector<Section> d0;                // D(v_k), one E-section per V frame
    std::vector<std::vector<Section>> zeta;  // [coordinate a][v frame k] -> E-section

    void validate_structure() const;

    Section pairing_eval(const Section& u, const Section& w) const;  // in V
    Section rho_tilde_apply(const Section& u, const Section& vs) const;  // derivation on Gamma(V)
    Section dmap(const Section& vs) const;                               // D: Gamma(V) -> Gamma(E)
    Section bracket_frames(int i, int j) const;
    Section bracket_eval(const Section& u, const Section& w) const;

    // Gram matrix as constant rationals; throws if non-constant.
    std::vector<std::vector<Rational>> constant_gram() const;
    // beta^{-1}: E^* -> E via the pairing (scalar case, constant Gram).
    Section raise(const Covector& c) const;

    bool same_structure(const CourantData& other) const;  // tables only, labels ignored
};

struct CheckCourantOptions {
    int random_triples = 0;
    std::uint64_t seed = 1;
    int max_degree = 2;  // degree of random section coefficients
};

// (CA1)-(CA4) on all frame tuples plus `random_triples` random polynomial
// section triples (witness {-1, t, ...} marks trial t). Scalar case also
// checks rho o rho^* = 0 ("rho_rho_star") and the two bracket identities on
// coordinate 1-forms ("lemma_L", "lemma_i").
Report check_courant(const CourantData& c, const CheckCourantOptions& opt = {});

// The standard Courant algebroid TM (+) T^*M over a polynomial chart.
CourantData standard_courant(const Chart& chart);

// Bicrossproduct Courant algebroid A (+) A^* of a pair of Lie algebroids in
// duality. Throws std::invalid_argument if either input fails
// check_lie_algebroid or the bundles are not dual to each other.
CourantData drinfeld_double(const LieAlgebroidData& a, const LieAlgebroidData& astar);

// A quadratic Lie algebra as a Courant algebroid over a point.
CourantData quadratic_lie_algebra(const LieAlgebroidData& a, const std::vector<std::vector<Rational>>& gram);

// The adjoint split Lie 2-algebroid of a scalar Courant algebroid and a
// metric connection nabla: X(M) x Gamma(E) -> Gamma(E). Throws on a
// non-metric connection or an invalid Courant algebroid.
SplitLie2Data adjoint_lie2(const CourantData& c, const LinearConnection& conn);

// Basic curvature R^bas(e_i, e_j) applied to the coordinate field d/dx_a,
// computed from the footnote expansion (Delta-bracket route) instead of the
// displayed equation; used as a cross-check of adjoint_lie2.
Section basic_curvature_footnote(const CourantData& c, const LinearConnection& conn, int i, int j, int a);
Section basic_curvature_displayed(const CourantData& c, const LinearConnection& conn, int i, int j, int a);

// The fat Courant algebroid Q (+) Hom(B, Q^*) with pairing in B^*.
// Requires d to pass check_split_lie2.
CourantData fat_courant(const SplitLie2Data& d);

// Frame identification of fat_courant(d) induced by a change of splitting:
// (q, psi) -> (q, psi + sign * phi(q, .)). Transports every table of `fat`
// through the identification; fat_courant(shift_splitting(d, phi)) equals
// the transport of fat_courant(d) with sign = -1.
CourantData fat_transport(const CourantData& fat, const SplitLie2Data& d, const VForm& phi, int sign);

}  // namespace l2a
