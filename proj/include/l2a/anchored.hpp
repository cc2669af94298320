#pragma once

#include "l2a/bundles.hpp"
#include "l2a/report.hpp"

namespace l2a {

/// Anchor of a bundle: a bundle map into the tangent frame of the chart,
/// rho(e_i) = sum_a mat[i][a] d/dx_a. Over a point the matrix is rank x 0.
struct Anchor {
    Bundle bundle;
    std::vector<std::vector<Poly>> mat;  // [frame index][coordinate]

    static Anchor zero(const Bundle& b);

    // Vector field of a section, as chart components.
    std::vector<Poly> vector_field(const Section& s) const;
    // rho(s) applied to a function.
    Poly derive(const Section& s, const Poly& f) const;
    Poly derive_frame(int i, const Poly& f) const;
    // Pullback of a chart 1-form (components theta_a dx_a) to a covector.
    Section pullback(const std::vector<Poly>& theta) const;
    // rho^* d f.
    Section pullback_d(const Poly& f) const;

    friend bool operator==(const Anchor& a, const Anchor& b) { return a.bundle == b.bundle && a.mat == b.mat; }
};

// Lie bracket of two chart vector fields.
std::vector<Poly> vf_bracket(int dim, const std::vector<Poly>& x, const std::vector<Poly>& y);

/// Bracket symbol table C[i][j][k] with the canonical Leibniz extension, so
/// the Leibniz identity holds by construction. The skew flag declares intent;
/// whether the table actually is skew is verified by the checkers.
struct DullBracket {
    Anchor anchor;
    std::vector<std::vector<std::vector<Poly>>> symbols;  // [i][j][k]
    bool skew = false;

    static DullBracket zero(const Anchor& a, bool skew = true);

    Section eval(const Section& q1, const Section& q2) const;
    Section eval_frames(int i, int j) const;
    bool table_is_skew() const;

    friend bool operator==(const DullBracket& a, const DullBracket& b) {
        return a.anchor == b.anchor && a.symbols == b.symbols && a.skew == b.skew;
    }
};

/// Dorfman connection symbol table D[i][j][k]; extension follows the two
/// defining rules (derivation over rho(q), and the rho^* df correction in the
/// lower slot). The third Dorfman axiom is not automatic and is checked by
/// check_anchored_compat.
struct DorfmanConnection {
    Anchor anchor;  // on Q; the connection acts on sections of Q^*
    std::vector<std::vector<std::vector<Poly>>> symbols;

    static DorfmanConnection zero(const Anchor& a);

    Covector eval(const Section& q, const Covector& tau) const;
    Covector eval_frames(int i, int j) const;

    friend bool operator==(const DorfmanConnection& a, const DorfmanConnection& b) {
        return a.anchor == b.anchor && a.symbols == b.symbols;
    }
};

// Duality: <[[q1,q2]], tau> = rho(q1)<q2,tau> - <q2, Delta_{q1} tau>.
// On symbol tables this is C[i][j][k] = -D[i][k][j] and back; an involution.
DorfmanConnection dualize_pair(const DullBracket& db);
DullBracket dualize_pair(const DorfmanConnection& dc, bool skew_flag = false);

// R_Delta(q1,q2) tau = (Delta_q1 Delta_q2 - Delta_q2 Delta_q1 - Delta_[[q1,q2]]) tau.
Covector dorfman_curvature(const DorfmanConnection& dc, const Section& q1, const Section& q2, const Covector& tau);

// Leibniz-form Jacobiator: [[ [[q1,q2]], q3 ]] + [[q2, [[q1,q3]] ]] - [[q1, [[q2,q3]] ]].
Section jacobiator(const DullBracket& db, const Section& q1, const Section& q2, const Section& q3);

/// Linear connection of an anchored bundle Q on a module bundle:
/// tensorial in the Q slot, Leibniz over rho_Q(q) in the module slot.
struct LinearConnection {
    Anchor anchor;  // of the acting bundle
    Bundle module;
    std::vector<std::vector<std::vector<Poly>>> symbols;  // [acting i][module j][module k]

    static LinearConnection zero(const Anchor& a, const Bundle& module);

    Section eval(const Section& q, const Section& b) const;
    Section eval_frame(int i, const Section& b) const;
    // Dual connection on the dual module: <nabla*_q beta, b> = rho(q)<beta,b> - <beta, nabla_q b>.
    LinearConnection dual() const;

    friend bool operator==(const LinearConnection& a, const LinearConnection& b) {
        return a.anchor == b.anchor && a.module == b.module && a.symbols == b.symbols;
    }
};

// R_nabla(q1,q2) b, with the [[q1,q2]] term taken from the supplied bracket.
Section conn_curvature(const LinearConnection& cn, const DullBracket& db, const Section& q1, const Section& q2,
                       const Section& b);

// d_nabla on module-valued forms; needs the dull bracket for the [[q_i,q_j]] terms.
VForm covariant_differential(const LinearConnection& cn, const DullBracket& db, const VForm& f);

// Scalar forms are forms valued in this rank-1 bundle; the trivial connection
// on it acts as rho(q) on coefficients, which makes covariant_differential
// reduce to the Koszul differential of the dull bracket.
Bundle scalar_bundle(int chart_dim);
LinearConnection scalar_connection(const Anchor& a);
VForm scalar_vform(int arity, const Bundle& arg);

// Pairing of a W-valued form with a section of W^*, yielding a scalar form.
VForm vform_pair_value(const VForm& f, const Section& w_dual);

// The operator sending a scalar k-form eta to the Hom-augmented (k-1)-form
// (partial eta)(q_1..q_{k-1}) = sum_a eta(e_a, q_1..q_{k-1}) * phi(eps_a),
// for a bundle map phi on Q^*; values land in phi's target.
VForm vform_lower_scalar(const VForm& eta, const HomField& phi);

// Anchor compatibility rho[[qi,qj]] = [rho qi, rho qj] on frames, and the
// third Dorfman axiom Delta_q rho^* dx_a = rho^* d(rho(q) x_a) on frames and
// chart coordinates. Frames and coordinates suffice: both identities have the
// same Leibniz anomaly on each side under the canonical extensions.
Report check_anchored_compat(const DullBracket& db, const DorfmanConnection& dc);

}  // namespace l2a
