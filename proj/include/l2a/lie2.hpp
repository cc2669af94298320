#pragma once

#include <optional>

#include "l2a/anchored.hpp"

namespace l2a {

/// Split Lie 2-algebroid data on a pair of bundles (Q, B): anchor on Q, a
/// bundle map l: B^* -> Q, a skew dull bracket on Q, a linear connection of Q
/// on B, and a 3-form on Q with values in B^*. The five axioms are verified
/// by check_split_lie2, not assumed.
struct SplitLie2Data {
    Bundle q;
    Bundle b;
    Anchor rho;          // on q
    HomField l;          // b^* -> q
    DullBracket bracket; // on q, skew flag set
    LinearConnection nabla;  // of q on b
    VForm omega;         // arity 3, args q, values b^*

    // l^*: Q^* -> B, the core anchor.
    HomField partial_b() const { return l.transpose(); }
    DorfmanConnection dorfman() const { return dualize_pair(bracket); }
    LinearConnection nabla_dual() const { return nabla.dual(); }

    // R_omega(q_i, q_j): B -> Q^*, from <i_{q_j} i_{q_i} omega, b>.
    HomField r_omega_frames(int i, int j) const;

    void validate_structure() const;  // bundle/rank coherence only

    friend bool operator==(const SplitLie2Data& a, const SplitLie2Data& b0) {
        return a.q == b0.q && a.b == b0.b && a.rho == b0.rho && a.l == b0.l && a.bracket == b0.bracket &&
               a.nabla == b0.nabla && a.omega == b0.omega;
    }
};

SplitLie2Data zero_split_lie2(int chart_dim, int rank_q, int rank_b);

// Axiom identifiers reported: "skew", "anchor", "rho_l", "i".."v".
Report check_split_lie2(const SplitLie2Data& d);

/// A homogeneous function on the graded manifold Q[-1] (+) B^*[-2]:
/// degree 0 is a chart function, degree 1 a section of Q^*, degree 2 either a
/// section of B (the generator case handled by qfield_apply) or a scalar
/// 2-form on Q.
struct GradedFunction {
    int degree = 0;
    Poly f;            // degree 0
    Covector tau;      // degree 1: section of Q^*
    Section b_part;    // degree 2 generator
    VForm two_form;    // degree 2, scalar 2-form part

    static GradedFunction of_function(Poly f);
    static GradedFunction of_covector(Covector tau);
    static GradedFunction of_section(Section b);
};

// Value of the degree-1 vector field on a homogeneous generator.
struct QFieldImage {
    int input_degree = 0;
    Covector d0_covector;   // degree 0 input: rho^* df
    VForm d1_two_form;      // degree 1: d_Q tau (scalar 2-form)
    Section d1_b_section;   // degree 1: partial_B tau
    VForm d2_one_form;      // degree 2: d_nabla b (1-form valued in B)
    VForm d2_three_form;    // degree 2: -<omega, b> (scalar 3-form)
};

QFieldImage qfield_apply(const SplitLie2Data& d, const GradedFunction& g);

// Verifies Q^2 = 0 on chart coordinates, Q^*-frame covectors and B-frame
// sections. Residuals are grouped by the equivalent axiom of the definition:
//   partialB_rho, anchor, jacobiator, chain, domega, sym, curvature.
Report qfield_square_check(const SplitLie2Data& d);

// Maps a qfield_square_check axiom id to the corresponding axiom id of
// check_split_lie2 ("skew" and "anchor" map to themselves).
std::string qsq_axiom_to_definition(const std::string& qsq_axiom);

// Transforms the data by a change of splitting phi in Omega^2(Q, B^*):
//   bracket' = bracket + l phi(.,.),
//   nabla'_q b = nabla_q b - partial_B <phi(q,.), b>,
//   omega' = omega - d_{bracket, nabla'^*} phi.
// The anchor and l are unchanged.
SplitLie2Data shift_splitting(const SplitLie2Data& d, const VForm& phi);

/// Morphism of split Lie 2-algebroids over a polynomial chart map mu0.
/// mu_q and mu_b are matrices with source-chart Poly entries; target-side
/// data is pulled back through mu0 wherever the conditions need it.
struct Morphism {
    int src_dim = 0;
    int dst_dim = 0;
    int rank_q_src = 0;
    int rank_q_dst = 0;
    int rank_b_src = 0;
    int rank_b_dst = 0;
    std::vector<Poly> mu0;                  // dst_dim polys in src variables
    std::vector<std::vector<Poly>> mu_q;    // rank(Q2) x rank(Q1), src polys
    std::vector<std::vector<Poly>> mu_b;    // rank(B2) x rank(B1), src polys (B1^* -> B2^*)
    VForm mu12;                             // arity 2 on Q1, values: pulled-back B2^*

    void validate_shape() const;
};

Morphism identity_morphism(const SplitLie2Data& d);
Morphism shift_morphism(const SplitLie2Data& d, const VForm& phi);

// Conditions (1)-(5); axiom ids "1".."5".
Report check_morphism(const SplitLie2Data& src, const SplitLie2Data& dst, const Morphism& m);

// outer o inner; shapes must chain.
Morphism compose_morphisms(const Morphism& outer, const Morphism& inner);

}  // namespace l2a
