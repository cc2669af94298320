#pragma once

#include "l2a/lie2.hpp"

namespace l2a {

/// An anchored bundle with a skew bracket table; Lie algebroid validity
/// (skewness, anchor condition, Jacobi) is checked, never assumed.
struct LieAlgebroidData {
    DullBracket bracket;  // carries the anchor and the bundle

    const Bundle& bundle() const { return bracket.anchor.bundle; }
    const Anchor& anchor() const { return bracket.anchor; }

    friend bool operator==(const LieAlgebroidData& a, const LieAlgebroidData& b) { return a.bracket == b.bracket; }
};

Report check_lie_algebroid(const LieAlgebroidData& a);

/// 2-form on an algebroid with values in Hom(hsrc, hdst), stored as one
/// HomField matrix per strictly increasing frame pair.
struct Hom2Form {
    Bundle arg;
    Bundle hsrc;
    Bundle hdst;
    std::map<std::pair<int, int>, std::vector<std::vector<Poly>>> entries;

    static Hom2Form zero(const Bundle& arg, const Bundle& hsrc, const Bundle& hdst);

    HomField at(int i, int j) const;  // sign-expanded
    void set(int i, int j, const HomField& h);
    Hom2Form operator-() const;
    // -(at(i,j)^T) with src/dst dualized: the R of the dual 2-representation.
    Hom2Form negated_transpose() const;
    bool is_zero() const;

    friend bool operator==(const Hom2Form& a, const Hom2Form& b);
};

/// 2-term representation up to homotopy of `algebroid` on partial: E0 -> E1.
struct TwoRepData {
    LieAlgebroidData algebroid;
    Bundle e0;
    Bundle e1;
    HomField partial;          // E0 -> E1
    LinearConnection nabla0;   // on E0
    LinearConnection nabla1;   // on E1
    Hom2Form r;                // values in Hom(E1, E0)

    void validate_structure() const;

    friend bool operator==(const TwoRepData& a, const TwoRepData& b) {
        return a.algebroid == b.algebroid && a.e0 == b.e0 && a.e1 == b.e1 && a.partial == b.partial &&
               a.nabla0 == b.nabla0 && a.nabla1 == b.nabla1 && a.r == b.r;
    }
};

// Axioms: "chain", "curv0", "curv1", "dR" (plus "algebroid:*" prerequisites).
Report check_two_rep(const TwoRepData& t);

// Dual 2-representation (partial^T: E1^* -> E0^*, nabla1^*, nabla0^*, -R^*).
TwoRepData two_rep_dual(const TwoRepData& t);

/// Matched pair: A acts on partial_b: C -> B, B acts on partial_a: C -> A.
struct MatchedPairData {
    LieAlgebroidData a;
    LieAlgebroidData b;
    Bundle c;
    HomField partial_a;  // C -> A
    HomField partial_b;  // C -> B
    LinearConnection nabla_ab;  // A on B
    LinearConnection nabla_ac;  // A on C
    LinearConnection nabla_ba;  // B on A
    LinearConnection nabla_bc;  // B on C
    Hom2Form ra;  // on A, values Hom(B, C)
    Hom2Form rb;  // on B, values Hom(A, C)

    void validate_structure() const;
    TwoRepData a_side() const;  // (partial_b, nabla_ab, nabla_ac, ra)
    TwoRepData b_side() const;  // (partial_a, nabla_ba, nabla_bc, rb)

    friend bool operator==(const MatchedPairData& x, const MatchedPairData& y) {
        return x.a == y.a && x.b == y.b && x.c == y.c && x.partial_a == y.partial_a && x.partial_b == y.partial_b &&
               x.nabla_ab == y.nabla_ab && x.nabla_ac == y.nabla_ac && x.nabla_ba == y.nabla_ba &&
               x.nabla_bc == y.nabla_bc && x.ra == y.ra && x.rb == y.rb;
    }
};

// Axioms "M1".."M7" plus two_rep prerequisites prefixed "2repA:" / "2repB:".
Report check_matched_pair(const MatchedPairData& m);

// The split Lie 2-algebroid on (A (+) B) (+) C built from a matched pair.
SplitLie2Data bicrossproduct(const MatchedPairData& m);

struct ExtractError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Inverse of bicrossproduct for a given contiguous decomposition of Q: the
// first rank_a frame elements span A, the rest span B. Verifies the two
// theorem hypotheses (pure brackets stay in their block; omega vanishes on
// pure triples) and throws ExtractError naming a failing tuple otherwise.
MatchedPairData extract_matched_pair(const SplitLie2Data& d, int rank_a);

// A 2-representation embedded as a matched pair with trivial B-side.
MatchedPairData embed_two_rep(const TwoRepData& t);

// Split Lie 2-algebroid on (A (+) E0^*) with side bundle E1, from a 2-rep.
// Throws std::invalid_argument if check_two_rep fails.
SplitLie2Data semidirect_lie2(const TwoRepData& t);

// Semi-direct extension by a flat representation: l = 0, omega = 0.
// Throws std::invalid_argument on a non-flat rep or invalid algebroid.
SplitLie2Data rep_lie2(const LieAlgebroidData& a, const LinearConnection& rep);

}  // namespace l2a
