#pragma once

#include "l2a/instance.hpp"
#include "l2a/prng.hpp"

namespace l2a {

// --- random building blocks --------------------------------------------------

Section random_section(Rng& rng, const Bundle& b, int max_deg);
// Arbitrary symbol table; anchor random when requested, zero otherwise.
DullBracket random_table_bracket(Rng& rng, int rank, int chart_dim, bool random_anchor);
LinearConnection random_connection(Rng& rng, const Anchor& a, const Bundle& module, int max_deg);
VForm random_two_form(Rng& rng, const Bundle& q, const Bundle& value_dual_b, int max_deg);

// --- catalog structures --------------------------------------------------------

DullBracket so3_bracket();
LieAlgebroidData so3_algebroid();
DullBracket tangent_bracket(int dim);
LieAlgebroidData tangent_algebroid(int dim);
LieAlgebroidData abelian_algebroid(const Bundle& b);

SplitLie2Data string_lie2();   // so(3), rank-1 side bundle, Cartan 3-form
SplitLie2Data so3_b0_lie2();   // so(3) with a rank-0 side bundle

// The 2-representation of the tangent algebroid on Id: E -> E given by a
// connection and its curvature; any symbol table gives a valid instance.
TwoRepData tangent_two_rep(int dim, int rank, const std::vector<std::vector<std::vector<Poly>>>& gamma);
TwoRepData tangent_two_rep_random(Rng& rng, int dim, int rank, int max_deg);

MatchedPairData sl2_matched_pair();
MatchedPairData zero_matched_pair();

// A matched pair failing exactly (Mk) among M1..M7, with both induced
// 2-representations still valid; `base` is the unmutated (valid) instance.
struct MatchedMutant {
    std::string failing;  // "M1".."M7"
    MatchedPairData base;
    MatchedPairData mutant;
};
MatchedMutant matched_mutant(int k);

Instance catalog_instance(const std::string& name);
std::vector<std::string> catalog_names();

// --- seeded generation ---------------------------------------------------------

struct GenOptions {
    std::string kind;
    std::uint64_t seed = 1;
    int chart_dim = 1;
    int rank = 2;
    int rank_b = 1;
    std::string mutate;  // table name; empty = no mutation
};

// Kinds: lie_algebroid, two_rep, matched_pair, rep_lie2, semidirect, bicross,
// shifted, standard_courant, drinfeld, shift. Bounds: chart_dim <= 3,
// ranks <= 6. Deterministic in (kind, seed, sizes, mutate).
Instance gen_instance(const GenOptions& opt);

}  // namespace l2a
