#pragma once

#include <optional>

#include "l2a/courant.hpp"

namespace l2a {

enum class InstanceKind { SplitLie2, TwoRep, MatchedPair, Courant, Morphism, Shift, LieAlgebroid };

std::string kind_name(InstanceKind k);
InstanceKind kind_from_name(const std::string& s);

/// One loadable unit of work: a kind tag plus the matching payload.
struct Instance {
    InstanceKind kind = InstanceKind::SplitLie2;
    std::string name;
    std::uint64_t seed = 0;

    SplitLie2Data split_lie2;
    TwoRepData two_rep;
    MatchedPairData matched_pair;
    CourantData courant;
    Morphism morphism;
    VForm shift_phi;
    LieAlgebroidData lie_algebroid;

    // Optional companion data: a metric connection shipped with a courant
    // instance for the adjoint construction, symbols[a][i][j].
    std::optional<std::vector<std::vector<std::vector<Poly>>>> metric_connection;
};

}  // namespace l2a
