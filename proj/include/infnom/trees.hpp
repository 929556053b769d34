#pragma once

// Boehm, Levy-Longo and Berarducci trees, computed lazily node by node.

#include <cstddef>

#include "infnom/infinite.hpp"
#include "infnom/lambda/reduce.hpp"
#include "infnom/lambda/term.hpp"
#include "infnom/signature.hpp"

namespace infnom::trees {

enum class TreeKind { Bohm, LevyLongo, Berarducci };

/// Per-node reduction settings. Divergence is detected with the context
/// check so that head-growing loops resolve to a proven bottom.
struct TreeOptions {
  std::size_t fuel = 256;
  lambda::ReduceOptions reduce = [] {
    lambda::ReduceOptions o;
    o.cycle_check = lambda::ReduceOptions::CycleCheck::HeadContext;
    return o;
  }();
};

/// Nodes whose reduction runs out of fuel become `BotUnknown` leaves.
InfTerm tree(TreeKind kind, const lambda::Term& t, const TreeOptions& options);
InfTerm bt(const lambda::Term& t, std::size_t fuel);
InfTerm llt(const lambda::Term& t, std::size_t fuel);
InfTerm bet(const lambda::Term& t, std::size_t fuel);

enum class NodeStatus { Resolved, Unknown };
/// Unknown iff some node of the truncation is an unknown bottom.
NodeStatus status(const TruncTerm& t);
/// Unknown bottoms replaced by bottoms.
TruncTerm assume_bottom(const TruncTerm& t);

bool in_bt_set(const TruncTerm& t);
bool in_llt_set(const TruncTerm& t);
bool in_bet_set(const TruncTerm& t);
bool in_bt_set(const InfTerm& t, std::size_t depth);
bool in_llt_set(const InfTerm& t, std::size_t depth);
bool in_bet_set(const InfTerm& t, std::size_t depth);

/// Alpha-equality of the depth-bounded trees. Throws Inconclusive when an
/// unknown node on one side is the only obstacle to a verdict.
bool bisim_at(TreeKind kind, const lambda::Term& m, const lambda::Term& n, std::size_t depth,
              std::size_t fuel);
bool bisim_hnf_at(const lambda::Term& m, const lambda::Term& n, std::size_t depth, std::size_t fuel);
bool bisim_whnf_at(const lambda::Term& m, const lambda::Term& n, std::size_t depth, std::size_t fuel);

}  // namespace infnom::trees
