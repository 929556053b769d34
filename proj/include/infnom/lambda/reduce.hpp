#pragma once

// Capture-avoiding substitution and the beta, head, weak-head and top
// reduction strategies.

#include <cstddef>
#include <optional>
#include <vector>

#include "infnom/infinite.hpp"
#include "infnom/lambda/term.hpp"
#include "infnom/signature.hpp"

namespace infnom::lambda {

/// m[x := n]. Binders clashing with fv(n) are renamed to
/// fresh_atom(fv(n) + {x} + fv(body)). Lazy parts are substituted lazily.
Term subst(const Term& m, Atom x, const Term& n);
AlphaClass subst(const AlphaClass& m, Atom x, const AlphaClass& n);
/// Corecursive substitution; the result's declared support is
/// (declared(m) - {x}) + declared(n).
InfTerm subst(const InfTerm& m, Atom x, const InfTerm& n);

/// (\x. p) q contracted.
Term contract(const Term& redex);

/// Every one-step reduct, each alpha-class once. Redexes inside unexpanded
/// lazy parts are not enumerated.
std::vector<Term> beta_step(const Term& t);
std::optional<Term> whead_step(const Term& t);
std::optional<Term> head_step(const Term& t);
/// Weak-head normalises the operator within `inner_fuel` steps and
/// contracts if that yields an abstraction. Throws FuelNeeded when the
/// operator neither normalises nor is caught cycling.
std::optional<Term> top_step(const Term& t, std::size_t inner_fuel);

bool is_whnf(const Term& t);
bool is_hnf(const Term& t);
bool is_beta_normal(const Term& t);

enum class Strategy { Head, WeakHead, Top };

struct ReduceOptions {
  enum class CycleCheck {
    /// Diverges only when the current term recurs.
    Exact,
    /// Also when a spine prefix (or, under head reduction, the body below
    /// the lambda prefix) recurs, which forces the same growth forever.
    HeadContext,
  };
  CycleCheck cycle_check = CycleCheck::Exact;
  /// Operator fuel inside one top step; 0 means ten times the outer fuel.
  std::size_t inner_fuel = 0;
  /// Terms above this size stop the run as FuelExhausted.
  std::size_t max_term_size = 1u << 16;
  std::size_t max_term_height = 4096;
};

struct ReductionOutcome {
  enum class Kind { Reached, Diverges, FuelExhausted };
  Kind kind;
  /// The normal form, the recurring term, or the last term reached.
  Term term;
  std::size_t steps;
};

/// Requires fuel >= 1.
ReductionOutcome reduce(const Term& t, Strategy strategy, std::size_t fuel,
                        const ReduceOptions& options = {});

enum class ZeroAnswer { Yes, No, Unknown };
ZeroAnswer is_zero_term(const Term& t, std::size_t fuel);

/// Variable, abstraction, stuck constant, or application with a zero
/// operator. Decided with is_zero_term at the given fuel; Unknown is false.
bool is_tnf(const Term& t, std::size_t fuel);

}  // namespace infnom::lambda
