#include "infnom/trees.hpp"

#include <string>
#include <vector>

#include "infnom/errors.hpp"

namespace infnom::trees {

using lambda::ReductionOutcome;
using lambda::Strategy;
using lambda::Term;

namespace {

Term view(const Term& t) { return lambda::expose(t); }

Layer<Term> bottom_layer(bool unknown) {
  return op_layer<Term>(std::string(unknown ? lambda::kBotUnknown : lambda::kBot));
}

/// A term in normal form for the strategy, shown one layer deep.
Layer<Term> plain_layer(const Term& u) {
  switch (u.kind()) {
    case Term::Kind::Var:
      return VarLayer{u.atom()};
    case Term::Kind::Abs:
      return op_layer<Term>(std::string(lambda::kAbs), {{{u.atom()}, u.body()}});
    case Term::Kind::App:
      return op_layer<Term>(std::string(lambda::kApp), {{{}, u.fun()}, {{}, u.arg()}});
    case Term::Kind::Bot:
      return bottom_layer(false);
    case Term::Kind::UnknownBot:
      return bottom_layer(true);
    case Term::Kind::Const:
      return op_layer<Term>(lambda::constant_op(u.name()));
    case Term::Kind::Lazy:
      break;
  }
  return plain_layer(view(u));
}

/// Spine head after stripping leading abstractions when `under_lambda`.
Term head_of(Term u, bool under_lambda) {
  u = view(u);
  if (under_lambda)
    while (u.is(Term::Kind::Abs)) u = view(u.body());
  while (u.is(Term::Kind::App)) u = view(u.fun());
  return u;
}

Layer<Term> tree_step(TreeKind kind, const Term& t, const TreeOptions& opt) {
  Strategy s = kind == TreeKind::Bohm        ? Strategy::Head
               : kind == TreeKind::LevyLongo ? Strategy::WeakHead
                                             : Strategy::Top;
  ReductionOutcome out = lambda::reduce(t, s, opt.fuel, opt.reduce);
  if (out.kind == ReductionOutcome::Kind::Diverges) return bottom_layer(false);
  if (out.kind == ReductionOutcome::Kind::FuelExhausted) return bottom_layer(true);
  Term u = view(out.term);
  if (kind != TreeKind::Berarducci) {
    // a bottom head swallows the whole node
    Term h = head_of(u, kind == TreeKind::Bohm);
    if (h.is(Term::Kind::Bot)) return bottom_layer(false);
    if (h.is(Term::Kind::UnknownBot)) return bottom_layer(true);
  }
  return plain_layer(u);
}

}  // namespace

InfTerm tree(TreeKind kind, const Term& t, const TreeOptions& options) {
  return make_producer<Term>(
      t, [kind, options](const Term& u) { return tree_step(kind, u, options); }, t.fv());
}

namespace {

TreeOptions with_fuel(std::size_t fuel) {
  TreeOptions o;
  o.fuel = fuel;
  return o;
}

}  // namespace

InfTerm bt(const Term& t, std::size_t fuel) { return tree(TreeKind::Bohm, t, with_fuel(fuel)); }
InfTerm llt(const Term& t, std::size_t fuel) { return tree(TreeKind::LevyLongo, t, with_fuel(fuel)); }
InfTerm bet(const Term& t, std::size_t fuel) { return tree(TreeKind::Berarducci, t, with_fuel(fuel)); }

// ---------------------------------------------------------------------------

namespace {

bool is_op(const RawTerm& t, std::string_view name) { return t.is_op() && t.name() == name; }
bool is_unknown(const RawTerm& t) { return is_op(t, lambda::kBotUnknown); }
bool is_bottom(const RawTerm& t) { return is_op(t, lambda::kBot) || is_unknown(t); }
bool is_abs(const RawTerm& t) { return is_op(t, lambda::kAbs); }
bool is_app(const RawTerm& t) { return is_op(t, lambda::kApp); }

/// Head and arguments (outermost last) of an application spine.
const RawTerm& spine(const RawTerm& t, std::vector<const RawTerm*>& args) {
  const RawTerm* u = &t;
  while (is_app(*u)) {
    args.push_back(&u->args()[1].body);
    u = &u->args()[0].body;
  }
  return *u;
}

}  // namespace

NodeStatus status(const TruncTerm& t) {
  if (is_unknown(t)) return NodeStatus::Unknown;
  if (t.is_op())
    for (const auto& a : t.args())
      if (status(a.body) == NodeStatus::Unknown) return NodeStatus::Unknown;
  return NodeStatus::Resolved;
}

TruncTerm assume_bottom(const TruncTerm& t) {
  if (is_unknown(t)) return make_op_unchecked(std::string(lambda::kBot), {});
  if (!t.is_op()) return t;
  std::vector<RawTerm::Arg> args;
  for (const auto& a : t.args()) args.push_back({a.binders, assume_bottom(a.body)});
  return make_op_unchecked(t.name(), std::move(args));
}

bool in_bt_set(const TruncTerm& t) {
  if (t.is_star() || is_bottom(t)) return true;
  const RawTerm* u = &t;
  while (is_abs(*u)) u = &u->args()[0].body;
  if (u->is_star()) return true;
  std::vector<const RawTerm*> args;
  const RawTerm& head = spine(*u, args);
  if (is_bottom(head) || is_abs(head)) return false;
  for (const RawTerm* a : args)
    if (!in_bt_set(*a)) return false;
  return true;
}

bool in_llt_set(const TruncTerm& t) {
  if (t.is_star() || is_bottom(t)) return true;
  if (is_abs(t)) return in_llt_set(t.args()[0].body);
  std::vector<const RawTerm*> args;
  const RawTerm& head = spine(t, args);
  if (is_bottom(head) || is_abs(head)) return false;
  for (const RawTerm* a : args)
    if (!in_llt_set(*a)) return false;
  return true;
}

bool in_bet_set(const TruncTerm& t) {
  if (t.is_star() || is_bottom(t)) return true;
  if (is_abs(t)) return in_bet_set(t.args()[0].body);
  std::vector<const RawTerm*> args;
  const RawTerm& head = spine(t, args);
  if (is_abs(head)) return false;
  for (const RawTerm* a : args)
    if (!in_bet_set(*a)) return false;
  return true;
}

bool in_bt_set(const InfTerm& t, std::size_t depth) { return in_bt_set(truncate(t, depth)); }
bool in_llt_set(const InfTerm& t, std::size_t depth) { return in_llt_set(truncate(t, depth)); }
bool in_bet_set(const InfTerm& t, std::size_t depth) { return in_bet_set(truncate(t, depth)); }

// ---------------------------------------------------------------------------

namespace {

enum class Verdict { Equal, Differ, Blocked };

Verdict compare(const RawTerm& t, const RawTerm& s, std::vector<std::pair<Atom, Atom>>& scope) {
  bool tu = is_unknown(t), su = is_unknown(s);
  if (tu && su) return Verdict::Equal;
  if (tu || su) return Verdict::Blocked;
  if (t.kind() != s.kind()) return Verdict::Differ;
  if (t.is_star()) return Verdict::Equal;
  if (t.is_var()) {
    for (auto it = scope.rbegin(); it != scope.rend(); ++it) {
      bool l = it->first == t.atom(), r = it->second == s.atom();
      if (l || r) return l && r ? Verdict::Equal : Verdict::Differ;
    }
    return t.atom() == s.atom() ? Verdict::Equal : Verdict::Differ;
  }
  if (t.name() != s.name() || t.args().size() != s.args().size()) return Verdict::Differ;
  Verdict acc = Verdict::Equal;
  for (std::size_t i = 0; i < t.args().size(); ++i) {
    const auto& a = t.args()[i];
    const auto& b = s.args()[i];
    if (a.binders.size() != b.binders.size()) return Verdict::Differ;
    for (std::size_t j = 0; j < a.binders.size(); ++j) scope.emplace_back(a.binders[j], b.binders[j]);
    Verdict v = compare(a.body, b.body, scope);
    scope.resize(scope.size() - a.binders.size());
    if (v == Verdict::Differ) return v;
    if (v == Verdict::Blocked) acc = v;
  }
  return acc;
}

}  // namespace

bool bisim_at(TreeKind kind, const Term& m, const Term& n, std::size_t depth, std::size_t fuel) {
  TreeOptions o = with_fuel(fuel);
  std::vector<std::pair<Atom, Atom>> scope;
  switch (compare(truncate(tree(kind, m, o), depth), truncate(tree(kind, n, o), depth), scope)) {
    case Verdict::Equal:
      return true;
    case Verdict::Differ:
      return false;
    case Verdict::Blocked:
      break;
  }
  throw Inconclusive("an undecided node with fuel " + std::to_string(fuel) +
                     " blocks the comparison at depth " + std::to_string(depth));
}

bool bisim_hnf_at(const Term& m, const Term& n, std::size_t depth, std::size_t fuel) {
  return bisim_at(TreeKind::Bohm, m, n, depth, fuel);
}

bool bisim_whnf_at(const Term& m, const Term& n, std::size_t depth, std::size_t fuel) {
  return bisim_at(TreeKind::LevyLongo, m, n, depth, fuel);
}

}  // namespace infnom::trees
