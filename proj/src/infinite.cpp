#include "infnom/infinite.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>

namespace infnom {

const Layer<InfTerm>& InfTerm::Node::layer() const {
  std::call_once(once_, [this] {
    Layer<InfTerm> l = compute();
    if (auto v = std::get_if<VarLayer>(&l)) {
      if (!declared_.contains(v->atom))
        throw SupportViolation("free atom " + v->atom.name() + " outside declared support " +
                               to_string(declared_));
    } else {
      for (const auto& a : std::get<OpLayer<InfTerm>>(l).args) {
        AtomSet allowed = declared_ | AtomSet(a.binders);
        if (!a.body.declared_support().is_subset_of(allowed))
          throw SupportViolation("child support " + to_string(a.body.declared_support()) +
                                 " exceeds " + to_string(allowed));
      }
    }
    cache_ = std::move(l);
  });
  return *cache_;
}

Layer<InfTerm> unfold_step(const InfTerm& t) { return t.unfold(); }

// ---------------------------------------------------------------------------
// Rational terms

namespace {

struct System {
  std::vector<Layer<std::size_t>> states;
  std::vector<AtomSet> fv;
};

class RationalNode final : public InfTerm::Node {
 public:
  RationalNode(std::shared_ptr<const System> sys, std::size_t state)
      : Node(sys->fv[state]), sys_(std::move(sys)), state_(state) {}

  const System& system() const { return *sys_; }
  std::size_t state() const { return state_; }

 protected:
  Layer<InfTerm> compute() const override {
    return map_layer(sys_->states[state_], [this](std::size_t j) {
      return InfTerm(std::make_shared<RationalNode>(sys_, j));
    });
  }

 private:
  std::shared_ptr<const System> sys_;
  std::size_t state_;
};

const RationalNode* as_rational(const InfTerm& t) {
  return dynamic_cast<const RationalNode*>(&t.node());
}

std::vector<AtomSet> fixpoint_fv(const std::vector<Layer<std::size_t>>& states) {
  std::vector<AtomSet> fv(states.size());
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < states.size(); ++i) {
      AtomSet next;
      if (auto v = std::get_if<VarLayer>(&states[i])) {
        next.insert(v->atom);
      } else {
        for (const auto& a : std::get<OpLayer<std::size_t>>(states[i]).args)
          next.insert_all(fv[a.body] - AtomSet(a.binders));
      }
      if (next != fv[i]) {
        fv[i] = std::move(next);
        changed = true;
      }
    }
  }
  return fv;
}

InfTerm from_system(std::vector<Layer<std::size_t>> states, std::size_t root) {
  auto sys = std::make_shared<System>();
  sys->fv = fixpoint_fv(states);
  sys->states = std::move(states);
  return InfTerm(std::make_shared<RationalNode>(std::move(sys), root));
}

/// Permutes an arbitrary term lazily; nested actions are composed.
class PermNode final : public InfTerm::Node {
 public:
  PermNode(Perm p, InfTerm inner)
      : Node(act(p, inner.declared_support())), p_(std::move(p)), inner_(std::move(inner)) {}

  const Perm& perm() const { return p_; }
  const InfTerm& inner() const { return inner_; }

 protected:
  Layer<InfTerm> compute() const override;

 private:
  Perm p_;
  InfTerm inner_;
};

InfTerm lazy_act(const Perm& p, const InfTerm& t) {
  if (p.is_identity()) return t;
  if (auto pn = dynamic_cast<const PermNode*>(&t.node()))
    return lazy_act(compose(p, pn->perm()), pn->inner());
  return InfTerm(std::make_shared<PermNode>(p, t));
}

Layer<InfTerm> PermNode::compute() const {
  const auto& l = inner_.unfold();
  if (auto v = std::get_if<VarLayer>(&l)) return VarLayer{p_(v->atom)};
  const auto& op = std::get<OpLayer<InfTerm>>(l);
  OpLayer<InfTerm> out{op.name, {}};
  for (const auto& a : op.args) {
    std::vector<Atom> binders;
    for (Atom b : a.binders) binders.push_back(p_(b));
    out.args.push_back({std::move(binders), lazy_act(p_, a.body)});
  }
  return out;
}

}  // namespace

bool InfTerm::is_rational() const { return as_rational(*this) != nullptr; }

InfTerm rational(RationalSystem system) {
  if (system.states.empty()) throw std::invalid_argument("empty equation system");
  auto check = [&](std::size_t j) {
    if (j >= system.states.size()) throw std::invalid_argument("dangling state in equation system");
  };
  check(system.root);
  for (const auto& l : system.states)
    if (auto op = std::get_if<OpLayer<std::size_t>>(&l))
      for (const auto& a : op->args) check(a.body);
  return from_system(std::move(system.states), system.root);
}

InfTerm embed(const RawTerm& t) {
  std::vector<Layer<std::size_t>> states;
  auto build = [&](auto&& self, const RawTerm& u) -> std::size_t {
    if (u.is_star()) throw std::invalid_argument("cannot embed a truncation leaf");
    std::size_t idx = states.size();
    states.emplace_back(VarLayer{});
    if (u.is_var()) {
      states[idx] = VarLayer{u.atom()};
      return idx;
    }
    OpLayer<std::size_t> op{u.name(), {}};
    for (const auto& a : u.args()) op.args.push_back({a.binders, self(self, a.body)});
    states[idx] = std::move(op);
    return idx;
  };
  build(build, t);
  return from_system(std::move(states), 0);
}

std::optional<RawTerm> to_finite(const InfTerm& t) {
  auto rn = as_rational(t);
  if (!rn) return std::nullopt;
  const auto& states = rn->system().states;
  enum class Mark { White, Grey, Black };
  std::vector<Mark> mark(states.size(), Mark::White);
  auto acyclic = [&](auto&& self, std::size_t i) -> bool {
    if (mark[i] == Mark::Grey) return false;
    if (mark[i] == Mark::Black) return true;
    mark[i] = Mark::Grey;
    if (auto op = std::get_if<OpLayer<std::size_t>>(&states[i]))
      for (const auto& a : op->args)
        if (!self(self, a.body)) return false;
    mark[i] = Mark::Black;
    return true;
  };
  if (!acyclic(acyclic, rn->state())) return std::nullopt;
  auto expand = [&](auto&& self, std::size_t i) -> RawTerm {
    if (auto v = std::get_if<VarLayer>(&states[i])) return RawTerm::var(v->atom);
    const auto& op = std::get<OpLayer<std::size_t>>(states[i]);
    std::vector<RawTerm::Arg> args;
    for (const auto& a : op.args) args.push_back({a.binders, self(self, a.body)});
    return make_op_unchecked(op.name, std::move(args));
  };
  return expand(expand, rn->state());
}

InfTerm act_inf(const Perm& p, const InfTerm& t) {
  if (p.is_identity()) return t;
  if (auto rn = as_rational(t)) {
    std::vector<Layer<std::size_t>> states;
    states.reserve(rn->system().states.size());
    for (const auto& l : rn->system().states) {
      if (auto v = std::get_if<VarLayer>(&l)) {
        states.emplace_back(VarLayer{p(v->atom)});
        continue;
      }
      OpLayer<std::size_t> op = std::get<OpLayer<std::size_t>>(l);
      for (auto& a : op.args)
        for (auto& b : a.binders) b = p(b);
      states.emplace_back(std::move(op));
    }
    return from_system(std::move(states), rn->state());
  }
  return lazy_act(p, t);
}

// ---------------------------------------------------------------------------
// Observation

TruncTerm truncate(const InfTerm& t, std::size_t depth) {
  if (depth == 0) return RawTerm::star();
  const auto& l = t.unfold();
  if (auto v = std::get_if<VarLayer>(&l)) return RawTerm::var(v->atom);
  const auto& op = std::get<OpLayer<InfTerm>>(l);
  std::vector<RawTerm::Arg> args;
  args.reserve(op.args.size());
  for (const auto& a : op.args) args.push_back({a.binders, truncate(a.body, depth - 1)});
  return make_op_unchecked(op.name, std::move(args));
}

bool alpha_eq_at(const InfTerm& t, const InfTerm& s, std::size_t depth) {
  return alpha_eq(truncate(t, depth), truncate(s, depth));
}

std::string DistanceBound::str() const {
  return (kind == Kind::Exact ? "Exact(" : "AtMost(") + value.str() + ")";
}

namespace {

void check_cap(std::size_t cap) {
  if (cap == 0) throw std::invalid_argument("distance cap must be at least 1");
}

}  // namespace

DistanceBound dist(const InfTerm& t, const InfTerm& s, std::size_t cap) {
  check_cap(cap);
  // Truncations at depth k differ iff the first differing level is <= k,
  // so the depth-cap truncations carry all the information.
  Dyadic d = dist_raw(truncate(t, cap), truncate(s, cap));
  if (d.is_zero()) return {DistanceBound::Kind::AtMost, Dyadic::pow2_neg(static_cast<unsigned>(cap))};
  return {DistanceBound::Kind::Exact, d};
}

DistanceBound dist_alpha(const InfTerm& t, const InfTerm& s, std::size_t cap) {
  check_cap(cap);
  TruncTerm tc = truncate(t, cap);
  TruncTerm sc = truncate(s, cap);
  for (std::size_t k = 1; k <= cap; ++k)
    if (!alpha_eq(truncate_raw(tc, k), truncate_raw(sc, k)))
      return {DistanceBound::Kind::Exact, Dyadic::pow2_neg(static_cast<unsigned>(k - 1))};
  return {DistanceBound::Kind::AtMost, Dyadic::pow2_neg(static_cast<unsigned>(cap))};
}

AtomSet fv_exact(const InfTerm& t) {
  if (auto rn = as_rational(t)) return rn->system().fv[rn->state()];
  if (t.declared_support().empty()) return {};
  throw NotRational("exact free variables need a rational term; use fv_at");
}

AtomSet fv_at(const InfTerm& t, std::size_t depth) { return fv(truncate(t, depth)); }

ClassChain truncation_chain(const InfTerm& t) {
  return [t](std::size_t n) { return canonicalize(truncate(t, n)); };
}

// ---------------------------------------------------------------------------
// Limits

TruncTerm represent_limit(const ClassChain& chain, std::size_t depth, LimitOptions options) {
  std::size_t probe = depth + options.window;
  std::vector<AlphaClass> classes;
  classes.reserve(probe + 1);
  for (std::size_t m = 0; m <= probe; ++m) {
    classes.push_back(chain(m));
    if (supp(classes.back()).size() > options.max_support)
      throw UnboundedSupport("support at depth " + std::to_string(m) + " exceeds " +
                             std::to_string(options.max_support) + " atoms");
  }
  for (std::size_t m = 0; m < probe; ++m)
    if (!(canonicalize(truncate_raw(classes[m + 1].canonical(), m)) == classes[m]))
      throw IncompatibleChain("depth " + std::to_string(m + 1) +
                              " does not truncate to depth " + std::to_string(m));
  AtomSet support = supp(classes[depth]);
  if (supp(classes[probe]) != support)
    throw UnboundedSupport("support still growing between depth " + std::to_string(depth) +
                           " and " + std::to_string(probe) + ": " + to_string(support) + " vs " +
                           to_string(supp(classes[probe])));

  const RawTerm& rep = classes[depth].canonical();

  // Binder occurrences in depth-first order with the level of their node.
  // Left to right within a level is depth-first order restricted to it.
  std::vector<std::size_t> levels;
  auto collect = [&](auto&& self, const RawTerm& u, std::size_t level) -> void {
    if (!u.is_op()) return;
    for (const auto& a : u.args()) {
      for (std::size_t i = 0; i < a.binders.size(); ++i) levels.push_back(level);
      self(self, a.body, level + 1);
    }
  };
  collect(collect, rep, 1);
  std::vector<std::size_t> order(levels.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return levels[a] < levels[b]; });
  std::vector<Atom> assigned(levels.size());
  std::uint32_t next = 0;
  for (std::size_t rank = 0; rank < order.size(); ++rank) {
    while (support.contains(Atom(next))) ++next;
    assigned[order[rank]] = Atom(next++);
  }

  std::size_t counter = 0;
  std::vector<std::pair<Atom, Atom>> scope;
  auto rebuild = [&](auto&& self, const RawTerm& u) -> RawTerm {
    switch (u.kind()) {
      case RawTerm::Kind::Star:
        return u;
      case RawTerm::Kind::Var:
        for (auto it = scope.rbegin(); it != scope.rend(); ++it)
          if (it->first == u.atom()) return RawTerm::var(it->second);
        return u;
      case RawTerm::Kind::Op:
        break;
    }
    std::vector<RawTerm::Arg> args;
    for (const auto& a : u.args()) {
      std::vector<Atom> binders;
      for (Atom b : a.binders) {
        Atom c = assigned[counter++];
        scope.emplace_back(b, c);
        binders.push_back(c);
      }
      RawTerm body = self(self, a.body);
      scope.resize(scope.size() - a.binders.size());
      args.push_back({std::move(binders), std::move(body)});
    }
    return make_op_unchecked(u.name(), std::move(args));
  };
  return rebuild(rebuild, rep);
}

}  // namespace infnom
