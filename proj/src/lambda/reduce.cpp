#include "infnom/lambda/reduce.hpp"

#include <stdexcept>
#include <string>
#include <unordered_set>

#include "infnom/errors.hpp"

namespace infnom::lambda {

// ---------------------------------------------------------------------------
// Substitution

namespace {

class SubstNode final : public InfTerm::Node {
 public:
  SubstNode(InfTerm m, Atom x, InfTerm n)
      : Node((m.declared_support() - AtomSet{x}) | n.declared_support()),
        m_(std::move(m)),
        x_(x),
        n_(std::move(n)) {}

 protected:
  Layer<InfTerm> compute() const override {
    const auto& l = m_.unfold();
    if (auto v = std::get_if<VarLayer>(&l)) {
      if (v->atom == x_) return n_.unfold();
      return *v;
    }
    const auto& op = std::get<OpLayer<InfTerm>>(l);
    const AtomSet& nfv = n_.declared_support();
    OpLayer<InfTerm> out{op.name, {}};
    for (const auto& a : op.args) {
      AtomSet bound(a.binders);
      if (bound.contains(x_) || !a.body.declared_support().contains(x_)) {
        out.args.push_back(a);
        continue;
      }
      AtomSet avoid = nfv | m_.declared_support() | bound | a.body.declared_support();
      avoid.insert(x_);
      Perm rename;
      std::vector<Atom> binders;
      for (Atom b : a.binders) {
        if (!nfv.contains(b)) {
          binders.push_back(b);
          continue;
        }
        Atom z = fresh_atom(avoid);
        avoid.insert(z);
        rename = compose(swap(b, z), rename);
        binders.push_back(z);
      }
      out.args.push_back({std::move(binders), subst(act_inf(rename, a.body), x_, n_)});
    }
    return out;
  }

 private:
  InfTerm m_;
  Atom x_;
  InfTerm n_;
};

Term view(const Term& t) { return t.is(Term::Kind::Lazy) ? expose(t) : t; }

}  // namespace

InfTerm subst(const InfTerm& m, Atom x, const InfTerm& n) {
  if (!m.declared_support().contains(x)) return m;
  return InfTerm(std::make_shared<SubstNode>(m, x, n));
}

Term subst(const Term& m, Atom x, const Term& n) {
  if (!m.fv().contains(x)) return m;
  switch (m.kind()) {
    case Term::Kind::Var:
      return n;
    case Term::Kind::App:
      return Term::app(subst(m.fun(), x, n), subst(m.arg(), x, n));
    case Term::Kind::Abs: {
      Atom y = m.atom();
      if (!n.fv().contains(y)) return Term::abs(y, subst(m.body(), x, n));
      AtomSet avoid = n.fv() | m.body().fv();
      avoid.insert(x);
      Atom z = fresh_atom(avoid);
      return Term::abs(z, subst(act(swap(y, z), m.body()), x, n));
    }
    case Term::Kind::Lazy:
      return Term::lazy(subst(m.inf(), x, to_inf(n)));
    default:
      return m;
  }
}

AlphaClass subst(const AlphaClass& m, Atom x, const AlphaClass& n) {
  return canonicalize(to_raw(subst(from_raw(m.canonical()), x, from_raw(n.canonical()))));
}

Term contract(const Term& redex) {
  Term r = view(redex);
  if (!r.is(Term::Kind::App)) throw std::invalid_argument("not a redex");
  Term f = view(r.fun());
  if (!f.is(Term::Kind::Abs)) throw std::invalid_argument("not a redex");
  return subst(f.body(), f.atom(), r.arg());
}

// ---------------------------------------------------------------------------
// Steps

namespace {

void collect_reducts(const Term& t, std::vector<Term>& out) {
  switch (t.kind()) {
    case Term::Kind::Abs: {
      std::vector<Term> inner;
      collect_reducts(t.body(), inner);
      for (auto& r : inner) out.push_back(Term::abs(t.atom(), std::move(r)));
      return;
    }
    case Term::Kind::App: {
      Term f = view(t.fun());
      if (f.is(Term::Kind::Abs)) out.push_back(subst(f.body(), f.atom(), t.arg()));
      std::vector<Term> inner;
      collect_reducts(t.fun(), inner);
      for (auto& r : inner) out.push_back(Term::app(std::move(r), t.arg()));
      inner.clear();
      collect_reducts(t.arg(), inner);
      for (auto& r : inner) out.push_back(Term::app(t.fun(), std::move(r)));
      return;
    }
    default:
      return;
  }
}

const Term* spine_head(const Term& t, Term& storage) {
  storage = view(t);
  while (storage.is(Term::Kind::App)) storage = view(storage.fun());
  return &storage;
}

}  // namespace

std::vector<Term> beta_step(const Term& t) {
  std::vector<Term> all;
  collect_reducts(t, all);
  std::vector<Term> out;
  std::unordered_set<std::string> keys;
  for (auto& r : all) {
    if (r.has_inf()) {
      out.push_back(std::move(r));
      continue;
    }
    if (keys.insert(alpha_key(r)).second) out.push_back(std::move(r));
  }
  return out;
}

std::optional<Term> whead_step(const Term& t) {
  Term u = view(t);
  if (!u.is(Term::Kind::App)) return std::nullopt;
  Term f = view(u.fun());
  if (f.is(Term::Kind::Abs)) return subst(f.body(), f.atom(), u.arg());
  if (auto r = whead_step(f)) return Term::app(std::move(*r), u.arg());
  return std::nullopt;
}

std::optional<Term> head_step(const Term& t) {
  Term u = view(t);
  if (u.is(Term::Kind::Abs)) {
    if (auto r = head_step(u.body())) return Term::abs(u.atom(), std::move(*r));
    return std::nullopt;
  }
  return whead_step(u);
}

std::optional<Term> top_step(const Term& t, std::size_t inner_fuel) {
  Term u = view(t);
  if (!u.is(Term::Kind::App)) return std::nullopt;
  ReduceOptions opts;
  opts.cycle_check = ReduceOptions::CycleCheck::HeadContext;
  auto out = reduce(u.fun(), Strategy::WeakHead, std::max<std::size_t>(inner_fuel, 1), opts);
  switch (out.kind) {
    case ReductionOutcome::Kind::Reached: {
      Term f = view(out.term);
      if (f.is(Term::Kind::Abs)) return subst(f.body(), f.atom(), u.arg());
      return std::nullopt;
    }
    case ReductionOutcome::Kind::Diverges:
      return std::nullopt;
    case ReductionOutcome::Kind::FuelExhausted:
      break;
  }
  throw FuelNeeded("operator not in weak head normal form after " + std::to_string(out.steps) +
                   " steps");
}

bool is_whnf(const Term& t) {
  Term u = view(t);
  if (!u.is(Term::Kind::App)) return true;
  Term storage = u;
  return !spine_head(u, storage)->is(Term::Kind::Abs);
}

bool is_hnf(const Term& t) {
  Term u = view(t);
  while (u.is(Term::Kind::Abs)) u = view(u.body());
  return is_whnf(u);
}

bool is_beta_normal(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Abs:
      return is_beta_normal(t.body());
    case Term::Kind::App:
      return !view(t.fun()).is(Term::Kind::Abs) && is_beta_normal(t.fun()) &&
             is_beta_normal(t.arg());
    default:
      return true;
  }
}

// ---------------------------------------------------------------------------
// Reduction runs

namespace {

/// Keys whose earlier occurrence proves divergence of the current run.
std::vector<std::string> context_keys(const Term& t, Strategy s) {
  std::vector<std::string> keys;
  if (s == Strategy::Top) return keys;
  if (s == Strategy::Head && t.is(Term::Kind::Abs)) {
    const Term* u = &t;
    while (u->is(Term::Kind::Abs)) {
      u = &u->body();
      keys.push_back(alpha_key(*u));
    }
    return keys;
  }
  const Term* u = &t;
  while (u->is(Term::Kind::App)) {
    u = &u->fun();
    keys.push_back(alpha_key(*u));
  }
  return keys;
}

}  // namespace

ReductionOutcome reduce(const Term& t, Strategy strategy, std::size_t fuel,
                        const ReduceOptions& options) {
  if (fuel == 0) throw std::invalid_argument("reduction fuel must be at least 1");
  std::size_t inner = options.inner_fuel ? options.inner_fuel : 10 * fuel;
  std::unordered_set<std::string> seen;
  Term cur = t;
  std::size_t steps = 0;
  using K = ReductionOutcome::Kind;
  for (;;) {
    std::optional<Term> next;
    try {
      switch (strategy) {
        case Strategy::Head:
          next = head_step(cur);
          break;
        case Strategy::WeakHead:
          next = whead_step(cur);
          break;
        case Strategy::Top:
          next = top_step(cur, inner);
          break;
      }
    } catch (const FuelNeeded&) {
      return {K::FuelExhausted, cur, steps};
    }
    if (!next) return {K::Reached, cur, steps};
    if (!cur.has_inf()) {
      std::string key = alpha_key(cur);
      if (seen.count(key)) return {K::Diverges, cur, steps};
      if (options.cycle_check == ReduceOptions::CycleCheck::HeadContext)
        for (const auto& k : context_keys(cur, strategy))
          if (seen.count(k)) return {K::Diverges, cur, steps};
      seen.insert(std::move(key));
    }
    if (steps == fuel) return {K::FuelExhausted, cur, steps};
    if (next->size() > options.max_term_size || next->height() > options.max_term_height)
      return {K::FuelExhausted, cur, steps};
    cur = std::move(*next);
    ++steps;
  }
}

ZeroAnswer is_zero_term(const Term& t, std::size_t fuel) {
  ReduceOptions opts;
  opts.cycle_check = ReduceOptions::CycleCheck::HeadContext;
  auto out = reduce(t, Strategy::WeakHead, std::max<std::size_t>(fuel, 1), opts);
  switch (out.kind) {
    case ReductionOutcome::Kind::Reached:
      return view(out.term).is(Term::Kind::Abs) ? ZeroAnswer::No : ZeroAnswer::Yes;
    case ReductionOutcome::Kind::Diverges:
      return ZeroAnswer::Yes;
    case ReductionOutcome::Kind::FuelExhausted:
      break;
  }
  return ZeroAnswer::Unknown;
}

bool is_tnf(const Term& t, std::size_t fuel) {
  Term u = view(t);
  if (!u.is(Term::Kind::App)) return true;
  return is_zero_term(u.fun(), fuel) == ZeroAnswer::Yes;
}

}  // namespace infnom::lambda
