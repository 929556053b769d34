#include "infnom/lambda/constants.hpp"

#include <charconv>

#include "infnom/errors.hpp"
#include "infnom/signature.hpp"

namespace infnom::lambda {

ConstantMap ConstantMap::indexed(std::string prefix) {
  ConstantMap rho;
  rho.to_constant = [prefix](Atom a) { return prefix + std::to_string(a.index()); };
  rho.to_atom = [prefix](std::string_view name) -> std::optional<Atom> {
    if (name.size() <= prefix.size() || name.substr(0, prefix.size()) != prefix) return std::nullopt;
    std::string_view digits = name.substr(prefix.size());
    if (digits.size() > 1 && digits.front() == '0') return std::nullopt;
    std::uint32_t idx = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), idx);
    if (ec != std::errc() || ptr != digits.data() + digits.size()) return std::nullopt;
    return Atom(idx);
  };
  return rho;
}

namespace {

Term to_walk(const Term& t, const ConstantMap& rho, AtomSet& bound) {
  switch (t.kind()) {
    case Term::Kind::Var:
      return bound.contains(t.atom()) ? t : Term::constant(rho.to_constant(t.atom()));
    case Term::Kind::Abs: {
      bool fresh = !bound.contains(t.atom());
      bound.insert(t.atom());
      Term body = to_walk(t.body(), rho, bound);
      if (fresh) bound.erase(t.atom());
      return Term::abs(t.atom(), std::move(body));
    }
    case Term::Kind::App:
      return Term::app(to_walk(t.fun(), rho, bound), to_walk(t.arg(), rho, bound));
    case Term::Kind::Lazy: {
      // atoms bound outside stay variables inside the lazy part
      InfTerm inner = t.inf();
      AtomSet keep = inner.declared_support() & bound;
      struct State {
        InfTerm t;
        AtomSet bound;
      };
      auto step = [rho](const State& s) -> Layer<State> {
        const auto& l = s.t.unfold();
        if (auto v = std::get_if<VarLayer>(&l)) {
          if (s.bound.contains(v->atom)) return *v;
          return op_layer<State>(constant_op(rho.to_constant(v->atom)));
        }
        const auto& op = std::get<OpLayer<InfTerm>>(l);
        OpLayer<State> out{op.name, {}};
        for (const auto& a : op.args)
          out.args.push_back({a.binders, State{a.body, s.bound | AtomSet(a.binders)}});
        return out;
      };
      return Term::lazy(make_producer<State>(State{inner, keep}, step, keep));
    }
    default:
      return t;
  }
}

}  // namespace

Term tr_to_constants(const Term& t, const ConstantMap& rho) {
  AtomSet bound;
  return to_walk(t, rho, bound);
}

InfTerm tr_to_constants(const InfTerm& t, const ConstantMap& rho) {
  return to_inf(tr_to_constants(Term::lazy(t), rho));
}

namespace {

void constants_in(const RawTerm& t, const ConstantMap& rho, AtomSet& out) {
  if (!t.is_op()) return;
  if (auto c = constant_name(t.name()))
    if (auto a = rho.to_atom(*c)) out.insert(*a);
  for (const auto& a : t.args()) constants_in(a.body, rho, out);
}

RawTerm from_walk(const RawTerm& t, const ConstantMap& rho) {
  if (!t.is_op()) return t;
  if (auto c = constant_name(t.name()))
    if (auto a = rho.to_atom(*c)) return RawTerm::var(*a);
  std::vector<RawTerm::Arg> args;
  for (const auto& a : t.args()) args.push_back({a.binders, from_walk(a.body, rho)});
  return make_op_unchecked(t.name(), std::move(args));
}

}  // namespace

Term tr_from_constants(const Term& t, const ConstantMap& rho, std::optional<std::uint32_t> atom_budget) {
  RawTerm raw = to_raw(t);
  AtomSet targets;
  constants_in(raw, rho, targets);
  RawTerm safe = make_safe(raw, targets);
  if (atom_budget)
    for (Atom b : binder_occurrences(safe))
      if (b.index() >= *atom_budget)
        throw RepresentativeClash("no representative within " + std::to_string(*atom_budget) +
                                  " atoms avoids the translated constants");
  return from_raw(from_walk(safe, rho));
}

}  // namespace infnom::lambda
