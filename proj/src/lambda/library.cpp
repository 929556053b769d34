#include "infnom/lambda/library.hpp"

#include <string>

namespace infnom::lambda {

Atom indexed_var(std::size_t k) { return Atom::named("x" + std::to_string(k)); }

Term identity() {
  Atom x = Atom::named("x");
  return Term::abs(x, Term::var(x));
}

Term self_apply() {
  Atom x = Atom::named("x");
  return Term::abs(x, Term::app(Term::var(x), Term::var(x)));
}

Term omega() { return Term::app(self_apply(), self_apply()); }

Term fix() {
  Atom f = Atom::named("f");
  Atom x = Atom::named("x");
  Term half = Term::abs(x, Term::app(Term::var(f), Term::app(Term::var(x), Term::var(x))));
  return Term::abs(f, Term::app(half, half));
}

Term fix(Term f) { return Term::app(fix(), std::move(f)); }

Term pinfbv() {
  Atom f = Atom::named("f");
  Atom x = Atom::named("x");
  Atom y = Atom::named("y");
  Term xy = Term::app(Term::var(x), Term::var(y));
  Term body = Term::app(xy, Term::app(Term::var(f), xy));
  return fix(Term::abs(f, Term::abs(x, Term::abs(y, body))));
}

InfTerm ogre() {
  return make_producer<std::size_t>(
      0,
      [](const std::size_t& k) {
        return op_layer<std::size_t>(std::string(kAbs), {{{indexed_var(k)}, k + 1}});
      },
      {});
}

InfTerm ogre_rational() {
  RationalSystem sys;
  sys.states.push_back(op_layer<std::size_t>(std::string(kAbs), {{{Atom::named("x")}, 0}}));
  return rational(std::move(sys));
}

namespace {

struct InfbvState {
  enum class Kind { Lam, Body, Spine, Var };
  Kind kind;
  std::size_t k;
};

Layer<InfbvState> infbv_step(const InfbvState& s) {
  using K = InfbvState::Kind;
  switch (s.kind) {
    case K::Lam: {
      InfbvState next = s.k == 0 ? InfbvState{K::Lam, 1} : InfbvState{K::Body, s.k + 1};
      return op_layer<InfbvState>(std::string(kAbs), {{{indexed_var(s.k)}, next}});
    }
    case K::Body:
      // x0 ... x_{k-1} (\x_k. body_{k+1})
      return op_layer<InfbvState>(std::string(kApp),
                                  {{{}, InfbvState{K::Spine, s.k}}, {{}, InfbvState{K::Lam, s.k}}});
    case K::Spine:
      if (s.k == 1) return VarLayer{indexed_var(0)};
      return op_layer<InfbvState>(
          std::string(kApp), {{{}, InfbvState{K::Spine, s.k - 1}}, {{}, InfbvState{K::Var, s.k - 1}}});
    case K::Var:
      break;
  }
  return VarLayer{indexed_var(s.k)};
}

}  // namespace

InfTerm infbv() { return make_producer<InfbvState>({InfbvState::Kind::Lam, 0}, infbv_step, {}); }

InfTerm allfv() {
  return make_producer<std::size_t>(
      0,
      [](const std::size_t& k) -> Layer<std::size_t> {
        if (k % 2 == 1) return VarLayer{indexed_var(k / 2)};
        return op_layer<std::size_t>(std::string(kApp), {{{}, k + 1}, {{}, k + 2}});
      },
      {});
}

InfTerm allconst() {
  return make_producer<std::size_t>(
      0,
      [](const std::size_t& k) -> Layer<std::size_t> {
        if (k % 2 == 1) return op_layer<std::size_t>(constant_op("c" + std::to_string(k / 2)));
        return op_layer<std::size_t>(std::string(kApp), {{{}, k + 1}, {{}, k + 2}});
      },
      {});
}

RawTerm no_limit_term(std::size_t n) {
  Term tail = Term::var(indexed_var(n == 0 ? 0 : n - 1));
  for (std::size_t k = n - (n > 0 ? 1 : 0); k-- > 0;)
    tail = Term::app(Term::var(indexed_var(k)), tail);
  Atom xn = indexed_var(n);
  Term body = n == 0 ? Term::var(xn) : Term::app(Term::var(xn), tail);
  return to_raw(Term::abs(xn, body));
}

ClassChain no_limit_chain() {
  return [](std::size_t n) { return canonicalize(truncate_raw(no_limit_term(n), n)); };
}

}  // namespace infnom::lambda
