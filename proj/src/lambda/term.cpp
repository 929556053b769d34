#include "infnom/lambda/term.hpp"

#include <algorithm>
#include <stdexcept>

#include "infnom/errors.hpp"

namespace infnom::lambda {

const BindingSignature& signature() {
  static const BindingSignature sig = [] {
    BindingSignature s;
    s.add(std::string(kAbs), {1});
    s.add(std::string(kApp), {0, 0});
    s.add(std::string(kBot), {});
    s.add(std::string(kBotUnknown), {});
    s.allow_constant_alphabet(kConstantPrefix);
    return s;
  }();
  return sig;
}

std::optional<std::string> constant_name(std::string_view op) {
  if (op.size() > 1 && op.front() == kConstantPrefix) return std::string(op.substr(1));
  return std::nullopt;
}

struct Term::Node {
  Kind kind;
  Atom atom;
  std::string name;
  std::optional<Term> left;
  std::optional<Term> right;
  std::optional<InfTerm> inf;
  AtomSet fv;
  std::size_t size = 1;
  std::size_t height = 1;
  bool has_inf = false;
};

namespace {

template <class F>
auto make(F&& init) {
  auto n = std::make_shared<Term::Node>();
  init(*n);
  return std::shared_ptr<const Term::Node>(std::move(n));
}

}  // namespace

Term Term::var(Atom a) {
  return Term(make([&](Node& n) {
    n.kind = Kind::Var;
    n.atom = a;
    n.fv = {a};
  }));
}

Term Term::abs(Atom binder, Term body) {
  return Term(make([&](Node& n) {
    n.kind = Kind::Abs;
    n.atom = binder;
    n.fv = body.fv();
    n.fv.erase(binder);
    n.size = body.size() + 1;
    n.height = body.height() + 1;
    n.has_inf = body.has_inf();
    n.left = std::move(body);
  }));
}

Term Term::app(Term fun, Term arg) {
  return Term(make([&](Node& n) {
    n.kind = Kind::App;
    n.fv = fun.fv() | arg.fv();
    n.size = fun.size() + arg.size() + 1;
    n.height = std::max(fun.height(), arg.height()) + 1;
    n.has_inf = fun.has_inf() || arg.has_inf();
    n.left = std::move(fun);
    n.right = std::move(arg);
  }));
}

Term Term::bot() {
  static const Term t(make([](Node& n) { n.kind = Kind::Bot; }));
  return t;
}

Term Term::unknown_bot() {
  static const Term t(make([](Node& n) { n.kind = Kind::UnknownBot; }));
  return t;
}

Term Term::constant(std::string name) {
  return Term(make([&](Node& n) {
    n.kind = Kind::Const;
    n.name = std::move(name);
  }));
}

Term Term::lazy(InfTerm t) {
  return Term(make([&](Node& n) {
    n.kind = Kind::Lazy;
    n.fv = t.declared_support();
    n.has_inf = true;
    n.inf = std::move(t);
  }));
}

Term::Kind Term::kind() const { return node_->kind; }
Atom Term::atom() const { return node_->atom; }
const Term& Term::body() const { return *node_->left; }
const Term& Term::fun() const { return *node_->left; }
const Term& Term::arg() const { return *node_->right; }
const std::string& Term::name() const { return node_->name; }
const InfTerm& Term::inf() const { return *node_->inf; }
const AtomSet& Term::fv() const { return node_->fv; }
std::size_t Term::size() const { return node_->size; }
std::size_t Term::height() const { return node_->height; }
bool Term::has_inf() const { return node_->has_inf; }

Term apps(Term f, std::initializer_list<Term> args) {
  for (const auto& a : args) f = Term::app(std::move(f), a);
  return f;
}

// ---------------------------------------------------------------------------
// Conversions

Term from_raw(const RawTerm& t) {
  if (t.is_star()) throw std::invalid_argument("truncation leaf is not a lambda term");
  if (t.is_var()) return Term::var(t.atom());
  const auto& args = t.args();
  auto expect = [&](std::size_t n, std::size_t binders) {
    if (args.size() != n || (n > 0 && args[0].binders.size() != binders))
      throw ArityError("malformed `" + t.name() + "` node");
  };
  if (t.name() == kAbs) {
    expect(1, 1);
    return Term::abs(args[0].binders[0], from_raw(args[0].body));
  }
  if (t.name() == kApp) {
    expect(2, 0);
    if (!args[1].binders.empty()) throw ArityError("malformed `App` node");
    return Term::app(from_raw(args[0].body), from_raw(args[1].body));
  }
  if (t.name() == kBot) return expect(0, 0), Term::bot();
  if (t.name() == kBotUnknown) return expect(0, 0), Term::unknown_bot();
  if (auto c = constant_name(t.name())) return expect(0, 0), Term::constant(*c);
  throw ArityError("`" + t.name() + "` is not a lambda operation");
}

RawTerm to_raw(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Var:
      return RawTerm::var(t.atom());
    case Term::Kind::Abs:
      return make_op_unchecked(std::string(kAbs), {{{t.atom()}, to_raw(t.body())}});
    case Term::Kind::App:
      return make_op_unchecked(std::string(kApp), {{{}, to_raw(t.fun())}, {{}, to_raw(t.arg())}});
    case Term::Kind::Bot:
      return make_op_unchecked(std::string(kBot), {});
    case Term::Kind::UnknownBot:
      return make_op_unchecked(std::string(kBotUnknown), {});
    case Term::Kind::Const:
      return make_op_unchecked(constant_op(t.name()), {});
    case Term::Kind::Lazy:
      break;
  }
  if (auto finite = to_finite(t.inf())) return *finite;
  throw NotRational("term has an infinite part");
}

namespace {

class TermNode final : public InfTerm::Node {
 public:
  explicit TermNode(Term t) : Node(t.fv()), t_(std::move(t)) {}

 protected:
  Layer<InfTerm> compute() const override {
    switch (t_.kind()) {
      case Term::Kind::Var:
        return VarLayer{t_.atom()};
      case Term::Kind::Abs:
        return op_layer<InfTerm>(std::string(kAbs), {{{t_.atom()}, to_inf(t_.body())}});
      case Term::Kind::App:
        return op_layer<InfTerm>(std::string(kApp),
                                 {{{}, to_inf(t_.fun())}, {{}, to_inf(t_.arg())}});
      case Term::Kind::Bot:
        return op_layer<InfTerm>(std::string(kBot));
      case Term::Kind::UnknownBot:
        return op_layer<InfTerm>(std::string(kBotUnknown));
      case Term::Kind::Const:
        return op_layer<InfTerm>(constant_op(t_.name()));
      case Term::Kind::Lazy:
        break;
    }
    return t_.inf().unfold();
  }

 private:
  Term t_;
};

}  // namespace

InfTerm to_inf(const Term& t) {
  if (t.is(Term::Kind::Lazy)) return t.inf();
  if (!t.has_inf()) return embed(to_raw(t));
  return InfTerm(std::make_shared<TermNode>(t));
}

Term expose(const Term& t) {
  if (!t.is(Term::Kind::Lazy)) return t;
  const auto& l = t.inf().unfold();
  if (auto v = std::get_if<VarLayer>(&l)) return Term::var(v->atom);
  const auto& op = std::get<OpLayer<InfTerm>>(l);
  if (op.name == kAbs && op.args.size() == 1 && op.args[0].binders.size() == 1)
    return Term::abs(op.args[0].binders[0], Term::lazy(op.args[0].body));
  if (op.name == kApp && op.args.size() == 2)
    return Term::app(Term::lazy(op.args[0].body), Term::lazy(op.args[1].body));
  if (op.args.empty()) {
    if (op.name == kBot) return Term::bot();
    if (op.name == kBotUnknown) return Term::unknown_bot();
    if (auto c = constant_name(op.name)) return Term::constant(*c);
  }
  throw ArityError("`" + op.name + "` is not a lambda operation");
}

Term act(const Perm& p, const Term& t) {
  if (p.is_identity()) return t;
  switch (t.kind()) {
    case Term::Kind::Var:
      return Term::var(p(t.atom()));
    case Term::Kind::Abs:
      return Term::abs(p(t.atom()), act(p, t.body()));
    case Term::Kind::App:
      return Term::app(act(p, t.fun()), act(p, t.arg()));
    case Term::Kind::Lazy:
      return Term::lazy(act_inf(p, t.inf()));
    default:
      return t;
  }
}

// ---------------------------------------------------------------------------
// Alpha keys

namespace {

void key_walk(const Term& t, std::vector<Atom>& scope, std::string& out) {
  switch (t.kind()) {
    case Term::Kind::Var: {
      for (std::size_t i = scope.size(); i-- > 0;) {
        if (scope[i] == t.atom()) {
          out += '#';
          out += std::to_string(scope.size() - 1 - i);
          out += ' ';
          return;
        }
      }
      out += 'v';
      out += std::to_string(t.atom().index());
      out += ' ';
      return;
    }
    case Term::Kind::Abs:
      out += '\\';
      scope.push_back(t.atom());
      key_walk(t.body(), scope, out);
      scope.pop_back();
      return;
    case Term::Kind::App:
      out += '@';
      key_walk(t.fun(), scope, out);
      key_walk(t.arg(), scope, out);
      return;
    case Term::Kind::Bot:
      out += "B ";
      return;
    case Term::Kind::UnknownBot:
      out += "U ";
      return;
    case Term::Kind::Const:
      out += 'c';
      out += t.name();
      out += ' ';
      return;
    case Term::Kind::Lazy:
      throw NotRational("alpha key of a term with an infinite part");
  }
}

}  // namespace

std::string alpha_key(const Term& t) {
  std::vector<Atom> scope;
  std::string out;
  out.reserve(t.size() * 3);
  key_walk(t, scope, out);
  return out;
}

bool alpha_eq(const Term& t, const Term& s) { return alpha_key(t) == alpha_key(s); }

}  // namespace infnom::lambda
