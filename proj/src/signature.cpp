#include "infnom/signature.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>
#include <stdexcept>

#include "infnom/errors.hpp"

namespace infnom {

// ---------------------------------------------------------------------------
// BindingSignature

void BindingSignature::add(std::string name, Arity arity) {
  if (name.empty()) throw std::invalid_argument("operation name must not be empty");
  if (!ops_.emplace(std::move(name), std::move(arity)).second)
    throw std::invalid_argument("duplicate operation in signature");
}

bool BindingSignature::contains(std::string_view name) const { return arity(name).has_value(); }

std::optional<BindingSignature::Arity> BindingSignature::arity(std::string_view name) const {
  if (auto it = ops_.find(name); it != ops_.end()) return it->second;
  if (constant_prefix_ && name.size() > 1 && name.front() == *constant_prefix_) return Arity{};
  return std::nullopt;
}

bool BindingSignature::is_constant(std::string_view name) const {
  auto a = arity(name);
  return a && a->empty();
}

std::vector<std::string> BindingSignature::constants() const {
  std::vector<std::string> out;
  for (const auto& [name, arity] : ops_)
    if (arity.empty()) out.push_back(name);
  return out;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

BindingSignature BindingSignature::parse(std::string_view text) {
  BindingSignature sig;
  std::size_t offset = 0;
  while (offset <= text.size()) {
    std::size_t end = text.find('\n', offset);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = trim(text.substr(offset, end - offset));
    if (!line.empty() && line.front() != '#') {
      auto colon = line.find(':');
      if (colon == std::string_view::npos) throw ParseError("expected `name: arities`", offset);
      std::string name(trim(line.substr(0, colon)));
      if (name.empty()) throw ParseError("empty operation name", offset);
      Arity arity;
      std::string_view rest = trim(line.substr(colon + 1));
      while (!rest.empty()) {
        auto comma = rest.find(',');
        std::string_view item = trim(rest.substr(0, comma));
        std::size_t n = 0;
        auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), n);
        if (item.empty() || ec != std::errc() || ptr != item.data() + item.size())
          throw ParseError("bad binding arity `" + std::string(item) + "`", offset);
        arity.push_back(n);
        if (comma == std::string_view::npos) break;
        rest = rest.substr(comma + 1);
      }
      if (sig.ops_.count(name)) throw ParseError("duplicate operation `" + name + "`", offset);
      sig.add(std::move(name), std::move(arity));
    }
    offset = end + 1;
  }
  return sig;
}

std::string BindingSignature::to_text() const {
  std::ostringstream out;
  for (const auto& [name, arity] : ops_) {
    out << name << ":";
    for (std::size_t i = 0; i < arity.size(); ++i) out << (i ? "," : " ") << arity[i];
    out << "\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// RawTerm

struct RawTerm::Node {
  Kind kind = Kind::Star;
  Atom atom;
  std::string name;
  std::vector<Arg> args;
  std::size_t size = 1;
  std::size_t height = 1;
  bool has_star = false;
};

RawTerm RawTerm::var(Atom a) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Var;
  n->atom = a;
  return RawTerm(std::move(n));
}

RawTerm RawTerm::star() {
  static const auto node = [] {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Star;
    n->has_star = true;
    return std::shared_ptr<const Node>(std::move(n));
  }();
  return RawTerm(node);
}

RawTerm make_op_unchecked(std::string name, std::vector<RawTerm::Arg> args) {
  auto n = std::make_shared<RawTerm::Node>();
  n->kind = RawTerm::Kind::Op;
  n->name = std::move(name);
  for (const auto& a : args) {
    n->size += a.body.size();
    n->height = std::max(n->height, a.body.height() + 1);
    n->has_star = n->has_star || a.body.has_star();
  }
  n->args = std::move(args);
  return RawTerm(std::move(n));
}

namespace {

void check_op(const BindingSignature& sig, const std::string& name,
              const std::vector<RawTerm::Arg>& args) {
  auto arity = sig.arity(name);
  if (!arity) throw ArityError("unknown operation `" + name + "`");
  if (arity->size() != args.size())
    throw ArityError("`" + name + "` expects " + std::to_string(arity->size()) +
                     " arguments, got " + std::to_string(args.size()));
  for (std::size_t i = 0; i < args.size(); ++i) {
    const auto& binders = args[i].binders;
    if (binders.size() != (*arity)[i])
      throw ArityError("argument " + std::to_string(i + 1) + " of `" + name + "` binds " +
                       std::to_string((*arity)[i]) + " names, got " +
                       std::to_string(binders.size()));
    if (AtomSet(binders).size() != binders.size())
      throw ArityError("argument " + std::to_string(i + 1) + " of `" + name +
                       "` binds the same name twice");
  }
}

}  // namespace

RawTerm RawTerm::op(const BindingSignature& sig, std::string name, std::vector<Arg> args) {
  check_op(sig, name, args);
  return make_op_unchecked(std::move(name), std::move(args));
}

RawTerm::Kind RawTerm::kind() const { return node_->kind; }
Atom RawTerm::atom() const { return node_->atom; }
const std::string& RawTerm::name() const { return node_->name; }
const std::vector<RawTerm::Arg>& RawTerm::args() const { return node_->args; }
std::size_t RawTerm::size() const { return node_->size; }
std::size_t RawTerm::height() const { return node_->height; }
bool RawTerm::has_star() const { return node_->has_star; }

bool operator==(const RawTerm& l, const RawTerm& r) {
  if (l.node_ == r.node_) return true;
  if (l.kind() != r.kind() || l.size() != r.size()) return false;
  switch (l.kind()) {
    case RawTerm::Kind::Star:
      return true;
    case RawTerm::Kind::Var:
      return l.atom() == r.atom();
    case RawTerm::Kind::Op:
      break;
  }
  if (l.name() != r.name() || l.args().size() != r.args().size()) return false;
  for (std::size_t i = 0; i < l.args().size(); ++i) {
    const auto& a = l.args()[i];
    const auto& b = r.args()[i];
    if (a.binders != b.binders || !(a.body == b.body)) return false;
  }
  return true;
}

void check_conforms(const BindingSignature& sig, const RawTerm& t) {
  if (!t.is_op()) return;
  check_op(sig, t.name(), t.args());
  for (const auto& a : t.args()) check_conforms(sig, a.body);
}

bool conforms(const BindingSignature& sig, const RawTerm& t) {
  try {
    check_conforms(sig, t);
    return true;
  } catch (const ArityError&) {
    return false;
  }
}

// ---------------------------------------------------------------------------
// Action, free and bound variables

RawTerm act(const Perm& p, const RawTerm& t) {
  if (p.is_identity()) return t;
  switch (t.kind()) {
    case RawTerm::Kind::Star:
      return t;
    case RawTerm::Kind::Var:
      return RawTerm::var(p(t.atom()));
    case RawTerm::Kind::Op:
      break;
  }
  std::vector<RawTerm::Arg> args;
  args.reserve(t.args().size());
  for (const auto& a : t.args()) {
    std::vector<Atom> binders;
    binders.reserve(a.binders.size());
    for (Atom b : a.binders) binders.push_back(p(b));
    args.push_back({std::move(binders), act(p, a.body)});
  }
  return make_op_unchecked(t.name(), std::move(args));
}

AlphaClass act(const Perm& p, const AlphaClass& c) { return canonicalize(act(p, c.canonical())); }

AtomSet fv(const RawTerm& t) {
  switch (t.kind()) {
    case RawTerm::Kind::Star:
      return {};
    case RawTerm::Kind::Var:
      return {t.atom()};
    case RawTerm::Kind::Op:
      break;
  }
  AtomSet out;
  for (const auto& a : t.args()) out.insert_all(fv(a.body) - AtomSet(a.binders));
  return out;
}

AtomSet bv(const RawTerm& t) {
  AtomSet out;
  if (!t.is_op()) return out;
  for (const auto& a : t.args()) {
    out.insert_all(AtomSet(a.binders));
    out.insert_all(bv(a.body));
  }
  return out;
}

AtomSet var(const RawTerm& t) { return fv(t) | bv(t); }

std::vector<Atom> binder_occurrences(const RawTerm& t) {
  std::vector<Atom> out;
  auto walk = [&](auto&& self, const RawTerm& u) -> void {
    if (!u.is_op()) return;
    for (const auto& a : u.args()) {
      out.insert(out.end(), a.binders.begin(), a.binders.end());
      self(self, a.body);
    }
  };
  walk(walk, t);
  return out;
}

// ---------------------------------------------------------------------------
// Alpha-equivalence and canonical forms

namespace {

using Pairing = std::vector<std::pair<Atom, Atom>>;

bool alpha_walk(const RawTerm& t, const RawTerm& s, Pairing& scope) {
  if (t.kind() != s.kind()) return false;
  switch (t.kind()) {
    case RawTerm::Kind::Star:
      return true;
    case RawTerm::Kind::Var: {
      for (auto it = scope.rbegin(); it != scope.rend(); ++it) {
        bool left = it->first == t.atom();
        bool right = it->second == s.atom();
        if (left || right) return left && right;
      }
      return t.atom() == s.atom();
    }
    case RawTerm::Kind::Op:
      break;
  }
  if (t.name() != s.name() || t.args().size() != s.args().size()) return false;
  for (std::size_t i = 0; i < t.args().size(); ++i) {
    const auto& a = t.args()[i];
    const auto& b = s.args()[i];
    if (a.binders.size() != b.binders.size()) return false;
    for (std::size_t j = 0; j < a.binders.size(); ++j) scope.emplace_back(a.binders[j], b.binders[j]);
    bool ok = alpha_walk(a.body, b.body, scope);
    scope.resize(scope.size() - a.binders.size());
    if (!ok) return false;
  }
  return true;
}

/// The k-th atom (0-based) outside a fixed set, computed on demand.
class FreshSequence {
 public:
  explicit FreshSequence(AtomSet avoid) : avoid_(std::move(avoid)) {}
  Atom at(std::size_t k) {
    while (seq_.size() <= k) {
      std::uint32_t next = seq_.empty() ? 0 : seq_.back().index() + 1;
      while (avoid_.contains(Atom(next))) ++next;
      seq_.push_back(Atom(next));
    }
    return seq_[k];
  }

 private:
  AtomSet avoid_;
  std::vector<Atom> seq_;
};

Atom lookup(const Pairing& scope, Atom a) {
  for (auto it = scope.rbegin(); it != scope.rend(); ++it)
    if (it->first == a) return it->second;
  return a;
}

RawTerm canonical_walk(const RawTerm& t, Pairing& scope, FreshSequence& fresh) {
  switch (t.kind()) {
    case RawTerm::Kind::Star:
      return t;
    case RawTerm::Kind::Var:
      return RawTerm::var(lookup(scope, t.atom()));
    case RawTerm::Kind::Op:
      break;
  }
  std::vector<RawTerm::Arg> args;
  args.reserve(t.args().size());
  for (const auto& a : t.args()) {
    std::vector<Atom> binders;
    for (Atom b : a.binders) {
      // Enclosing canonical binders are exactly the first scope.size()
      // atoms of the fresh sequence, so the next one is the smallest
      // atom avoiding both them and fv(t).
      Atom c = fresh.at(scope.size());
      scope.emplace_back(b, c);
      binders.push_back(c);
    }
    RawTerm body = canonical_walk(a.body, scope, fresh);
    scope.resize(scope.size() - a.binders.size());
    args.push_back({std::move(binders), std::move(body)});
  }
  return make_op_unchecked(t.name(), std::move(args));
}

}  // namespace

bool alpha_eq(const RawTerm& t, const RawTerm& s) {
  Pairing scope;
  return alpha_walk(t, s, scope);
}

AlphaClass canonicalize(const RawTerm& t) {
  Pairing scope;
  FreshSequence fresh(fv(t));
  return AlphaClass(canonical_walk(t, scope, fresh));
}

TruncTerm truncate_raw(const RawTerm& t, std::size_t depth) {
  if (depth == 0) return RawTerm::star();
  if (!t.is_op()) return t;
  std::vector<RawTerm::Arg> args;
  args.reserve(t.args().size());
  for (const auto& a : t.args()) args.push_back({a.binders, truncate_raw(a.body, depth - 1)});
  return make_op_unchecked(t.name(), std::move(args));
}

// ---------------------------------------------------------------------------
// Metrics

double Dyadic::to_double() const {
  if (is_zero()) return 0.0;
  double v = 1.0;
  for (unsigned i = 0; i < *exponent_; ++i) v /= 2.0;
  return v;
}

std::string Dyadic::str() const {
  if (is_zero()) return "0";
  if (*exponent_ == 0) return "1";
  if (*exponent_ < 64) return "1/" + std::to_string(std::uint64_t{1} << *exponent_);
  return "2^-" + std::to_string(*exponent_);
}

std::strong_ordering operator<=>(const Dyadic& l, const Dyadic& r) {
  if (l.is_zero() || r.is_zero()) return !l.is_zero() <=> !r.is_zero();
  return r.exponent() <=> l.exponent();
}

namespace {

/// Level (root = 1) of the shallowest node where the two terms disagree.
std::optional<std::size_t> first_difference(const RawTerm& t, const RawTerm& s, std::size_t level) {
  if (t.kind() != s.kind()) return level;
  switch (t.kind()) {
    case RawTerm::Kind::Star:
      return std::nullopt;
    case RawTerm::Kind::Var:
      if (t.atom() != s.atom()) return level;
      return std::nullopt;
    case RawTerm::Kind::Op:
      break;
  }
  if (t.name() != s.name() || t.args().size() != s.args().size()) return level;
  for (std::size_t i = 0; i < t.args().size(); ++i)
    if (t.args()[i].binders != s.args()[i].binders) return level;
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < t.args().size(); ++i) {
    auto d = first_difference(t.args()[i].body, s.args()[i].body, level + 1);
    if (d && (!best || *d < *best)) best = d;
  }
  return best;
}

}  // namespace

Dyadic dist_raw(const RawTerm& t, const RawTerm& s) {
  auto level = first_difference(t, s, 1);
  if (!level) return Dyadic::zero();
  return Dyadic::pow2_neg(static_cast<unsigned>(*level - 1));
}

Dyadic dist_alpha_raw(const RawTerm& t, const RawTerm& s) {
  if (alpha_eq(t, s)) return Dyadic::zero();
  // truncations at depth 0 always agree; find the first depth that differs
  std::size_t depth = 1;
  while (alpha_eq(truncate_raw(t, depth), truncate_raw(s, depth))) ++depth;
  return Dyadic::pow2_neg(static_cast<unsigned>(depth - 1));
}

// ---------------------------------------------------------------------------
// Safety

bool is_safe(const RawTerm& t) {
  auto binders = binder_occurrences(t);
  AtomSet distinct(binders);
  return distinct.size() == binders.size() && !distinct.intersects(fv(t));
}

RawTerm make_safe(const RawTerm& t, const AtomSet& avoid) {
  AtomSet used = fv(t) | avoid;
  Pairing scope;
  auto walk = [&](auto&& self, const RawTerm& u) -> RawTerm {
    switch (u.kind()) {
      case RawTerm::Kind::Star:
        return u;
      case RawTerm::Kind::Var:
        return RawTerm::var(lookup(scope, u.atom()));
      case RawTerm::Kind::Op:
        break;
    }
    std::vector<RawTerm::Arg> args;
    for (const auto& a : u.args()) {
      std::vector<Atom> binders;
      for (Atom b : a.binders) {
        Atom c = fresh_atom(used);
        used.insert(c);
        scope.emplace_back(b, c);
        binders.push_back(c);
      }
      RawTerm body = self(self, a.body);
      scope.resize(scope.size() - a.binders.size());
      args.push_back({std::move(binders), std::move(body)});
    }
    return make_op_unchecked(u.name(), std::move(args));
  };
  return walk(walk, t);
}

AtomSet bv_rel(const RawTerm& t) { return var(t) - fv(t); }

}  // namespace infnom
