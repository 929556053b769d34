#include "oracles.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace oracle {

using infnom::InfTerm;
using infnom::make_op_unchecked;

namespace {

const std::string kAbs = "Abs";
const std::string kApp = "App";

RawTerm abs_node(Atom x, RawTerm body) { return make_op_unchecked(kAbs, {{{x}, std::move(body)}}); }
RawTerm app_node(RawTerm f, RawTerm a) { return make_op_unchecked(kApp, {{{}, std::move(f)}, {{}, std::move(a)}}); }

void all_atoms(const RawTerm& t, AtomSet& out) {
  if (t.is_var()) out.insert(t.atom());
  if (!t.is_op()) return;
  for (const auto& a : t.args()) {
    for (Atom b : a.binders) out.insert(b);
    all_atoms(a.body, out);
  }
}

AtomSet all_atoms(const RawTerm& t) {
  AtomSet out;
  all_atoms(t, out);
  return out;
}

RawTerm swap_in(const RawTerm& t, Atom a, Atom b) {
  auto sw = [&](Atom c) { return c == a ? b : c == b ? a : c; };
  if (t.is_var()) return RawTerm::var(sw(t.atom()));
  if (!t.is_op()) return t;
  std::vector<RawTerm::Arg> args;
  for (const auto& arg : t.args()) {
    std::vector<Atom> bs;
    for (Atom c : arg.binders) bs.push_back(sw(c));
    args.push_back({bs, swap_in(arg.body, a, b)});
  }
  return make_op_unchecked(t.name(), std::move(args));
}

Atom beyond(const AtomSet& s, std::size_t k) {
  std::uint32_t top = 0;
  for (Atom a : s) top = std::max(top, a.index() + 1);
  return Atom(top + static_cast<std::uint32_t>(k));
}

std::vector<std::vector<Atom>> distinct_tuples(const std::vector<Atom>& atoms, std::size_t k) {
  std::vector<std::vector<Atom>> out;
  std::vector<Atom> cur;
  std::function<void()> go = [&] {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (Atom a : atoms) {
      if (std::find(cur.begin(), cur.end(), a) != cur.end()) continue;
      cur.push_back(a);
      go();
      cur.pop_back();
    }
  };
  go();
  return out;
}

}  // namespace

std::vector<Atom> atom_pool(std::size_t n, std::uint32_t base) {
  std::vector<Atom> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(Atom(base + static_cast<std::uint32_t>(i)));
  return out;
}

RawTerm random_lambda(Rng& rng, std::size_t max_height, const std::vector<Atom>& atoms) {
  std::uniform_int_distribution<std::size_t> pick(0, atoms.size() - 1);
  std::uniform_int_distribution<int> kind(0, 9);
  int k = max_height <= 1 ? 0 : kind(rng);
  if (k < 2) return RawTerm::var(atoms[pick(rng)]);
  if (k < 6) return abs_node(atoms[pick(rng)], random_lambda(rng, max_height - 1, atoms));
  RawTerm f = random_lambda(rng, max_height - 1, atoms);
  return app_node(std::move(f), random_lambda(rng, max_height - 1, atoms));
}

RawTerm random_generic(Rng& rng, const infnom::BindingSignature& sig, std::size_t max_height,
                       const std::vector<Atom>& atoms) {
  std::uniform_int_distribution<std::size_t> pick(0, atoms.size() - 1);
  std::vector<std::string> ops;
  for (const auto& [name, arity] : sig.operations())
    if (!arity.empty()) ops.push_back(name);
  std::uniform_int_distribution<std::size_t> op_pick(0, ops.size());
  std::size_t choice = max_height <= 1 ? ops.size() : op_pick(rng);
  if (choice == ops.size()) {
    std::vector<std::string> leaves = sig.constants();
    std::uniform_int_distribution<std::size_t> leaf(0, leaves.size());
    std::size_t l = leaves.empty() ? 0 : leaf(rng);
    if (l < leaves.size()) return make_op_unchecked(leaves[l], {});
    return RawTerm::var(atoms[pick(rng)]);
  }
  const std::string& name = ops[choice];
  std::vector<RawTerm::Arg> args;
  for (std::size_t k : *sig.arity(name)) {
    std::vector<Atom> pool = atoms;
    std::shuffle(pool.begin(), pool.end(), rng);
    std::vector<Atom> binders(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(std::min(k, pool.size())));
    args.push_back({binders, random_generic(rng, sig, max_height - 1, atoms)});
  }
  return make_op_unchecked(name, std::move(args));
}

std::vector<RawTerm> all_lambda_terms(std::size_t h, const std::vector<Atom>& atoms) {
  std::vector<RawTerm> out;
  for (Atom a : atoms) out.push_back(RawTerm::var(a));
  if (h <= 1) return out;
  std::vector<RawTerm> sub = all_lambda_terms(h - 1, atoms);
  for (Atom a : atoms)
    for (const auto& b : sub) out.push_back(abs_node(a, b));
  for (const auto& f : sub)
    for (const auto& x : sub) out.push_back(app_node(f, x));
  return out;
}

std::vector<RawTerm> all_generic_terms(const infnom::BindingSignature& sig, std::size_t h,
                                       const std::vector<Atom>& atoms) {
  std::vector<RawTerm> out;
  for (Atom a : atoms) out.push_back(RawTerm::var(a));
  for (const auto& c : sig.constants()) out.push_back(make_op_unchecked(c, {}));
  if (h <= 1) return out;
  std::vector<RawTerm> sub = all_generic_terms(sig, h - 1, atoms);
  for (const auto& [name, arity] : sig.operations()) {
    if (arity.empty()) continue;
    std::vector<std::vector<RawTerm::Arg>> partial{{}};
    for (std::size_t k : arity) {
      std::vector<std::vector<RawTerm::Arg>> next;
      for (const auto& p : partial)
        for (const auto& bs : distinct_tuples(atoms, k))
          for (const auto& body : sub) {
            auto q = p;
            q.push_back({bs, body});
            next.push_back(std::move(q));
          }
      partial = std::move(next);
    }
    for (auto& args : partial) out.push_back(make_op_unchecked(name, std::move(args)));
  }
  return out;
}

infnom::Perm random_perm(Rng& rng, const std::vector<Atom>& atoms) {
  std::vector<Atom> image = atoms;
  std::shuffle(image.begin(), image.end(), rng);
  std::map<Atom, Atom> m;
  for (std::size_t i = 0; i < atoms.size(); ++i) m[atoms[i]] = image[i];
  return infnom::Perm::from_map(m);
}

InfTerm random_rational(Rng& rng, std::size_t states, const std::vector<Atom>& atoms, bool closed) {
  using infnom::Layer;
  using infnom::op_layer;
  std::uniform_int_distribution<std::size_t> pick(0, atoms.size() - 1);
  std::uniform_int_distribution<std::size_t> state(0, states - 1);
  std::uniform_int_distribution<int> kind(0, 9);
  infnom::RationalSystem sys;
  for (std::size_t i = 0; i < states; ++i) {
    int k = kind(rng);
    if (k < 3)
      sys.states.push_back(infnom::VarLayer{atoms[pick(rng)]});
    else if (k < 6)
      sys.states.push_back(op_layer<std::size_t>(kAbs, {{{atoms[pick(rng)]}, state(rng)}}));
    else
      sys.states.push_back(op_layer<std::size_t>(kApp, {{{}, state(rng)}, {{}, state(rng)}}));
  }
  InfTerm t = infnom::rational(sys);
  if (!closed) return t;
  for (Atom a : infnom::fv_exact(t)) {
    sys.states.push_back(op_layer<std::size_t>(kAbs, {{{a}, sys.root}}));
    sys.root = sys.states.size() - 1;
  }
  return infnom::rational(sys);
}

bool alpha_definitional(const RawTerm& t, const RawTerm& s) {
  if (t.kind() != s.kind()) return false;
  if (t.is_star()) return true;
  if (t.is_var()) return t.atom() == s.atom();
  if (t.name() != s.name() || t.args().size() != s.args().size()) return false;
  AtomSet seen = all_atoms(t) | all_atoms(s);
  for (std::size_t i = 0; i < t.args().size(); ++i) {
    const auto& a = t.args()[i];
    const auto& b = s.args()[i];
    if (a.binders.size() != b.binders.size()) return false;
    RawTerm l = a.body, r = b.body;
    for (std::size_t j = 0; j < a.binders.size(); ++j) {
      Atom z = beyond(seen, j);
      l = swap_in(l, a.binders[j], z);
      r = swap_in(r, b.binders[j], z);
    }
    if (!alpha_definitional(l, r)) return false;
  }
  return true;
}

namespace {

std::uint32_t next_fresh = 3'000'000;

RawTerm freshen(const RawTerm& t, std::map<Atom, Atom>& ren) {
  if (t.is_var()) {
    auto it = ren.find(t.atom());
    return it == ren.end() ? t : RawTerm::var(it->second);
  }
  if (!t.is_op()) return t;
  std::vector<RawTerm::Arg> args;
  for (const auto& a : t.args()) {
    auto inner = ren;
    std::vector<Atom> bs;
    for (Atom b : a.binders) {
      Atom z(next_fresh++);
      inner[b] = z;
      bs.push_back(z);
    }
    args.push_back({bs, freshen(a.body, inner)});
  }
  return make_op_unchecked(t.name(), std::move(args));
}

RawTerm replace(const RawTerm& t, Atom x, const RawTerm& n) {
  if (t.is_var()) return t.atom() == x ? n : t;
  if (!t.is_op()) return t;
  std::vector<RawTerm::Arg> args;
  for (const auto& a : t.args()) args.push_back({a.binders, replace(a.body, x, n)});
  return make_op_unchecked(t.name(), std::move(args));
}

/// Atom positions in preorder, binders before the body.
void positions(const RawTerm& t, std::size_t& count, std::size_t& binders) {
  if (t.is_var()) ++count;
  if (!t.is_op()) return;
  for (const auto& a : t.args()) {
    count += a.binders.size();
    binders += a.binders.size();
    positions(a.body, count, binders);
  }
}

RawTerm rebuild(const RawTerm& t, const std::vector<Atom>& assign, std::size_t& at) {
  if (t.is_var()) return RawTerm::var(assign[at++]);
  if (!t.is_op()) return t;
  std::vector<RawTerm::Arg> args;
  for (const auto& a : t.args()) {
    std::vector<Atom> bs;
    for (std::size_t j = 0; j < a.binders.size(); ++j) bs.push_back(assign[at++]);
    args.push_back({bs, rebuild(a.body, assign, at)});
  }
  return make_op_unchecked(t.name(), std::move(args));
}

}  // namespace

RawTerm naive_subst(const RawTerm& m, Atom x, const RawTerm& n) {
  std::map<Atom, Atom> ren;
  return replace(freshen(m, ren), x, n);
}

bool safe_brute_force(const RawTerm& t) {
  AtomSet var_t = all_atoms(t);
  std::size_t binders = 0, count = 0;
  positions(t, count, binders);
  std::vector<Atom> old(var_t.begin(), var_t.end());
  std::vector<Atom> extra;
  for (std::size_t j = 0; j < binders; ++j) extra.push_back(beyond(var_t, j));

  std::size_t best = 0;
  std::vector<Atom> assign;
  std::function<void(std::size_t)> go = [&](std::size_t used) {
    if (assign.size() == count) {
      std::size_t at = 0;
      RawTerm v = rebuild(t, assign, at);
      if (alpha_definitional(v, t)) best = std::max(best, all_atoms(v).size());
      return;
    }
    for (Atom a : old) {
      assign.push_back(a);
      go(used);
      assign.pop_back();
    }
    // new atoms are interchangeable, so only the next unused one is tried
    for (std::size_t j = 0; j < std::min(used + 1, extra.size()); ++j) {
      assign.push_back(extra[j]);
      go(std::max(used, j + 1));
      assign.pop_back();
    }
  };
  go(0);
  return var_t.size() == best;
}

Agreement structural_agreement(const InfTerm& t, const InfTerm& s, std::size_t cap) {
  for (std::size_t n = 1; n <= cap; ++n)
    if (!(infnom::truncate(t, n) == infnom::truncate(s, n))) return {n - 1, true};
  return {cap, false};
}

Agreement alpha_agreement(const InfTerm& t, const InfTerm& s, std::size_t cap) {
  for (std::size_t n = 1; n <= cap; ++n)
    if (!alpha_definitional(infnom::truncate(t, n), infnom::truncate(s, n))) return {n - 1, true};
  return {cap, false};
}

}  // namespace oracle
