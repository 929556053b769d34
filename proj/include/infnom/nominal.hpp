#pragma once

// Nominal values: the permutation action, support, freshness, and
// name-abstraction with concretion.

#include <concepts>
#include <utility>
#include <vector>

#include "infnom/atoms.hpp"
#include "infnom/errors.hpp"

namespace infnom {

inline Atom act(const Perm& p, Atom a) { return p(a); }
inline AtomSet supp(Atom a) { return AtomSet{a}; }
inline AtomSet supp(const AtomSet& s) { return s; }

/// A type with a permutation action and a computable least finite support.
template <class T>
concept Nominal = std::equality_comparable<T> && requires(const T& x, const Perm& p) {
  { act(p, x) } -> std::same_as<T>;
  { supp(x) } -> std::same_as<AtomSet>;
};

template <Nominal A, Nominal B>
std::pair<A, B> act(const Perm& p, const std::pair<A, B>& x) {
  return {act(p, x.first), act(p, x.second)};
}

template <Nominal A, Nominal B>
AtomSet supp(const std::pair<A, B>& x) {
  return supp(x.first) | supp(x.second);
}

template <Nominal A>
std::vector<A> act(const Perm& p, const std::vector<A>& xs) {
  std::vector<A> out;
  out.reserve(xs.size());
  for (const auto& x : xs) out.push_back(act(p, x));
  return out;
}

template <Nominal A>
AtomSet supp(const std::vector<A>& xs) {
  AtomSet out;
  for (const auto& x : xs) out.insert_all(supp(x));
  return out;
}

template <Nominal X>
bool is_fresh(Atom a, const X& x) {
  return !supp(x).contains(a);
}

/// Name-abstraction <a>x, the alpha-class of the pair (a, x).
///
/// Stored canonically: the binder is the smallest atom outside
/// supp(x) \ {a}, and the body is renamed to match. Structural equality of
/// stored forms then coincides with abs_eq.
template <Nominal X>
class Abstraction {
 public:
  Abstraction(Atom binder, X body) : binder_(binder), body_(std::move(body)) {
    AtomSet others = supp(body_);
    others.erase(binder);
    Atom canonical = fresh_atom(others);
    if (canonical != binder_) {
      body_ = act(swap(binder_, canonical), body_);
      binder_ = canonical;
    }
  }

  Atom binder() const { return binder_; }
  const X& body() const { return body_; }

  friend bool operator==(const Abstraction&, const Abstraction&) = default;

 private:
  Atom binder_;
  X body_;
};

template <Nominal X>
Abstraction<X> abs_new(Atom a, X x) {
  return Abstraction<X>(a, std::move(x));
}

template <Nominal X>
AtomSet supp(const Abstraction<X>& ab) {
  AtomSet s = supp(ab.body());
  s.erase(ab.binder());
  return s;
}

template <Nominal X>
Abstraction<X> abs_act(const Perm& p, const Abstraction<X>& ab) {
  return Abstraction<X>(p(ab.binder()), act(p, ab.body()));
}

template <Nominal X>
Abstraction<X> act(const Perm& p, const Abstraction<X>& ab) {
  return abs_act(p, ab);
}

/// Alpha-equality of abstractions, decided by the defining condition:
/// (x1 z).u1 == (x2 z).u2 for a z fresh for both binders and bodies.
template <Nominal X>
bool abs_eq(const Abstraction<X>& l, const Abstraction<X>& r) {
  AtomSet avoid = supp(l.body()) | supp(r.body());
  avoid.insert(l.binder());
  avoid.insert(r.binder());
  Atom z = fresh_atom(avoid);
  return act(swap(l.binder(), z), l.body()) == act(swap(r.binder(), z), r.body());
}

/// ab @ z, defined when z is fresh for ab: (z binder).body.
template <Nominal X>
X concretion(const Abstraction<X>& ab, Atom z) {
  if (supp(ab).contains(z))
    throw NotFresh("concretion at " + z.name() + ", which is in the support of the abstraction");
  return act(swap(z, ab.binder()), ab.body());
}

}  // namespace infnom
