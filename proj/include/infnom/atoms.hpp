#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace infnom {

/// A name drawn from the countably infinite set of atoms.
///
/// Identity is the index; display names live in a process-wide interning
/// table, so two atoms print differently iff they are different atoms.
class Atom {
 public:
  constexpr Atom() = default;
  constexpr explicit Atom(std::uint32_t index) : index_(index) {}

  /// Interns a source identifier. The same identifier always yields the
  /// same atom within one process. Identifiers of the form `_<digits>`
  /// denote the atom with that index directly.
  static Atom named(std::string_view name);

  constexpr std::uint32_t index() const { return index_; }

  /// Display name: the interned identifier, or `_<index>` for atoms that
  /// never received one.
  std::string name() const;

  friend constexpr auto operator<=>(Atom, Atom) = default;

 private:
  std::uint32_t index_ = 0;
};

/// Finite set of atoms, kept as a sorted vector.
class AtomSet {
 public:
  using const_iterator = std::vector<Atom>::const_iterator;

  AtomSet() = default;
  AtomSet(std::initializer_list<Atom> atoms);
  explicit AtomSet(std::vector<Atom> atoms);

  bool contains(Atom a) const;
  bool empty() const { return atoms_.empty(); }
  std::size_t size() const { return atoms_.size(); }
  const_iterator begin() const { return atoms_.begin(); }
  const_iterator end() const { return atoms_.end(); }
  const std::vector<Atom>& atoms() const { return atoms_; }

  void insert(Atom a);
  void erase(Atom a);
  void insert_all(const AtomSet& other);

  bool is_subset_of(const AtomSet& other) const;
  bool intersects(const AtomSet& other) const;

  friend AtomSet operator|(const AtomSet& l, const AtomSet& r);
  friend AtomSet operator&(const AtomSet& l, const AtomSet& r);
  friend AtomSet operator-(const AtomSet& l, const AtomSet& r);
  friend bool operator==(const AtomSet&, const AtomSet&) = default;

 private:
  std::vector<Atom> atoms_;
};

std::string to_string(const AtomSet& s);

/// Finite permutation of atoms. Only non-fixed points are stored.
class Perm {
 public:
  Perm() = default;

  /// Builds a permutation from an explicit finite map. Throws
  /// std::invalid_argument unless the map is a bijection on its domain.
  static Perm from_map(const std::map<Atom, Atom>& mapping);

  Atom operator()(Atom a) const;
  bool is_identity() const { return moved_.empty(); }
  const std::map<Atom, Atom>& moved() const { return moved_; }

  friend bool operator==(const Perm&, const Perm&) = default;

 private:
  explicit Perm(std::map<Atom, Atom> moved) : moved_(std::move(moved)) {}
  friend Perm swap(Atom a, Atom b);
  friend Perm compose(const Perm& p, const Perm& q);
  friend Perm inverse(const Perm& p);

  std::map<Atom, Atom> moved_;
};

/// The transposition (a b); the identity when a == b.
Perm swap(Atom a, Atom b);
/// p after q: compose(p, q)(a) == p(q(a)).
Perm compose(const Perm& p, const Perm& q);
Perm inverse(const Perm& p);
inline Atom apply(const Perm& p, Atom a) { return p(a); }
/// The atoms p does not fix.
AtomSet perm_support(const Perm& p);

AtomSet act(const Perm& p, const AtomSet& s);

/// Smallest-index atom outside `avoid`.
Atom fresh_atom(const AtomSet& avoid);

}  // namespace infnom
