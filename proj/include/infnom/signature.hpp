#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "infnom/atoms.hpp"
#include "infnom/nominal.hpp"

namespace infnom {

/// Operations with their binding arities: `ar(op) = [n1, ..., nk]` means
/// op takes k arguments and binds n_i names in the i-th one.
class BindingSignature {
 public:
  using Arity = std::vector<std::size_t>;

  /// Throws std::invalid_argument on a duplicate name.
  void add(std::string name, Arity arity);

  /// Names starting with `prefix` are accepted as constants without being
  /// declared, giving an open constant alphabet.
  void allow_constant_alphabet(char prefix) { constant_prefix_ = prefix; }
  std::optional<char> constant_prefix() const { return constant_prefix_; }

  bool contains(std::string_view name) const;
  /// Arity of `name`, or nullopt for unknown operations.
  std::optional<Arity> arity(std::string_view name) const;
  bool is_constant(std::string_view name) const;
  std::vector<std::string> constants() const;
  const std::map<std::string, Arity, std::less<>>& operations() const { return ops_; }

  /// One operation per line, `name: n1,n2,...,nk`, or `name:` for a
  /// constant. Blank lines and lines starting with `#` are skipped.
  static BindingSignature parse(std::string_view text);
  std::string to_text() const;

 private:
  std::map<std::string, Arity, std::less<>> ops_;
  std::optional<char> constant_prefix_;
};

/// Finite raw term over a binding signature, not quotiented by alpha.
///
/// The same node type also carries the truncation leaf `*`; a term with
/// star leaves is a truncation (see TruncTerm).
class RawTerm {
 public:
  enum class Kind { Var, Op, Star };
  struct Arg;

  static RawTerm var(Atom a);
  static RawTerm star();
  /// Checked construction: throws ArityError unless `name` exists in `sig`
  /// with a matching arity and each argument's binders are distinct.
  static RawTerm op(const BindingSignature& sig, std::string name, std::vector<Arg> args);

  Kind kind() const;
  bool is_var() const { return kind() == Kind::Var; }
  bool is_op() const { return kind() == Kind::Op; }
  bool is_star() const { return kind() == Kind::Star; }
  Atom atom() const;
  const std::string& name() const;
  const std::vector<Arg>& args() const;

  std::size_t size() const;
  std::size_t height() const;
  bool has_star() const;

  friend bool operator==(const RawTerm& l, const RawTerm& r);

 private:
  struct Node;
  explicit RawTerm(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  friend RawTerm make_op_unchecked(std::string name, std::vector<Arg> args);

  std::shared_ptr<const Node> node_;
};

/// One argument of an operation: the names it binds and its body.
struct RawTerm::Arg {
  std::vector<Atom> binders;
  RawTerm body;
};

/// A RawTerm that may contain `*` leaves.
using TruncTerm = RawTerm;

/// Builds an operation node without consulting a signature. For
/// arity-preserving transformations of terms that were already checked.
RawTerm make_op_unchecked(std::string name, std::vector<RawTerm::Arg> args);

/// Throws ArityError if `t` does not conform to `sig`.
void check_conforms(const BindingSignature& sig, const RawTerm& t);
bool conforms(const BindingSignature& sig, const RawTerm& t);

RawTerm act(const Perm& p, const RawTerm& t);
inline RawTerm act_raw(const Perm& p, const RawTerm& t) { return act(p, t); }

AtomSet fv(const RawTerm& t);
AtomSet bv(const RawTerm& t);
/// Every atom occurring in t, bound or free; the support of a raw term.
AtomSet var(const RawTerm& t);
inline AtomSet supp(const RawTerm& t) { return var(t); }

bool alpha_eq(const RawTerm& t, const RawTerm& s);

/// Canonical representative of an alpha-equivalence class. Constructed
/// only by canonicalize; equality is structural equality of representatives.
class AlphaClass {
 public:
  const RawTerm& canonical() const { return canonical_; }
  friend bool operator==(const AlphaClass&, const AlphaClass&) = default;

 private:
  explicit AlphaClass(RawTerm canonical) : canonical_(std::move(canonical)) {}
  friend AlphaClass canonicalize(const RawTerm& t);
  RawTerm canonical_;
};

/// Binders are renamed depth-first, left to right, to the smallest atoms
/// clashing neither with fv(t) nor with the enclosing canonical binders.
AlphaClass canonicalize(const RawTerm& t);

AlphaClass act(const Perm& p, const AlphaClass& c);
inline AtomSet supp(const AlphaClass& c) { return fv(c.canonical()); }

TruncTerm truncate_raw(const RawTerm& t, std::size_t depth);

/// Either 0 or 2^-exponent.
class Dyadic {
 public:
  static Dyadic zero() { return Dyadic(); }
  static Dyadic pow2_neg(unsigned exponent) { return Dyadic(exponent); }

  bool is_zero() const { return !exponent_.has_value(); }
  /// Only meaningful when !is_zero().
  unsigned exponent() const { return *exponent_; }
  double to_double() const;
  /// "0", "1", "1/2", "1/4", ...
  std::string str() const;

  friend bool operator==(const Dyadic&, const Dyadic&) = default;
  friend std::strong_ordering operator<=>(const Dyadic& l, const Dyadic& r);

 private:
  Dyadic() = default;
  explicit Dyadic(unsigned e) : exponent_(e) {}
  std::optional<unsigned> exponent_;
};

/// 2^-m where m is the largest depth at which the truncations coincide.
Dyadic dist_raw(const RawTerm& t, const RawTerm& s);
/// As dist_raw, comparing truncations up to alpha-equivalence.
Dyadic dist_alpha_raw(const RawTerm& t, const RawTerm& s);

/// Binder occurrences pairwise distinct and disjoint from fv(t).
bool is_safe(const RawTerm& t);
/// An alpha-variant of t that is safe and whose binders also avoid `avoid`.
RawTerm make_safe(const RawTerm& t, const AtomSet& avoid = {});
/// supp(t) \ supp([t]), the atoms that occur only bound.
AtomSet bv_rel(const RawTerm& t);

/// Binder atoms of every binder occurrence, in depth-first order.
std::vector<Atom> binder_occurrences(const RawTerm& t);

}  // namespace infnom
