#pragma once

// Lambda terms with bottom and constants, possibly with lazily unfolded
// infinite parts.

#include <cstddef>
#include <initializer_list>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "infnom/atoms.hpp"
#include "infnom/infinite.hpp"
#include "infnom/signature.hpp"

namespace infnom::lambda {

inline constexpr std::string_view kAbs = "Abs";
inline constexpr std::string_view kApp = "App";
inline constexpr std::string_view kBot = "Bot";
/// Bottom produced by fuel exhaustion rather than by a divergence proof.
inline constexpr std::string_view kBotUnknown = "BotUnknown";
inline constexpr char kConstantPrefix = '#';

/// Abs: [1], App: [0,0], Bot and BotUnknown constants, and the open
/// alphabet of `#name` constants.
const BindingSignature& signature();

inline std::string constant_op(std::string_view name) {
  return std::string(1, kConstantPrefix) + std::string(name);
}
/// The constant name of an op name like `#c`, or nullopt.
std::optional<std::string> constant_name(std::string_view op);

class Term {
 public:
  enum class Kind { Var, Abs, App, Bot, UnknownBot, Const, Lazy };

  static Term var(Atom a);
  static Term abs(Atom binder, Term body);
  static Term app(Term fun, Term arg);
  static Term bot();
  static Term unknown_bot();
  static Term constant(std::string name);
  /// An unexpanded infinitary subterm.
  static Term lazy(InfTerm t);

  Kind kind() const;
  bool is(Kind k) const { return kind() == k; }
  /// Variable of Var, binder of Abs.
  Atom atom() const;
  const Term& body() const;
  const Term& fun() const;
  const Term& arg() const;
  /// Name of a Const, without the prefix.
  const std::string& name() const;
  const InfTerm& inf() const;

  /// Free variables; for lazy parts the declared support stands in.
  const AtomSet& fv() const;
  std::size_t size() const;
  std::size_t height() const;
  bool has_inf() const;

  struct Node;

 private:
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

Term from_raw(const RawTerm& t);
/// Throws NotRational when t has lazy parts.
RawTerm to_raw(const Term& t);
InfTerm to_inf(const Term& t);
/// One layer of a top-level lazy part made explicit; other terms unchanged.
Term expose(const Term& t);

Term act(const Perm& p, const Term& t);

/// A string that coincides exactly for alpha-equivalent finite terms.
std::string alpha_key(const Term& t);
bool alpha_eq(const Term& t, const Term& s);

/// Left-nested application f a1 ... an.
Term apps(Term f, std::initializer_list<Term> args);

}  // namespace infnom::lambda
