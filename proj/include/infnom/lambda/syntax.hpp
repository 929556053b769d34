#pragma once

// Concrete syntax for lambda terms and for terms over arbitrary signatures.
//
//   M ::= \x y. M | λx. M | M M | (M) | x | _|_ | ⊥ | #c | *
//       | let rec L = M and ... in M
//
// Identifiers are [A-Za-z_][A-Za-z0-9_']*; `_<digits>` names that atom
// index directly. An abstraction or let body extends as far right as
// possible. Inside terms, labels and lambda-bound names share one scope;
// the innermost binding of a name wins.

#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "infnom/infinite.hpp"
#include "infnom/lambda/term.hpp"
#include "infnom/signature.hpp"

namespace infnom::lambda {

/// Named definitions forming one `let rec` system around a term.
class Definitions {
 public:
  void add(std::string name, std::string source);
  /// Lines `name = term`; blank lines and lines starting with `--` skipped.
  static Definitions parse(std::string_view text);
  const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

/// Library definitions in scope of every parse: `fix`.
const Definitions& prelude();

struct Parsed {
  /// Finite when no cycle is reachable from the root.
  std::variant<RawTerm, InfTerm> value;

  bool is_finite() const { return std::holds_alternative<RawTerm>(value); }
  const RawTerm& raw() const { return std::get<RawTerm>(value); }
  InfTerm inf() const;
  Term term() const;
};

/// Throws ParseError. `defs` extend the prelude.
Parsed parse(std::string_view src, const Definitions* defs = nullptr);
/// As parse, rejecting cyclic results with ParseError.
RawTerm parse_raw(std::string_view src, const Definitions* defs = nullptr);
Term parse_term(std::string_view src, const Definitions* defs = nullptr);

struct PrintOptions {
  bool unicode = false;
  /// Render unknown bottoms as plain bottoms.
  bool assume_bot = false;
};

std::string print(const RawTerm& t, const PrintOptions& options = {});
/// Throws NotRational when t has lazy parts that are not finite.
std::string print(const Term& t, const PrintOptions& options = {});

/// Generic syntax: `x`, `c`, `op(<x,y>.t, s)`, `*`. Identifiers naming an
/// operation of `sig` are operations, all others are variables.
RawTerm parse_generic(std::string_view src, const BindingSignature& sig);
std::string print_generic(const RawTerm& t);

}  // namespace infnom::lambda
