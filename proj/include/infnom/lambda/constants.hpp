#pragma once

// Translation of free variables into constants and back.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "infnom/infinite.hpp"
#include "infnom/lambda/term.hpp"

namespace infnom::lambda {

/// A bijection rho between atoms and constant names.
struct ConstantMap {
  std::function<std::string(Atom)> to_constant;
  /// Inverse on the image of to_constant, nullopt elsewhere.
  std::function<std::optional<Atom>(std::string_view)> to_atom;

  /// Atom i <-> `<prefix><i>`.
  static ConstantMap indexed(std::string prefix = "c");
};

/// Free occurrences become constants; binders are untouched.
Term tr_to_constants(const Term& t, const ConstantMap& rho);
InfTerm tr_to_constants(const InfTerm& t, const ConstantMap& rho);

/// Inverse translation on finite terms. Binders are first renamed away
/// from every atom that some occurring constant maps back to. With a
/// budget, a representative needing an atom index >= budget raises
/// RepresentativeClash.
Term tr_from_constants(const Term& t, const ConstantMap& rho,
                       std::optional<std::uint32_t> atom_budget = std::nullopt);

}  // namespace infnom::lambda
