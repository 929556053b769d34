#pragma once

// Standard combinators and the classic infinitary example terms.

#include <cstddef>

#include "infnom/infinite.hpp"
#include "infnom/lambda/term.hpp"

namespace infnom::lambda {

/// x_k, the atom named `x<k>`.
Atom indexed_var(std::size_t k);

Term identity();
/// \x. x x
Term self_apply();
/// (\x. x x)(\x. x x)
Term omega();
/// \f. (\x. f (x x)) (\x. f (x x))
Term fix();
Term fix(Term f);
/// fix (\f x y. x y (f (x y)))
Term pinfbv();

/// \x0. \x1. \x2. ...
InfTerm ogre();
/// rec T = \x. T
InfTerm ogre_rational();
/// \x0. \x1. x0 x1 (\x2. x0 x1 x2 (\x3. ...))
InfTerm infbv();
/// x0 (x1 (x2 (...))). No finite support exists, so it is declared with
/// empty support and observation past the root raises SupportViolation.
InfTerm allfv();
/// #c0 (#c1 (#c2 (...))), closed because constants have empty support.
InfTerm allconst();

/// \x_n. x_n (x_0 (x_1 (... x_{n-1}))).
RawTerm no_limit_term(std::size_t n);
/// n -> class of no_limit_term(n) truncated at depth n.
ClassChain no_limit_chain();

}  // namespace infnom::lambda
