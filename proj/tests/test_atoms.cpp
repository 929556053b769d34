#include <doctest.h>

#include <map>
#include <stdexcept>

#include "infnom/atoms.hpp"

using namespace infnom;

TEST_CASE("interning is stable and index names are direct") {
  Atom a = Atom::named("alpha_atom");
  CHECK(Atom::named("alpha_atom") == a);
  CHECK(a.name() == "alpha_atom");
  CHECK(Atom::named("_7") == Atom(7));
  CHECK(Atom(123456).name() == "_123456");
  CHECK(Atom::named("beta_atom") != a);
}

TEST_CASE("swap") {
  Atom x(1), y(2), z(3);
  CHECK(swap(x, y)(x) == y);
  CHECK(swap(x, y)(y) == x);
  CHECK(swap(x, y)(z) == z);
  CHECK(swap(x, x).is_identity());
}

TEST_CASE("compose, inverse and support") {
  Atom x(1), y(2), z(3);
  CHECK(compose(swap(x, y), swap(x, y)).is_identity());
  CHECK(inverse(swap(x, y)) == swap(x, y));
  Perm p = compose(swap(x, y), swap(y, z));
  CHECK(perm_support(p) == AtomSet{x, y, z});
  CHECK(p(z) == x);
  CHECK(compose(p, inverse(p)).is_identity());
  CHECK(apply(p, Atom(9)) == Atom(9));
}

TEST_CASE("from_map rejects non-bijections") {
  Atom x(1), y(2), z(3);
  CHECK_THROWS_AS(Perm::from_map({{x, y}, {z, y}}), std::invalid_argument);
  CHECK_THROWS_AS(Perm::from_map({{x, y}}), std::invalid_argument);
  CHECK(Perm::from_map({{x, y}, {y, x}}) == swap(x, y));
  CHECK(Perm::from_map({{x, x}}).is_identity());
}

TEST_CASE("fresh_atom picks the smallest index outside the set") {
  CHECK(fresh_atom({}) == Atom(0));
  CHECK(fresh_atom({Atom(0), Atom(1)}) == Atom(2));
  CHECK(fresh_atom({Atom(0), Atom(2)}) == Atom(1));
}

TEST_CASE("atom set algebra") {
  AtomSet s{Atom(3), Atom(1), Atom(3)};
  CHECK(s.size() == 2);
  CHECK(s.atoms().front() == Atom(1));
  AtomSet t{Atom(1), Atom(5)};
  CHECK((s | t) == AtomSet{Atom(1), Atom(3), Atom(5)});
  CHECK((s & t) == AtomSet{Atom(1)});
  CHECK((s - t) == AtomSet{Atom(3)});
  CHECK(s.intersects(t));
  CHECK(AtomSet{Atom(1)}.is_subset_of(s));
  CHECK(act(swap(Atom(1), Atom(9)), s) == AtomSet{Atom(3), Atom(9)});
}
