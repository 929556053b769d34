#include <doctest.h>

#include "infnom/errors.hpp"
#include "infnom/lambda/library.hpp"
#include "infnom/lambda/syntax.hpp"
#include "infnom/trees.hpp"

using namespace infnom;
using namespace infnom::lambda;
using namespace infnom::trees;

namespace {

Term T(const char* s) { return parse_term(s); }
InfTerm R(const char* s) { return parse(s).inf(); }

bool same(const InfTerm& got, const InfTerm& want, std::size_t depth) {
  return canonicalize(truncate(got, depth)) == canonicalize(truncate(want, depth));
}

const char* const kOmega = "((\\x. x x)(\\x. x x))";
// normalizes, but only after seven head steps
const char* const kSlow = "((\\f. f (f (f (f (f (f x)))))) (\\y. y))";

}  // namespace

TEST_CASE("Boehm trees") {
  CHECK(same(bt(T("\\x. (\\x. x x)(\\x. x x)"), 100), R("_|_"), 3));
  CHECK(same(bt(T("fix x"), 100), R("let rec T = x T in T"), 6));
  CHECK(same(bt(T("fix (\\x y. x)"), 100), R("_|_"), 4));
  CHECK(same(bt(T("fix (\\y x. x y)"), 100), R("let rec T = \\x. x T in T"), 6));
  CHECK(same(bt(T("x ((\\y. y) z)"), 100), R("x z"), 4));
}

TEST_CASE("Levy-Longo trees") {
  CHECK(same(llt(T("\\x. (\\x. x x)(\\x. x x)"), 100), R("\\x. _|_"), 4));
  CHECK(same(llt(T("fix (\\x y. x)"), 100), R("let rec T = \\x. T in T"), 6));
  std::string oo = std::string(kOmega) + kOmega;
  CHECK(same(llt(T(oo.c_str()), 100), R("_|_"), 4));
  CHECK(same(llt(T("fix (\\y. y x)"), 100), R("_|_"), 4));
}

TEST_CASE("Berarducci trees") {
  std::string oo = std::string(kOmega) + kOmega;
  CHECK(same(bet(T(oo.c_str()), 100), R("_|_ _|_"), 4));
  CHECK(same(bet(T("fix (\\y. y x)"), 100), R("let rec T = T x in T"), 6));
  CHECK(same(bet(T("\\x. (\\x. x x)(\\x. x x)"), 100), R("\\x. _|_"), 4));
  CHECK(same(bet(T("fix x"), 100), R("let rec T = x T in T"), 6));
}

TEST_CASE("the Boehm tree of Pinfbv is infbv") {
  CHECK(alpha_eq_at(bt(pinfbv(), 500), infbv(), 6));
}

TEST_CASE("fuel exhaustion yields unknown nodes") {
  TruncTerm t = truncate(bt(T(kSlow), 5), 3);
  CHECK(same(bt(T(kSlow), 10), R("x"), 3));
  CHECK(status(t) == NodeStatus::Unknown);
  CHECK(status(assume_bottom(t)) == NodeStatus::Resolved);
  CHECK(status(truncate(bt(T("\\x. x"), 5), 3)) == NodeStatus::Resolved);
  CHECK(status(truncate(bt(omega(), 5), 3)) == NodeStatus::Resolved);
}

TEST_CASE("tree set membership") {
  CHECK(in_bt_set(parse_raw("_|_")));
  CHECK(in_llt_set(parse_raw("\\x. _|_")));
  CHECK_FALSE(in_bt_set(parse_raw("\\x. _|_")));
  CHECK(in_bet_set(parse_raw("_|_ _|_")));
  CHECK_FALSE(in_llt_set(parse_raw("_|_ _|_")));
  CHECK_FALSE(in_bt_set(parse_raw("(\\x. x) y")));
  CHECK_FALSE(in_bet_set(parse_raw("(\\x. x) y")));
  CHECK(in_bt_set(parse_raw("\\x. x _|_ *")));
  CHECK(in_bt_set(R("_|_"), 5));
  CHECK(in_llt_set(R("\\x. _|_"), 5));
  CHECK(in_bet_set(R("let rec T = T x in T"), 5));
}

TEST_CASE("bisimilarity up to depth") {
  Term lo = T("\\x. (\\x. x x)(\\x. x x)");
  CHECK(bisim_hnf_at(lo, omega(), 4, 100));
  CHECK_FALSE(bisim_whnf_at(lo, omega(), 4, 100));
  CHECK(bisim_hnf_at(pinfbv(), pinfbv(), 4, 100));
  CHECK(bisim_at(TreeKind::Berarducci, T("fix x"), T("let rec T = x T in T"), 6, 100));
  CHECK_THROWS_AS(bisim_hnf_at(T(kSlow), T("\\x. x"), 3, 5), Inconclusive);
  std::string y_slow = std::string("y ") + kSlow, z_slow = std::string("z ") + kSlow;
  CHECK_FALSE(bisim_hnf_at(T(y_slow.c_str()), T(z_slow.c_str()), 3, 5));
  CHECK(bisim_hnf_at(T(kSlow), T("x"), 3, 10));
}
