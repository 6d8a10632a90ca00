// Untyped lambda calculus, lambda files, and SKI elimination.
#include "doctest.h"

#include "freecat/error.hpp"
#include "freecat/lambda.hpp"
#include "freecat/ski.hpp"

#include "gen.hpp"
#include "test_util.hpp"

#include <set>
#include <string>

using namespace freecat;
using freecat::test::data_path;
using freecat::test::slurp;

TEST_CASE("parsing: application, abstraction and parentheses") {
  // application is left-associative
  auto t = parse_untyped("f a b");
  REQUIRE(t->tag == UTag::App);
  CHECK(t->fun->tag == UTag::App);
  CHECK(t->arg->name == "b");

  // the lambda body extends as far right as possible
  auto l = parse_untyped("\\x. x x");
  REQUIRE(l->tag == UTag::Lam);
  CHECK(l->fun->tag == UTag::App);

  // parentheses override
  auto p = parse_untyped("(\\x. x) y");
  REQUIRE(p->tag == UTag::App);
  CHECK(p->fun->tag == UTag::Lam);

  // nested binders, alpha-insensitive printing
  CHECK(print_untyped(parse_untyped("\\a. \\b. a")) ==
        print_untyped(parse_untyped("\\u. \\v. u")));

  CHECK_THROWS_AS(parse_untyped(""), FcError);
  CHECK_THROWS_AS(parse_untyped("\\x."), FcError);
  CHECK_THROWS_AS(parse_untyped("(x"), FcError);
  CHECK_THROWS_AS(parse_untyped("\\. x"), FcError);
}

TEST_CASE("free variables and substitution avoid capture") {
  auto t = parse_untyped("\\x. x y");
  auto fv = free_vars_untyped(t);
  CHECK(fv == std::set<std::string>{"y"});

  // substituting y := x under \x must rename the binder
  auto sub = substitute(t, "y", u_var("x"));
  // the result is \z. z x for fresh z, NOT \x. x x
  CHECK(alpha_eq(sub, parse_untyped("\\z. z x")));
  CHECK_FALSE(alpha_eq(sub, parse_untyped("\\x. x x")));

  // substitution leaves bound occurrences alone
  auto id = parse_untyped("\\x. x");
  CHECK(alpha_eq(substitute(id, "x", u_var("q")), id));
}

TEST_CASE("alpha equivalence") {
  CHECK(alpha_eq(parse_untyped("\\x. \\y. x y"),
                 parse_untyped("\\a. \\b. a b")));
  CHECK_FALSE(alpha_eq(parse_untyped("\\x. \\y. x"),
                       parse_untyped("\\x. \\y. y")));
  CHECK_FALSE(alpha_eq(parse_untyped("x"), parse_untyped("y")));
}

TEST_CASE("normal-order reduction") {
  // K-like discard: the argument (even a diverging one) is never reduced
  auto t = parse_untyped("(\\x. \\y. y) ((\\w. w w) (\\w. w w)) z");
  auto r = normalize_untyped(t);
  CHECK(r.normal);
  CHECK(alpha_eq(r.term, u_var("z")));

  // a diverging term reports fuel exhaustion
  auto omega = parse_untyped("(\\w. w w) (\\w. w w)");
  auto ro = normalize_untyped(omega, 50);
  CHECK_FALSE(ro.normal);
  CHECK(ro.steps == 50);

  // steps count beta reductions
  auto one = normalize_untyped(parse_untyped("(\\x. x) y"));
  CHECK(one.steps == 1);
  CHECK(alpha_eq(one.term, u_var("y")));

  // reduction goes under binders to reach normal form
  auto under = normalize_untyped(parse_untyped("\\z. (\\x. x) z"));
  CHECK(under.normal);
  CHECK(alpha_eq(under.term, parse_untyped("\\z. z")));
}

TEST_CASE("church numerals") {
  for (std::size_t n = 0; n <= 6; ++n) {
    auto c = church_encode(n);
    auto back = church_decode(c);
    REQUIRE(back.has_value());
    CHECK(*back == n);
  }
  // the eta-collapsed numeral one
  auto collapsed = parse_untyped("\\f. f");
  auto dec = church_decode(collapsed);
  REQUIRE(dec.has_value());
  CHECK(*dec == 1);
  // non-numerals decode to nothing
  CHECK_FALSE(church_decode(parse_untyped("\\x. x x")).has_value());
  CHECK_FALSE(church_decode(u_var("n")).has_value());

  // arithmetic: times via composition
  auto times = parse_untyped("\\m. \\n. \\f. m (n f)");
  auto apply2 = u_app(u_app(times, church_encode(3)), church_encode(2));
  auto r = normalize_untyped(apply2);
  REQUIRE(r.normal);
  auto v = church_decode(r.term);
  REQUIRE(v.has_value());
  CHECK(*v == 6);

  // plus via iterated successor
  auto plus = parse_untyped("\\m. \\n. \\f. \\x. m f (n f x)");
  auto sum = normalize_untyped(
      u_app(u_app(plus, church_encode(2)), church_encode(5)));
  auto sv = church_decode(sum.term);
  REQUIRE(sv.has_value());
  CHECK(*sv == 7);
}

TEST_CASE("lambda files: definitions substitute into what follows") {
  auto f = parse_lambda_file(slurp(data_path("church.lam")));
  CHECK(f.defs.size() == 3);
  REQUIRE(f.last != nullptr);
  auto main = f.main_term();
  REQUIRE(main != nullptr);
  // all definitions resolved: the main term is closed
  CHECK(free_vars_untyped(main).empty());
  auto r = normalize_untyped(main);
  REQUIRE(r.normal);
  auto v = church_decode(r.term);
  REQUIRE(v.has_value());
  CHECK(*v == 6);
}

TEST_CASE("lambda files: statements end at line breaks outside parens") {
  // without the break rule, `two` would be swallowed into the def body
  auto f = parse_lambda_file("def id = \\x. x\nid two");
  REQUIRE(f.last != nullptr);
  auto main = f.main_term();
  auto r = normalize_untyped(main);
  CHECK(alpha_eq(r.term, u_var("two")));

  // a parenthesized body may span lines
  auto g = parse_lambda_file("def pair = (\\x. \\y.\n  \\p. p x y)\npair a b");
  auto rm = normalize_untyped(g.main_term());
  CHECK(alpha_eq(rm.term, parse_untyped("\\p. p a b")));

  // a def with no following term: main_term is the last definition's body
  auto h = parse_lambda_file("def k = \\x. \\y. x");
  CHECK(h.last == nullptr);
  REQUIRE(h.main_term() != nullptr);
  CHECK(alpha_eq(h.main_term(), parse_untyped("\\x. \\y. x")));

  // ...unless a definition is literally called main
  auto hm = parse_lambda_file("def main = \\x. x\ndef k = \\x. \\y. x");
  CHECK(alpha_eq(hm.main_term(), parse_untyped("\\x. x")));

  // duplicate definition names are rejected
  CHECK_THROWS_AS(parse_lambda_file("def a = x\ndef a = y\na"), FcError);
}

TEST_CASE("ski elimination follows the three rules and prints canonically") {
  // T[\x. \y. y] = K(I) exactly
  auto ki = ski_eliminate(parse_untyped("\\x. \\y. y"));
  CHECK(print_ski(ki) == "K(I)");

  // T[\x. x] = I
  CHECK(print_ski(ski_eliminate(parse_untyped("\\x. x"))) == "I");

  // free variables survive elimination
  auto kf = ski_eliminate(parse_untyped("\\x. y"));
  CHECK(print_ski(kf) == "K(y)");

  // the S rule fires when the bound variable is used on both sides
  auto s = ski_eliminate(parse_untyped("\\x. x x"));
  CHECK(print_ski(s) == "S(I)(I)");

  // the result never contains a lambda: applying it to variables and
  // reducing matches the original term's behavior
  auto t = parse_untyped("\\x. \\y. x (x y)");
  auto sk = ski_eliminate(t);
  auto applied =
      sk_app(sk_app(sk, sk_var("p")), sk_var("q"));
  auto r = ski_eval(applied);
  REQUIRE(r.normal);
  auto lam_applied = normalize_untyped(
      u_app(u_app(t, u_var("p")), u_var("q")));
  CHECK(alpha_eq(ski_to_untyped(r.term), lam_applied.term));
}

TEST_CASE("ski reduction rules") {
  auto x = sk_var("x"), y = sk_var("y"), z = sk_var("z");
  // I a -> a
  auto r = ski_eval(sk_app(sk_i(), x));
  CHECK(sk_eq(r.term, x));
  CHECK(r.steps == 1);
  // K a b -> a
  r = ski_eval(sk_app(sk_app(sk_k(), x), y));
  CHECK(sk_eq(r.term, x));
  // S a b c -> a c (b c)
  r = ski_eval(sk_app(sk_app(sk_app(sk_s(), x), y), z));
  CHECK(sk_eq(r.term, sk_app(sk_app(x, z), sk_app(y, z))));
  // K(I)(x)(y) -> y, as printed
  auto kixy = sk_app(sk_app(sk_app(sk_k(), sk_i()), x), y);
  CHECK(print_ski(kixy) == "K(I)(x)(y)");
  r = ski_eval(kixy);
  CHECK(sk_eq(r.term, y));
  // underapplied combinators are already normal
  r = ski_eval(sk_app(sk_k(), x));
  CHECK(r.normal);
  CHECK(r.steps == 0);
  // fuel exhaustion on the SKI omega
  // S I I (S I I) loops forever
  auto sii = sk_app(sk_app(sk_s(), sk_i()), sk_i());
  auto loop = sk_app(sii, sii);
  auto ro = ski_eval(loop, 100);
  CHECK_FALSE(ro.normal);
}

TEST_CASE("elimination is extensionally faithful on random closed terms") {
  freecat::test::Rng rng(20250819);
  int compared = 0;
  for (int i = 0; i < 60; ++i) {
    auto t = freecat::test::random_untyped(rng);
    // apply both versions to two fresh variables and reduce
    auto lam = u_app(u_app(t, u_var("arg0")), u_var("arg1"));
    auto lr = normalize_untyped(lam, 2000);
    auto sk = sk_app(sk_app(ski_eliminate(t), sk_var("arg0")),
                     sk_var("arg1"));
    auto sr = ski_eval(sk, 20000);
    if (!lr.normal || !sr.normal) continue; // divergent draw: skip
    ++compared;
    CHECK(alpha_eq(ski_to_untyped(sr.term), lr.term));
  }
  CHECK(compared > 10);
}
