// Linear type theories: combinators, terms, decomposition, translations.
#include "doctest.h"

#include "freecat/equality.hpp"
#include "freecat/error.hpp"
#include "freecat/lintype.hpp"
#include "freecat/parse.hpp"
#include "freecat/term.hpp"

#include "gen.hpp"
#include "test_util.hpp"

#include <functional>
#include <memory>

using namespace freecat;
using freecat::test::data_path;
using freecat::test::slurp;

namespace {

std::shared_ptr<const Signature> lin_sig() {
  static auto sig = std::make_shared<const Signature>(
      parse_signature(freecat::test::slurp(
          freecat::test::data_path("lin.sig"))));
  return sig;
}

} // namespace

TEST_CASE("combinator construction tracks boundaries") {
  auto a = t_basic("A"), b = t_basic("B"), c = t_basic("C");
  auto f = c_fn("f", t_tensor(a, b), c);
  CHECK(type_eq(f->dom, t_tensor(a, b)));
  CHECK(type_eq(f->cod, c));

  auto br = c_braid(a, c);
  CHECK(type_eq(br->dom, t_tensor(a, c)));
  CHECK(type_eq(br->cod, t_tensor(c, a)));

  auto cur = c_curry(f);
  CHECK(type_eq(cur->dom, b));
  CHECK(type_eq(cur->cod, t_hom(a, c)));

  auto ev = c_eval(a, b);
  CHECK(type_eq(ev->dom, t_tensor(a, t_hom(a, b))));
  CHECK(type_eq(ev->cod, b));

  // comp requires meeting boundaries
  auto g = c_fn("g", c, a);
  auto gf = c_comp(g, f);
  CHECK(type_eq(gf->dom, t_tensor(a, b)));
  CHECK(type_eq(gf->cod, a));
  CHECK_THROWS_AS(c_comp(f, g), FcError); // g : C -> A, f : A*B -> C

  // curry needs a tensor domain
  CHECK_THROWS_AS(c_curry(g), FcError);
}

TEST_CASE("linear terms typecheck linearly") {
  auto sig = lin_sig();
  auto a = t_basic("A"), b = t_basic("B");

  auto ok = parse_lterm("(x : A (x) y : B)", *sig);
  CHECK(type_eq(lin_typecheck(ok), t_tensor(a, b)));
  auto vars = lin_vars(ok);
  REQUIRE(vars.size() == 2);
  CHECK(vars[0].first == "x");
  CHECK(vars[1].first == "y");

  // a repeated variable is not linear
  auto dup = lin_tensor(lin_var("x", a), lin_var("x", a));
  try {
    lin_typecheck(dup);
    FAIL("expected the linearity check to reject a repeated variable");
  } catch (const FcError& e) {
    CHECK(e.kind() == ErrKind::type);
    CHECK(std::string(e.what()).find("x") != std::string::npos);
  }
  // lin_type alone (no linearity check) accepts it
  CHECK(type_eq(lin_type(dup), t_tensor(a, a)));

  // combinator applications check their argument type
  auto bad = lin_apply(c_fn("g", t_basic("C"), a), lin_var("x", a));
  CHECK_THROWS_AS(lin_typecheck(bad), FcError);

  // the unit leaf
  auto one = parse_lterm("1", *sig);
  CHECK(type_eq(lin_typecheck(one), t_unit()));
}

TEST_CASE("lterm parsing against a signature") {
  auto sig = lin_sig();
  // function symbols pick up their declared types
  auto t = parse_lterm("f((x : A (x) y : B))", *sig);
  CHECK(type_eq(lin_typecheck(t), t_basic("C")));

  // basic combinators infer their type arguments from the argument
  auto br = parse_lterm("braid((x : A (x) y : B))", *sig);
  CHECK(type_eq(lin_typecheck(br), t_tensor(t_basic("B"), t_basic("A"))));

  // curry of a function symbol
  auto cu = parse_lterm("curry(f)(y : B)", *sig);
  CHECK(type_eq(lin_typecheck(cu), t_hom(t_basic("A"), t_basic("C"))));

  // unknown names and shape errors
  CHECK_THROWS_AS(parse_lterm("nosuch(x : A)", *sig), FcError);
  CHECK_THROWS_AS(parse_lterm("assoc(x : A)", *sig), FcError);
  CHECK_THROWS_AS(parse_lterm("x : D", *sig), FcError);
  CHECK_THROWS_AS(parse_lterm("(x : A (x) )", *sig), FcError);
}

TEST_CASE("combinator/variable decomposition") {
  auto sig = lin_sig();
  auto a = t_basic("A"), b = t_basic("B"), c = t_basic("C");

  // the worked example: braid applied to (x (x) f(y (x) z))
  auto t = parse_lterm("braid((x : A (x) f((y : A (x) z : B))))", *sig);
  auto d = cpvp(t);

  auto expect_cp = c_comp(
      c_braid(a, c),
      c_tensor(c_id(a),
               c_comp(c_fn("f", t_tensor(a, b), c),
                      c_tensor(c_id(a), c_id(b)))));
  CHECK(comb_eq(d.cp, expect_cp));

  auto expect_vp = lin_tensor(
      lin_var("x", a), lin_tensor(lin_var("y", a), lin_var("z", b)));
  CHECK(lterm_eq(d.vp, expect_vp));

  // the variable part contains only variables, units and tensoring
  std::function<bool(const LinPtr&)> pure = [&](const LinPtr& v) {
    if (v->tag == LinTag::apply) return false;
    for (const auto& s : v->subs)
      if (!pure(s)) return false;
    return true;
  };
  CHECK(pure(d.vp));

  // t == cp(t) applied to vp(t)
  auto rebuilt = lin_apply(d.cp, d.vp);
  auto v = lin_equiv_terms(rebuilt, t, *sig);
  CHECK(v.answer == EqAnswer::equal);

  // decomposition of a bare variable and of the unit
  auto dx = cpvp(lin_var("x", a));
  CHECK(dx.cp->tag == CombTag::id);
  CHECK(lterm_eq(dx.vp, lin_var("x", a)));
  auto d1 = cpvp(lin_one());
  CHECK(d1.cp->tag == CombTag::id);
  CHECK(lterm_eq(d1.vp, lin_one()));
}

TEST_CASE("term equivalence is insensitive to variable order") {
  auto sig = lin_sig();
  // braid((x (x) y)) and (y (x) x) denote the same element of B (x) A
  auto t1 = parse_lterm("braid((x : A (x) y : B))", *sig);
  auto t2 = parse_lterm("(y : B (x) x : A)", *sig);
  auto v = lin_equiv_terms(t1, t2, *sig);
  CHECK(v.answer == EqAnswer::equal);

  // but a genuine swap of same-typed variables is not the identity
  auto s1 = parse_lterm("(x : A (x) y : A)", *sig);
  auto s2 = parse_lterm("(y : A (x) x : A)", *sig);
  auto vs = lin_equiv_terms(s1, s2, *sig);
  REQUIRE(vs.answer == EqAnswer::not_equal);
  CHECK(vs.witness.has_value());

  // mismatched types or variable sets are usage errors
  CHECK_THROWS_AS(lin_equiv_terms(parse_lterm("x : A", *sig),
                                  parse_lterm("y : B", *sig), *sig),
                  FcError);
  CHECK_THROWS_AS(lin_equiv_terms(parse_lterm("x : A", *sig),
                                  parse_lterm("y : A", *sig), *sig),
                  FcError);
}

TEST_CASE("combinator equivalence applies both sides to a canonical term") {
  auto sig = lin_sig();
  auto a = t_basic("A"), b = t_basic("B");
  // braid ; braid = id
  auto bb = c_comp(c_braid(b, a), c_braid(a, b));
  auto v = lin_equiv_combinators(bb, c_id(t_tensor(a, b)), *sig);
  CHECK(v.answer == EqAnswer::equal);
  // braid != id at matching types
  auto vb = lin_equiv_combinators(c_braid(a, a), c_id(t_tensor(a, a)), *sig);
  CHECK(vb.answer == EqAnswer::not_equal);
  // function-typed results are applied further (curried function symbols)
  auto f = c_fn("f", t_tensor(a, b), t_basic("C"));
  auto v2 = lin_equiv_combinators(c_curry(f), c_curry(f), *sig);
  CHECK(v2.answer == EqAnswer::equal);
}

TEST_CASE("theories and signatures translate back and forth") {
  auto sig = lin_sig();
  auto th = kernel_to_theory(*sig);
  auto back = theory_to_kernel(th);
  CHECK(back.mode == sig->mode);
  REQUIRE(back.objects == sig->objects);
  REQUIRE(back.generators.size() == sig->generators.size());
  for (std::size_t i = 0; i < back.generators.size(); ++i) {
    CHECK(back.generators[i].name == sig->generators[i].name);
    CHECK(type_eq(back.generators[i].dom, sig->generators[i].dom));
    CHECK(type_eq(back.generators[i].cod, sig->generators[i].cod));
  }

  // only closed symmetric signatures present linear type theories
  CHECK_THROWS_AS(
      kernel_to_theory(*freecat::test::fixture_sig(Mode::symmetric)),
      FcError);
  CHECK_THROWS_AS(
      kernel_to_theory(*freecat::test::fixture_sig(Mode::cartesian_closed)),
      FcError);
  CHECK_THROWS_AS(
      kernel_to_theory(*freecat::test::fixture_sig(Mode::compact_symmetric)),
      FcError);
}

TEST_CASE("combinators round-trip through the kernel") {
  auto sig = lin_sig();
  auto a = t_basic("A"), b = t_basic("B"), c = t_basic("C");

  // comb -> kernel -> comb, compared by equivalence
  std::vector<CombPtr> combs = {
      c_braid(a, b),
      c_comp(c_fn("g", c, a), c_fn("f", t_tensor(a, b), c)),
      c_curry(c_fn("f", t_tensor(a, b), c)),
      c_tensor(c_id(a), c_eval(a, b)),
      c_left(a),
      c_unright(t_tensor(a, b)),
  };
  for (const auto& f : combs) {
    auto m = comb_to_kernel(f);
    auto back = kernel_to_comb(m, *sig);
    CHECK(type_eq(back->dom, f->dom));
    CHECK(type_eq(back->cod, f->cod));
    auto v = lin_equiv_combinators(f, back, *sig);
    CHECK(v.answer == EqAnswer::equal);
  }

  // kernel -> comb -> kernel on parsed morphisms, compared by eq_decide
  for (const char* s :
       {"braidinv[A,B]", "uncurry(h)", "curry(f)", "name(g)",
        "(g * id[B]) ; f", "ev[A,C]"}) {
    auto m = parse_mor(s, *sig);
    auto f = kernel_to_comb(m, *sig);
    auto m2 = comb_to_kernel(f);
    auto v = eq_decide(m, m2, *sig);
    CHECK(v.answer == EqAnswer::equal);
  }

  // random combinators survive the round trip
  freecat::test::Rng rng(5150);
  for (int i = 0; i < 25; ++i) {
    auto f = freecat::test::random_comb(rng, *sig);
    auto back = kernel_to_comb(comb_to_kernel(f), *sig);
    auto v = lin_equiv_combinators(f, back, *sig);
    CHECK(v.answer != EqAnswer::not_equal);
  }
}

TEST_CASE("random terms equal their decomposition, rebuilt") {
  auto sig = lin_sig();
  freecat::test::Rng rng(31337);
  for (int i = 0; i < 25; ++i) {
    auto t = freecat::test::random_lterm(rng, *sig);
    auto d = cpvp(t);
    auto v = lin_equiv_terms(lin_apply(d.cp, d.vp), t, *sig);
    CHECK(v.answer == EqAnswer::equal);
  }
}
