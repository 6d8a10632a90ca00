// Types, modes, parsing, printing, signatures and type inference.
#include "doctest.h"

#include "freecat/error.hpp"
#include "freecat/mode.hpp"
#include "freecat/parse.hpp"
#include "freecat/signature.hpp"
#include "freecat/term.hpp"
#include "freecat/types.hpp"

#include "test_util.hpp"

using namespace freecat;
using freecat::test::fixture_sig;

namespace {
const Mode all_modes[] = {
    Mode::monoidal,        Mode::braided,        Mode::symmetric,
    Mode::cartesian,       Mode::closed_monoidal, Mode::closed_braided,
    Mode::closed_symmetric, Mode::cartesian_closed, Mode::compact_symmetric,
};
} // namespace

TEST_CASE("mode lattice order") {
  for (Mode m : all_modes) CHECK(mode_leq(m, m));
  // the braided chain
  CHECK(mode_leq(Mode::monoidal, Mode::braided));
  CHECK(mode_leq(Mode::braided, Mode::symmetric));
  CHECK(mode_leq(Mode::symmetric, Mode::cartesian));
  CHECK(mode_leq(Mode::cartesian, Mode::cartesian_closed));
  // the closed chain
  CHECK(mode_leq(Mode::monoidal, Mode::closed_monoidal));
  CHECK(mode_leq(Mode::closed_monoidal, Mode::closed_braided));
  CHECK(mode_leq(Mode::closed_braided, Mode::closed_symmetric));
  CHECK(mode_leq(Mode::closed_symmetric, Mode::cartesian_closed));
  CHECK(mode_leq(Mode::closed_symmetric, Mode::compact_symmetric));
  // mixed relations
  CHECK(mode_leq(Mode::symmetric, Mode::closed_symmetric));
  CHECK(mode_leq(Mode::braided, Mode::closed_braided));
  // incomparable pairs
  CHECK_FALSE(mode_leq(Mode::cartesian, Mode::compact_symmetric));
  CHECK_FALSE(mode_leq(Mode::compact_symmetric, Mode::cartesian));
  CHECK_FALSE(mode_leq(Mode::compact_symmetric, Mode::cartesian_closed));
  CHECK_FALSE(mode_leq(Mode::cartesian, Mode::closed_symmetric));
  CHECK_FALSE(mode_leq(Mode::cartesian_closed, Mode::compact_symmetric));
  // antisymmetry on a sample
  for (Mode a : all_modes)
    for (Mode b : all_modes)
      if (mode_leq(a, b) && mode_leq(b, a)) CHECK(a == b);
  // transitivity (exhaustive at this size)
  for (Mode a : all_modes)
    for (Mode b : all_modes)
      for (Mode c : all_modes)
        if (mode_leq(a, b) && mode_leq(b, c)) CHECK(mode_leq(a, c));
}

TEST_CASE("mode names round-trip") {
  for (Mode m : all_modes) {
    auto back = mode_from_name(mode_name(m));
    REQUIRE(back.has_value());
    CHECK(*back == m);
  }
  CHECK_FALSE(mode_from_name("closed").has_value());
  CHECK_FALSE(mode_from_name("").has_value());
}

TEST_CASE("mode capability predicates") {
  CHECK_FALSE(mode_has_braiding(Mode::monoidal));
  CHECK(mode_has_braiding(Mode::braided));
  CHECK_FALSE(mode_braiding_symmetric(Mode::braided));
  CHECK(mode_braiding_symmetric(Mode::symmetric));
  CHECK(mode_braiding_symmetric(Mode::cartesian));
  CHECK(mode_braiding_symmetric(Mode::compact_symmetric));
  CHECK(mode_has_closed(Mode::closed_monoidal));
  CHECK(mode_has_closed(Mode::compact_symmetric));
  CHECK_FALSE(mode_has_closed(Mode::cartesian));
  CHECK(mode_has_cartesian(Mode::cartesian));
  CHECK(mode_has_cartesian(Mode::cartesian_closed));
  CHECK_FALSE(mode_has_cartesian(Mode::symmetric));
  CHECK(mode_has_duals(Mode::compact_symmetric));
  CHECK_FALSE(mode_has_duals(Mode::cartesian_closed));
}

TEST_CASE("dual normalization") {
  auto x = t_basic("X"), y = t_basic("Y");
  CHECK(type_eq(t_dual(t_dual(x)), x));
  CHECK(type_eq(t_dual(t_unit()), t_unit()));
  // dual distributes over tensor factorwise
  auto d = t_dual(t_tensor(x, y));
  REQUIRE(d->tag == TypeTag::Tensor);
  CHECK(type_eq(d->left, t_dual(x)));
  CHECK(type_eq(d->right, t_dual(y)));
}

TEST_CASE("canonical type expands hom in compact mode") {
  auto x = t_basic("X"), y = t_basic("Y");
  auto h = t_hom(x, y);
  auto c = canonical_type(h, Mode::compact_symmetric);
  REQUIRE(c->tag == TypeTag::Tensor);
  CHECK(c->left->tag == TypeTag::Dual);
  CHECK(type_eq(c->left, t_dual(x)));
  CHECK(type_eq(c->right, y));
  // below compact the hom is kept
  CHECK(type_eq(canonical_type(h, Mode::closed_symmetric), h));
}

TEST_CASE("flatten and rebuild") {
  auto a = t_basic("A"), b = t_basic("B"), c = t_basic("C");
  auto t = t_tensor(t_tensor(a, t_unit()), t_tensor(b, c));
  auto atoms = flatten_type(t);
  REQUIRE(atoms.size() == 3);
  CHECK(type_eq(atoms[0], a));
  CHECK(type_eq(atoms[1], b));
  CHECK(type_eq(atoms[2], c));
  auto re = tensor_of_atoms(atoms);
  CHECK(type_eq(re, t_tensor(t_tensor(a, b), c)));
  CHECK(type_eq(tensor_of_atoms({}), t_unit()));
}

TEST_CASE("type parsing and precedence") {
  auto sig = fixture_sig(Mode::closed_symmetric);
  // * left-associative, tighter than -o
  auto t1 = parse_type("A * B * C", *sig);
  CHECK(type_eq(t1, t_tensor(t_tensor(t_basic("A"), t_basic("B")),
                             t_basic("C"))));
  auto t2 = parse_type("A * B -o C", *sig);
  REQUIRE(t2->tag == TypeTag::Hom);
  CHECK(type_eq(t2->left, t_tensor(t_basic("A"), t_basic("B"))));
  auto t3 = parse_type("A -o B -o C", *sig);
  REQUIRE(t3->tag == TypeTag::Hom);
  CHECK(type_eq(t3->left, t_basic("A")));
  CHECK(t3->right->tag == TypeTag::Hom);
  // unit spellings
  CHECK(type_eq(parse_type("I", *sig), t_unit()));
  CHECK(type_eq(parse_type("1", *sig), t_unit()));
  // print/parse round-trip
  for (const char* s : {"A", "A * (B * C)", "A -o (B -o C)", "(A -o B) * C",
                        "I * A"}) {
    auto t = parse_type(s, *sig);
    CHECK(type_eq(parse_type(print_type(t, sig->mode), *sig), t));
  }
}

TEST_CASE("type parsing rejects unknown objects and bad modes") {
  auto sym = fixture_sig(Mode::symmetric);
  CHECK_THROWS_AS(parse_type("D", *sym), FcError);
  // hom below closed
  CHECK_THROWS_AS(parse_type("A -o B", *sym), FcError);
  // dual below compact
  CHECK_THROWS_AS(parse_type("A^", *sym), FcError);
  auto compact = fixture_sig(Mode::compact_symmetric);
  auto d = parse_type("A^", *compact);
  CHECK(d->tag == TypeTag::Dual);
  // hom in compact mode canonicalizes to dual-tensor
  auto h = parse_type("A -o B", *compact);
  CHECK(h->tag == TypeTag::Tensor);
}

TEST_CASE("type mode violations are reported") {
  auto a = t_basic("A"), b = t_basic("B");
  CHECK(type_mode_violation(t_hom(a, b), Mode::symmetric).has_value());
  CHECK_FALSE(type_mode_violation(t_hom(a, b), Mode::closed_monoidal)
                  .has_value());
  CHECK(type_mode_violation(t_dual(a), Mode::closed_symmetric).has_value());
  CHECK_FALSE(
      type_mode_violation(t_dual(a), Mode::compact_symmetric).has_value());
}

TEST_CASE("constructor mode gates") {
  CHECK(mode_allows(Mode::cartesian_closed, MorTag::Dup));
  CHECK(mode_allows(Mode::cartesian, MorTag::Dup));
  CHECK_FALSE(mode_allows(Mode::symmetric, MorTag::Dup));
  CHECK_FALSE(mode_allows(Mode::monoidal, MorTag::Braid));
  CHECK(mode_allows(Mode::braided, MorTag::Braid));
  CHECK_FALSE(mode_allows(Mode::symmetric, MorTag::Curry));
  CHECK(mode_allows(Mode::closed_monoidal, MorTag::Curry));
  CHECK_FALSE(mode_allows(Mode::closed_symmetric, MorTag::Cup));
  CHECK(mode_allows(Mode::compact_symmetric, MorTag::Cup));
  CHECK_FALSE(mode_allows(Mode::cartesian_closed, MorTag::Cap));
  // monotonicity: anything allowed at a mode is allowed above it
  for (Mode lo : all_modes)
    for (Mode hi : all_modes)
      if (mode_leq(lo, hi))
        for (int c = 0; c <= static_cast<int>(MorTag::Name); ++c)
          if (mode_allows(lo, static_cast<MorTag>(c)))
            CHECK(mode_allows(hi, static_cast<MorTag>(c)));
}

TEST_CASE("morphism parsing and inference") {
  auto sig = fixture_sig(Mode::symmetric);
  auto a = t_basic("A"), b = t_basic("B");

  auto m = parse_mor("braid[A,B]", *sig);
  auto dc = infer_dom_cod(m, *sig);
  CHECK(type_eq(dc.dom, t_tensor(a, b)));
  CHECK(type_eq(dc.cod, t_tensor(b, a)));

  auto seq = parse_mor("f ; g", *sig);
  dc = infer_dom_cod(seq, *sig);
  CHECK(type_eq(dc.dom, a));
  CHECK(type_eq(dc.cod, a));

  // ; binds looser than *
  auto mixed = parse_mor("f * f ; braid[B,B]", *sig);
  dc = infer_dom_cod(mixed, *sig);
  CHECK(type_eq(dc.dom, t_tensor(a, a)));
  CHECK(type_eq(dc.cod, t_tensor(b, b)));

  // named terms resolve
  auto sig2 = fixture_sig(Mode::symmetric);
  sig2->terms.push_back({"round", parse_mor("f ; g", *sig2)});
  auto r = parse_mor("round ; round", *sig2);
  dc = infer_dom_cod(r, *sig2);
  CHECK(type_eq(dc.dom, a));
}

TEST_CASE("morphism parse and type errors") {
  auto mono = fixture_sig(Mode::monoidal);
  // braid needs a braided mode
  CHECK_THROWS_AS(parse_mor("braid[A,B]", *mono), FcError);
  auto sym = fixture_sig(Mode::symmetric);
  CHECK_THROWS_AS(parse_mor("dup[A]", *sym), FcError);
  CHECK_THROWS_AS(parse_mor("nosuch", *sym), FcError);
  CHECK_THROWS_AS(parse_mor("f ;", *sym), FcError);
  // composition mismatch reports both offending types
  try {
    infer_dom_cod(parse_mor("f ; f", *sym), *sym);
    FAIL("expected a type error");
  } catch (const FcError& e) {
    CHECK(e.kind() == ErrKind::type);
    std::string msg = e.what();
    CHECK(msg.find("B") != std::string::npos);
    CHECK(msg.find("A") != std::string::npos);
  }
}

TEST_CASE("inference shapes of the structural family") {
  auto sig = fixture_sig(Mode::compact_symmetric);
  auto a = t_basic("A"), b = t_basic("B"), c = t_basic("C");

  auto dc = infer_dom_cod(m_assoc(a, b, c), *sig);
  CHECK(type_eq(dc.dom, t_tensor(t_tensor(a, b), c)));
  CHECK(type_eq(dc.cod, t_tensor(a, t_tensor(b, c))));

  dc = infer_dom_cod(m_leftu(a), *sig);
  CHECK(type_eq(dc.dom, t_tensor(t_unit(), a)));
  CHECK(type_eq(dc.cod, a));

  dc = infer_dom_cod(m_rightu(a), *sig);
  CHECK(type_eq(dc.dom, t_tensor(a, t_unit())));

  dc = infer_dom_cod(m_cup(a), *sig);
  CHECK(type_eq(dc.dom, t_unit()));
  CHECK(type_eq(dc.cod, t_tensor(t_dual(a), a)));

  dc = infer_dom_cod(m_cap(a), *sig);
  CHECK(type_eq(dc.dom, t_tensor(a, t_dual(a))));
  CHECK(type_eq(dc.cod, t_unit()));

  // curry in compact mode: the hom is the dual-tensor form
  auto body = m_seq(m_par(m_gen("f"), m_gen("f")), m_id(t_tensor(b, b)));
  auto cur = m_curry(body);
  dc = infer_dom_cod(cur, *sig);
  CHECK(type_eq(dc.dom, a));
  CHECK(type_eq(dc.cod, t_tensor(t_dual(a), t_tensor(b, b))));

  // ev in a closed mode
  auto closed = fixture_sig(Mode::closed_symmetric);
  dc = infer_dom_cod(m_ev(a, b), *closed);
  CHECK(type_eq(dc.dom, t_tensor(a, t_hom(a, b))));
  CHECK(type_eq(dc.cod, b));

  // cartesian family
  auto cart = fixture_sig(Mode::cartesian);
  dc = infer_dom_cod(m_dup(a), *cart);
  CHECK(type_eq(dc.cod, t_tensor(a, a)));
  dc = infer_dom_cod(m_pair(m_gen("f"), m_gen("e")), *cart);
  CHECK(type_eq(dc.dom, a));
  CHECK(type_eq(dc.cod, t_tensor(b, a)));
  dc = infer_dom_cod(m_proj1(a, b), *cart);
  CHECK(type_eq(dc.cod, a));
}

TEST_CASE("split_hom_type reads both hom encodings") {
  auto a = t_basic("A"), b = t_basic("B");
  TypePtr x, z;
  CHECK(split_hom_type(t_hom(a, b), Mode::closed_symmetric, x, z));
  CHECK(type_eq(x, a));
  CHECK(type_eq(z, b));
  // compact: Dual(A) * B reads as A -o B
  CHECK(split_hom_type(t_tensor(t_dual(a), b), Mode::compact_symmetric, x,
                       z));
  CHECK(type_eq(x, a));
  CHECK(type_eq(z, b));
  CHECK_FALSE(split_hom_type(t_tensor(a, b), Mode::closed_symmetric, x, z));
}

TEST_CASE("print_mor round-trips through the parser") {
  auto sig = fixture_sig(Mode::closed_symmetric);
  for (const char* s :
       {"f ; g", "f * g", "braid[A,B]", "assoc[A,B,C]", "curry(h)",
        "uncurry(gg)", "ev[A,B]", "name(f)", "id[A * B]",
        "left[A] ; f"}) {
    auto t = parse_mor(s, *sig);
    auto printed = print_mor(t, sig->mode);
    auto back = parse_mor(printed, *sig);
    CHECK(mor_eq(t, back));
  }
}

TEST_CASE("expand_name matches its definition") {
  auto sig = fixture_sig(Mode::closed_symmetric);
  auto f = m_gen("f");
  auto n = m_name(f);
  auto e = expand_name(n, *sig);
  REQUIRE(e->tag == MorTag::Curry);
  auto dc = infer_dom_cod(e, *sig);
  CHECK(type_eq(dc.dom, t_unit()));
  CHECK(type_eq(dc.cod, t_hom(t_basic("A"), t_basic("B"))));
  // same boundary as the sugar
  auto dc0 = infer_dom_cod(n, *sig);
  CHECK(type_eq(dc.dom, dc0.dom));
  CHECK(type_eq(dc.cod, dc0.cod));
}

TEST_CASE("signature file parsing and validation") {
  auto good = parse_signature(freecat::test::slurp(
      freecat::test::data_path("chem.sig")));
  CHECK(good.mode == Mode::symmetric);
  CHECK(good.objects.size() == 5);
  CHECK(good.generators.size() == 3);
  CHECK(good.terms.size() == 2);
  CHECK(validate_signature(good).empty());

  auto bad = parse_signature(freecat::test::slurp(
      freecat::test::data_path("bad.sig")));
  auto problems = validate_signature(bad);
  REQUIRE(problems.size() == 4);

  // alias expansion
  Signature al = parse_signature("mode symmetric\nobj A\nalias Pair = A * A\n"
                                 "gen d : Pair -> A");
  REQUIRE(al.generators.size() == 1);
  CHECK(type_eq(al.generators[0].dom, t_tensor(t_basic("A"), t_basic("A"))));

  // duplicate mode line and misplaced mode line
  CHECK_THROWS_AS(parse_signature("mode symmetric\nmode braided\n"), FcError);
  CHECK_THROWS_AS(parse_signature("obj A\nmode symmetric\n"), FcError);
}

TEST_CASE("mode monotonicity of typing") {
  // a random symmetric-mode fixture term stays well-typed, with identical
  // boundary, at every mode above symmetric
  auto sym = fixture_sig(Mode::symmetric);
  auto t = parse_mor("braid[A,A] ; (f * f) ; braid[B,B] ; (g * g)", *sym);
  auto dc0 = infer_dom_cod(t, *sym);
  for (Mode hi : {Mode::cartesian, Mode::closed_symmetric,
                  Mode::cartesian_closed, Mode::compact_symmetric}) {
    auto sig2 = fixture_sig(hi);
    auto dc = infer_dom_cod(t, *sig2);
    CHECK(type_eq(dc.dom, dc0.dom));
    CHECK(type_eq(dc.cod, dc0.cod));
  }
}
