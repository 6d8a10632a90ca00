// Strictification, wiring diagrams and the symmetric normal form.
#include "doctest.h"

#include "freecat/error.hpp"
#include "freecat/model.hpp"
#include "freecat/parse.hpp"
#include "freecat/strict.hpp"
#include "freecat/term.hpp"

#include "test_util.hpp"

#include <memory>

using namespace freecat;
using freecat::test::fixture_sig;

TEST_CASE("diagram fragment membership") {
  auto sig = fixture_sig(Mode::closed_symmetric);
  CHECK(in_diagram_fragment(parse_mor("braid[A,B] ; (f * f) ; g * g", *sig)));
  CHECK(in_diagram_fragment(parse_mor("assoc[A,B,C] ; unassoc[A,B,C]", *sig)));
  CHECK_FALSE(in_diagram_fragment(parse_mor("curry(h)", *sig)));
  CHECK_FALSE(in_diagram_fragment(parse_mor("ev[A,B]", *sig)));
  auto cart = fixture_sig(Mode::cartesian);
  CHECK_FALSE(in_diagram_fragment(parse_mor("dup[A]", *cart)));

  CHECK(term_braid_free(parse_mor("f ; g ; f", *sig)));
  CHECK(term_braid_free(parse_mor("left[A] ; f", *sig)));
  CHECK_FALSE(term_braid_free(parse_mor("braid[A,B]", *sig)));
  CHECK_FALSE(term_braid_free(parse_mor("braidinv[A,B]", *sig)));
}

TEST_CASE("strictify erases structure and flattens boundaries") {
  auto sig = fixture_sig(Mode::symmetric);
  // purely structural: only (possibly trivial) permutation layers remain
  auto st = strictify(
      parse_mor("assoc[A,B,C] ; unassoc[A,B,C] ; unleft[A * B * C] ; "
                "left[A * B * C]",
                *sig),
      *sig);
  CHECK(st.dom_atoms.size() == 3);
  CHECK(st.cod_atoms.size() == 3);
  for (const auto& l : st.layers) {
    REQUIRE(std::holds_alternative<PermLayer>(l));
    auto& p = std::get<PermLayer>(l).perm;
    for (std::size_t i = 0; i < p.size(); ++i) CHECK(p[i] == i);
  }

  // braid becomes the block transposition
  auto br = strictify(parse_mor("braid[A * B, C]", *sig), *sig);
  REQUIRE(br.layers.size() == 1);
  REQUIRE(std::holds_alternative<PermLayer>(br.layers[0]));
  // wire i moves to perm[i]: A,B (wires 0,1) slide past C (wire 2)
  CHECK(std::get<PermLayer>(br.layers[0]).perm ==
        std::vector<std::size_t>{1, 2, 0});

  // tensor of generators sequentializes to one block per layer
  auto pp = strictify(parse_mor("f * f", *sig), *sig);
  std::size_t blocks = 0;
  for (const auto& l : pp.layers)
    if (std::holds_alternative<BlockLayer>(l)) ++blocks;
  CHECK(blocks == 2);

  // outside the fragment: rejected
  auto closed = fixture_sig(Mode::closed_symmetric);
  CHECK_THROWS_AS(strictify(parse_mor("curry(h)", *closed), *closed),
                  FcError);
}

TEST_CASE("strict pipeline round-trips through a model") {
  // strictify must preserve evaluation: check a tangle against the original
  auto sig = fixture_sig(Mode::symmetric);
  auto t = parse_mor(
      "braid[A,A] ; (e * e) ; braid[A,A] ; (f * f) ; braid[B,B]", *sig);
  auto st = strictify(t, *sig);
  auto back = strict_to_mor(st, *sig);
  auto m = make_random_matrix_model(sig, 17);
  CHECK(concrete_eq(eval_mor(m, t), eval_mor(m, back)));

  // below braided mode a nontrivial permutation cannot be re-emitted
  auto mono = fixture_sig(Mode::monoidal);
  StrictTerm needs_swap;
  needs_swap.dom_atoms = {t_basic("A"), t_basic("B")};
  needs_swap.cod_atoms = {t_basic("B"), t_basic("A")};
  needs_swap.layers = {PermLayer{{1, 0}}};
  CHECK_THROWS_AS(strict_to_mor(needs_swap, *mono), FcError);
}

TEST_CASE("wiring diagram anchors producers and consumers") {
  auto sig = fixture_sig(Mode::symmetric);
  auto st = strictify(parse_mor("(e * f) ; h", *sig), *sig);
  auto wd = diagram_of_strict(st, *sig);
  CHECK(wd.input_atoms.size() == 2);
  CHECK(wd.output_atoms.size() == 1);
  // boxes: e, f, h
  REQUIRE(wd.boxes.size() == 3);
  std::size_t h_boxes = 0;
  for (const auto& b : wd.boxes)
    if (b.gen == "h") {
      ++h_boxes;
      REQUIRE(b.ins.size() == 2);
      REQUIRE(b.outs.size() == 1);
      CHECK(wd.outputs == std::vector<std::size_t>{b.outs[0]});
    }
  CHECK(h_boxes == 1);
}

TEST_CASE("symmetric normal form identifies naturality rearrangements") {
  auto sig = fixture_sig(Mode::symmetric);
  // slide generators along a braid: (f * f) ; braid = braid ; (f * f)
  auto lhs = parse_mor("(f * e) ; braid[B,A]", *sig);
  auto rhs = parse_mor("braid[A,A] ; (e * f)", *sig);
  auto n1 = symmetric_normal_form(lhs, *sig);
  auto n2 = symmetric_normal_form(rhs, *sig);
  CHECK(n1.key == n2.key);
  CHECK_FALSE(n1.has_floating);

  // interchange: (f * id) ; (id * f) = f * f
  auto i1 = symmetric_normal_form(
      parse_mor("(f * id[A]) ; (id[B] * f)", *sig), *sig);
  auto i2 = symmetric_normal_form(parse_mor("f * f", *sig), *sig);
  CHECK(i1.key == i2.key);

  // different morphisms get different keys
  auto d1 = symmetric_normal_form(parse_mor("f * f", *sig), *sig);
  auto d2 = symmetric_normal_form(
      parse_mor("braid[A,A] ; (f * f)", *sig), *sig);
  CHECK(d1.key != d2.key);

  // boundary data survives
  CHECK(i1.dom_atoms == std::vector<std::string>{"A", "A"});
  CHECK(i1.cod_atoms == std::vector<std::string>{"B", "B"});
}

TEST_CASE("yang-baxter: both sides normalize to the same crossing pattern") {
  auto sig = fixture_sig(Mode::symmetric);
  auto a = t_basic("A");
  std::vector<TypePtr> atoms = {a, a, a};
  // (b12)(b23)(b12) vs (b23)(b12)(b23) as permutation pipelines
  StrictTerm l, r;
  l.dom_atoms = r.dom_atoms = atoms;
  l.cod_atoms = r.cod_atoms = atoms;
  l.layers = {PermLayer{{1, 0, 2}}, PermLayer{{0, 2, 1}},
              PermLayer{{1, 0, 2}}};
  r.layers = {PermLayer{{0, 2, 1}}, PermLayer{{1, 0, 2}},
              PermLayer{{0, 2, 1}}};
  auto nl = symmetric_normal_form(l, *sig);
  auto nr = symmetric_normal_form(r, *sig);
  CHECK(nl.key == nr.key);
  // both compose to the full reversal [2,1,0]
  CHECK(nl.outputs == std::vector<std::size_t>{2, 1, 0});
  CHECK(nl.outputs == nr.outputs);

  // as morphisms, via the braid constructors
  auto b12 = m_par(m_braid(a, a), m_id(a));
  auto b23 = m_par(m_id(a), m_braid(a, a));
  auto lhs = m_seq_all({b12, b23, b12});
  auto rhs = m_seq_all({b23, b12, b23});
  CHECK(symmetric_normal_form(lhs, *sig).key ==
        symmetric_normal_form(rhs, *sig).key);
}

TEST_CASE("floating components are flagged") {
  Signature s;
  s.mode = Mode::symmetric;
  s.objects = {"A"};
  s.generators.push_back({"state", t_unit(), t_basic("A")});
  s.generators.push_back({"kill", t_basic("A"), t_unit()});
  s.generators.push_back({"f", t_basic("A"), t_basic("A")});
  auto sig = std::make_shared<const Signature>(s);

  // state ; kill : I -> I touches no boundary wire: floating
  auto loop = parse_mor("state ; kill", *sig);
  auto nf = symmetric_normal_form(loop, *sig);
  CHECK(nf.has_floating);

  // the same loop beside an ordinary wire still floats
  auto beside = parse_mor("(state ; kill) * f", *sig);
  CHECK(symmetric_normal_form(beside, *sig).has_floating);

  // state alone is anchored to the output boundary
  auto anchored = parse_mor("state ; f", *sig);
  CHECK_FALSE(symmetric_normal_form(anchored, *sig).has_floating);
  CHECK_FALSE(
      symmetric_normal_form(parse_mor("f ; kill", *sig), *sig).has_floating);
}

TEST_CASE("interchangeable zero-input boxes hit the tie budget") {
  Signature s;
  s.mode = Mode::symmetric;
  s.objects = {"A"};
  s.generators.push_back({"st", t_unit(), t_basic("A")});
  auto sig = std::make_shared<const Signature>(s);

  auto many = [&](std::size_t n) {
    MorPtr t = m_gen("st");
    for (std::size_t i = 1; i < n; ++i) t = m_par(t, m_gen("st"));
    return t;
  };
  // 5 copies: 120 orders, inside the default budget
  auto ok = symmetric_normal_form(many(5), *sig);
  CHECK(ok.boxes.size() == 5);
  // 8 copies: 40320 orders, over the default budget of 10000
  try {
    symmetric_normal_form(many(8), *sig);
    FAIL("expected the tie budget to trip");
  } catch (const FcError& e) {
    CHECK(e.kind() == ErrKind::invalid);
    CHECK(std::string(e.what()).find("st") != std::string::npos);
  }
  // a caller-raised budget clears it
  auto big = symmetric_normal_form(many(8), *sig, 50000);
  CHECK(big.boxes.size() == 8);
}

TEST_CASE("snf re-emission preserves meaning") {
  auto sig = fixture_sig(Mode::symmetric);
  auto t = parse_mor("braid[A,A] ; (f * f) ; braid[B,B] ; (g * e) ; "
                     "braid[A,A]",
                     *sig);
  auto nf = symmetric_normal_form(t, *sig);
  auto st2 = snf_to_strict(nf, *sig);
  auto t2 = strict_to_mor(st2, *sig);
  // same canonical form again (idempotence)...
  CHECK(symmetric_normal_form(t2, *sig).key == nf.key);
  // ...and the same linear map
  auto m = make_random_matrix_model(sig, 23);
  CHECK(concrete_eq(eval_mor(m, t), eval_mor(m, t2)));
}

TEST_CASE("structural plumbing helpers") {
  auto sig = fixture_sig(Mode::symmetric);
  auto a = t_basic("A"), b = t_basic("B"), c = t_basic("C");
  auto nested = t_tensor(t_tensor(a, t_unit()), t_tensor(b, c));

  // structural_nf : T -> flat; structural_nf_inv : flat -> T; composing
  // them is the identity in any model
  auto there = structural_nf(nested, Mode::symmetric);
  auto back = structural_nf_inv(nested, Mode::symmetric);
  auto dc = infer_dom_cod(there, *sig);
  CHECK(type_eq(dc.dom, nested));
  CHECK(type_eq(dc.cod, t_tensor(t_tensor(a, b), c)));
  auto round = m_seq(there, back);
  auto m = make_random_matrix_model(sig, 31);
  std::size_t dim = model_dim(m, nested);
  CHECK(eval_mor(m, round).mat == RatMatrix::identity(dim));

  // perm_to_mor implements exactly "atom i moves to position p[i]"
  std::vector<TypePtr> atoms = {a, b, c};
  std::vector<std::size_t> p = {2, 0, 1}; // A->2, B->0, C->1: cod B,C,A
  auto pm = perm_to_mor(p, atoms, Mode::symmetric);
  auto pdc = infer_dom_cod(pm, *sig);
  CHECK(type_eq(pdc.dom, t_tensor(t_tensor(a, b), c)));
  CHECK(type_eq(pdc.cod, t_tensor(t_tensor(b, c), a)));
  // against the strand-level model: strand of A (size da) lands last
  auto val = eval_mor(m, pm);
  std::size_t da = model_dim(m, a), db = model_dim(m, b),
              dc2 = model_dim(m, c);
  RatMatrix expect(da * db * dc2, da * db * dc2);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < db; ++j)
      for (std::size_t k = 0; k < dc2; ++k)
        expect.set((j * dc2 + k) * da + i, (i * db + j) * dc2 + k, CRat(1));
  CHECK(val.mat == expect);

  // identity permutation on no atoms
  auto empty = perm_to_mor({}, {}, Mode::symmetric);
  auto edc = infer_dom_cod(empty, *sig);
  CHECK(type_eq(edc.dom, t_unit()));
}

TEST_CASE("print_strict mentions every layer") {
  auto sig = fixture_sig(Mode::symmetric);
  auto st = strictify(parse_mor("(f * f) ; braid[B,B]", *sig), *sig);
  auto s = print_strict(st, sig->mode);
  CHECK(s.find("f") != std::string::npos);
  CHECK_FALSE(s.empty());
}
