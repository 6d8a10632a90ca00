// Model loading, functorial evaluation, refutation and law checking.
#include "doctest.h"

#include "freecat/error.hpp"
#include "freecat/model.hpp"
#include "freecat/parse.hpp"
#include "freecat/term.hpp"

#include "test_util.hpp"

#include <memory>
#include <string>

using namespace freecat;
using freecat::test::data_path;
using freecat::test::fixture_sig;
using freecat::test::slurp;

namespace {

// X -> X gotten by bending the wire right then left; equals id[X] in any
// model with duals.
MorPtr zig_right(const TypePtr& x) {
  auto xd = t_dual(x);
  return m_seq_all({m_unrightu(x), m_par(m_id(x), m_cup(x)),
                    m_unassoc(x, xd, x), m_par(m_cap(x), m_id(x)),
                    m_leftu(x)});
}

// Dual version: X^ -> X^.
MorPtr zig_left(const TypePtr& x) {
  auto xd = t_dual(x);
  return m_seq_all({m_unleftu(xd), m_par(m_cup(x), m_id(xd)),
                    m_assoc(xd, x, xd), m_par(m_id(xd), m_cap(x)),
                    m_rightu(xd)});
}

Model bare_matrix_model(std::shared_ptr<const Signature> sig,
                        std::map<std::string, std::size_t> objects) {
  Model m;
  m.kind = ModelKind::matrix;
  m.name = "bare";
  m.sig = std::move(sig);
  m.objects = std::move(objects);
  return m;
}

} // namespace

TEST_CASE("model kind ceilings") {
  CHECK(model_mode_ceiling(ModelKind::matrix) == Mode::compact_symmetric);
  CHECK(model_mode_ceiling(ModelKind::finset) == Mode::cartesian_closed);
  CHECK(model_mode_ceiling(ModelKind::perm) == Mode::symmetric);
  CHECK(model_supports_mode(ModelKind::matrix, Mode::closed_symmetric));
  CHECK_FALSE(model_supports_mode(ModelKind::matrix, Mode::cartesian));
  CHECK(model_supports_mode(ModelKind::finset, Mode::cartesian));
  CHECK_FALSE(model_supports_mode(ModelKind::finset, Mode::compact_symmetric));
  CHECK_FALSE(model_supports_mode(ModelKind::perm, Mode::closed_monoidal));
  // every mode has at least one supporting kind
  for (int i = 0; i < static_cast<int>(mode_count); ++i) {
    Mode md = static_cast<Mode>(i);
    bool any = model_supports_mode(ModelKind::matrix, md) ||
               model_supports_mode(ModelKind::finset, md) ||
               model_supports_mode(ModelKind::perm, md);
    CHECK(any);
  }
}

TEST_CASE("model_dim conventions") {
  auto sig = fixture_sig(Mode::compact_symmetric);
  auto m = bare_matrix_model(sig, {{"A", 2}, {"B", 3}, {"C", 5}});
  auto a = t_basic("A"), b = t_basic("B");
  CHECK(model_dim(m, t_unit()) == 1);
  CHECK(model_dim(m, t_tensor(a, b)) == 6);
  CHECK(model_dim(m, t_dual(a)) == 2);
  CHECK(model_dim(m, t_hom(a, b)) == 6);

  auto cart = fixture_sig(Mode::cartesian_closed);
  Model fs;
  fs.kind = ModelKind::finset;
  fs.sig = cart;
  fs.objects = {{"A", 2}, {"B", 3}, {"C", 2}};
  CHECK(model_dim(fs, t_unit()) == 1);
  CHECK(model_dim(fs, t_tensor(a, b)) == 6);
  CHECK(model_dim(fs, t_hom(a, b)) == 9); // 3^2
  // the evaluation budget rejects astronomically large carriers:
  // |Hom(B, Hom(B, B))| = 3^(3^3) when B has three elements
  CHECK_THROWS_AS(model_dim(fs, t_hom(b, t_hom(b, b))), FcError);

  auto sym = fixture_sig(Mode::symmetric);
  Model pm;
  pm.kind = ModelKind::perm;
  pm.sig = sym;
  pm.objects = {{"A", 2}, {"B", 3}, {"C", 0}};
  CHECK(model_dim(pm, t_unit()) == 0);      // no strands
  CHECK(model_dim(pm, t_tensor(a, b)) == 5); // strands add
  CHECK(model_dim(pm, t_basic("C")) == 0);
}

TEST_CASE("matrix braid is the Kronecker commutation permutation") {
  auto sig = fixture_sig(Mode::symmetric);
  auto m = bare_matrix_model(sig, {{"A", 2}, {"B", 3}, {"C", 1}});
  auto braided = eval_mor(m, m_braid(t_basic("A"), t_basic("B")));
  REQUIRE(braided.kind == ModelKind::matrix);
  REQUIRE(braided.mat.rows() == 6);
  REQUIRE(braided.mat.cols() == 6);
  // basis e_i (x) e_j at column i*3+j must land on row j*2+i
  RatMatrix expect(6, 6);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      expect.set(j * 2 + i, i * 3 + j, CRat(1));
  CHECK(braided.mat == expect);
  // braid ; braid-inverse is the identity
  auto round = eval_mor(
      m, m_seq(m_braid(t_basic("A"), t_basic("B")),
               m_braidinv(t_basic("A"), t_basic("B"))));
  CHECK(round.mat == RatMatrix::identity(6));
}

TEST_CASE("cup and cap matrices") {
  Signature s;
  s.mode = Mode::compact_symmetric;
  s.objects = {"V"};
  auto sig = std::make_shared<const Signature>(s);
  auto m = bare_matrix_model(sig, {{"V", 2}});
  auto v = t_basic("V");

  auto cup = eval_mor(m, m_cup(v));
  REQUIRE(cup.mat.rows() == 4);
  REQUIRE(cup.mat.cols() == 1);
  RatMatrix expect_cup(4, 1);
  expect_cup.set(0, 0, CRat(1)); // e_0 (x) e_0
  expect_cup.set(3, 0, CRat(1)); // e_1 (x) e_1
  CHECK(cup.mat == expect_cup);

  auto cap = eval_mor(m, m_cap(v));
  CHECK(cap.mat == expect_cup.transpose());

  // the circle V traced out: cup ; braid ; cap = dim V
  auto circle = m_seq_all(
      {m_cup(v), m_braid(t_dual(v), v), m_cap(v)});
  auto val = eval_mor(m, circle);
  REQUIRE(val.mat.rows() == 1);
  REQUIRE(val.mat.cols() == 1);
  CHECK(val.mat.at(0, 0) == CRat(2));
}

TEST_CASE("zig-zag composites are exactly the identity at every dimension") {
  Signature s;
  s.mode = Mode::compact_symmetric;
  s.objects = {"V"};
  auto sig = std::make_shared<const Signature>(s);
  auto v = t_basic("V");
  for (std::size_t d = 1; d <= 6; ++d) {
    auto m = bare_matrix_model(sig, {{"V", d}});
    CHECK(eval_mor(m, zig_right(v)).mat == RatMatrix::identity(d));
    CHECK(eval_mor(m, zig_left(v)).mat == RatMatrix::identity(d));
  }
}

TEST_CASE("hom objects encode morphisms as states") {
  // In a matrix model, name(f) : I -> (A -o B) is a state whose entries
  // list f's matrix; evaluating ev against basis states recovers f.
  auto sig = fixture_sig(Mode::closed_symmetric);
  auto m = make_random_matrix_model(sig, 7);
  auto a = t_basic("A"), b = t_basic("B");
  std::size_t da = model_dim(m, a), db = model_dim(m, b);
  auto f = eval_mor(m, m_gen("f"));
  auto named = eval_mor(m, m_name(m_gen("f")));
  REQUIRE(named.mat.rows() == da * db);
  REQUIRE(named.mat.cols() == 1);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < db; ++j)
      CHECK(named.mat.at(i * db + j, 0) == f.mat.at(j, i));
  // ev ; with the named state plugged in gives back f:
  //   A ~ A * I -> A * (A -o B) -> B
  auto recover = m_seq_all({m_unrightu(a),
                            m_par(m_id(a), m_name(m_gen("f"))),
                            m_ev(a, b)});
  CHECK(eval_mor(m, recover).mat == f.mat);
}

TEST_CASE("finset evaluation of the cartesian family") {
  Signature s;
  s.mode = Mode::cartesian;
  s.objects = {"A", "B"};
  s.generators.push_back({"f", t_basic("A"), t_basic("B")});
  auto sig = std::make_shared<const Signature>(s);

  Model m;
  m.kind = ModelKind::finset;
  m.name = "hand";
  m.sig = sig;
  m.objects = {{"A", 3}, {"B", 2}};
  ConcreteMor f;
  f.kind = ModelKind::finset;
  f.dom_size = 3;
  f.cod_size = 2;
  f.table = {1, 0, 1};
  m.bindings = {{"f", f}};

  auto a = t_basic("A");
  auto dup = eval_mor(m, m_dup(a));
  REQUIRE(dup.table.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) CHECK(dup.table[i] == i * 3 + i);

  auto del = eval_mor(m, m_del(a));
  CHECK(del.cod_size == 1);
  for (auto v : del.table) CHECK(v == 0);

  auto pr = eval_mor(m, m_pair(m_gen("f"), m_id(a)));
  REQUIRE(pr.table.size() == 3);
  for (std::size_t i = 0; i < 3; ++i)
    CHECK(pr.table[i] == f.table[i] * 3 + i);

  auto p1 = eval_mor(m, m_seq(m_pair(m_gen("f"), m_id(a)),
                              m_proj1(t_basic("B"), a)));
  for (std::size_t i = 0; i < 3; ++i) CHECK(p1.table[i] == f.table[i]);

  auto br = eval_mor(m, m_braid(a, t_basic("B")));
  REQUIRE(br.table.size() == 6);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      CHECK(br.table[i * 2 + j] == j * 3 + i);

  // duplicate-then-delete-one-copy collapses to the identity pointwise
  auto chain = m_seq_all(
      {m_dup(a), m_par(m_id(a), m_del(a)), m_rightu(a)});
  auto cm = eval_mor(m, chain);
  for (std::size_t i = 0; i < 3; ++i) CHECK(cm.table[i] == i);
}

TEST_CASE("perm evaluation moves strands in blocks") {
  Signature s;
  s.mode = Mode::symmetric;
  s.objects = {"A", "B"};
  s.generators.push_back(
      {"s", t_tensor(t_basic("A"), t_basic("A")), // A*A -> A*A
       t_tensor(t_basic("A"), t_basic("A"))});
  auto sig = std::make_shared<const Signature>(s);

  Model m;
  m.kind = ModelKind::perm;
  m.name = "strands";
  m.sig = sig;
  m.objects = {{"A", 2}, {"B", 3}};
  ConcreteMor sw;
  sw.kind = ModelKind::perm;
  sw.dom_size = 4;
  sw.cod_size = 4;
  sw.perm = {1, 0, 2, 3};
  m.bindings = {{"s", sw}};

  auto a = t_basic("A"), b = t_basic("B");
  auto br = eval_mor(m, m_braid(a, b));
  // A's two strands move past B's three
  CHECK(br.perm == std::vector<std::size_t>{3, 4, 0, 1, 2});

  auto twice = eval_mor(m, m_seq(m_gen("s"), m_gen("s")));
  CHECK(twice.perm == std::vector<std::size_t>{0, 1, 2, 3});

  auto par = eval_mor(m, m_par(m_gen("s"), m_id(b)));
  CHECK(par.perm == std::vector<std::size_t>{1, 0, 2, 3, 4, 5, 6});

  // units carry no strands
  auto lu = eval_mor(m, m_leftu(a));
  CHECK(lu.perm == std::vector<std::size_t>{0, 1});
}

TEST_CASE("evaluation rejects constructors above the kind's ceiling") {
  auto cart = fixture_sig(Mode::cartesian);
  auto mm = make_random_matrix_model(fixture_sig(Mode::symmetric), 3);
  // matrix models cannot copy: Dup is out of reach even if the signature
  // would allow it
  Model crossed = mm;
  crossed.sig = cart;
  CHECK_THROWS_AS(eval_mor(crossed, m_dup(t_basic("A"))), FcError);

  auto compact = fixture_sig(Mode::compact_symmetric);
  Model fs = make_random_finset_model(fixture_sig(Mode::cartesian), 3);
  fs.sig = compact;
  CHECK_THROWS_AS(eval_mor(fs, m_cup(t_basic("A"))), FcError);

  // unbound generator names the offender
  auto bare = bare_matrix_model(fixture_sig(Mode::symmetric),
                                {{"A", 2}, {"B", 2}, {"C", 2}});
  try {
    eval_mor(bare, m_gen("f"));
    FAIL("expected an unbound-generator error");
  } catch (const FcError& e) {
    CHECK(e.kind() == ErrKind::invalid);
    CHECK(std::string(e.what()).find("f") != std::string::npos);
  }
}

TEST_CASE("model JSON loading") {
  auto sig_text = slurp(data_path("chem.sig"));
  auto sig = std::make_shared<Signature>(parse_signature(sig_text));
  auto m = load_model_file(data_path("burn.json"), sig);
  CHECK(m.kind == ModelKind::matrix);
  CHECK(m.objects.at("H") == 2);
  CHECK(m.objects.at("H2O") == 3);

  // the named composite evaluates to the expected shape
  auto react = sig->find_term("react");
  REQUIRE(react != nullptr);
  auto val = eval_mor(m, react->term);
  CHECK(val.mat.rows() == 9);
  CHECK(val.mat.cols() == 64);

  // one spot value fixed by hand from the component matrices: the
  // composite's (0,0) entry is burn(0,0-block) applied to the bond/obond
  // images of basis 0, and bond carries an imaginary entry there.
  auto bond = eval_mor(m, m_gen("bond"));
  CHECK(bond.mat.at(0, 0) == CRat(Rat(1), Rat(1) / 2));
}

TEST_CASE("model JSON loading errors name the offender") {
  Signature s;
  s.mode = Mode::symmetric;
  s.objects = {"A", "B"};
  s.generators.push_back({"f", t_basic("A"), t_basic("B")});
  auto sig = std::make_shared<const Signature>(s);

  auto expect_load_error = [&](const std::string& json,
                               const std::string& needle) {
    try {
      load_model_json(json, sig, "bad");
      FAIL("expected load_model_json to throw for: " << json);
    } catch (const FcError& e) {
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };

  // missing object size
  expect_load_error(R"({"kind":"matrix","objects":{"A":2},
    "generators":{"f":{"rows":2,"cols":2,"entries":[["1","0"],["0","1"]]}}})",
                    "B");
  // unbound generator
  expect_load_error(R"({"kind":"matrix","objects":{"A":2,"B":2},
    "generators":{}})",
                    "f");
  // wrong shape: f must be 2x2 here
  expect_load_error(R"({"kind":"matrix","objects":{"A":2,"B":2},
    "generators":{"f":{"rows":1,"cols":2,"entries":[["1","0"]]}}})",
                    "f");
  // malformed fraction
  expect_load_error(R"({"kind":"matrix","objects":{"A":2,"B":2},
    "generators":{"f":{"rows":2,"cols":2,"entries":[["2/4","0"],["0","1"]]}}})",
                    "2/4");
  // kind that cannot host the signature's mode
  Signature comp;
  comp.mode = Mode::compact_symmetric;
  comp.objects = {"A"};
  auto csig = std::make_shared<const Signature>(comp);
  try {
    load_model_json(R"({"kind":"perm","objects":{"A":2},"generators":{}})",
                    csig, "bad");
    FAIL("expected a mode-ceiling error");
  } catch (const FcError& e) {
    CHECK(e.kind() == ErrKind::invalid);
  }
  // non-bijective perm binding
  Signature ps;
  ps.mode = Mode::symmetric;
  ps.objects = {"A"};
  ps.generators.push_back({"g", t_basic("A"), t_basic("A")});
  auto psig = std::make_shared<const Signature>(ps);
  try {
    load_model_json(
        R"({"kind":"perm","objects":{"A":2},"generators":{"g":{"perm":[0,0]}}})",
        psig, "bad");
    FAIL("expected a bijectivity error");
  } catch (const FcError& e) {
    CHECK(std::string(e.what()).find("g") != std::string::npos);
  }
}

TEST_CASE("dagger laws on an exact complex model") {
  auto sig_text = slurp(data_path("chem.sig"));
  auto sig = std::make_shared<Signature>(parse_signature(sig_text));
  auto m = load_model_file(data_path("burn.json"), sig);

  auto bond = eval_mor(m, m_gen("bond"));
  auto burn = eval_mor(m, m_gen("burn"));

  // involution
  auto bd = dagger_mor(m, bond);
  CHECK(dagger_mor(m, bd).mat == bond.mat);
  // complex entries make dagger differ from plain transpose
  CHECK(bd.mat != bond.mat.transpose());
  CHECK(bd.mat == bond.mat.dagger());

  // contravariant over composition: (g . f)^† = f^† . g^†
  auto fuel = eval_mor(m, m_par(m_par(m_gen("bond"), m_gen("bond")),
                                m_gen("obond")));
  auto composite = burn.mat.mul(fuel.mat);
  CHECK(composite.dagger() == fuel.mat.dagger().mul(burn.mat.dagger()));
  // monoidal: (f (x) g)^† = f^† (x) g^†
  CHECK(fuel.mat.dagger() ==
        bond.mat.dagger().kron(bond.mat.dagger()).kron(
            eval_mor(m, m_gen("obond")).mat.dagger()));

  // perm dagger is the inverse permutation
  Signature ps;
  ps.mode = Mode::symmetric;
  ps.objects = {"A"};
  auto psig = std::make_shared<const Signature>(ps);
  Model pm;
  pm.kind = ModelKind::perm;
  pm.sig = psig;
  pm.objects = {{"A", 3}};
  ConcreteMor c;
  c.kind = ModelKind::perm;
  c.dom_size = c.cod_size = 3;
  c.perm = {1, 2, 0};
  auto inv = dagger_mor(pm, c);
  CHECK(inv.perm == std::vector<std::size_t>{2, 0, 1});

  // finset has no dagger
  Model fs = make_random_finset_model(fixture_sig(Mode::cartesian), 1);
  auto some = eval_mor(fs, m_gen("f"));
  CHECK_THROWS_AS(dagger_mor(fs, some), FcError);
}

TEST_CASE("refute_eq separates unequal maps and passes equal ones") {
  auto sig = fixture_sig(Mode::symmetric);
  auto m = make_random_matrix_model(sig, 11);
  auto a = t_basic("A");

  auto braid2 = m_seq(m_braid(a, a), m_braid(a, a));
  auto idaa = m_id(t_tensor(a, a));
  auto ok = refute_eq(m, braid2, idaa);
  CHECK_FALSE(ok.refuted);

  // braid[A,A] != id on any carrier of dimension >= 2
  auto bad = refute_eq(m, m_braid(a, a), idaa);
  CHECK(bad.refuted);
  CHECK(bad.model_name == m.name);
  CHECK_FALSE(bad.detail.empty());
  // the reported basis input really does separate them
  auto lhs = eval_mor(m, m_braid(a, a));
  auto rhs = eval_mor(m, idaa);
  auto diff = concrete_diff(lhs, rhs);
  REQUIRE(diff.has_value());
  CHECK(diff->input_index == bad.input_index);
}

TEST_CASE("random models are deterministic in the seed") {
  auto sig = fixture_sig(Mode::symmetric);
  auto m1 = make_random_matrix_model(sig, 99);
  auto m2 = make_random_matrix_model(sig, 99);
  auto m3 = make_random_matrix_model(sig, 100);
  CHECK(m1.objects == m2.objects);
  CHECK(concrete_eq(m1.bindings.at("f"), m2.bindings.at("f")));
  bool same_everything =
      m1.objects == m3.objects &&
      concrete_eq(m1.bindings.at("f"), m3.bindings.at("f")) &&
      concrete_eq(m1.bindings.at("h"), m3.bindings.at("h"));
  CHECK_FALSE(same_everything);

  auto cart = fixture_sig(Mode::cartesian);
  auto f1 = make_random_finset_model(cart, 5);
  auto f2 = make_random_finset_model(cart, 5);
  CHECK(f1.objects == f2.objects);
  CHECK(concrete_eq(f1.bindings.at("f"), f2.bindings.at("f")));
}

TEST_CASE("law checker passes honest models and catches corrupted ones") {
  Signature s;
  s.mode = Mode::compact_symmetric;
  s.objects = {"V", "W"};
  s.generators.push_back({"f", t_basic("V"), t_basic("W")});
  auto sig = std::make_shared<const Signature>(s);

  auto m = make_random_matrix_model(sig, 21);
  auto report = check_model_laws(m, 6, 21);
  CHECK(report.ok());
  CHECK(report.checked > 0);
  CHECK_FALSE(report.laws.empty());

  // corrupt cup[V]: right shape, wrong entries -> the zig-zag law must fail
  std::size_t dv = m.objects.at("V");
  RatMatrix bad_cup(dv * dv, 1);
  bad_cup.set(0, 0, CRat(1)); // only e_0 (x) e_0: not a cup for dv >= 2
  EvalOverrides ov;
  ov.matrix["cup[V]"] = bad_cup;
  auto bad = check_model_laws(m, 6, 21, &ov);
  CHECK_FALSE(bad.ok());
  bool zig_failed = false;
  for (const auto& fl : bad.failures)
    if (fl.law.find("zig") != std::string::npos) zig_failed = true;
  CHECK(zig_failed);

  // finset law check on a cartesian signature
  auto cart = fixture_sig(Mode::cartesian);
  auto fsm = make_random_finset_model(cart, 8);
  auto fr = check_model_laws(fsm, 6, 8);
  CHECK(fr.ok());
}
