// Microbenchmarks for the hot paths: matrix evaluation, rewriting to
// normal form, canonical diagram forms, and untyped lambda reduction.
#include <benchmark/benchmark.h>

#include <memory>
#include <string>

#include "freecat/equality.hpp"
#include "freecat/lambda.hpp"
#include "freecat/model.hpp"
#include "freecat/rewrite.hpp"
#include "freecat/signature.hpp"
#include "freecat/strict.hpp"
#include "freecat/term.hpp"

namespace {

using namespace freecat;

std::shared_ptr<const Signature> bench_sig(Mode mode) {
  auto sig = std::make_shared<Signature>();
  sig->mode = mode;
  sig->objects = {"A", "B", "C"};
  auto a = t_basic("A"), b = t_basic("B"), c = t_basic("C");
  sig->generators.push_back({"f", a, b});
  sig->generators.push_back({"g", b, a});
  sig->generators.push_back({"h", t_tensor(a, b), c});
  if (mode_has_closed(mode))
    sig->generators.push_back({"gg", c, t_hom(a, b)});
  return sig;
}

void BM_eval_matrix(benchmark::State& state) {
  auto sig = bench_sig(Mode::symmetric);
  auto model = make_random_matrix_model(sig, 42);
  auto a = t_basic("A"), b = t_basic("B");
  auto t = m_seq_all({m_braid(a, a), m_par(m_gen("f"), m_gen("f")),
                      m_braid(b, b), m_par(m_gen("g"), m_gen("g"))});
  for (auto _ : state) {
    auto out = eval_mor(model, t);
    benchmark::DoNotOptimize(out);
  }
}
BENCHMARK(BM_eval_matrix);

void BM_normalize(benchmark::State& state) {
  auto sig = bench_sig(Mode::closed_symmetric);
  auto a = t_basic("A"), b = t_basic("B"), c = t_basic("C");
  // curry/uncurry tower around an eta pattern, plus structural noise
  auto body = m_seq(m_par(m_id(a), m_gen("gg")), m_ev(a, b));
  auto t = m_seq_all({m_uncurry(m_curry(body)),
                      m_seq(m_gen("f"), m_id(b)),
                      m_seq(m_braid(b, b), m_braid(b, b)),
                      m_gen("g"), m_gen("f"), m_gen("g")});
  t = m_par(t, m_uncurry(m_curry(m_uncurry(m_curry(body)))));
  (void)c;
  for (auto _ : state) {
    auto r = beta_eta_normalize(t, *sig);
    benchmark::DoNotOptimize(r.term);
  }
}
BENCHMARK(BM_normalize);

void BM_snf(benchmark::State& state) {
  auto sig = bench_sig(Mode::symmetric);
  auto a = t_basic("A"), b = t_basic("B");
  // long symmetric chain: shuffles interleaved with generator layers
  auto layer = m_par(m_par(m_gen("f"), m_gen("g")), m_gen("f"));
  auto shuffle =
      m_par(m_braid(a, b), m_id(a));
  auto t = m_seq_all({m_par(m_par(m_id(a), m_gen("g")), m_id(a)), shuffle,
                      m_par(m_braid(b, a), m_id(a)), layer,
                      m_par(m_id(b), m_braid(a, b))});
  for (auto _ : state) {
    auto nf = symmetric_normal_form(t, *sig);
    benchmark::DoNotOptimize(nf.key);
  }
}
BENCHMARK(BM_snf);

void BM_church(benchmark::State& state) {
  auto file = parse_lambda_file(
      "def mul = \\m. \\n. \\f. m (n f)\n"
      "def five = \\f. \\x. f (f (f (f (f x))))\n"
      "mul five five\n");
  auto t = file.main_term();
  for (auto _ : state) {
    auto r = normalize_untyped(t, 100000);
    benchmark::DoNotOptimize(r.term);
  }
}
BENCHMARK(BM_church);

} // namespace

BENCHMARK_MAIN();
