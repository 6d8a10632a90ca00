#include "freecat/equality.hpp"

#include <utility>

#include "freecat/error.hpp"
#include "freecat/strict.hpp"

namespace freecat {

std::string_view strategy_kind_name(StrategyKind k) {
  switch (k) {
  case StrategyKind::nf:
    return "nf";
  case StrategyKind::search:
    return "search";
  case StrategyKind::model:
    return "model";
  case StrategyKind::full:
    return "full";
  }
  return "full";
}

std::optional<StrategyKind> strategy_kind_from_name(std::string_view s) {
  if (s == "nf")
    return StrategyKind::nf;
  if (s == "search")
    return StrategyKind::search;
  if (s == "model")
    return StrategyKind::model;
  if (s == "full")
    return StrategyKind::full;
  return std::nullopt;
}

namespace {

// Models used for refutation and witness search: the attached ones plus
// seeded random ones of every kind that can interpret the signature's mode.
std::vector<std::shared_ptr<const Model>>
refutation_models(const Signature& sig, const Strategy& st) {
  std::vector<std::shared_ptr<const Model>> out;
  for (const auto& m : st.models)
    if (m && model_supports_mode(m->kind, sig.mode))
      out.push_back(m);
  if (st.random_models > 0) {
    auto shared_sig = std::make_shared<const Signature>(sig);
    for (std::size_t i = 0; i < st.random_models; ++i) {
      const std::uint64_t seed = st.seed * 1000003u + i;
      if (model_supports_mode(ModelKind::matrix, sig.mode))
        out.push_back(std::make_shared<Model>(
            make_random_matrix_model(shared_sig, seed)));
      if (model_supports_mode(ModelKind::finset, sig.mode))
        out.push_back(std::make_shared<Model>(
            make_random_finset_model(shared_sig, seed)));
    }
  }
  return out;
}

// Evaluate both sides in each model until one tells them apart. Models that
// cannot evaluate the terms (size budget, unsupported connective) are
// skipped: refutation needs a model that actually computes.
std::optional<EqWitness>
find_witness(const std::vector<std::shared_ptr<const Model>>& models,
             const MorPtr& t1, const MorPtr& t2) {
  for (const auto& m : models) {
    try {
      RefuteOutcome r = refute_eq(*m, t1, t2);
      if (r.refuted)
        return EqWitness{r.model_name, r.input_index, r.detail};
    } catch (const FcError&) {
      continue;
    }
  }
  return std::nullopt;
}

bool braiding_symmetric_at(Mode m) { return mode_braiding_symmetric(m); }

} // namespace

EqVerdict eq_decide(const MorPtr& t1, const MorPtr& t2, const Signature& sig,
                    const Strategy& strategy) {
  const DomCod dc1 = infer_dom_cod(t1, sig);
  const DomCod dc2 = infer_dom_cod(t2, sig);
  if (!type_eq(dc1.dom, dc2.dom) || !type_eq(dc1.cod, dc2.cod))
    fail_type("equality requires identical boundaries: lhs " +
              print_type(dc1.dom, sig.mode) + " -> " +
              print_type(dc1.cod, sig.mode) + ", rhs " +
              print_type(dc2.dom, sig.mode) + " -> " +
              print_type(dc2.cod, sig.mode));

  EqVerdict v;

  if (mor_eq(t1, t2)) {
    v.answer = EqAnswer::equal;
    v.by = "normal-form";
    v.note = "syntactically identical";
    return v;
  }

  const bool run_rung1 = strategy.kind == StrategyKind::nf ||
                         strategy.kind == StrategyKind::search ||
                         strategy.kind == StrategyKind::full;
  const bool run_rung2 = strategy.kind == StrategyKind::search ||
                         strategy.kind == StrategyKind::full;
  const bool run_rung3 = strategy.kind == StrategyKind::model ||
                         strategy.kind == StrategyKind::full;

  // Rung 1: canonical diagram forms.
  bool rung1_mismatch = false;
  if (run_rung1 && in_diagram_fragment(t1) && in_diagram_fragment(t2)) {
    bool computed = false;
    SymNF n1, n2;
    try {
      n1 = symmetric_normal_form(t1, sig, strategy.snf_tie_budget);
      n2 = symmetric_normal_form(t2, sig, strategy.snf_tie_budget);
      computed = true;
    } catch (const FcError&) {
      // e.g. tie budget exhausted: the rung abstains.
    }
    if (computed) {
      if (n1.key == n2.key) {
        // Equal canonical forms decide equality when diagrams are taken up
        // to symmetry; below a symmetric braiding that is justified only
        // for braid-free terms whose components all touch the boundary.
        if (braiding_symmetric_at(sig.mode)) {
          v.answer = EqAnswer::equal;
          v.by = "normal-form";
          return v;
        }
        if (term_braid_free(t1) && term_braid_free(t2) &&
            !n1.has_floating && !n2.has_floating) {
          v.answer = EqAnswer::equal;
          v.by = "normal-form";
          return v;
        }
      } else if (!mode_has_cartesian(sig.mode)) {
        // Distinct canonical forms refute equality in every non-cartesian
        // mode (a cartesian unit is terminal and can merge diagrams that
        // differ as plain string diagrams, so there the rung abstains).
        // The verdict still needs a countermodel to cite.
        rung1_mismatch = true;
        auto witness = find_witness(refutation_models(sig, strategy), t1, t2);
        if (witness) {
          v.answer = EqAnswer::not_equal;
          v.witness = std::move(witness);
          v.note = "canonical diagram forms differ";
          return v;
        }
      }
    }
  }

  // Rung 2: oriented rewriting.
  if (run_rung2) {
    try {
      NormalizeResult n1 = beta_eta_normalize(t1, sig, strategy.fuel);
      NormalizeResult n2 = beta_eta_normalize(t2, sig, strategy.fuel);
      if (mor_eq(n1.term, n2.term)) {
        v.answer = EqAnswer::equal;
        v.by = "axiom-path";
        return v;
      }
    } catch (const FcError& e) {
      if (e.kind() == ErrKind::type || e.kind() == ErrKind::internal)
        throw;
    }
  }

  // Rung 3: model refutation.
  if (run_rung3) {
    auto witness = find_witness(refutation_models(sig, strategy), t1, t2);
    if (witness) {
      v.answer = EqAnswer::not_equal;
      v.witness = std::move(witness);
      return v;
    }
  }

  v.answer = EqAnswer::unknown;
  v.note = rung1_mismatch
               ? "canonical diagram forms differ but no separating model "
                 "was found within budget"
               : "budget exhausted without a proof or a countermodel";
  return v;
}

} // namespace freecat
