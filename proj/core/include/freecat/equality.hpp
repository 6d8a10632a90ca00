#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "freecat/model.hpp"
#include "freecat/rewrite.hpp"
#include "freecat/signature.hpp"
#include "freecat/term.hpp"

namespace freecat {

enum class EqAnswer { equal, not_equal, unknown };

// Concrete countermodel evidence behind every not-equal verdict.
struct EqWitness {
  std::string model;           // model name (attached or synthesized)
  std::size_t input_index = 0; // first basis input / element where they split
  std::string detail;          // the two differing outputs, printed
};

struct EqVerdict {
  EqAnswer answer = EqAnswer::unknown;
  // Equal evidence: "normal-form" (canonical diagram forms coincide) or
  // "axiom-path" (both sides rewrite to the same term).
  std::string by;
  std::optional<EqWitness> witness; // present iff answer == not_equal
  std::string note; // unknown: what was exhausted; otherwise extra context
};

enum class StrategyKind { nf, search, model, full };
std::string_view strategy_kind_name(StrategyKind k);
std::optional<StrategyKind> strategy_kind_from_name(std::string_view s);

struct Strategy {
  StrategyKind kind = StrategyKind::full;
  std::size_t fuel = default_fuel; // rewrite budget per side
  std::uint64_t seed = 0;          // drives synthesized countermodels
  std::vector<std::shared_ptr<const Model>> models; // attached models
  // Synthesized random models per applicable kind in the refutation rung
  // (and for witness search after a canonical-form mismatch).
  std::size_t random_models = 4;
  std::size_t snf_tie_budget = 10000;
};

// Equality decision ladder:
//   1. canonical diagram forms — when both sides lie in the diagram
//      fragment (generators, identities, composition, tensor, structural
//      morphisms). Equal keys prove equality when the braiding is symmetric,
//      or below that when both terms are braid-free with every component
//      anchored to the boundary. Distinct keys prove inequality in
//      non-cartesian modes; the verdict is only issued once a separating
//      model has been found, so not-equal always carries a witness.
//   2. beta/eta rewriting — both sides normalize to identical terms.
//   3. model refutation — attached models plus seeded random models; any
//      disagreement yields not-equal with the first differing input.
//   4. unknown.
// Kind nf runs rung 1; search runs 1-2; model runs 3; full runs 1-3.
// Never answers equal when any attached model distinguishes the sides.
// Errors: FcError(type) when the sides are ill-typed or their boundaries
// disagree.
EqVerdict eq_decide(const MorPtr& t1, const MorPtr& t2, const Signature& sig,
                    const Strategy& strategy = {});

} // namespace freecat
