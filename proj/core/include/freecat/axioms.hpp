#pragma once

#include <functional>
#include <string>
#include <vector>

#include "freecat/term.hpp"

namespace freecat {

// An equation schema between two structural morphism templates. `build`
// instantiates both sides for concrete types substituted for the
// metavariables (given in order).
struct EqSchema {
  std::string name;
  std::vector<std::string> metavars;
  std::function<std::pair<MorPtr, MorPtr>(const std::vector<TypePtr>&)> build;
};

// The coherence laws a model of the given mode must satisfy:
//   monoidal: triangle, pentagon
//   braided adds both hexagons
//   symmetric adds the symmetry (braid then braid = id)
//   cartesian adds dup/del and pairing/projection laws
//   closed-* adds curry/ev inverse laws
//   compact-symmetric adds both zig-zags
std::vector<EqSchema> coherence_axioms(Mode mode);

// The Yang-Baxter relation (derivable from the hexagons; kept as its own
// schema for the braid test suites).
EqSchema yang_baxter_schema();

} // namespace freecat
