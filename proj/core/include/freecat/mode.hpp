#pragma once

#include <optional>
#include <string_view>

namespace freecat {

// Structure a signature's category carries. Forms a partial order: a term
// legal at some mode is legal at every mode above it.
enum class Mode {
  monoidal,
  braided,
  symmetric,
  cartesian,
  closed_monoidal,
  closed_braided,
  closed_symmetric,
  cartesian_closed,
  compact_symmetric,
};

inline constexpr int mode_count = 9;

// lo <= hi in the mode lattice.
bool mode_leq(Mode lo, Mode hi);

std::string_view mode_name(Mode m);
std::optional<Mode> mode_from_name(std::string_view name);

// Modes with a (symmetric) braiding, a closed structure, cartesian
// structure, duals.
bool mode_has_braiding(Mode m);
bool mode_braiding_symmetric(Mode m);
bool mode_has_closed(Mode m);
bool mode_has_cartesian(Mode m);
bool mode_has_duals(Mode m);

} // namespace freecat
