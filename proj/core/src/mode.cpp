#include "freecat/mode.hpp"

#include <array>

namespace freecat {

namespace {

using Table = std::array<std::array<bool, mode_count>, mode_count>;

constexpr int idx(Mode m) { return static_cast<int>(m); }

Table build_leq() {
  Table t{};
  for (int i = 0; i < mode_count; ++i) t[i][i] = true;
  auto edge = [&](Mode lo, Mode hi) { t[idx(lo)][idx(hi)] = true; };
  edge(Mode::monoidal, Mode::braided);
  edge(Mode::monoidal, Mode::closed_monoidal);
  edge(Mode::braided, Mode::symmetric);
  edge(Mode::braided, Mode::closed_braided);
  edge(Mode::symmetric, Mode::cartesian);
  edge(Mode::symmetric, Mode::closed_symmetric);
  edge(Mode::cartesian, Mode::cartesian_closed);
  edge(Mode::closed_monoidal, Mode::closed_braided);
  edge(Mode::closed_braided, Mode::closed_symmetric);
  edge(Mode::closed_symmetric, Mode::cartesian_closed);
  edge(Mode::closed_symmetric, Mode::compact_symmetric);
  // transitive closure
  for (int k = 0; k < mode_count; ++k)
    for (int i = 0; i < mode_count; ++i)
      for (int j = 0; j < mode_count; ++j)
        if (t[i][k] && t[k][j]) t[i][j] = true;
  return t;
}

const Table& leq_table() {
  static const Table t = build_leq();
  return t;
}

struct NamePair {
  Mode mode;
  std::string_view name;
};

constexpr std::array<NamePair, mode_count> names{{
    {Mode::monoidal, "monoidal"},
    {Mode::braided, "braided"},
    {Mode::symmetric, "symmetric"},
    {Mode::cartesian, "cartesian"},
    {Mode::closed_monoidal, "closed-monoidal"},
    {Mode::closed_braided, "closed-braided"},
    {Mode::closed_symmetric, "closed-symmetric"},
    {Mode::cartesian_closed, "cartesian-closed"},
    {Mode::compact_symmetric, "compact-symmetric"},
}};

} // namespace

bool mode_leq(Mode lo, Mode hi) { return leq_table()[idx(lo)][idx(hi)]; }

std::string_view mode_name(Mode m) {
  for (const auto& p : names)
    if (p.mode == m) return p.name;
  return "?";
}

std::optional<Mode> mode_from_name(std::string_view name) {
  for (const auto& p : names)
    if (p.name == name) return p.mode;
  return std::nullopt;
}

bool mode_has_braiding(Mode m) { return mode_leq(Mode::braided, m); }

bool mode_braiding_symmetric(Mode m) { return mode_leq(Mode::symmetric, m); }

bool mode_has_closed(Mode m) { return mode_leq(Mode::closed_monoidal, m); }

bool mode_has_cartesian(Mode m) { return mode_leq(Mode::cartesian, m); }

bool mode_has_duals(Mode m) { return mode_leq(Mode::compact_symmetric, m); }

} // namespace freecat
