#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "freecat/signature.hpp"
#include "freecat/term.hpp"

namespace freecat {

// ---------------------------------------------------------------------------
// Static string-diagram export.  Nodes are generator boxes, crossings, arcs
// and ports; edges are wires labeled with the atom type they carry.  Time
// flows down the page: an edge normally runs from the layer above to the
// layer below, and `dir` is "up" only on Dual-typed wires in compact mode.
//
// Conventions:
//   - identity wires and associator/unitor plumbing are elided;
//   - Braid / BraidInv emit one braid-crossing node;
//   - Cup / Cap emit cup / cap nodes (arcs);
//   - Pair(f,g) draws as duplication followed by f and g side by side, and
//     projections as deletion of the dropped factor;
//   - in compact mode Curry/Name/Ev/Uncurry decompose into cup/cap wiring;
//     in the other closed modes Curry(f) and Name(f) draw f inside a
//     `bubble` node, with the bent input wires and the result wire of f
//     gathered by a `clasp` node ("a decoration");
//   - layers are a topological layering over down-edges; edges leaving a
//     clasp re-enter the enclosed diagram and are ignored when layering.
// ---------------------------------------------------------------------------

struct DiagNode {
  std::size_t id = 0;
  std::string kind;  // box | braid-crossing | cup | cap | dup | del |
                     // input-port | output-port | clasp | bubble
  std::string label;
};

struct DiagEdge {
  std::size_t from = 0;
  std::size_t to = 0;
  std::string type; // printed atom type carried by the wire
  std::string dir;  // "down" | "up"
};

struct DiagramGraph {
  std::vector<DiagNode> nodes;
  std::vector<DiagEdge> edges;
  std::vector<std::vector<std::size_t>> layers;
};

DiagramGraph export_diagram(const MorPtr& t, const Signature& sig);

// format: "json" (canonical), "dot", or "svg"; identical input produces
// byte-identical output.
std::string render_diagram(const DiagramGraph& g, std::string_view format);

} // namespace freecat
