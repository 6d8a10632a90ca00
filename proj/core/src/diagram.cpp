#include "freecat/diagram.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <unordered_map>

#include "freecat/error.hpp"
#include "freecat/rewrite.hpp"

#include "json.hpp"

namespace freecat {

namespace {

struct WireEnd {
  std::size_t node = 0;
  TypePtr atom;
};

struct Exporter {
  const Signature& sig;
  const std::unordered_map<const MorTerm*, DomCod>& typing;
  DiagramGraph g;
  bool compact = false;

  std::size_t add_node(const std::string& kind, const std::string& label) {
    std::size_t id = g.nodes.size();
    g.nodes.push_back({id, kind, label});
    return id;
  }

  std::string edge_dir(const TypePtr& atom) const {
    return (compact && atom->tag == TypeTag::Dual) ? "up" : "down";
  }

  void add_edge(const WireEnd& from, std::size_t to) {
    g.edges.push_back(
        {from.node, to, print_type(from.atom, sig.mode), edge_dir(from.atom)});
  }

  const DomCod& types_of(const MorPtr& t) const {
    auto it = typing.find(t.get());
    if (it == typing.end())
      fail_internal("diagram export lost the typing of a subterm");
    return it->second;
  }

  std::vector<TypePtr> atoms_of(const TypePtr& ty) const {
    return flatten_type(ty);
  }

  // Feed `ins` into a fresh node and return its outputs.
  std::vector<WireEnd> through_node(const std::string& kind,
                                    const std::string& label,
                                    const std::vector<WireEnd>& ins,
                                    const std::vector<TypePtr>& out_atoms) {
    std::size_t id = add_node(kind, label);
    for (const auto& w : ins) add_edge(w, id);
    std::vector<WireEnd> outs;
    outs.reserve(out_atoms.size());
    for (const auto& a : out_atoms) outs.push_back({id, a});
    return outs;
  }

  std::vector<WireEnd> walk(const MorPtr& t, std::vector<WireEnd> ins) {
    const DomCod& dc = types_of(t);
    switch (t->tag) {
    case MorTag::Gen:
      return through_node("box", t->gen_name, ins, atoms_of(dc.cod));
    case MorTag::Id:
    case MorTag::Assoc:
    case MorTag::Unassoc:
    case MorTag::LeftU:
    case MorTag::UnleftU:
    case MorTag::RightU:
    case MorTag::UnrightU:
      return ins; // plumbing carries the same atoms
    case MorTag::Seq:
      return walk(t->subs[1], walk(t->subs[0], std::move(ins)));
    case MorTag::Par: {
      std::size_t n_left = atoms_of(types_of(t->subs[0]).dom).size();
      std::vector<WireEnd> left(ins.begin(), ins.begin() + n_left);
      std::vector<WireEnd> right(ins.begin() + n_left, ins.end());
      std::vector<WireEnd> out = walk(t->subs[0], std::move(left));
      for (auto& w : walk(t->subs[1], std::move(right)))
        out.push_back(std::move(w));
      return out;
    }
    case MorTag::Braid:
    case MorTag::BraidInv: {
      std::string label = t->tag == MorTag::Braid ? "braid" : "braidinv";
      return through_node("braid-crossing", label, ins, atoms_of(dc.cod));
    }
    case MorTag::Cup:
      return through_node("cup", "cup", ins, atoms_of(dc.cod));
    case MorTag::Cap:
      return through_node("cap", "cap", ins, {});
    case MorTag::Dup:
      return through_node("dup", "dup", ins, atoms_of(dc.cod));
    case MorTag::Del:
      return through_node("del", "del", ins, {});
    case MorTag::Pair: {
      // duplication, then the two components side by side
      std::vector<TypePtr> twice = atoms_of(dc.dom);
      std::size_t n = twice.size();
      std::vector<TypePtr> doubled = twice;
      for (const auto& a : twice) doubled.push_back(a);
      std::vector<WireEnd> d = through_node("dup", "dup", ins, doubled);
      std::vector<WireEnd> first(d.begin(), d.begin() + n);
      std::vector<WireEnd> second(d.begin() + n, d.end());
      std::vector<WireEnd> out = walk(t->subs[0], std::move(first));
      for (auto& w : walk(t->subs[1], std::move(second)))
        out.push_back(std::move(w));
      return out;
    }
    case MorTag::Proj1:
    case MorTag::Proj2: {
      std::size_t keep_left =
          atoms_of(t->types[0]).size(); // atoms of the left factor
      std::vector<WireEnd> kept, dropped;
      for (std::size_t i = 0; i < ins.size(); ++i) {
        bool left_side = i < keep_left;
        bool keep = (t->tag == MorTag::Proj1) ? left_side : !left_side;
        (keep ? kept : dropped).push_back(ins[i]);
      }
      if (!dropped.empty()) through_node("del", "del", dropped, {});
      return kept;
    }
    case MorTag::Ev: {
      const TypePtr& x = t->types[0];
      const TypePtr& y = t->types[1];
      if (compact) {
        // X (x) (X* (x) Y): cap the X/X* wires, pass Y
        std::size_t nx = atoms_of(x).size();
        std::vector<WireEnd> capped(ins.begin(), ins.begin() + 2 * nx);
        std::vector<WireEnd> pass(ins.begin() + 2 * nx, ins.end());
        through_node("cap", "cap", capped, {});
        return pass;
      }
      return through_node("box", "ev", ins, atoms_of(y));
    }
    case MorTag::Uncurry: {
      const DomCod& inner = types_of(t->subs[0]);
      TypePtr x, z;
      if (!split_hom_type(inner.cod, sig.mode, x, z))
        fail_internal("uncurried subterm has no function-type codomain");
      std::size_t nx = atoms_of(x).size();
      std::vector<WireEnd> xs(ins.begin(), ins.begin() + nx);
      std::vector<WireEnd> ys(ins.begin() + nx, ins.end());
      std::vector<WireEnd> gouts = walk(t->subs[0], std::move(ys));
      if (compact) {
        std::vector<WireEnd> capped = xs;
        for (std::size_t i = 0; i < nx; ++i) capped.push_back(gouts[i]);
        through_node("cap", "cap", capped, {});
        return std::vector<WireEnd>(gouts.begin() + nx, gouts.end());
      }
      std::vector<WireEnd> evin = xs;
      for (auto& w : gouts) evin.push_back(std::move(w));
      return through_node("box", "ev", evin, atoms_of(z));
    }
    case MorTag::Curry: {
      const DomCod& inner = types_of(t->subs[0]);
      // body: X (x) Y -> Z with our input carrying Y
      std::vector<TypePtr> dom_atoms = atoms_of(inner.dom);
      std::size_t ny = ins.size();
      std::size_t nx = dom_atoms.size() - ny;
      std::vector<TypePtr> x_atoms(dom_atoms.begin(), dom_atoms.begin() + nx);
      if (compact) {
        // cup produces the bent duals and the X wires feeding the body
        std::vector<TypePtr> cup_out;
        for (const auto& a : x_atoms) cup_out.push_back(t_dual(a));
        for (const auto& a : x_atoms) cup_out.push_back(a);
        std::vector<WireEnd> co = through_node("cup", "cup", {}, cup_out);
        std::vector<WireEnd> duals(co.begin(), co.begin() + nx);
        std::vector<WireEnd> body_in(co.begin() + nx, co.end());
        for (auto& w : ins) body_in.push_back(std::move(w));
        std::vector<WireEnd> bo = walk(t->subs[0], std::move(body_in));
        for (auto& w : bo) duals.push_back(std::move(w));
        return duals;
      }
      return bubbled(t->subs[0], "curry", std::move(ins), x_atoms,
                     types_of(t).cod);
    }
    case MorTag::Name: {
      const DomCod& inner = types_of(t->subs[0]);
      std::vector<TypePtr> x_atoms = atoms_of(inner.dom);
      if (compact) {
        std::vector<TypePtr> cup_out;
        for (const auto& a : x_atoms) cup_out.push_back(t_dual(a));
        for (const auto& a : x_atoms) cup_out.push_back(a);
        std::vector<WireEnd> co =
            through_node("cup", "cup", {}, cup_out);
        std::vector<WireEnd> duals(co.begin(), co.begin() + x_atoms.size());
        std::vector<WireEnd> body_in(co.begin() + x_atoms.size(), co.end());
        std::vector<WireEnd> bo = walk(t->subs[0], std::move(body_in));
        for (auto& w : bo) duals.push_back(std::move(w));
        return duals;
      }
      return bubbled(t->subs[0], "name", std::move(ins), x_atoms,
                     types_of(t).cod);
    }
    }
    fail_internal("unreachable morphism tag in diagram export");
  }

  // Draw `body` inside a bubble: the bubble takes the outer inputs and emits
  // the function-type wire; a clasp gathers the body's outputs and re-enters
  // the bent `x_atoms` wires into the body.
  std::vector<WireEnd> bubbled(const MorPtr& body, const std::string& label,
                               std::vector<WireEnd> outer_ins,
                               const std::vector<TypePtr>& x_atoms,
                               const TypePtr& result_ty) {
    std::size_t bubble = add_node("bubble", label);
    for (const auto& w : outer_ins) add_edge(w, bubble);
    std::size_t clasp = add_node("clasp", "clasp");
    std::vector<WireEnd> body_in;
    body_in.reserve(x_atoms.size() + outer_ins.size());
    for (const auto& a : x_atoms) body_in.push_back({clasp, a});
    const DomCod& bt = types_of(body);
    std::vector<TypePtr> carried = flatten_type(bt.dom);
    for (std::size_t i = x_atoms.size(); i < carried.size(); ++i)
      body_in.push_back({bubble, carried[i]});
    std::vector<WireEnd> body_out = walk(body, std::move(body_in));
    for (const auto& w : body_out) add_edge(w, clasp);
    std::vector<WireEnd> outs;
    for (const auto& a : flatten_type(result_ty)) outs.push_back({bubble, a});
    return outs;
  }

  void layer() {
    // Longest path over down-edges whose source is not a clasp (those bend
    // back into the enclosed diagram).
    std::size_t n = g.nodes.size();
    std::vector<std::vector<std::size_t>> preds(n);
    for (const auto& e : g.edges) {
      if (e.dir != "down") continue;
      if (g.nodes[e.from].kind == "clasp") continue;
      preds[e.to].push_back(e.from);
    }
    std::vector<int> depth(n, -1);
    std::function<int(std::size_t)> dfs = [&](std::size_t v) -> int {
      if (depth[v] >= 0) return depth[v];
      depth[v] = 0; // breaks accidental cycles defensively
      int d = 0;
      for (std::size_t p : preds[v]) d = std::max(d, dfs(p) + 1);
      depth[v] = d;
      return d;
    };
    int maxd = 0;
    for (std::size_t v = 0; v < n; ++v) maxd = std::max(maxd, dfs(v));
    // all output ports share the final layer
    bool any_out = false;
    for (const auto& nd : g.nodes)
      if (nd.kind == "output-port") any_out = true;
    if (any_out) {
      ++maxd;
      for (const auto& nd : g.nodes)
        if (nd.kind == "output-port") depth[nd.id] = maxd;
    }
    g.layers.assign(static_cast<std::size_t>(maxd) + 1, {});
    for (const auto& nd : g.nodes)
      g.layers[static_cast<std::size_t>(depth[nd.id])].push_back(nd.id);
    while (!g.layers.empty() && g.layers.back().empty()) g.layers.pop_back();
    while (!g.layers.empty() && g.layers.front().empty())
      g.layers.erase(g.layers.begin());
  }
};

} // namespace

DiagramGraph export_diagram(const MorPtr& t, const Signature& sig) {
  MorPtr c = canonicalize_mor_types(t, sig.mode);
  auto typing = infer_all(c, sig);
  Exporter ex{sig, typing, {}, mode_has_duals(sig.mode)};
  const DomCod& dc = ex.types_of(c);
  std::vector<WireEnd> ins;
  for (const auto& a : flatten_type(dc.dom)) {
    std::size_t id = ex.add_node("input-port", print_type(a, sig.mode));
    ins.push_back({id, a});
  }
  std::vector<WireEnd> outs = ex.walk(c, std::move(ins));
  for (const auto& w : outs) {
    std::size_t id = ex.add_node("output-port", print_type(w.atom, sig.mode));
    ex.add_edge(w, id);
  }
  ex.layer();
  return std::move(ex.g);
}

// --- rendering ----------------------------------------------------------------

namespace {

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
    case '&': out += "&amp;"; break;
    case '<': out += "&lt;"; break;
    case '>': out += "&gt;"; break;
    case '"': out += "&quot;"; break;
    default: out += c;
    }
  }
  return out;
}

std::string render_json(const DiagramGraph& g) {
  nlohmann::json j;
  j["nodes"] = nlohmann::json::array();
  for (const auto& n : g.nodes)
    j["nodes"].push_back(
        {{"id", n.id}, {"kind", n.kind}, {"label", n.label}});
  j["edges"] = nlohmann::json::array();
  for (const auto& e : g.edges)
    j["edges"].push_back(
        {{"from", e.from}, {"to", e.to}, {"type", e.type}, {"dir", e.dir}});
  j["layers"] = nlohmann::json::array();
  for (const auto& l : g.layers) j["layers"].push_back(l);
  return j.dump(2) + "\n";
}

std::string dot_shape(const std::string& kind) {
  if (kind == "box") return "box";
  if (kind == "braid-crossing") return "diamond";
  if (kind == "cup" || kind == "cap") return "ellipse";
  if (kind == "dup") return "triangle";
  if (kind == "del") return "invtriangle";
  if (kind == "input-port" || kind == "output-port") return "plaintext";
  if (kind == "clasp") return "point";
  if (kind == "bubble") return "ellipse";
  return "box";
}

std::string render_dot(const DiagramGraph& g) {
  std::ostringstream os;
  os << "digraph diagram {\n  rankdir=TB;\n";
  for (const auto& n : g.nodes) {
    os << "  n" << n.id << " [shape=" << dot_shape(n.kind) << ", label=\""
       << n.label << "\"";
    if (n.kind == "bubble") os << ", style=dashed";
    os << "];\n";
  }
  for (std::size_t i = 0; i < g.layers.size(); ++i) {
    os << "  { rank=same;";
    for (std::size_t id : g.layers[i]) os << " n" << id << ";";
    os << " }\n";
  }
  for (const auto& e : g.edges) {
    os << "  n" << e.from << " -> n" << e.to << " [label=\"" << e.type
       << "\"";
    if (e.dir == "up") os << ", dir=back, style=dashed";
    os << "];\n";
  }
  os << "}\n";
  return os.str();
}

std::string render_svg(const DiagramGraph& g) {
  constexpr int cell_w = 150, cell_h = 90, node_w = 110, node_h = 34;
  constexpr int margin = 40;
  std::map<std::size_t, std::pair<int, int>> pos; // id -> center x, y
  std::size_t widest = 1;
  for (std::size_t li = 0; li < g.layers.size(); ++li) {
    widest = std::max(widest, g.layers[li].size());
    for (std::size_t i = 0; i < g.layers[li].size(); ++i) {
      int cx = margin + static_cast<int>(i) * cell_w + node_w / 2;
      int cy = margin + static_cast<int>(li) * cell_h + node_h / 2;
      pos[g.layers[li][i]] = {cx, cy};
    }
  }
  int width = 2 * margin + static_cast<int>(widest) * cell_w;
  int height = 2 * margin +
               std::max<int>(1, static_cast<int>(g.layers.size())) * cell_h;
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
     << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " "
     << height << "\">\n";
  for (const auto& e : g.edges) {
    auto f = pos.find(e.from);
    auto t = pos.find(e.to);
    if (f == pos.end() || t == pos.end()) continue;
    int x1 = f->second.first, y1 = f->second.second + node_h / 2;
    int x2 = t->second.first, y2 = t->second.second - node_h / 2;
    os << "  <line x1=\"" << x1 << "\" y1=\"" << y1 << "\" x2=\"" << x2
       << "\" y2=\"" << y2 << "\" stroke=\""
       << (e.dir == "up" ? "#aa3333" : "#333333") << "\" stroke-width=\"1.5\""
       << (e.dir == "up" ? " stroke-dasharray=\"5,3\"" : "") << "/>\n";
    os << "  <text x=\"" << (x1 + x2) / 2 + 4 << "\" y=\"" << (y1 + y2) / 2
       << "\" font-size=\"11\" fill=\"#555555\">" << xml_escape(e.type)
       << "</text>\n";
  }
  for (const auto& n : g.nodes) {
    auto p = pos.find(n.id);
    if (p == pos.end()) continue;
    int cx = p->second.first, cy = p->second.second;
    bool round = n.kind == "cup" || n.kind == "cap" || n.kind == "bubble" ||
                 n.kind == "clasp" || n.kind == "braid-crossing";
    if (round) {
      os << "  <ellipse cx=\"" << cx << "\" cy=\"" << cy << "\" rx=\""
         << node_w / 2 << "\" ry=\"" << node_h / 2
         << "\" fill=\"#ffffff\" stroke=\"#333333\""
         << (n.kind == "bubble" ? " stroke-dasharray=\"4,3\"" : "") << "/>\n";
    } else {
      os << "  <rect x=\"" << cx - node_w / 2 << "\" y=\"" << cy - node_h / 2
         << "\" width=\"" << node_w << "\" height=\"" << node_h
         << "\" fill=\"#ffffff\" stroke=\"#333333\""
         << (n.kind == "input-port" || n.kind == "output-port"
                 ? " stroke-dasharray=\"2,2\""
                 : "")
         << "/>\n";
    }
    os << "  <text x=\"" << cx << "\" y=\"" << cy + 4
       << "\" font-size=\"12\" text-anchor=\"middle\">" << xml_escape(n.label)
       << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

} // namespace

std::string render_diagram(const DiagramGraph& g, std::string_view format) {
  if (format == "json") return render_json(g);
  if (format == "dot") return render_dot(g);
  if (format == "svg") return render_svg(g);
  fail_invalid("unknown diagram format '" + std::string(format) +
               "'; expected json, dot, or svg");
}

} // namespace freecat
