#include "freecat/strict.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>

#include "freecat/error.hpp"

namespace freecat {

bool in_diagram_fragment(const MorPtr& t) {
  switch (t->tag) {
  case MorTag::Gen:
  case MorTag::Id:
  case MorTag::Seq:
  case MorTag::Par:
  case MorTag::Assoc:
  case MorTag::Unassoc:
  case MorTag::LeftU:
  case MorTag::UnleftU:
  case MorTag::RightU:
  case MorTag::UnrightU:
  case MorTag::Braid:
  case MorTag::BraidInv:
    for (const auto& s : t->subs)
      if (!in_diagram_fragment(s)) return false;
    return true;
  default:
    return false;
  }
}

bool term_braid_free(const MorPtr& t) {
  if (t->tag == MorTag::Braid || t->tag == MorTag::BraidInv) return false;
  for (const auto& s : t->subs)
    if (!term_braid_free(s)) return false;
  return true;
}

namespace {

bool is_identity_perm(const std::vector<std::size_t>& p) {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] != i) return false;
  return true;
}

void apply_perm_inplace(const std::vector<std::size_t>& p,
                        std::vector<TypePtr>& v) {
  std::vector<TypePtr> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[p[i]] = v[i];
  v = std::move(out);
}

// Push a permutation layer, fusing with a preceding one and dropping
// identities.
void push_perm(std::vector<StrictLayer>& layers, std::vector<std::size_t> p) {
  if (!layers.empty() && std::holds_alternative<PermLayer>(layers.back())) {
    const auto& prev = std::get<PermLayer>(layers.back()).perm;
    std::vector<std::size_t> fused(prev.size());
    for (std::size_t i = 0; i < prev.size(); ++i) fused[i] = p[prev[i]];
    layers.pop_back();
    p = std::move(fused);
  }
  if (!is_identity_perm(p)) layers.emplace_back(PermLayer{std::move(p)});
}

struct StrictBuilder {
  const Signature& sig;
  const std::unordered_map<const MorTerm*, DomCod>& types;
  std::vector<TypePtr> cur;
  std::vector<StrictLayer> layers;

  std::size_t atom_count(const TypePtr& t) const {
    return flatten_type(t).size();
  }

  void block_swap(std::size_t lo, std::size_t a, std::size_t b) {
    if (a == 0 || b == 0) return;
    std::vector<std::size_t> p(cur.size());
    std::iota(p.begin(), p.end(), std::size_t{0});
    for (std::size_t i = 0; i < a; ++i) p[lo + i] = lo + b + i;
    for (std::size_t j = 0; j < b; ++j) p[lo + a + j] = lo + j;
    apply_perm_inplace(p, cur);
    push_perm(layers, std::move(p));
  }

  void emit(const MorPtr& t, std::size_t lo) {
    switch (t->tag) {
    case MorTag::Gen: {
      const DomCod& dc = types.at(t.get());
      std::vector<TypePtr> cod_atoms = flatten_type(dc.cod);
      std::size_t k = flatten_type(dc.dom).size();
      layers.emplace_back(BlockLayer{lo, t->gen_name});
      cur.erase(cur.begin() + static_cast<std::ptrdiff_t>(lo),
                cur.begin() + static_cast<std::ptrdiff_t>(lo + k));
      cur.insert(cur.begin() + static_cast<std::ptrdiff_t>(lo),
                 cod_atoms.begin(), cod_atoms.end());
      break;
    }
    case MorTag::Id:
    case MorTag::Assoc:
    case MorTag::Unassoc:
    case MorTag::LeftU:
    case MorTag::UnleftU:
    case MorTag::RightU:
    case MorTag::UnrightU:
      break; // identity on atoms
    case MorTag::Braid:
      block_swap(lo, atom_count(t->types[0]), atom_count(t->types[1]));
      break;
    case MorTag::BraidInv:
      // domain is Y*X for BraidInv[X,Y]
      block_swap(lo, atom_count(t->types[1]), atom_count(t->types[0]));
      break;
    case MorTag::Seq:
      emit(t->subs[0], lo);
      emit(t->subs[1], lo);
      break;
    case MorTag::Par: {
      emit(t->subs[0], lo);
      const DomCod& f = types.at(t->subs[0].get());
      emit(t->subs[1], lo + flatten_type(f.cod).size());
      break;
    }
    default:
      fail_invalid("strictification only handles generators, identities, "
                   "composition, tensor, structural isomorphisms and "
                   "braidings; found '" +
                   std::string(mor_tag_name(t->tag)) + "'");
    }
  }
};

} // namespace

StrictTerm strictify(const MorPtr& t, const Signature& sig) {
  auto types = infer_all(t, sig);
  StrictTerm st;
  const DomCod& root = types.at(t.get());
  st.dom_atoms = flatten_type(root.dom);
  st.cod_atoms = flatten_type(root.cod);
  StrictBuilder b{sig, types, st.dom_atoms, {}};
  b.emit(t, 0);
  st.layers = std::move(b.layers);
  return st;
}

std::string print_strict(const StrictTerm& st, Mode mode) {
  std::ostringstream os;
  auto atoms = [&](const std::vector<TypePtr>& v) {
    os << "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) os << ", ";
      os << print_type(v[i], mode);
    }
    os << "]";
  };
  os << "dom ";
  atoms(st.dom_atoms);
  os << "\n";
  for (const auto& layer : st.layers) {
    if (std::holds_alternative<PermLayer>(layer)) {
      os << "perm (";
      const auto& p = std::get<PermLayer>(layer).perm;
      for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) os << " ";
        os << p[i];
      }
      os << ")\n";
    } else {
      const auto& blk = std::get<BlockLayer>(layer);
      os << "gen " << blk.gen << " @" << blk.offset << "\n";
    }
  }
  os << "cod ";
  atoms(st.cod_atoms);
  os << "\n";
  return os.str();
}

WireDiagram diagram_of_strict(const StrictTerm& st, const Signature& sig) {
  WireDiagram d;
  d.input_atoms = st.dom_atoms;
  d.output_atoms = st.cod_atoms;
  std::size_t n = st.dom_atoms.size();
  d.n_wires = n;
  std::vector<std::size_t> cur(n);
  std::iota(cur.begin(), cur.end(), std::size_t{0});
  for (const auto& layer : st.layers) {
    if (std::holds_alternative<PermLayer>(layer)) {
      const auto& p = std::get<PermLayer>(layer).perm;
      if (p.size() != cur.size())
        fail_invalid("permutation layer width does not match the wires");
      std::vector<std::size_t> next(cur.size());
      for (std::size_t i = 0; i < cur.size(); ++i) next[p[i]] = cur[i];
      cur = std::move(next);
    } else {
      const auto& blk = std::get<BlockLayer>(layer);
      const GenDecl* g = sig.find_gen(blk.gen);
      if (!g) fail_type("unknown generator '" + blk.gen + "'");
      std::size_t k =
          flatten_type(canonical_type(g->dom, sig.mode)).size();
      std::size_t m =
          flatten_type(canonical_type(g->cod, sig.mode)).size();
      if (blk.offset + k > cur.size())
        fail_invalid("block layer exceeds the wires");
      WireBox box;
      box.gen = blk.gen;
      box.ins.assign(cur.begin() + static_cast<std::ptrdiff_t>(blk.offset),
                     cur.begin() +
                         static_cast<std::ptrdiff_t>(blk.offset + k));
      box.outs.resize(m);
      for (std::size_t i = 0; i < m; ++i) box.outs[i] = d.n_wires++;
      cur.erase(cur.begin() + static_cast<std::ptrdiff_t>(blk.offset),
                cur.begin() + static_cast<std::ptrdiff_t>(blk.offset + k));
      cur.insert(cur.begin() + static_cast<std::ptrdiff_t>(blk.offset),
                 box.outs.begin(), box.outs.end());
      d.boxes.push_back(std::move(box));
    }
  }
  d.outputs = cur;
  return d;
}

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

struct CanonResult {
  std::string key;
  std::vector<WireBox> boxes;
  std::vector<std::size_t> depths;
  std::vector<std::size_t> outputs;
};

// Renders the canonical encoding for one fixed ordering of the tied
// zero-input boxes. `tie_order` lists the depth-1 zero-input boxes of each
// tied group in the order to use.
CanonResult render_canonical(
    const WireDiagram& d,
    const std::map<std::size_t, std::vector<std::size_t>>& by_depth,
    const std::map<std::string, std::vector<std::size_t>>& tie_order,
    const std::vector<std::string>& dom_prints,
    const std::vector<std::string>& cod_prints) {
  constexpr std::size_t unset = static_cast<std::size_t>(-1);
  std::size_t n_in = d.input_atoms.size();
  std::vector<std::size_t> new_id(d.n_wires, unset);
  for (std::size_t i = 0; i < n_in; ++i) new_id[i] = i;
  std::size_t counter = n_in;

  CanonResult res;
  std::ostringstream os;
  os << "in[";
  for (std::size_t i = 0; i < dom_prints.size(); ++i) {
    if (i) os << ",";
    os << dom_prints[i];
  }
  os << "];";

  for (const auto& [depth, members] : by_depth) {
    // Sort by (canonical input wires, generator name); tied zero-input
    // groups follow the prescribed order.
    struct Entry {
      std::vector<std::size_t> key_ins;
      std::string name;
      std::size_t box = 0;
    };
    std::vector<Entry> entries;
    std::vector<std::string> tied_seen;
    for (std::size_t b : members) {
      const WireBox& box = d.boxes[b];
      if (box.ins.empty() && tie_order.count(box.gen)) {
        // expand the whole tied group once, in prescribed order
        if (std::find(tied_seen.begin(), tied_seen.end(), box.gen) !=
            tied_seen.end())
          continue;
        tied_seen.push_back(box.gen);
        for (std::size_t tb : tie_order.at(box.gen))
          entries.push_back({{}, box.gen, tb});
        continue;
      }
      Entry e;
      e.name = box.gen;
      e.key_ins.reserve(box.ins.size());
      for (std::size_t w : box.ins) e.key_ins.push_back(new_id[w]);
      e.box = b;
      entries.push_back(std::move(e));
    }
    std::stable_sort(entries.begin(), entries.end(),
                     [](const Entry& a, const Entry& b) {
                       if (a.key_ins != b.key_ins)
                         return a.key_ins < b.key_ins;
                       return a.name < b.name;
                     });
    os << "L" << depth << ":";
    for (const Entry& e : entries) {
      const WireBox& box = d.boxes[e.box];
      WireBox canon;
      canon.gen = box.gen;
      for (std::size_t w : box.ins) canon.ins.push_back(new_id[w]);
      for (std::size_t w : box.outs) {
        new_id[w] = counter++;
        canon.outs.push_back(new_id[w]);
      }
      os << box.gen << "(";
      for (std::size_t i = 0; i < canon.ins.size(); ++i) {
        if (i) os << " ";
        os << canon.ins[i];
      }
      os << ")->(";
      for (std::size_t i = 0; i < canon.outs.size(); ++i) {
        if (i) os << " ";
        os << canon.outs[i];
      }
      os << ");";
      res.boxes.push_back(std::move(canon));
      res.depths.push_back(depth);
    }
  }

  os << "out[";
  for (std::size_t i = 0; i < d.outputs.size(); ++i) {
    if (i) os << ",";
    os << new_id[d.outputs[i]];
    res.outputs.push_back(new_id[d.outputs[i]]);
  }
  os << "];cod[";
  for (std::size_t i = 0; i < cod_prints.size(); ++i) {
    if (i) os << ",";
    os << cod_prints[i];
  }
  os << "]";
  res.key = os.str();
  return res;
}

} // namespace

SymNF symmetric_normal_form(const StrictTerm& st, const Signature& sig,
                            std::size_t tie_budget) {
  WireDiagram d = diagram_of_strict(st, sig);
  const Mode mode = sig.mode;

  SymNF nf;
  for (const auto& a : st.dom_atoms)
    nf.dom_atoms.push_back(print_type(a, mode));
  for (const auto& a : st.cod_atoms)
    nf.cod_atoms.push_back(print_type(a, mode));
  nf.dom_atom_types = st.dom_atoms;
  nf.cod_atom_types = st.cod_atoms;

  // Depths: longest path from the inputs. Boxes appear in topological
  // order by construction.
  std::vector<std::size_t> wire_depth(d.n_wires, 0);
  std::vector<std::size_t> box_depth(d.boxes.size(), 1);
  for (std::size_t b = 0; b < d.boxes.size(); ++b) {
    std::size_t depth = 0;
    for (std::size_t w : d.boxes[b].ins)
      depth = std::max(depth, wire_depth[w]);
    box_depth[b] = depth + 1;
    for (std::size_t w : d.boxes[b].outs) wire_depth[w] = depth + 1;
  }
  std::map<std::size_t, std::vector<std::size_t>> by_depth;
  for (std::size_t b = 0; b < d.boxes.size(); ++b)
    by_depth[box_depth[b]].push_back(b);

  // Floating components: a box whose component never reaches the boundary.
  {
    std::size_t nodes = d.n_wires + d.boxes.size();
    UnionFind uf(nodes);
    for (std::size_t b = 0; b < d.boxes.size(); ++b) {
      for (std::size_t w : d.boxes[b].ins) uf.unite(d.n_wires + b, w);
      for (std::size_t w : d.boxes[b].outs) uf.unite(d.n_wires + b, w);
    }
    std::vector<bool> anchored(nodes, false);
    std::vector<std::size_t> roots;
    for (std::size_t i = 0; i < d.input_atoms.size(); ++i)
      roots.push_back(uf.find(i));
    for (std::size_t w : d.outputs) roots.push_back(uf.find(w));
    for (std::size_t b = 0; b < d.boxes.size(); ++b) {
      std::size_t r = uf.find(d.n_wires + b);
      if (std::find(roots.begin(), roots.end(), r) == roots.end()) {
        nf.has_floating = true;
        break;
      }
    }
  }

  // Tied groups: zero-input boxes sharing a name (all at depth 1). Their
  // outputs are interchangeable; enumerate orders and keep the least key.
  std::map<std::string, std::vector<std::size_t>> groups;
  for (std::size_t b = 0; b < d.boxes.size(); ++b)
    if (d.boxes[b].ins.empty()) groups[d.boxes[b].gen].push_back(b);
  for (auto it = groups.begin(); it != groups.end();) {
    if (it->second.size() < 2)
      it = groups.erase(it);
    else
      ++it;
  }
  std::size_t combos = 1;
  for (const auto& [name, members] : groups) {
    for (std::size_t k = 2; k <= members.size(); ++k) {
      if (combos > tie_budget / k)
        fail_invalid("too many interchangeable zero-input '" + name +
                     "' boxes to canonicalize");
      combos *= k;
    }
  }

  std::map<std::string, std::vector<std::size_t>> arrangement = groups;
  std::optional<CanonResult> best;
  while (true) {
    CanonResult cand = render_canonical(d, by_depth, arrangement,
                                        nf.dom_atoms, nf.cod_atoms);
    if (!best || cand.key < best->key) best = std::move(cand);
    // odometer over the per-group permutations
    bool advanced = false;
    for (auto& [name, members] : arrangement) {
      if (std::next_permutation(members.begin(), members.end())) {
        advanced = true;
        break;
      }
      // wrapped; carry to the next group
    }
    if (!advanced) break;
  }

  nf.boxes = std::move(best->boxes);
  nf.box_depths = std::move(best->depths);
  nf.outputs = std::move(best->outputs);
  nf.key = std::move(best->key);
  return nf;
}

SymNF symmetric_normal_form(const MorPtr& t, const Signature& sig,
                            std::size_t tie_budget) {
  return symmetric_normal_form(strictify(t, sig), sig, tie_budget);
}

StrictTerm snf_to_strict(const SymNF& nf, const Signature& sig) {
  StrictTerm st;
  st.dom_atoms = nf.dom_atom_types;
  st.cod_atoms = nf.cod_atom_types;
  std::vector<std::size_t> cur(nf.dom_atom_types.size());
  std::iota(cur.begin(), cur.end(), std::size_t{0});

  auto route = [&](const std::vector<std::size_t>& want_front) {
    // Target arrangement: want_front in order, then the rest preserving
    // relative order. Returns the one-line permutation (or identity).
    std::vector<std::size_t> target;
    target.reserve(cur.size());
    target.insert(target.end(), want_front.begin(), want_front.end());
    for (std::size_t w : cur)
      if (std::find(want_front.begin(), want_front.end(), w) ==
          want_front.end())
        target.push_back(w);
    std::vector<std::size_t> p(cur.size());
    for (std::size_t i = 0; i < cur.size(); ++i) {
      auto it = std::find(target.begin(), target.end(), cur[i]);
      p[i] = static_cast<std::size_t>(it - target.begin());
    }
    if (!is_identity_perm(p)) st.layers.emplace_back(PermLayer{p});
    cur = std::move(target);
  };

  for (const auto& box : nf.boxes) {
    route(box.ins);
    st.layers.emplace_back(BlockLayer{0, box.gen});
    std::vector<std::size_t> next(box.outs);
    next.insert(next.end(), cur.begin() + box.ins.size(), cur.end());
    cur = std::move(next);
  }
  route(nf.outputs);
  return st;
}

// ---------------------------------------------------------------------------
// Structural plumbing

namespace {

// L(xs) * L(ys) -> L(xs ++ ys) over left-nested atom tensors.
MorPtr merge_nested(const std::vector<TypePtr>& xs,
                    const std::vector<TypePtr>& ys) {
  TypePtr lx = tensor_of_atoms(xs);
  TypePtr ly = tensor_of_atoms(ys);
  if (ys.empty()) return m_rightu(lx);
  if (xs.empty()) return m_leftu(ly);
  if (ys.size() == 1) return m_id(t_tensor(lx, ly));
  std::vector<TypePtr> ys_head(ys.begin(), ys.end() - 1);
  TypePtr y = ys.back();
  std::vector<TypePtr> merged(xs);
  merged.insert(merged.end(), ys_head.begin(), ys_head.end());
  return m_seq(
      m_unassoc(lx, tensor_of_atoms(ys_head), y),
      m_par(merge_nested(xs, ys_head), m_id(y)));
}

MorPtr invert_structural(const MorPtr& t) {
  switch (t->tag) {
  case MorTag::Id:
    return t;
  case MorTag::Seq:
    return m_seq(invert_structural(t->subs[1]), invert_structural(t->subs[0]));
  case MorTag::Par:
    return m_par(invert_structural(t->subs[0]), invert_structural(t->subs[1]));
  case MorTag::Assoc:
    return m_unassoc(t->types[0], t->types[1], t->types[2]);
  case MorTag::Unassoc:
    return m_assoc(t->types[0], t->types[1], t->types[2]);
  case MorTag::LeftU:
    return m_unleftu(t->types[0]);
  case MorTag::UnleftU:
    return m_leftu(t->types[0]);
  case MorTag::RightU:
    return m_unrightu(t->types[0]);
  case MorTag::UnrightU:
    return m_rightu(t->types[0]);
  case MorTag::Braid:
    return m_braidinv(t->types[0], t->types[1]);
  case MorTag::BraidInv:
    return m_braid(t->types[0], t->types[1]);
  default:
    fail_invalid("cannot invert non-structural constructor '" +
                 std::string(mor_tag_name(t->tag)) + "'");
  }
}

} // namespace

MorPtr structural_nf(const TypePtr& t, Mode mode) {
  switch (t->tag) {
  case TypeTag::Basic:
  case TypeTag::Hom:
  case TypeTag::Dual:
  case TypeTag::Unit:
    return m_id(t);
  case TypeTag::Tensor: {
    std::vector<TypePtr> la = flatten_type(t->left);
    std::vector<TypePtr> lb = flatten_type(t->right);
    MorPtr fa = structural_nf(t->left, mode);
    MorPtr fb = structural_nf(t->right, mode);
    MorPtr par = m_par(fa, fb);
    return m_seq(par, merge_nested(la, lb));
  }
  }
  fail_invalid("unreachable type tag");
}

MorPtr structural_nf_inv(const TypePtr& t, Mode mode) {
  return invert_structural(structural_nf(t, mode));
}

namespace {

// Swap the atoms at positions j and j+1 of a left-nested atom tensor.
MorPtr adjacent_swap(const std::vector<TypePtr>& atoms, std::size_t j) {
  std::size_t n = atoms.size();
  MorPtr core;
  if (j == 0) {
    core = m_braid(atoms[0], atoms[1]);
  } else {
    std::vector<TypePtr> prefix(atoms.begin(),
                                atoms.begin() + static_cast<std::ptrdiff_t>(j));
    TypePtr lp = tensor_of_atoms(prefix);
    core = m_seq(
        m_seq(m_assoc(lp, atoms[j], atoms[j + 1]),
              m_par(m_id(lp), m_braid(atoms[j], atoms[j + 1]))),
        m_unassoc(lp, atoms[j + 1], atoms[j]));
  }
  for (std::size_t k = j + 2; k < n; ++k) core = m_par(core, m_id(atoms[k]));
  return core;
}

} // namespace

MorPtr perm_to_mor(const std::vector<std::size_t>& one_line,
                   const std::vector<TypePtr>& atoms, Mode mode) {
  std::size_t n = atoms.size();
  if (one_line.size() != n)
    fail_invalid("permutation width does not match the atom list");
  {
    std::vector<bool> seen(n, false);
    for (std::size_t v : one_line) {
      if (v >= n || seen[v]) fail_invalid("not a permutation");
      seen[v] = true;
    }
  }
  if (is_identity_perm(one_line)) return m_id(tensor_of_atoms(atoms));
  if (!mode_has_braiding(mode))
    fail_invalid("a wire permutation needs at least braided mode");

  // Selection sort into target positions; each adjacent swap becomes a
  // braid over the current left-nested tensor.
  std::vector<std::size_t> inv(n);
  for (std::size_t i = 0; i < n; ++i) inv[one_line[i]] = i;
  std::vector<std::size_t> arr(n); // arr[pos] = original index now at pos
  std::iota(arr.begin(), arr.end(), std::size_t{0});
  std::vector<TypePtr> cur_atoms(atoms);
  MorPtr acc;
  for (std::size_t pos = 0; pos < n; ++pos) {
    std::size_t want = inv[pos];
    std::size_t q = pos;
    while (arr[q] != want) ++q;
    for (; q > pos; --q) {
      MorPtr sw = adjacent_swap(cur_atoms, q - 1);
      acc = acc ? m_seq(acc, sw) : sw;
      std::swap(arr[q - 1], arr[q]);
      std::swap(cur_atoms[q - 1], cur_atoms[q]);
    }
  }
  return acc;
}

MorPtr strict_to_mor(const StrictTerm& st, const Signature& sig) {
  const Mode mode = sig.mode;
  std::vector<TypePtr> cur = st.dom_atoms;
  MorPtr acc;
  auto push = [&](MorPtr f) { acc = acc ? m_seq(acc, std::move(f)) : f; };

  for (const auto& layer : st.layers) {
    if (std::holds_alternative<PermLayer>(layer)) {
      const auto& p = std::get<PermLayer>(layer).perm;
      if (!is_identity_perm(p)) {
        push(perm_to_mor(p, cur, mode));
        apply_perm_inplace(p, cur);
      }
    } else {
      const auto& blk = std::get<BlockLayer>(layer);
      const GenDecl* g = sig.find_gen(blk.gen);
      if (!g) fail_type("unknown generator '" + blk.gen + "'");
      TypePtr gdom = canonical_type(g->dom, mode);
      TypePtr gcod = canonical_type(g->cod, mode);
      std::vector<TypePtr> din = flatten_type(gdom);
      std::vector<TypePtr> dout = flatten_type(gcod);
      std::size_t o = blk.offset;
      std::size_t k = din.size();
      std::vector<TypePtr> pre(cur.begin(),
                               cur.begin() + static_cast<std::ptrdiff_t>(o));
      std::vector<TypePtr> post(
          cur.begin() + static_cast<std::ptrdiff_t>(o + k), cur.end());
      TypePtr lpre = tensor_of_atoms(pre);
      TypePtr lmid = tensor_of_atoms(din);
      TypePtr lmid2 = tensor_of_atoms(dout);
      TypePtr lpost = tensor_of_atoms(post);
      TypePtr shape_in = t_tensor(t_tensor(lpre, lmid), lpost);
      TypePtr shape_out = t_tensor(t_tensor(lpre, lmid2), lpost);
      MorPtr step = m_seq_all({
          invert_structural(structural_nf(shape_in, mode)),
          m_par(m_par(m_id(lpre),
                      m_seq(structural_nf_inv(gdom, mode), m_gen(blk.gen))),
                m_id(lpost)),
          m_par(m_par(m_id(lpre), structural_nf(gcod, mode)), m_id(lpost)),
          structural_nf(shape_out, mode),
      });
      push(std::move(step));
      cur.erase(cur.begin() + static_cast<std::ptrdiff_t>(o),
                cur.begin() + static_cast<std::ptrdiff_t>(o + k));
      cur.insert(cur.begin() + static_cast<std::ptrdiff_t>(o), dout.begin(),
                 dout.end());
    }
  }
  if (!acc) acc = m_id(tensor_of_atoms(st.dom_atoms));
  return acc;
}

} // namespace freecat
