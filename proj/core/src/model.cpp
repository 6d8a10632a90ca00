#include "freecat/model.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "freecat/axioms.hpp"
#include "freecat/error.hpp"

namespace freecat {

namespace {

constexpr std::size_t k_dim_budget = 20'000'000;

std::size_t checked_mul(std::size_t a, std::size_t b) {
  if (a != 0 && b > k_dim_budget / a)
    fail_invalid("model dimension exceeds the evaluation budget");
  return a * b;
}

std::size_t checked_pow(std::size_t base, std::size_t exp) {
  std::size_t out = 1;
  for (std::size_t i = 0; i < exp; ++i) out = checked_mul(out, base);
  return out;
}

} // namespace

std::string_view model_kind_name(ModelKind k) {
  switch (k) {
  case ModelKind::matrix: return "matrix";
  case ModelKind::finset: return "finset";
  case ModelKind::perm: return "perm";
  }
  return "?";
}

std::optional<ModelKind> model_kind_from_name(std::string_view s) {
  if (s == "matrix") return ModelKind::matrix;
  if (s == "finset") return ModelKind::finset;
  if (s == "perm") return ModelKind::perm;
  return std::nullopt;
}

Mode model_mode_ceiling(ModelKind k) {
  switch (k) {
  case ModelKind::matrix: return Mode::compact_symmetric;
  case ModelKind::finset: return Mode::cartesian_closed;
  case ModelKind::perm: return Mode::symmetric;
  }
  return Mode::monoidal;
}

bool model_supports_mode(ModelKind k, Mode m) {
  return mode_leq(m, model_mode_ceiling(k));
}

bool concrete_eq(const ConcreteMor& a, const ConcreteMor& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
  case ModelKind::matrix:
    return a.mat == b.mat;
  case ModelKind::finset:
    return a.dom_size == b.dom_size && a.cod_size == b.cod_size &&
           a.table == b.table;
  case ModelKind::perm:
    return a.perm == b.perm;
  }
  return false;
}

std::string concrete_to_string(const ConcreteMor& c) {
  std::ostringstream os;
  switch (c.kind) {
  case ModelKind::matrix:
    os << c.mat.to_string();
    break;
  case ModelKind::finset: {
    os << "function " << c.dom_size << " -> " << c.cod_size << " [";
    for (std::size_t i = 0; i < c.table.size(); ++i) {
      if (i) os << " ";
      os << c.table[i];
    }
    os << "]";
    break;
  }
  case ModelKind::perm: {
    os << "perm [";
    for (std::size_t i = 0; i < c.perm.size(); ++i) {
      if (i) os << " ";
      os << c.perm[i];
    }
    os << "]";
    break;
  }
  }
  return os.str();
}

std::optional<DiffWitness> concrete_diff(const ConcreteMor& a,
                                         const ConcreteMor& b) {
  if (a.kind != b.kind)
    return DiffWitness{0, "values come from different model kinds"};
  switch (a.kind) {
  case ModelKind::matrix: {
    if (a.mat.rows() != b.mat.rows() || a.mat.cols() != b.mat.cols())
      return DiffWitness{0, "matrix shapes differ"};
    auto col = RatMatrix::first_diff_col(a.mat, b.mat);
    if (!col) return std::nullopt;
    for (std::size_t r = 0; r < a.mat.rows(); ++r) {
      const CRat& x = a.mat.at(r, *col);
      const CRat& y = b.mat.at(r, *col);
      if (!(x == y)) {
        return DiffWitness{*col, "entry (row " + std::to_string(r) +
                                     ", basis input " + std::to_string(*col) +
                                     "): " + crat_to_string(x) + " vs " +
                                     crat_to_string(y)};
      }
    }
    return std::nullopt;
  }
  case ModelKind::finset: {
    if (a.dom_size != b.dom_size || a.cod_size != b.cod_size)
      return DiffWitness{0, "carrier sizes differ"};
    for (std::size_t i = 0; i < a.table.size(); ++i)
      if (a.table[i] != b.table[i])
        return DiffWitness{i, "element " + std::to_string(i) + " maps to " +
                                  std::to_string(a.table[i]) + " vs " +
                                  std::to_string(b.table[i])};
    return std::nullopt;
  }
  case ModelKind::perm: {
    if (a.perm.size() != b.perm.size())
      return DiffWitness{0, "strand counts differ"};
    for (std::size_t i = 0; i < a.perm.size(); ++i)
      if (a.perm[i] != b.perm[i])
        return DiffWitness{i, "strand " + std::to_string(i) + " goes to " +
                                  std::to_string(a.perm[i]) + " vs " +
                                  std::to_string(b.perm[i])};
    return std::nullopt;
  }
  }
  return std::nullopt;
}

std::size_t model_dim(const Model& m, const TypePtr& t) {
  switch (t->tag) {
  case TypeTag::Basic: {
    auto it = m.objects.find(t->name);
    if (it == m.objects.end())
      fail_invalid("model '" + m.name + "' gives no size for object '" +
                   t->name + "'");
    return it->second;
  }
  case TypeTag::Unit:
    return m.kind == ModelKind::perm ? 0 : 1;
  case TypeTag::Tensor: {
    std::size_t l = model_dim(m, t->left);
    std::size_t r = model_dim(m, t->right);
    if (m.kind == ModelKind::perm) {
      if (l + r > k_dim_budget)
        fail_invalid("model dimension exceeds the evaluation budget");
      return l + r;
    }
    return checked_mul(l, r);
  }
  case TypeTag::Hom: {
    std::size_t l = model_dim(m, t->left);
    std::size_t r = model_dim(m, t->right);
    if (m.kind == ModelKind::matrix) return checked_mul(l, r);
    if (m.kind == ModelKind::finset) return checked_pow(r, l);
    fail_invalid("perm models do not interpret hom types");
  }
  case TypeTag::Dual:
    if (m.kind == ModelKind::matrix) return model_dim(m, t->left);
    fail_invalid(std::string(model_kind_name(m.kind)) +
                 " models do not interpret dual types");
  }
  fail_invalid("unreachable type tag");
}

namespace {

// --- finset helpers: Hom carrier encodes g: X -> Z as the big-endian code
// sum over x of g(x) * |Z|^(|X|-1-x), element 0 most significant.

std::size_t fs_code_digit(std::size_t code, std::size_t x, std::size_t sx,
                          std::size_t sz) {
  std::size_t div = 1;
  for (std::size_t k = x + 1; k < sx; ++k) div *= sz;
  return (code / div) % sz;
}

struct Evaluator {
  const Model& m;
  const EvalOverrides* ov;
  std::unordered_map<const MorTerm*, ConcreteMor> memo;

  const Signature& sig() const { return *m.sig; }

  std::size_t dim(const TypePtr& t) const { return model_dim(m, t); }

  ConcreteMor make_identity(std::size_t n) const {
    ConcreteMor c;
    c.kind = m.kind;
    switch (m.kind) {
    case ModelKind::matrix:
      c.mat = RatMatrix::identity(n);
      break;
    case ModelKind::finset:
      c.dom_size = c.cod_size = n;
      c.table.resize(n);
      for (std::size_t i = 0; i < n; ++i) c.table[i] = i;
      break;
    case ModelKind::perm:
      c.perm.resize(n);
      for (std::size_t i = 0; i < n; ++i) c.perm[i] = i;
      break;
    }
    return c;
  }

  // Index shuffle sending basis input j to basis output map[j] (a bijection).
  ConcreteMor make_shuffle(const std::vector<std::size_t>& map) const {
    ConcreteMor c;
    c.kind = m.kind;
    switch (m.kind) {
    case ModelKind::matrix:
      c.mat = RatMatrix::permutation(map);
      break;
    case ModelKind::finset:
      c.dom_size = c.cod_size = map.size();
      c.table = map;
      break;
    case ModelKind::perm:
      c.perm = map;
      break;
    }
    return c;
  }

  ConcreteMor braid_shuffle(std::size_t dx, std::size_t dy) const {
    // X*Y -> Y*X
    if (m.kind == ModelKind::perm) {
      std::vector<std::size_t> map(dx + dy);
      for (std::size_t i = 0; i < dx; ++i) map[i] = dy + i;
      for (std::size_t j = 0; j < dy; ++j) map[dx + j] = j;
      return make_shuffle(map);
    }
    std::vector<std::size_t> map(dx * dy);
    for (std::size_t i = 0; i < dx; ++i)
      for (std::size_t j = 0; j < dy; ++j) map[i * dy + j] = j * dx + i;
    return make_shuffle(map);
  }

  ConcreteMor seq(const ConcreteMor& f, const ConcreteMor& g) const {
    ConcreteMor c;
    c.kind = m.kind;
    switch (m.kind) {
    case ModelKind::matrix:
      if (g.mat.cols() != f.mat.rows())
        fail_invalid("composition shape mismatch in model evaluation");
      c.mat = g.mat.mul(f.mat);
      break;
    case ModelKind::finset: {
      if (g.dom_size != f.cod_size)
        fail_invalid("composition shape mismatch in model evaluation");
      c.dom_size = f.dom_size;
      c.cod_size = g.cod_size;
      c.table.resize(f.dom_size);
      for (std::size_t i = 0; i < f.dom_size; ++i)
        c.table[i] = g.table[f.table[i]];
      break;
    }
    case ModelKind::perm: {
      if (g.perm.size() != f.perm.size())
        fail_invalid("composition shape mismatch in model evaluation");
      c.perm.resize(f.perm.size());
      for (std::size_t i = 0; i < f.perm.size(); ++i)
        c.perm[i] = g.perm[f.perm[i]];
      break;
    }
    }
    return c;
  }

  ConcreteMor par(const ConcreteMor& f, const ConcreteMor& g) const {
    ConcreteMor c;
    c.kind = m.kind;
    switch (m.kind) {
    case ModelKind::matrix:
      c.mat = f.mat.kron(g.mat);
      break;
    case ModelKind::finset: {
      c.dom_size = f.dom_size * g.dom_size;
      c.cod_size = f.cod_size * g.cod_size;
      c.table.resize(c.dom_size);
      for (std::size_t a = 0; a < f.dom_size; ++a)
        for (std::size_t b = 0; b < g.dom_size; ++b)
          c.table[a * g.dom_size + b] =
              f.table[a] * g.cod_size + g.table[b];
      break;
    }
    case ModelKind::perm: {
      std::size_t nf = f.perm.size();
      c.perm.resize(nf + g.perm.size());
      for (std::size_t i = 0; i < nf; ++i) c.perm[i] = f.perm[i];
      for (std::size_t j = 0; j < g.perm.size(); ++j)
        c.perm[nf + j] = nf + g.perm[j];
      break;
    }
    }
    return c;
  }

  DomCod types_of(const MorPtr& t) const { return infer_dom_cod(t, sig()); }

  ConcreteMor eval(const MorPtr& t) {
    auto it = memo.find(t.get());
    if (it != memo.end()) return it->second;
    ConcreteMor c = eval_raw(t);
    memo.emplace(t.get(), c);
    return c;
  }

  [[noreturn]] void reject(const MorPtr& t) const {
    fail_invalid("constructor '" + std::string(mor_tag_name(t->tag)) +
                 "' exceeds what a " + std::string(model_kind_name(m.kind)) +
                 " model can interpret");
  }

  // Structural override hook: the law checker injects corrupted bindings for
  // individual cups/caps to prove the checker catches them.
  std::optional<RatMatrix> override_for(const MorPtr& t) const {
    if (!ov || m.kind != ModelKind::matrix) return std::nullopt;
    auto it = ov->matrix.find(print_mor(t, sig().mode));
    if (it == ov->matrix.end()) return std::nullopt;
    return it->second;
  }

  ConcreteMor eval_raw(const MorPtr& t) {
    if (!mode_allows(model_mode_ceiling(m.kind), t->tag)) reject(t);

    switch (t->tag) {
    case MorTag::Gen: {
      auto it = m.bindings.find(t->gen_name);
      if (it == m.bindings.end())
        fail_invalid("generator '" + t->gen_name +
                     "' is not bound in model '" + m.name + "'");
      return it->second;
    }
    case MorTag::Id:
      return make_identity(dim(t->types[0]));
    case MorTag::Seq:
      return seq(eval(t->subs[0]), eval(t->subs[1]));
    case MorTag::Par:
      return par(eval(t->subs[0]), eval(t->subs[1]));
    case MorTag::Assoc:
    case MorTag::Unassoc: {
      std::size_t d = dim(t->types[0]);
      if (m.kind == ModelKind::perm)
        d += dim(t->types[1]) + dim(t->types[2]);
      else
        d = checked_mul(checked_mul(d, dim(t->types[1])), dim(t->types[2]));
      return make_identity(d);
    }
    case MorTag::LeftU:
    case MorTag::UnleftU:
    case MorTag::RightU:
    case MorTag::UnrightU:
      return make_identity(dim(t->types[0]));
    case MorTag::Braid:
      return braid_shuffle(dim(t->types[0]), dim(t->types[1]));
    case MorTag::BraidInv: {
      // Y*X -> X*Y: the inverse of Braid(X,Y)
      std::size_t dx = dim(t->types[0]);
      std::size_t dy = dim(t->types[1]);
      if (m.kind == ModelKind::perm) {
        std::vector<std::size_t> map(dx + dy);
        for (std::size_t j = 0; j < dy; ++j) map[j] = dx + j;
        for (std::size_t i = 0; i < dx; ++i) map[dy + i] = i;
        return make_shuffle(map);
      }
      std::vector<std::size_t> map(dx * dy);
      for (std::size_t j = 0; j < dy; ++j)
        for (std::size_t i = 0; i < dx; ++i) map[j * dx + i] = i * dy + j;
      return make_shuffle(map);
    }
    case MorTag::Curry: {
      DomCod sub = types_of(t->subs[0]);
      if (sub.dom->tag != TypeTag::Tensor)
        fail_type("curry needs a tensor domain");
      std::size_t dx = dim(sub.dom->left);
      std::size_t dy = dim(sub.dom->right);
      std::size_t dz = dim(sub.cod);
      ConcreteMor f = eval(t->subs[0]);
      ConcreteMor c;
      c.kind = m.kind;
      if (m.kind == ModelKind::matrix) {
        // f: dz x (dx*dy)  ->  curry: (dx*dz) x dy
        RatMatrix out(checked_mul(dx, dz), dy);
        f.mat.for_each([&](std::size_t r, std::size_t col, const CRat& v) {
          std::size_t i = col / dy;
          std::size_t y = col % dy;
          out.set(i * dz + r, y, v);
        });
        c.mat = std::move(out);
      } else if (m.kind == ModelKind::finset) {
        // element y |-> code of the function x |-> f(x,y)
        c.dom_size = dy;
        c.cod_size = checked_pow(dz, dx);
        c.table.resize(dy);
        for (std::size_t y = 0; y < dy; ++y) {
          std::size_t code = 0;
          for (std::size_t x = 0; x < dx; ++x)
            code = code * dz + f.table[x * dy + y];
          c.table[y] = code;
        }
      } else {
        reject(t);
      }
      return c;
    }
    case MorTag::Uncurry: {
      DomCod sub = types_of(t->subs[0]);
      TypePtr X, Z;
      if (!split_hom_type(sub.cod, sig().mode, X, Z))
        fail_type("uncurry needs a hom codomain");
      std::size_t dx = dim(X);
      std::size_t dz = dim(Z);
      std::size_t dy = dim(sub.dom);
      ConcreteMor g = eval(t->subs[0]);
      ConcreteMor c;
      c.kind = m.kind;
      if (m.kind == ModelKind::matrix) {
        // g: (dx*dz) x dy  ->  uncurry: dz x (dx*dy)
        RatMatrix out(dz, checked_mul(dx, dy));
        g.mat.for_each([&](std::size_t r, std::size_t y, const CRat& v) {
          std::size_t i = r / dz;
          std::size_t z = r % dz;
          out.set(z, i * dy + y, v);
        });
        c.mat = std::move(out);
      } else if (m.kind == ModelKind::finset) {
        c.dom_size = dx * dy;
        c.cod_size = dz;
        c.table.resize(c.dom_size);
        for (std::size_t x = 0; x < dx; ++x)
          for (std::size_t y = 0; y < dy; ++y)
            c.table[x * dy + y] = fs_code_digit(g.table[y], x, dx, dz);
      } else {
        reject(t);
      }
      return c;
    }
    case MorTag::Ev: {
      std::size_t dx = dim(t->types[0]);
      std::size_t dy = dim(t->types[1]);
      ConcreteMor c;
      c.kind = m.kind;
      if (m.kind == ModelKind::matrix) {
        // X*(X-oY) -> Y; dom index x*(dx*dy) + (i*dy + j) -> j when x == i
        std::size_t dh = checked_mul(dx, dy);
        RatMatrix out(dy, checked_mul(dx, dh));
        for (std::size_t i = 0; i < dx; ++i)
          for (std::size_t j = 0; j < dy; ++j)
            out.set(j, i * dh + i * dy + j, CRat{1, 0});
        c.mat = std::move(out);
      } else if (m.kind == ModelKind::finset) {
        std::size_t dh = checked_pow(dy, dx);
        c.dom_size = checked_mul(dx, dh);
        c.cod_size = dy;
        c.table.resize(c.dom_size);
        for (std::size_t x = 0; x < dx; ++x)
          for (std::size_t code = 0; code < dh; ++code)
            c.table[x * dh + code] = fs_code_digit(code, x, dx, dy);
      } else {
        reject(t);
      }
      return c;
    }
    case MorTag::Cup: {
      std::size_t dx = dim(t->types[0]);
      ConcreteMor c;
      c.kind = ModelKind::matrix;
      if (m.kind != ModelKind::matrix) reject(t);
      if (auto o = override_for(t)) {
        c.mat = *o;
        return c;
      }
      RatMatrix out(checked_mul(dx, dx), 1);
      for (std::size_t i = 0; i < dx; ++i)
        out.set(i * dx + i, 0, CRat{1, 0});
      c.mat = std::move(out);
      return c;
    }
    case MorTag::Cap: {
      std::size_t dx = dim(t->types[0]);
      ConcreteMor c;
      c.kind = ModelKind::matrix;
      if (m.kind != ModelKind::matrix) reject(t);
      if (auto o = override_for(t)) {
        c.mat = *o;
        return c;
      }
      RatMatrix out(1, checked_mul(dx, dx));
      for (std::size_t i = 0; i < dx; ++i)
        out.set(0, i * dx + i, CRat{1, 0});
      c.mat = std::move(out);
      return c;
    }
    case MorTag::Dup: {
      if (m.kind != ModelKind::finset) reject(t);
      std::size_t dx = dim(t->types[0]);
      ConcreteMor c;
      c.kind = ModelKind::finset;
      c.dom_size = dx;
      c.cod_size = dx * dx;
      c.table.resize(dx);
      for (std::size_t x = 0; x < dx; ++x) c.table[x] = x * dx + x;
      return c;
    }
    case MorTag::Del: {
      if (m.kind != ModelKind::finset) reject(t);
      std::size_t dx = dim(t->types[0]);
      ConcreteMor c;
      c.kind = ModelKind::finset;
      c.dom_size = dx;
      c.cod_size = 1;
      c.table.assign(dx, 0);
      return c;
    }
    case MorTag::Pair: {
      if (m.kind != ModelKind::finset) reject(t);
      ConcreteMor f = eval(t->subs[0]);
      ConcreteMor g = eval(t->subs[1]);
      if (f.dom_size != g.dom_size)
        fail_invalid("pairing shape mismatch in model evaluation");
      ConcreteMor c;
      c.kind = ModelKind::finset;
      c.dom_size = f.dom_size;
      c.cod_size = f.cod_size * g.cod_size;
      c.table.resize(c.dom_size);
      for (std::size_t q = 0; q < c.dom_size; ++q)
        c.table[q] = f.table[q] * g.cod_size + g.table[q];
      return c;
    }
    case MorTag::Proj1:
    case MorTag::Proj2: {
      if (m.kind != ModelKind::finset) reject(t);
      std::size_t dx = dim(t->types[0]);
      std::size_t dy = dim(t->types[1]);
      ConcreteMor c;
      c.kind = ModelKind::finset;
      c.dom_size = dx * dy;
      c.cod_size = t->tag == MorTag::Proj1 ? dx : dy;
      c.table.resize(c.dom_size);
      for (std::size_t x = 0; x < dx; ++x)
        for (std::size_t y = 0; y < dy; ++y)
          c.table[x * dy + y] = t->tag == MorTag::Proj1 ? x : y;
      return c;
    }
    case MorTag::Name: {
      DomCod sub = types_of(t->subs[0]);
      std::size_t dx = dim(sub.dom);
      std::size_t dy = dim(sub.cod);
      ConcreteMor f = eval(t->subs[0]);
      ConcreteMor c;
      c.kind = m.kind;
      if (m.kind == ModelKind::matrix) {
        // state I -> X-oY with entry (i*dy + j) = f[j, i]
        RatMatrix out(checked_mul(dx, dy), 1);
        f.mat.for_each([&](std::size_t j, std::size_t i, const CRat& v) {
          out.set(i * dy + j, 0, v);
        });
        c.mat = std::move(out);
      } else if (m.kind == ModelKind::finset) {
        std::size_t code = 0;
        for (std::size_t x = 0; x < dx; ++x) code = code * dy + f.table[x];
        c.dom_size = 1;
        c.cod_size = checked_pow(dy, dx);
        c.table.assign(1, code);
      } else {
        reject(t);
      }
      return c;
    }
    }
    fail_invalid("unreachable constructor in model evaluation");
  }
};

} // namespace

ConcreteMor eval_mor(const Model& m, const MorPtr& t,
                     const EvalOverrides* overrides) {
  if (!m.sig) fail_invalid("model has no signature attached");
  // Type-check first so ill-typed terms are a type error, not a shape error.
  (void)infer_dom_cod(t, *m.sig);
  Evaluator ev{m, overrides, {}};
  return ev.eval(t);
}

ConcreteMor dagger_mor(const Model& m, const ConcreteMor& c) {
  ConcreteMor out;
  out.kind = c.kind;
  switch (c.kind) {
  case ModelKind::matrix:
    out.mat = c.mat.dagger();
    return out;
  case ModelKind::perm: {
    out.perm.resize(c.perm.size());
    for (std::size_t i = 0; i < c.perm.size(); ++i) out.perm[c.perm[i]] = i;
    return out;
  }
  case ModelKind::finset:
    fail_invalid("finset models have no dagger: a function table has no "
                 "canonical adjoint");
  }
  fail_invalid("unreachable model kind");
}

RefuteOutcome refute_eq(const Model& m, const MorPtr& t1, const MorPtr& t2) {
  DomCod a = infer_dom_cod(t1, *m.sig);
  DomCod b = infer_dom_cod(t2, *m.sig);
  if (!type_eq(a.dom, b.dom) || !type_eq(a.cod, b.cod))
    fail_type("refutation needs equal domains and codomains");
  ConcreteMor ca = eval_mor(m, t1);
  ConcreteMor cb = eval_mor(m, t2);
  RefuteOutcome out;
  out.model_name = m.name;
  if (auto d = concrete_diff(ca, cb)) {
    out.refuted = true;
    out.input_index = d->input_index;
    out.detail = d->detail;
  }
  return out;
}

namespace {

Rat random_small_rat(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-2, 2);
  std::uniform_int_distribution<int> den(1, 3);
  return Rat(num(rng)) / Rat(den(rng));
}

CRat random_entry(std::mt19937_64& rng, bool allow_imag) {
  CRat v;
  v.re = random_small_rat(rng);
  if (allow_imag && (rng() & 1u)) v.im = random_small_rat(rng);
  return v;
}

RatMatrix random_matrix(std::mt19937_64& rng, std::size_t rows,
                        std::size_t cols, bool allow_imag) {
  RatMatrix out(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      out.set(r, c, random_entry(rng, allow_imag));
  return out;
}

} // namespace

Model make_random_matrix_model(std::shared_ptr<const Signature> sig,
                               std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Model m;
  m.kind = ModelKind::matrix;
  m.name = "auto-matrix(seed=" + std::to_string(seed) + ")";
  m.sig = std::move(sig);
  for (const auto& obj : m.sig->objects)
    m.objects[obj] = 2 + (rng() % 2); // dims in {2,3}
  for (const auto& g : m.sig->generators) {
    std::size_t rows = model_dim(m, canonical_type(g.cod, m.sig->mode));
    std::size_t cols = model_dim(m, canonical_type(g.dom, m.sig->mode));
    ConcreteMor c;
    c.kind = ModelKind::matrix;
    c.mat = random_matrix(rng, rows, cols, true);
    m.bindings.emplace(g.name, std::move(c));
  }
  return m;
}

Model make_random_finset_model(std::shared_ptr<const Signature> sig,
                               std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Model m;
  m.kind = ModelKind::finset;
  m.name = "auto-finset(seed=" + std::to_string(seed) + ")";
  m.sig = std::move(sig);
  for (const auto& obj : m.sig->objects)
    m.objects[obj] = 2 + (rng() % 2); // sizes in {2,3}
  for (const auto& g : m.sig->generators) {
    std::size_t cod = model_dim(m, canonical_type(g.cod, m.sig->mode));
    std::size_t dom = model_dim(m, canonical_type(g.dom, m.sig->mode));
    if (cod == 0)
      fail_invalid("generator '" + g.name +
                   "' has an empty codomain carrier; no function exists");
    ConcreteMor c;
    c.kind = ModelKind::finset;
    c.dom_size = dom;
    c.cod_size = cod;
    c.table.resize(dom);
    for (std::size_t i = 0; i < dom; ++i) c.table[i] = rng() % cod;
    m.bindings.emplace(g.name, std::move(c));
  }
  return m;
}

// ---------------------------------------------------------------------------
// Model document loading

namespace {

using nlohmann::json;

Rat parse_fraction(const json& j, const std::string& where) {
  if (!j.is_string())
    fail_parse("model document: " + where + " must be a fraction string");
  try {
    return rat_from_string(j.get<std::string>());
  } catch (const FcError& e) {
    fail_parse("model document: " + where + ": " + e.what());
  }
}

} // namespace

Model load_model_json(const std::string& json_text,
                      std::shared_ptr<const Signature> sig, std::string name) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    fail_parse("model document is not valid JSON: " + std::string(e.what()));
  }
  if (!doc.is_object()) fail_parse("model document must be a JSON object");

  Model m;
  m.name = std::move(name);
  m.sig = std::move(sig);

  if (!doc.contains("kind") || !doc["kind"].is_string())
    fail_parse("model document needs a string field \"kind\"");
  auto kind = model_kind_from_name(doc["kind"].get<std::string>());
  if (!kind)
    fail_parse("model kind must be \"matrix\", \"finset\" or \"perm\"");
  m.kind = *kind;

  if (!model_supports_mode(m.kind, m.sig->mode))
    fail_invalid("a " + std::string(model_kind_name(m.kind)) +
                 " model cannot interpret mode " +
                 std::string(mode_name(m.sig->mode)) + " (ceiling: " +
                 std::string(mode_name(model_mode_ceiling(m.kind))) + ")");

  if (!doc.contains("objects") || !doc["objects"].is_object())
    fail_parse("model document needs an object map \"objects\"");
  for (auto it = doc["objects"].begin(); it != doc["objects"].end(); ++it) {
    if (!m.sig->has_object(it.key()))
      fail_invalid("model binds object '" + it.key() +
                   "' which the signature does not declare");
    if (!it.value().is_number_unsigned())
      fail_parse("size of object '" + it.key() +
                 "' must be a nonnegative integer");
    std::size_t n = it.value().get<std::size_t>();
    if (n == 0 && m.kind != ModelKind::perm)
      fail_invalid("size of object '" + it.key() +
                   "' must be positive in a " +
                   std::string(model_kind_name(m.kind)) + " model");
    m.objects[it.key()] = n;
  }
  for (const auto& obj : m.sig->objects)
    if (!m.objects.count(obj))
      fail_invalid("model gives no size for object '" + obj + "'");

  json gens = json::object();
  if (doc.contains("generators")) {
    if (!doc["generators"].is_object())
      fail_parse("\"generators\" must be an object map");
    gens = doc["generators"];
  }
  for (auto it = gens.begin(); it != gens.end(); ++it)
    if (!m.sig->find_gen(it.key()))
      fail_invalid("model binds generator '" + it.key() +
                   "' which the signature does not declare");

  for (const auto& g : m.sig->generators) {
    if (!gens.contains(g.name))
      fail_invalid("missing binding for generator '" + g.name + "'");
    const json& b = gens[g.name];
    if (!b.is_object())
      fail_parse("binding for generator '" + g.name + "' must be an object");
    TypePtr dom = canonical_type(g.dom, m.sig->mode);
    TypePtr cod = canonical_type(g.cod, m.sig->mode);
    ConcreteMor c;
    c.kind = m.kind;
    switch (m.kind) {
    case ModelKind::matrix: {
      std::size_t rows = model_dim(m, cod);
      std::size_t cols = model_dim(m, dom);
      if (!b.contains("rows") || !b.contains("cols") ||
          !b.contains("entries"))
        fail_parse("matrix binding for '" + g.name +
                   "' needs \"rows\", \"cols\" and \"entries\"");
      if (!b["rows"].is_number_unsigned() || !b["cols"].is_number_unsigned())
        fail_parse("matrix binding for '" + g.name +
                   "': rows/cols must be nonnegative integers");
      std::size_t brows = b["rows"].get<std::size_t>();
      std::size_t bcols = b["cols"].get<std::size_t>();
      if (brows != rows || bcols != cols)
        fail_invalid("shape mismatch for generator '" + g.name +
                     "': expected " + std::to_string(rows) + "x" +
                     std::to_string(cols) + ", document says " +
                     std::to_string(brows) + "x" + std::to_string(bcols));
      const json& e = b["entries"];
      if (!e.is_array() || e.size() != rows)
        fail_invalid("shape mismatch for generator '" + g.name +
                     "': expected " + std::to_string(rows) +
                     " entry rows, found " +
                     std::to_string(e.is_array() ? e.size() : 0));
      RatMatrix mat(rows, cols);
      for (std::size_t r = 0; r < rows; ++r) {
        const json& row = e[r];
        if (!row.is_array() || row.size() != cols)
          fail_invalid("shape mismatch for generator '" + g.name + "': row " +
                       std::to_string(r) + " expected " +
                       std::to_string(cols) + " columns, found " +
                       std::to_string(row.is_array() ? row.size() : 0));
        for (std::size_t cidx = 0; cidx < cols; ++cidx) {
          const json& cell = row[cidx];
          CRat v;
          std::string where = "generator '" + g.name + "' entry (" +
                              std::to_string(r) + "," +
                              std::to_string(cidx) + ")";
          if (cell.is_string()) {
            v.re = parse_fraction(cell, where);
          } else if (cell.is_object()) {
            if (cell.contains("re")) v.re = parse_fraction(cell["re"], where);
            if (cell.contains("im")) v.im = parse_fraction(cell["im"], where);
          } else {
            fail_parse("model document: " + where +
                       " must be a fraction string or {\"re\",\"im\"}");
          }
          if (!v.is_zero()) mat.set(r, cidx, v);
        }
      }
      c.mat = std::move(mat);
      break;
    }
    case ModelKind::finset: {
      std::size_t dsz = model_dim(m, dom);
      std::size_t csz = model_dim(m, cod);
      if (!b.contains("table") || !b["table"].is_array())
        fail_parse("finset binding for '" + g.name +
                   "' needs an array \"table\"");
      const json& tb = b["table"];
      if (tb.size() != dsz)
        fail_invalid("shape mismatch for generator '" + g.name +
                     "': expected table of length " + std::to_string(dsz) +
                     ", found " + std::to_string(tb.size()));
      c.dom_size = dsz;
      c.cod_size = csz;
      c.table.resize(dsz);
      for (std::size_t i = 0; i < dsz; ++i) {
        if (!tb[i].is_number_unsigned())
          fail_parse("finset binding for '" + g.name +
                     "': table entries must be nonnegative integers");
        std::size_t v = tb[i].get<std::size_t>();
        if (v >= csz)
          fail_invalid("binding for generator '" + g.name + "': table entry " +
                       std::to_string(i) + " = " + std::to_string(v) +
                       " is out of range (codomain size " +
                       std::to_string(csz) + ")");
        c.table[i] = v;
      }
      break;
    }
    case ModelKind::perm: {
      std::size_t dsz = model_dim(m, dom);
      std::size_t csz = model_dim(m, cod);
      if (dsz != csz)
        fail_invalid("generator '" + g.name + "' has " + std::to_string(dsz) +
                     " domain strands but " + std::to_string(csz) +
                     " codomain strands; a perm model cannot bind it");
      if (!b.contains("perm") || !b["perm"].is_array())
        fail_parse("perm binding for '" + g.name +
                   "' needs an array \"perm\"");
      const json& pm = b["perm"];
      if (pm.size() != dsz)
        fail_invalid("shape mismatch for generator '" + g.name +
                     "': expected " + std::to_string(dsz) +
                     " strands, found " + std::to_string(pm.size()));
      c.perm.resize(dsz);
      std::vector<bool> seen(dsz, false);
      for (std::size_t i = 0; i < dsz; ++i) {
        if (!pm[i].is_number_unsigned())
          fail_parse("perm binding for '" + g.name +
                     "': entries must be nonnegative integers");
        std::size_t v = pm[i].get<std::size_t>();
        if (v >= dsz || seen[v])
          fail_invalid("binding for generator '" + g.name +
                       "' is not a permutation");
        seen[v] = true;
        c.perm[i] = v;
      }
      break;
    }
    }
    m.bindings.emplace(g.name, std::move(c));
  }
  return m;
}

Model load_model_file(const std::string& path,
                      std::shared_ptr<const Signature> sig) {
  std::ifstream in(path);
  if (!in) fail_io("cannot open model file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  std::string base = path;
  if (auto pos = base.find_last_of('/'); pos != std::string::npos)
    base = base.substr(pos + 1);
  return load_model_json(ss.str(), std::move(sig), base);
}

// ---------------------------------------------------------------------------
// Law checking

namespace {

// A miniature signature with fresh objects and generators for instantiating
// axiom schemas and functoriality laws on random data.
struct SynthCtx {
  std::shared_ptr<Signature> sig;
  Model model;

  SynthCtx(ModelKind kind, Mode mode, std::mt19937_64& rng,
           const std::vector<std::string>& objects, std::size_t max_dim) {
    sig = std::make_shared<Signature>();
    sig->mode = mode;
    sig->objects = objects;
    model.kind = kind;
    model.sig = sig;
    std::uniform_int_distribution<std::size_t> d(1, max_dim);
    for (const auto& o : objects) model.objects[o] = d(rng);
  }

  void add_gen(const std::string& name, TypePtr dom, TypePtr cod,
               std::mt19937_64& rng) {
    sig->generators.push_back({name, dom, cod});
    std::size_t rows = model_dim(model, canonical_type(cod, sig->mode));
    std::size_t cols = model_dim(model, canonical_type(dom, sig->mode));
    ConcreteMor c;
    c.kind = model.kind;
    switch (model.kind) {
    case ModelKind::matrix:
      c.mat = random_matrix(rng, rows, cols, true);
      break;
    case ModelKind::finset: {
      c.dom_size = cols;
      c.cod_size = rows;
      c.table.resize(cols);
      for (std::size_t i = 0; i < cols; ++i) c.table[i] = rng() % rows;
      break;
    }
    case ModelKind::perm: {
      // rows == cols strands required; caller guarantees dom/cod share
      // strand count. Random permutation via shuffle.
      c.perm.resize(cols);
      for (std::size_t i = 0; i < cols; ++i) c.perm[i] = i;
      std::shuffle(c.perm.begin(), c.perm.end(), rng);
      break;
    }
    }
    model.bindings.emplace(name, std::move(c));
  }
};

} // namespace

LawReport check_model_laws(const Model& m, std::size_t samples,
                           std::uint64_t seed, const EvalOverrides* overrides) {
  LawReport report;
  if (!m.sig) fail_invalid("model has no signature attached");
  const Mode mode = m.sig->mode;
  const ModelKind kind = m.kind;
  if (!model_supports_mode(kind, mode))
    fail_invalid("a " + std::string(model_kind_name(kind)) +
                 " model cannot interpret mode " +
                 std::string(mode_name(mode)));
  std::mt19937_64 rng(seed);

  auto run_instance = [&](const std::string& law, std::size_t sample,
                          const Model& inst, const MorPtr& lhs,
                          const MorPtr& rhs) {
    ++report.checked;
    try {
      ConcreteMor a = eval_mor(inst, lhs, overrides);
      ConcreteMor b = eval_mor(inst, rhs, overrides);
      if (auto d = concrete_diff(a, b))
        report.failures.push_back({law, sample, d->detail});
    } catch (const FcError& e) {
      report.failures.push_back(
          {law, sample, std::string("evaluation error: ") + e.what()});
    }
  };

  // 1. Coherence axioms on random object dimensions. Structural equations
  // have no generators, so the random data here is the dimension vector.
  const std::size_t max_dim = 4;
  for (const auto& schema : coherence_axioms(mode)) {
    report.laws.push_back(schema.name);
    for (std::size_t s = 0; s < samples; ++s) {
      std::vector<std::string> names;
      for (std::size_t i = 0; i < schema.metavars.size(); ++i)
        names.push_back("O" + std::to_string(i));
      SynthCtx ctx(kind, mode, rng, names, max_dim);
      std::vector<TypePtr> args;
      for (const auto& n : names) args.push_back(t_basic(n));
      auto [lhs, rhs] = schema.build(args);
      run_instance(schema.name, s, ctx.model, lhs, rhs);
    }
  }

  // 2. Functoriality of the tensor: interchange with random generators.
  report.laws.push_back("interchange");
  for (std::size_t s = 0; s < samples; ++s) {
    SynthCtx ctx(kind, mode, rng, {"A", "B", "C", "P", "Q", "R"}, 3);
    if (kind == ModelKind::perm) {
      // strand-preserving generators need equal counts
      ctx.model.objects["B"] = ctx.model.objects["A"];
      ctx.model.objects["C"] = ctx.model.objects["A"];
      ctx.model.objects["Q"] = ctx.model.objects["P"];
      ctx.model.objects["R"] = ctx.model.objects["P"];
    }
    ctx.add_gen("f", t_basic("A"), t_basic("B"), rng);
    ctx.add_gen("g", t_basic("B"), t_basic("C"), rng);
    ctx.add_gen("h", t_basic("P"), t_basic("Q"), rng);
    ctx.add_gen("k", t_basic("Q"), t_basic("R"), rng);
    MorPtr lhs = m_par(m_seq(m_gen("f"), m_gen("g")),
                       m_seq(m_gen("h"), m_gen("k")));
    MorPtr rhs = m_seq(m_par(m_gen("f"), m_gen("h")),
                       m_par(m_gen("g"), m_gen("k")));
    run_instance("interchange", s, ctx.model, lhs, rhs);
  }

  // 3. Identity preservation: Id on a random tensor type is the identity.
  report.laws.push_back("id-preservation");
  for (std::size_t s = 0; s < samples; ++s) {
    SynthCtx ctx(kind, mode, rng, {"A", "B"}, max_dim);
    TypePtr t = t_tensor(t_basic("A"), t_tensor(t_basic("B"), t_unit()));
    ++report.checked;
    try {
      ConcreteMor c = eval_mor(ctx.model, m_id(t), overrides);
      ConcreteMor i;
      std::size_t n = model_dim(ctx.model, canonical_type(t, mode));
      Evaluator evh{ctx.model, nullptr, {}};
      i = evh.make_identity(n);
      if (auto d = concrete_diff(c, i))
        report.failures.push_back({"id-preservation", s, d->detail});
    } catch (const FcError& e) {
      report.failures.push_back(
          {"id-preservation", s, std::string("evaluation error: ") + e.what()});
    }
  }

  // 4. Braid naturality.
  if (mode_has_braiding(mode)) {
    report.laws.push_back("braid-naturality");
    for (std::size_t s = 0; s < samples; ++s) {
      SynthCtx ctx(kind, mode, rng, {"A", "B", "C", "D"}, 3);
      if (kind == ModelKind::perm) {
        ctx.model.objects["B"] = ctx.model.objects["A"];
        ctx.model.objects["D"] = ctx.model.objects["C"];
      }
      ctx.add_gen("f", t_basic("A"), t_basic("B"), rng);
      ctx.add_gen("g", t_basic("C"), t_basic("D"), rng);
      MorPtr lhs = m_seq(m_par(m_gen("f"), m_gen("g")),
                         m_braid(t_basic("B"), t_basic("D")));
      MorPtr rhs = m_seq(m_braid(t_basic("A"), t_basic("C")),
                         m_par(m_gen("g"), m_gen("f")));
      run_instance("braid-naturality", s, ctx.model, lhs, rhs);
    }
  }

  // 5. Dagger laws (matrix and perm kinds).
  if (kind != ModelKind::finset) {
    report.laws.push_back("dagger-involution");
    report.laws.push_back("dagger-contravariance");
    for (std::size_t s = 0; s < samples; ++s) {
      SynthCtx ctx(kind, mode, rng, {"A", "B", "C"}, 3);
      if (kind == ModelKind::perm) {
        ctx.model.objects["B"] = ctx.model.objects["A"];
        ctx.model.objects["C"] = ctx.model.objects["A"];
      }
      ctx.add_gen("f", t_basic("A"), t_basic("B"), rng);
      ctx.add_gen("g", t_basic("B"), t_basic("C"), rng);
      ++report.checked;
      try {
        ConcreteMor f = eval_mor(ctx.model, m_gen("f"));
        ConcreteMor g = eval_mor(ctx.model, m_gen("g"));
        ConcreteMor ff = dagger_mor(ctx.model, dagger_mor(ctx.model, f));
        if (auto d = concrete_diff(ff, f))
          report.failures.push_back({"dagger-involution", s, d->detail});
      } catch (const FcError& e) {
        report.failures.push_back({"dagger-involution", s,
                                   std::string("evaluation error: ") +
                                       e.what()});
      }
      ++report.checked;
      try {
        ConcreteMor gf = eval_mor(ctx.model, m_seq(m_gen("f"), m_gen("g")));
        ConcreteMor lhs = dagger_mor(ctx.model, gf);
        ConcreteMor fd =
            dagger_mor(ctx.model, eval_mor(ctx.model, m_gen("f")));
        ConcreteMor gd =
            dagger_mor(ctx.model, eval_mor(ctx.model, m_gen("g")));
        // (g after f) dagger = f dagger after g dagger; in diagrammatic
        // order that is gd then fd.
        Evaluator evh{ctx.model, nullptr, {}};
        ConcreteMor rhs = evh.seq(gd, fd);
        if (auto d = concrete_diff(lhs, rhs))
          report.failures.push_back({"dagger-contravariance", s, d->detail});
      } catch (const FcError& e) {
        report.failures.push_back({"dagger-contravariance", s,
                                   std::string("evaluation error: ") +
                                       e.what()});
      }
    }
  }

  // 6. Name recovery in closed modes: a morphism is recovered from its name
  // by X -> X*I -> X*(X-oY) -> Y.
  if (mode_has_closed(mode) && kind != ModelKind::perm) {
    report.laws.push_back("name-recovery");
    for (std::size_t s = 0; s < samples; ++s) {
      SynthCtx ctx(kind, mode, rng, {"A", "B"}, 3);
      ctx.add_gen("f", t_basic("A"), t_basic("B"), rng);
      TypePtr A = t_basic("A");
      TypePtr B = t_basic("B");
      MorPtr lhs =
          m_seq(m_seq(m_unrightu(A), m_par(m_id(A), m_name(m_gen("f")))),
                m_ev(A, B));
      run_instance("name-recovery", s, ctx.model, lhs, m_gen("f"));
    }
  }

  return report;
}

} // namespace freecat
