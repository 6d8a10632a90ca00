#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "freecat/matrix.hpp"
#include "freecat/signature.hpp"
#include "freecat/term.hpp"

namespace freecat {

// matrix: exact complex-rational linear maps (tensor = Kronecker).
// finset: total functions on canonical finite carriers 0..n-1.
// perm:   bijections on strand positions (tensor = disjoint union).
enum class ModelKind { matrix, finset, perm };

std::string_view model_kind_name(ModelKind k);
std::optional<ModelKind> model_kind_from_name(std::string_view s);

// Highest mode whose constructors the kind interprets. A model of kind k can
// soundly evaluate (and hence refute equalities in) signatures of any mode
// <= mode_ceiling(k):
//   matrix -> compact-symmetric (no Dup/Del/Pair/Proj: linear maps don't copy)
//   finset -> cartesian-closed  (no Cup/Cap: sets have no duals)
//   perm   -> symmetric
Mode model_mode_ceiling(ModelKind k);
bool model_supports_mode(ModelKind k, Mode m);

// A morphism value in one of the three kinds. Exactly the payload for `kind`
// is meaningful.
struct ConcreteMor {
  ModelKind kind = ModelKind::matrix;
  RatMatrix mat; // matrix
  // finset: table[i] = image of i, i < dom_size, table[i] < cod_size
  std::size_t dom_size = 0;
  std::size_t cod_size = 0;
  std::vector<std::size_t> table;
  // perm: one-line notation, perm[i] = output strand carrying input strand i
  std::vector<std::size_t> perm;
};

bool concrete_eq(const ConcreteMor& a, const ConcreteMor& b);
std::string concrete_to_string(const ConcreteMor& c);

// First basis input (column / element / strand) where two values of the same
// shape disagree.
struct DiffWitness {
  std::size_t input_index = 0;
  std::string detail;
};
std::optional<DiffWitness> concrete_diff(const ConcreteMor& a,
                                         const ConcreteMor& b);

// An interpretation of a signature's basic objects and generators.
struct Model {
  ModelKind kind = ModelKind::matrix;
  std::string name; // cited in equality verdicts and law reports
  std::shared_ptr<const Signature> sig;
  // Per basic object: matrix dimension / carrier size (positive), or strand
  // count (may be zero) for perm models.
  std::map<std::string, std::size_t> objects;
  std::map<std::string, ConcreteMor> bindings;
};

// Dimension / carrier size / strand count of a type in the model.
// Tensor multiplies (perm: adds), Unit is 1 (perm: 0), Hom(X,Y) is
// dim X * dim Y in matrix models and |Y|^|X| in finset models, Dual keeps
// the dimension (matrix only). Throws FcError(invalid) when the kind cannot
// interpret the connective or the size overflows the evaluation budget.
std::size_t model_dim(const Model& m, const TypePtr& t);

// Replacement values for individual structural nodes, keyed by the node's
// printed form (e.g. "cup[X]"); used by the law checker to demonstrate that
// a corrupted interpretation is caught. Matrix models only.
struct EvalOverrides {
  std::map<std::string, RatMatrix> matrix;
};

// Structure-preserving evaluation: Seq -> composition, Par -> Kronecker /
// product pairing / block action, structural morphisms -> identities or
// index shuffles, Cup(X) -> sum of e_i (x) e_i, Cap its transpose, Curry/Ev
// via currying of indices, Dup/Del/Pair/Proj as set operations.
// Throws FcError(invalid) if a constructor exceeds the kind's ceiling or a
// generator is unbound; FcError(type) if t is ill-typed.
ConcreteMor eval_mor(const Model& m, const MorPtr& t,
                     const EvalOverrides* overrides = nullptr);

// Conjugate transpose (matrix) or inverse permutation (perm). Finset models
// have no dagger; throws FcError(invalid).
ConcreteMor dagger_mor(const Model& m, const ConcreteMor& c);

// Parse and validate a model document against a signature. Every generator
// of the signature must be bound with the shape its type demands; every
// basic object must be given a size. Error messages name the offending
// generator and the expected/actual shape.
Model load_model_json(const std::string& json_text,
                      std::shared_ptr<const Signature> sig, std::string name);
Model load_model_file(const std::string& path,
                      std::shared_ptr<const Signature> sig);

// Evaluate both terms and compare exactly.
struct RefuteOutcome {
  bool refuted = false;
  std::string model_name;
  std::size_t input_index = 0; // first differing basis input
  std::string detail;
};
RefuteOutcome refute_eq(const Model& m, const MorPtr& t1, const MorPtr& t2);

// Law checking: instantiates every coherence axiom of the signature's mode
// on random object dimensions (<= 4), plus interchange/functoriality,
// braid naturality, dagger laws and name-recovery where the kind and mode
// support them, using `samples` random bindings drawn from the given seed.
struct LawFailure {
  std::string law;
  std::size_t sample = 0;
  std::string detail;
};
struct LawReport {
  std::size_t checked = 0; // law instances evaluated
  std::vector<std::string> laws; // law names covered, report order
  std::vector<LawFailure> failures;
  bool ok() const { return failures.empty(); }
};
LawReport check_model_laws(const Model& m, std::size_t samples,
                           std::uint64_t seed,
                           const EvalOverrides* overrides = nullptr);

// Random models for the refutation rung of equality testing: dimensions in
// {2,3}, matrix entries with numerators in {-2..2}, denominators in {1..3}
// (imaginary parts on half the entries), finset tables uniform. Throws
// FcError(invalid) if the signature's types are outside the kind's reach.
Model make_random_matrix_model(std::shared_ptr<const Signature> sig,
                               std::uint64_t seed);
Model make_random_finset_model(std::shared_ptr<const Signature> sig,
                               std::uint64_t seed);

} // namespace freecat
