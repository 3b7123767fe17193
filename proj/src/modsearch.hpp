#ifndef VFL_MODSEARCH_HPP
#define VFL_MODSEARCH_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cartan.hpp"
#include "chevalley.hpp"
#include "presentation.hpp"

namespace vfl {

// Fields x^alpha exp(<lambda, x>) d/dx_k with |alpha| <= degree, lambda in
// freqs. Basis order: lambda (as given), alpha graded-lex, k.
class AnsatzSpace {
public:
  AnsatzSpace(std::size_t dim, unsigned degree, std::vector<Vec> freqs = {});

  std::size_t dim() const { return dim_; }
  unsigned degree() const { return degree_; }
  const std::vector<Vec>& freqs() const { return freqs_; }
  bool polynomial() const;
  std::size_t size() const { return basis_.size(); }
  const std::vector<VectorField>& basis() const { return basis_; }
  // Same space, basis permuted: basis()[i] of the result is old basis()[perm[i]].
  AnsatzSpace reordered(const std::vector<std::size_t>& perm) const;

  std::optional<Vec> coordinates(const VectorField& v) const;
  VectorField field(std::span<const Scalar> coords) const;

private:
  AnsatzSpace() = default;
  void index();

  std::size_t dim_ = 0;
  unsigned degree_ = 0;
  std::vector<Vec> freqs_;
  std::vector<VectorField> basis_;
  std::vector<FieldKey> keys_;
  std::map<FieldKey, std::size_t, FieldKeyLess> index_;
};

struct BorelChoice {
  std::vector<VectorField> cartan;
  std::vector<VectorField> positives;  // simple positive root vectors
};

// CSA basis and simple root vectors under the positivity of is_positive_root,
// or of its negative when `opposite`.
BorelChoice borel_from_roots(const LiePresentation& s, const RootData& r, bool opposite = false);

// The Borel of r or its opposite, whichever has ad(positives) preserving A
// (standard first). Throws Truncation when neither does.
BorelChoice stable_borel(const LiePresentation& s, const RootData& r, const AnsatzSpace& a);

struct WeightVector {
  VectorField field;
  Vec weight;  // eigenvalue of ad(h) for h in BorelChoice::cartan
};

// Representatives of the highest weight vectors in A modulo S, grouped by
// weight (sorted), reduced-echelon within each weight. Throws Truncation if
// a Borel generator maps A outside A.
std::vector<WeightVector> highest_weight_vectors(const LiePresentation& s, const BorelChoice& b,
                                                 const AnsatzSpace& a);

// [known[lhs], W] = sum_j c_j known[j] + mu W
struct Relation {
  std::size_t lhs;
  std::vector<std::pair<std::size_t, Scalar>> rhs;
  Scalar mu;
};

struct SolutionFamily {
  VectorField particular;
  std::vector<VectorField> directions;
  VectorField at(std::span<const Scalar> params) const;
  bool only_zero() const { return directions.empty() && particular.is_zero(); }
};

struct RelationFailure {
  std::size_t relation;  // 0-based
  VectorField residual;  // relation residual at the solution of the earlier relations
  // Infeasible for every degree >= A.degree() with the same frequencies.
  bool degree_independent;
};

using RelationResult = std::variant<SolutionFamily, RelationFailure>;

RelationResult extend_by_relations(const std::vector<VectorField>& known, const std::vector<Relation>& rels,
                                   const AnsatzSpace& a);

// S's Chevalley generators for one of its simple roots, placed at a target root.
struct RootEmbedding {
  RootCoeffs root;
  VectorField e;
  VectorField f;
};

enum class StagedOutcome { Feasible, Infeasible, Inconclusive };

struct StageSummary {
  RootCoeffs root;
  std::size_t relations;
  std::size_t family_dim;  // free parameters; unique solutions are adjoined
};

struct InfeasibilityReport {
  std::size_t stage;           // 1-based; the last stage is the bracket closure stage
  RootCoeffs unknown_root;
  std::size_t relation_index;  // 1-based within the stage
  std::string relation;        // human-readable relation
  VectorField residual_field;
  unsigned degree;
  std::vector<Vec> lambda_set;
  bool degree_independent;
  std::string reason;
};

struct StagedResult {
  StagedOutcome outcome;
  std::vector<StageSummary> stages;
  std::optional<LiePresentation> presentation;  // Feasible: basis ordered like the target
  std::optional<InfeasibilityReport> report;    // Infeasible or Inconclusive
};

// Solves the missing root vectors of `target` one at a time (most linear
// relations first), adjoining unique solutions, then imposes the remaining
// brackets among solution families by linear propagation. Throws
// DomainError for an inconsistent embedding.
StagedResult staged_extension_protocol(const ChevalleyAlgebra& target, const std::vector<RootEmbedding>& embedding,
                                       const AnsatzSpace& a);

// e_i, f_i of a Chevalley-normalized basis placed at the simple roots.
std::vector<RootEmbedding> simple_root_embedding(const LiePresentation& s, const ChevalleyNormalization& n);

std::string root_str(const RootCoeffs& r);

}  // namespace vfl

#endif
