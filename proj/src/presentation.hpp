#ifndef VFL_PRESENTATION_HPP
#define VFL_PRESENTATION_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "lie.hpp"
#include "vector_field.hpp"

namespace vfl {

// Ordered basis of vector fields together with its structure constants,
// always recomputed from vf_bracket.
struct LiePresentation {
  std::size_t N = 0;
  std::vector<VectorField> basis;
  LieAlgebra algebra;

  std::size_t dim() const { return basis.size(); }
  VectorField field(std::span<const Scalar> coords) const;
  std::vector<VectorField> fields(const Subspace& s) const;
  // Coordinates of a field inside the span; nullopt when outside.
  std::optional<Vec> coordinates(const VectorField& v) const;
};

// Maximal independent sublist, first occurrence wins.
std::vector<VectorField> span_reduce(const std::vector<VectorField>& fields);

struct NotClosed {
  std::size_t i;  // 0-based basis indices with [X_i, X_j] outside the span
  std::size_t j;
  VectorField residual;
};

using ClosureResult = std::variant<LiePresentation, NotClosed>;

// Basis must be independent (DomainError otherwise).
ClosureResult closure_check(const std::vector<VectorField>& basis);

// closure_check that throws DomainError when the span is not closed.
LiePresentation present(const std::vector<VectorField>& basis);

// The same fields in a new basis: row k of `change` gives new X_k in terms
// of the old basis. Throws DomainError if `change` is singular.
LiePresentation rebase(const LiePresentation& p, const std::vector<Vec>& change);

// Subalgebra spanned by the fields of s.
LiePresentation subpresentation(const LiePresentation& p, const Subspace& s);

}  // namespace vfl

#endif
