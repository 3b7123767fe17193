#include "presentation.hpp"

#include "errors.hpp"

namespace vfl {

VectorField LiePresentation::field(std::span<const Scalar> coords) const {
  if (coords.size() != basis.size()) throw DimensionMismatch(coords.size(), basis.size());
  VectorField out(N);
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (!coords[i].is_zero()) out += basis[i] * coords[i];
  return out;
}

std::vector<VectorField> LiePresentation::fields(const Subspace& s) const {
  std::vector<VectorField> out;
  for (const auto& v : s.basis()) out.push_back(field(v));
  return out;
}

std::optional<Vec> LiePresentation::coordinates(const VectorField& v) const {
  if (v.dim() != N) throw DimensionMismatch(v.dim(), N);
  FieldCoordinates fc(basis);
  if (!fc.covers(v)) return std::nullopt;
  LinearSpan span(fc.size());
  for (const auto& b : basis) span.add(fc.coords(b));
  return span.coordinates(fc.coords(v));
}

std::vector<VectorField> span_reduce(const std::vector<VectorField>& fields) {
  FieldCoordinates fc(fields);
  LinearSpan span(fc.size());
  std::vector<VectorField> out;
  for (const auto& f : fields)
    if (span.add(fc.coords(f))) out.push_back(f);
  return out;
}

ClosureResult closure_check(const std::vector<VectorField>& basis) {
  const std::size_t d = basis.size();
  const std::size_t n = d ? basis[0].dim() : 0;
  for (const auto& b : basis)
    if (b.dim() != n) throw DimensionMismatch(b.dim(), n);

  std::vector<std::vector<VectorField>> br(d, std::vector<VectorField>(d));
  FieldCoordinates fc(basis);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      br[i][j] = vf_bracket(basis[i], basis[j]);
      fc.include(br[i][j]);
    }

  LinearSpan span(fc.size());
  for (const auto& b : basis)
    if (!span.add(fc.coords(b))) throw DomainError("basis fields are linearly dependent");

  LiePresentation p{n, basis, LieAlgebra(d)};
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      const Vec v = fc.coords(br[i][j]);
      auto c = span.coordinates(v);
      if (!c) return NotClosed{i, j, fc.field(span.residual(v), n)};
      for (std::size_t k = 0; k < d; ++k) {
        p.algebra.c(i, j, k) = (*c)[k];
        p.algebra.c(j, i, k) = -(*c)[k];
      }
    }
  p.algebra.check_axioms();
  return p;
}

LiePresentation present(const std::vector<VectorField>& basis) {
  auto r = closure_check(basis);
  if (std::holds_alternative<NotClosed>(r))
    throw DomainError("span is not closed under the bracket");
  return std::get<LiePresentation>(std::move(r));
}

LiePresentation rebase(const LiePresentation& p, const std::vector<Vec>& change) {
  if (change.size() != p.dim()) throw DimensionMismatch(change.size(), p.dim());
  std::vector<VectorField> fields;
  for (const auto& row : change) fields.push_back(p.field(row));
  return present(fields);
}

LiePresentation subpresentation(const LiePresentation& p, const Subspace& s) {
  LiePresentation out{p.N, p.fields(s), restrict_to(p.algebra, s)};
  return out;
}

}  // namespace vfl
