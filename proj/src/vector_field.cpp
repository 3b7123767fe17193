#include "vector_field.hpp"

#include <algorithm>

#include "errors.hpp"

namespace vfl {

VectorField::VectorField(std::vector<CoeffFn> comps) : dim_(comps.size()), comps_(std::move(comps)) {
  for (const auto& c : comps_)
    if (c.dim() != dim_) throw DimensionMismatch(c.dim(), dim_);
}

VectorField VectorField::along(std::size_t axis, const CoeffFn& f) {
  VectorField v(f.dim());
  if (axis >= f.dim()) throw DomainError("axis out of range");
  v.comps_[axis] = f;
  return v;
}

VectorField VectorField::partial(std::size_t dim, std::size_t axis) {
  return along(axis, CoeffFn::constant(dim, Scalar(1)));
}

bool VectorField::is_zero() const {
  return std::all_of(comps_.begin(), comps_.end(), [](const CoeffFn& c) { return c.is_zero(); });
}

bool VectorField::is_polynomial() const {
  return std::all_of(comps_.begin(), comps_.end(), [](const CoeffFn& c) { return c.is_polynomial(); });
}

unsigned VectorField::degree() const {
  unsigned d = 0;
  for (const auto& c : comps_) d = std::max(d, c.degree());
  return d;
}

VectorField& VectorField::operator+=(const VectorField& o) {
  if (o.dim_ != dim_) throw DimensionMismatch(dim_, o.dim_);
  for (std::size_t k = 0; k < dim_; ++k) comps_[k] += o.comps_[k];
  return *this;
}

VectorField& VectorField::operator-=(const VectorField& o) {
  if (o.dim_ != dim_) throw DimensionMismatch(dim_, o.dim_);
  for (std::size_t k = 0; k < dim_; ++k) comps_[k] -= o.comps_[k];
  return *this;
}

VectorField& VectorField::operator*=(const Scalar& c) {
  for (auto& f : comps_) f *= c;
  return *this;
}

CoeffFn vf_apply(const VectorField& v, const CoeffFn& f) {
  if (v.dim() != f.dim()) throw DimensionMismatch(v.dim(), f.dim());
  CoeffFn out(f.dim());
  for (std::size_t i = 0; i < v.dim(); ++i)
    if (!v[i].is_zero()) out += v[i] * f.diff(i);
  return out;
}

VectorField vf_bracket(const VectorField& v, const VectorField& w) {
  if (v.dim() != w.dim()) throw DimensionMismatch(v.dim(), w.dim());
  std::vector<CoeffFn> comps;
  comps.reserve(v.dim());
  for (std::size_t k = 0; k < v.dim(); ++k) comps.push_back(vf_apply(v, w[k]) - vf_apply(w, v[k]));
  return VectorField(std::move(comps));
}

std::vector<EvalResult> vf_eval(const VectorField& v, std::span<const Scalar> p, unsigned digits) {
  std::vector<EvalResult> out;
  out.reserve(v.dim());
  for (const auto& c : v.comps()) out.push_back(c.eval(p, digits));
  return out;
}

// ---------------------------------------------------------------------------

PolyAutomorphism::PolyAutomorphism(std::vector<CoeffFn> forward, std::vector<CoeffFn> inverse)
    : forward_(std::move(forward)), inverse_(std::move(inverse)) {
  const std::size_t n = forward_.size();
  if (inverse_.size() != n) throw DimensionMismatch(inverse_.size(), n);
  for (const auto* side : {&forward_, &inverse_})
    for (const auto& f : *side) {
      if (f.dim() != n) throw DimensionMismatch(f.dim(), n);
      if (!f.is_polynomial()) throw OutOfClass("automorphism components must be polynomial");
    }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(forward_[i].compose(inverse_) == CoeffFn::variable(n, i)))
      throw DomainError("forward o inverse is not the identity");
    if (!(inverse_[i].compose(forward_) == CoeffFn::variable(n, i)))
      throw DomainError("inverse o forward is not the identity");
  }
}

PolyAutomorphism PolyAutomorphism::identity(std::size_t dim) {
  std::vector<CoeffFn> id;
  for (std::size_t i = 0; i < dim; ++i) id.push_back(CoeffFn::variable(dim, i));
  return PolyAutomorphism(id, id);
}

VectorField vf_pushforward(const PolyAutomorphism& phi, const VectorField& v) {
  const std::size_t n = phi.dim();
  if (v.dim() != n) throw DimensionMismatch(v.dim(), n);
  std::vector<CoeffFn> pulled;
  pulled.reserve(n);
  for (const auto& c : v.comps()) pulled.push_back(c.compose(phi.inverse()));
  std::vector<CoeffFn> comps(n, CoeffFn(n));
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) {
      if (pulled[i].is_zero()) continue;
      CoeffFn jac = phi.forward()[k].diff(i);
      if (jac.is_zero()) continue;
      comps[k] += jac.compose(phi.inverse()) * pulled[i];
    }
  return VectorField(std::move(comps));
}

// ---------------------------------------------------------------------------

FieldCoordinates::FieldCoordinates(std::span<const VectorField> fields) {
  for (const auto& f : fields) include(f);
}

void FieldCoordinates::include(const VectorField& v) {
  for (std::size_t k = 0; k < v.dim(); ++k)
    for (const auto& [key, c] : v[k].terms()) {
      FieldKey fk{k, key};
      if (index_.try_emplace(fk, keys_.size()).second) keys_.push_back(fk);
    }
}

bool FieldCoordinates::covers(const VectorField& v) const {
  for (std::size_t k = 0; k < v.dim(); ++k)
    for (const auto& [key, c] : v[k].terms())
      if (!index_.contains(FieldKey{k, key})) return false;
  return true;
}

Vec FieldCoordinates::coords(const VectorField& v) const {
  Vec out(keys_.size());
  for (std::size_t k = 0; k < v.dim(); ++k)
    for (const auto& [key, c] : v[k].terms()) {
      auto it = index_.find(FieldKey{k, key});
      if (it == index_.end()) throw OutOfClass("field term outside the coordinate index");
      out[it->second] = c;
    }
  return out;
}

VectorField FieldCoordinates::field(std::span<const Scalar> c, std::size_t dim) const {
  if (c.size() != keys_.size()) throw DimensionMismatch(c.size(), keys_.size());
  std::vector<CoeffFn> comps(dim, CoeffFn(dim));
  for (std::size_t j = 0; j < keys_.size(); ++j)
    if (!c[j].is_zero()) comps[keys_[j].comp].add_term(keys_[j].key, c[j]);
  return VectorField(std::move(comps));
}

}  // namespace vfl
