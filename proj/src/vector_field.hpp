#ifndef VFL_VECTOR_FIELD_HPP
#define VFL_VECTOR_FIELD_HPP

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "coeff_fn.hpp"
#include "linalg.hpp"

namespace vfl {

// sum_k comps[k] * d/dx_k on C^dim.
class VectorField {
public:
  VectorField() = default;
  explicit VectorField(std::size_t dim) : dim_(dim), comps_(dim, CoeffFn(dim)) {}
  explicit VectorField(std::vector<CoeffFn> comps);

  // comps[axis] = f, all other components zero.
  static VectorField along(std::size_t axis, const CoeffFn& f);
  static VectorField partial(std::size_t dim, std::size_t axis);

  std::size_t dim() const { return dim_; }
  const std::vector<CoeffFn>& comps() const { return comps_; }
  const CoeffFn& operator[](std::size_t k) const { return comps_[k]; }
  bool is_zero() const;
  bool is_polynomial() const;
  unsigned degree() const;

  VectorField& operator+=(const VectorField& o);
  VectorField& operator-=(const VectorField& o);
  VectorField& operator*=(const Scalar& c);
  friend VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
  friend VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
  friend VectorField operator*(VectorField a, const Scalar& c) { return a *= c; }
  friend VectorField operator*(const Scalar& c, VectorField a) { return a *= c; }
  friend bool operator==(const VectorField& a, const VectorField& b) = default;

private:
  std::size_t dim_ = 0;
  std::vector<CoeffFn> comps_;
};

CoeffFn vf_apply(const VectorField& v, const CoeffFn& f);
// [V, W]_k = sum_i (a_i db_k/dx_i - b_i da_k/dx_i)
VectorField vf_bracket(const VectorField& v, const VectorField& w);
std::vector<EvalResult> vf_eval(const VectorField& v, std::span<const Scalar> p,
                                unsigned digits = kDefaultPrecisionDigits);

// Polynomial change of coordinates y = forward(x), x = inverse(y); both
// compositions are checked to be the identity at construction.
class PolyAutomorphism {
public:
  PolyAutomorphism(std::vector<CoeffFn> forward, std::vector<CoeffFn> inverse);
  static PolyAutomorphism identity(std::size_t dim);

  std::size_t dim() const { return forward_.size(); }
  const std::vector<CoeffFn>& forward() const { return forward_; }
  const std::vector<CoeffFn>& inverse() const { return inverse_; }
  PolyAutomorphism inverted() const { return PolyAutomorphism(inverse_, forward_); }

private:
  std::vector<CoeffFn> forward_;
  std::vector<CoeffFn> inverse_;
};

// (phi_* V)(y) = J_phi(psi(y)) V(psi(y)), psi the inverse map.
VectorField vf_pushforward(const PolyAutomorphism& phi, const VectorField& v);

// Coordinates of vector fields over the finite set of (component, term key)
// pairs they use.
struct FieldKey {
  std::size_t comp;
  TermKey key;
};

struct FieldKeyLess {
  bool operator()(const FieldKey& a, const FieldKey& b) const {
    if (a.comp != b.comp) return a.comp < b.comp;
    return TermKeyLess{}(a.key, b.key);
  }
};

class FieldCoordinates {
public:
  FieldCoordinates() = default;
  explicit FieldCoordinates(std::span<const VectorField> fields);
  void include(const VectorField& v);

  std::size_t size() const { return keys_.size(); }
  bool covers(const VectorField& v) const;
  // Throws OutOfClass if v has a key outside the index.
  Vec coords(const VectorField& v) const;
  VectorField field(std::span<const Scalar> c, std::size_t dim) const;

private:
  std::map<FieldKey, std::size_t, FieldKeyLess> index_;
  std::vector<FieldKey> keys_;
};

}  // namespace vfl

#endif
