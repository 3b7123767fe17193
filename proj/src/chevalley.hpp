#ifndef VFL_CHEVALLEY_HPP
#define VFL_CHEVALLEY_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "lie.hpp"
#include "types.hpp"

namespace vfl {

// Chevalley basis h_1..h_r, e_alpha (positive roots in positive_roots()
// order), e_-alpha (same order):
//   [h_i, e_a] = <a, alpha_i^vee> e_a,  [e_a, e_-a] = h_a,
//   [e_a, e_b] = N_{a,b} e_{a+b}.
// Signs: N_{g,d} = p + 1 > 0 on extraspecial pairs (g, d), where g is the
// first root in the positive order with g < d, g + d = a + b; p is the
// largest k with d - k g a root. All other N follow from Jacobi.
class ChevalleyAlgebra {
public:
  explicit ChevalleyAlgebra(const TypeLabel& t);

  const TypeLabel& type() const { return type_; }
  std::size_t rank() const { return gram_.rows(); }
  std::size_t num_positive() const { return positive_; }
  const Matrix& gram() const { return gram_; }
  const Matrix& cartan() const { return cartan_; }
  // roots()[k] is the root of basis element rank() + k.
  const std::vector<RootCoeffs>& roots() const { return roots_; }
  const LieAlgebra& algebra() const { return algebra_; }

  std::optional<std::size_t> root_index(const RootCoeffs& a) const;
  Scalar inner(const RootCoeffs& a, const RootCoeffs& b) const;
  // Indices into roots(); zero when a + b is not a root.
  Scalar N(std::size_t a, std::size_t b) const;
  // Extraspecial pair of a non-simple positive root (indices into roots()).
  std::pair<std::size_t, std::size_t> extraspecial(std::size_t xi) const;
  // Coefficients of h_a over h_1..h_r.
  Vec coroot(const RootCoeffs& a) const;

private:
  Scalar compute_N(std::size_t a, std::size_t b) const;

  TypeLabel type_;
  Matrix gram_;
  Matrix cartan_;
  std::size_t positive_ = 0;
  std::vector<RootCoeffs> roots_;
  std::map<RootCoeffs, std::size_t> index_;
  std::map<std::size_t, std::pair<std::size_t, std::size_t>> extraspecial_;
  mutable std::map<std::pair<std::size_t, std::size_t>, Scalar> n_cache_;
  LieAlgebra algebra_;
};

// Factors of rank <= 3 only; throws UnsupportedType otherwise.
ChevalleyAlgebra chevalley_constants(const TypeLabel& t);

}  // namespace vfl

#endif
