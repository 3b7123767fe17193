#ifndef VFL_LIE_HPP
#define VFL_LIE_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "linalg.hpp"

namespace vfl {

// Abstract Lie algebra on basis e_1..e_d: [e_i, e_j] = sum_k c(i,j,k) e_k.
class LieAlgebra {
public:
  LieAlgebra() = default;
  explicit LieAlgebra(std::size_t dim) : d_(dim), c_(dim * dim * dim) {}

  std::size_t dim() const { return d_; }
  Scalar& c(std::size_t i, std::size_t j, std::size_t k) { return c_[(i * d_ + j) * d_ + k]; }
  const Scalar& c(std::size_t i, std::size_t j, std::size_t k) const { return c_[(i * d_ + j) * d_ + k]; }

  Vec basis_vector(std::size_t i) const;
  Vec bracket(std::span<const Scalar> a, std::span<const Scalar> b) const;
  // Column j is [x, e_j].
  Matrix ad(std::span<const Scalar> x) const;

  bool is_antisymmetric() const;
  bool satisfies_jacobi() const;
  // Throws InternalError on failure of either law.
  void check_axioms() const;

  friend bool operator==(const LieAlgebra&, const LieAlgebra&) = default;

private:
  std::size_t d_ = 0;
  std::vector<Scalar> c_;
};

// Linear subspace of coordinate space; basis rows kept in reduced echelon
// form so equal subspaces have identical bases.
class Subspace {
public:
  explicit Subspace(std::size_t ambient = 0) : ambient_(ambient) {}
  static Subspace span(const std::vector<Vec>& gens, std::size_t ambient);
  static Subspace whole(std::size_t ambient);

  std::size_t ambient() const { return ambient_; }
  std::size_t dim() const { return rows_.size(); }
  const std::vector<Vec>& basis() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  bool contains(std::span<const Scalar> v) const;
  bool contains(const Subspace& o) const;
  // Coordinates of v (assumed inside) relative to basis().
  Vec coordinates(std::span<const Scalar> v) const;

  friend bool operator==(const Subspace&, const Subspace&) = default;

private:
  std::size_t ambient_;
  std::vector<Vec> rows_;
  std::vector<std::size_t> pivots_;
};

Subspace subspace_sum(const Subspace& a, const Subspace& b);
Subspace subspace_intersection(const Subspace& a, const Subspace& b);

Subspace bracket_space(const LieAlgebra& L, const Subspace& a, const Subspace& b);
bool is_subalgebra(const LieAlgebra& L, const Subspace& s);
bool is_ideal(const LieAlgebra& L, const Subspace& s);
// Structure constants of a subalgebra relative to s.basis(); throws
// DomainError if s is not closed.
LieAlgebra restrict_to(const LieAlgebra& L, const Subspace& s);
// Structure constants relative to new basis rows (L coordinates); throws
// DomainError when the rows are not a basis.
LieAlgebra change_basis(const LieAlgebra& L, const std::vector<Vec>& rows);
// Smallest subalgebra containing gens.
Subspace generated_subalgebra(const LieAlgebra& L, const std::vector<Vec>& gens);
Subspace centralizer(const LieAlgebra& L, const Subspace& s);
Subspace normalizer(const LieAlgebra& L, const Subspace& s);

Matrix killing_form(const LieAlgebra& L);

// Chains start with L and stop at the first repeated term.
std::vector<Subspace> derived_series(const LieAlgebra& L);
std::vector<Subspace> lower_central_series(const LieAlgebra& L);
Subspace center(const LieAlgebra& L);

bool is_abelian(const LieAlgebra& L);
bool is_solvable(const LieAlgebra& L);
bool is_nilpotent(const LieAlgebra& L);
bool is_semisimple(const LieAlgebra& L);

// {x : K(x, [L,L]) = 0}.
Subspace radical(const LieAlgebra& L);

struct LeviReport {
  struct Item {
    std::string check;
    bool pass;
    std::string detail;
  };
  std::vector<Item> items;
  bool pass() const;
};

LeviReport check_levi(const LieAlgebra& L, const Subspace& s, const Subspace& r);

}  // namespace vfl

#endif
