// Shared helpers for the unit and acceptance suites: seeded generators for
// random exponential polynomials and vector fields.
#ifndef VFL_TESTS_SUPPORT_HPP
#define VFL_TESTS_SUPPORT_HPP

#include <random>
#include <string>
#include <vector>

#include "coeff_fn.hpp"
#include "dsl.hpp"
#include "lie.hpp"
#include "vector_field.hpp"

namespace vfl::testing {

inline Scalar random_scalar(std::mt19937_64& rng, bool allow_imag = true) {
  std::uniform_int_distribution<long> num(-5, 5), den(1, 3), coin(0, 3);
  Scalar s = Scalar::rational(num(rng), den(rng));
  if (allow_imag && coin(rng) == 0) s += Scalar::rational(num(rng), den(rng)) * Scalar::imag_unit();
  return s;
}

struct RandomShape {
  unsigned max_degree = 2;
  std::size_t max_terms = 3;
  bool exponentials = true;
};

inline CoeffFn random_fn(std::mt19937_64& rng, std::size_t dim, RandomShape shape = {}) {
  std::uniform_int_distribution<unsigned> deg(0, shape.max_degree);
  std::uniform_int_distribution<std::size_t> count(0, shape.max_terms);
  std::uniform_int_distribution<int> freq(-1, 2), coin(0, 2);
  CoeffFn f(dim);
  const std::size_t n = count(rng);
  for (std::size_t t = 0; t < n; ++t) {
    TermKey k{MultiIndex(dim, 0), std::vector<Scalar>(dim)};
    for (std::size_t a = 0; a < dim; ++a) {
      k.alpha[a] = deg(rng);
      if (shape.exponentials && coin(rng) == 0) k.lambda[a] = Scalar(freq(rng));
    }
    f.add_term(k, random_scalar(rng));
  }
  return f;
}

inline VectorField random_field(std::mt19937_64& rng, std::size_t dim, RandomShape shape = {}) {
  std::vector<CoeffFn> comps;
  for (std::size_t k = 0; k < dim; ++k) comps.push_back(random_fn(rng, dim, shape));
  return VectorField(std::move(comps));
}

inline VectorField F(const std::string& text, std::size_t dim) { return parse_field(text, dim); }
inline CoeffFn Fn(const std::string& text, std::size_t dim) { return parse_function(text, dim); }

// Projective sl(k+1) acting on variables [offset, offset + k) of C^dim:
// d_i, x_j d_i, x_i E with E the Euler field of the block.
inline std::vector<VectorField> projective_block(std::size_t dim, std::size_t offset, std::size_t k) {
  std::vector<VectorField> out;
  auto var = [&](std::size_t i) { return CoeffFn::variable(dim, offset + i); };
  for (std::size_t i = 0; i < k; ++i) out.push_back(VectorField::partial(dim, offset + i));
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < k; ++i) out.push_back(VectorField::along(offset + i, var(j)));
  for (std::size_t i = 0; i < k; ++i) {
    VectorField e(dim);
    for (std::size_t m = 0; m < k; ++m) e += VectorField::along(offset + m, var(i) * var(m));
    out.push_back(e);
  }
  return out;
}

// Random triangular automorphism (x1, x2 + p(x1), x3 + q(x1, x2), ...) with
// its explicit inverse.
inline PolyAutomorphism random_triangular(std::mt19937_64& rng, std::size_t dim) {
  RandomShape shape{2, 2, false};
  std::vector<CoeffFn> fwd, inv;
  for (std::size_t k = 0; k < dim; ++k) {
    // shift depends only on earlier variables
    CoeffFn s(dim);
    const CoeffFn r = random_fn(rng, dim, shape);
    for (const auto& [key, c] : r.terms()) {
      bool early = true;
      for (std::size_t a = k; a < dim; ++a) early = early && key.alpha[a] == 0;
      if (early) s.add_term(key, c);
    }
    fwd.push_back(CoeffFn::variable(dim, k) + s);
    // inverse: x_k = y_k - s(x_1..x_{k-1}) with x_j already expressed in y
    std::vector<CoeffFn> psi = inv;
    for (std::size_t a = k; a < dim; ++a) psi.push_back(CoeffFn::variable(dim, a));
    inv.push_back(CoeffFn::variable(dim, k) - s.compose(psi));
  }
  return PolyAutomorphism(fwd, inv);
}


// Linear fields x -> -(ad a) x realizing L on C^dim L.
inline std::vector<VectorField> adjoint_fields(const LieAlgebra& L) {
  const std::size_t n = L.dim();
  std::vector<VectorField> out;
  for (std::size_t a = 0; a < n; ++a) {
    VectorField v(n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i) {
        const Scalar c = L.c(a, j, i);
        if (!c.is_zero()) v += VectorField::along(i, CoeffFn::variable(n, j) * (-c));
      }
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace vfl::testing

#endif
