#ifndef VFL_SPECTRUM_HPP
#define VFL_SPECTRUM_HPP

#include <optional>
#include <utility>
#include <vector>

#include "linalg.hpp"

namespace vfl {

// Univariate polynomial over Q(i), coefficients from the constant term up,
// no trailing zeros.
using UPoly = std::vector<Scalar>;

UPoly charpoly(const Matrix& a);
UPoly poly_derivative(const UPoly& p);
UPoly poly_gcd(UPoly a, UPoly b);
// Quotient; throws InternalError if the division leaves a remainder.
UPoly poly_exact_div(const UPoly& a, const UPoly& b);
Scalar poly_eval(const UPoly& p, const Scalar& x);

struct Eigenvalue {
  Scalar value;
  unsigned multiplicity;
};

// All roots with multiplicity when p splits into linear factors over Q(i);
// nullopt otherwise. Roots are sorted by Scalar order.
std::optional<std::vector<Eigenvalue>> split_roots(const UPoly& p);

// Eigenvalues of a square matrix; throws IrrationalSpectrum when the
// characteristic polynomial does not split over Q(i).
std::vector<Eigenvalue> eigenvalues(const Matrix& a);

// Basis of ker (A - lambda)^k with k the algebraic multiplicity.
std::vector<Vec> generalized_eigenspace(const Matrix& a, const Scalar& lambda, unsigned multiplicity);
std::vector<Vec> eigenspace(const Matrix& a, const Scalar& lambda);

}  // namespace vfl

#endif
