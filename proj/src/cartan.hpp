#ifndef VFL_CARTAN_HPP
#define VFL_CARTAN_HPP

#include <cstdint>
#include <vector>

#include "chevalley.hpp"
#include "lie.hpp"
#include "types.hpp"

namespace vfl {

struct CartanOptions {
  std::uint64_t seed = 0;
  unsigned trial_budget = 32;
};

struct CartanData {
  Subspace csa;
  Vec regular_element;  // ker(ad x)^d = csa
};

// Grows a torus of commuting ad-diagonalizable elements with spectra in
// Q(i), drawing candidates from its centralizer (basis vectors first, then
// seeded random combinations), and returns the centralizer once it is
// nilpotent and self-normalizing. Falls back to generalized null spaces of
// random elements. Throws CartanNotFound when the budget runs out.
CartanData find_cartan(const LieAlgebra& L, const CartanOptions& opts = {});

// Checks a supplied subspace; throws DomainError if it is not a CSA.
CartanData cartan_from_subspace(const LieAlgebra& L, const Subspace& csa);

struct RootSpace {
  Vec root;  // values on csa.basis()
  Subspace space;
};

struct RootData {
  CartanData cartan;
  std::vector<RootSpace> roots;  // sorted by root
  Subspace zero_space;
};

// Simultaneous eigenspaces of ad(h) over h in csa.basis(). Requires L
// semisimple (DomainError); throws IrrationalSpectrum when a spectrum
// leaves Q(i).
RootData root_decomposition(const LieAlgebra& L, const CartanData& c);

// A root is positive when its first nonzero coordinate is, comparing the
// real part and then the imaginary part.
bool is_positive_root(const Vec& root);

struct SimpleSystem {
  std::vector<std::size_t> positive;  // indices into RootData::roots
  std::vector<std::size_t> simple;
  Matrix cartan;                      // rows/cols follow `simple`
  Classification classification;      // order indexes into `simple`
};

SimpleSystem simple_system(const LieAlgebra& L, const RootData& r);
TypeLabel identify_type(const LieAlgebra& L, const RootData& r);

struct ChevalleyNormalization {
  ChevalleyAlgebra target;
  std::vector<Vec> basis;  // rows in L coordinates, ordered like target
};

// Chevalley basis of L matching chevalley_constants(identify_type(L)):
// e_i, f_i scaled so [[e_i, f_i], e_i] = 2 e_i, other root vectors from
// extraspecial pairs.
ChevalleyNormalization chevalley_normalize(const LieAlgebra& L, const RootData& r);

}  // namespace vfl

#endif
