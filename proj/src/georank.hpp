#ifndef VFL_GEORANK_HPP
#define VFL_GEORANK_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "cartan.hpp"
#include "presentation.hpp"

namespace vfl {

struct Minor {
  std::vector<std::size_t> rows;  // 0-based field indices
  std::vector<std::size_t> cols;  // 0-based coordinate axes
  CoeffFn value;
};

struct GeometricRank {
  std::size_t rank = 0;
  std::optional<Minor> certificate;  // absent for rank 0
};

// Largest r with a nonzero r x r minor of the evaluation matrix (row i =
// components of field i). Minors of each size are tried in lex order of
// (rows, cols), those nonzero at a seeded random integer point first.
GeometricRank geometric_rank(const std::vector<VectorField>& fields, std::uint64_t seed = 0);
inline GeometricRank geometric_rank(const LiePresentation& p, std::uint64_t seed = 0) {
  return geometric_rank(p.basis, seed);
}

struct Witness {
  Point point;
  bool exact;
  EvalResult value;
};

// First point of [-box, box]^N in the order: max-norm shell, then lex on
// coordinates mapped 0, 1, -1, 2, -2, ... where the certificate is nonzero
// (approximate flag for exponential certificates). Retries once with the
// box doubled, then throws NoExactWitness.
Witness witness_point(const CoeffFn& certificate, unsigned box = 5,
                      unsigned digits = kDefaultPrecisionDigits);

// Exact rank of the evaluation matrix at p; polynomial fields only.
std::size_t rank_at(const std::vector<VectorField>& fields, const Point& p);

struct RankEqualityReport {
  std::size_t csa_dim;
  std::size_t csa_geometric_rank;
  std::size_t geometric_rank;
  bool equal() const { return csa_dim == csa_geometric_rank; }
};

// Requires a semisimple presentation (DomainError otherwise).
RankEqualityReport rank_equality_report(const LiePresentation& p, const CartanOptions& opts = {});

}  // namespace vfl

#endif
