#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "errors.hpp"
#include "georank.hpp"
#include "support.hpp"

using namespace vfl;
using vfl::testing::F;
using vfl::testing::Fn;
using vfl::testing::projective_block;

namespace {

std::vector<VectorField> Fs(std::initializer_list<const char*> texts, std::size_t dim) {
  std::vector<VectorField> out;
  for (const char* t : texts) out.push_back(F(t, dim));
  return out;
}

std::vector<VectorField> rank1_family(std::size_t n) {
  std::vector<VectorField> out;
  for (std::size_t k = 0; k <= n; ++k) out.push_back(VectorField::along(0, CoeffFn::monomial(2, {0, unsigned(k)})));
  return out;
}

// max of the exact evaluation rank over random integer points
std::size_t sampled_rank(const std::vector<VectorField>& fs, std::mt19937_64& rng, int samples = 12) {
  std::size_t best = 0;
  for (int s = 0; s < samples; ++s) {
    Point p(fs[0].dim());
    for (auto& c : p) c = Scalar(static_cast<long>(rng() % 41) - 20);
    best = std::max(best, rank_at(fs, p));
  }
  return best;
}

Point pt(std::initializer_list<long> xs) {
  Point p;
  for (long x : xs) p.push_back(Scalar(x));
  return p;
}

}  // namespace

TEST_CASE("geometric_rank examples") {
  for (std::size_t n = 1; n <= 6; ++n) {
    GeometricRank g = geometric_rank(rank1_family(n));
    CHECK(g.rank == 1);
    REQUIRE(g.certificate);
    CHECK(g.certificate->value == Fn("1", 2));
  }
  CHECK(geometric_rank(Fs({"Dx", "Dy"}, 2)).rank == 2);
  CHECK(geometric_rank(projective_block(2, 0, 2)).rank == 2);
  CHECK(geometric_rank(std::vector<VectorField>{}).rank == 0);
  CHECK(geometric_rank(Fs({"x*Dx"}, 1)).certificate->value == Fn("x", 1));
  CHECK(geometric_rank(Fs({"x*Dx", "y*Dy"}, 2)).certificate->value == Fn("x*y", 2));
  CHECK(geometric_rank(Fs({"exp(x)*Dx", "Dx", "exp(-x)*Dx"}, 1)).rank == 1);
  CHECK(geometric_rank(Fs({"Dx + Dy", "x*Dx + x*Dy"}, 2)).rank == 1);
}

TEST_CASE("witness_point examples") {
  Witness w = witness_point(Fn("y", 2));
  CHECK(w.point == pt({0, 1}));
  CHECK(w.exact);
  CHECK(witness_point(Fn("1", 3)).point == pt({0, 0, 0}));
  // -1 at the origin; the roots +-1 come later in the order
  CHECK(witness_point(Fn("x^2 - 1", 1)).point == pt({0}));
  CHECK(witness_point(Fn("x^2 - x", 1)).point == pt({-1}));
  CHECK(witness_point(Fn("x^3 - x", 1)).point == pt({2}));
  CHECK(witness_point(Fn("x + 1", 1)).point == pt({0}));
  CHECK(witness_point(Fn("x*y - x", 2)).point == pt({1, 0}));

  Witness e = witness_point(Fn("exp(x) - 1", 1));
  CHECK_FALSE(e.exact);
  CHECK(e.point == pt({1}));

  CHECK_THROWS_AS(witness_point(CoeffFn(1)), DomainError);
  // vanishes on all of [-10, 10]
  CoeffFn prod = Fn("1", 1);
  for (long a = -10; a <= 10; ++a) prod = prod * (CoeffFn::variable(1, 0) - CoeffFn::constant(1, Scalar(a)));
  CHECK_THROWS_AS(witness_point(prod), NoExactWitness);
  CoeffFn small = Fn("1", 1);
  for (long a = -5; a <= 5; ++a) small = small * (CoeffFn::variable(1, 0) - CoeffFn::constant(1, Scalar(a)));
  // found only after the box is enlarged
  CHECK(witness_point(small).point == pt({6}));
}

TEST_CASE("rank_equality_report") {
  RankEqualityReport line = rank_equality_report(present(Fs({"Dx", "x*Dx", "x^2*Dx"}, 1)));
  CHECK(line.csa_dim == 1);
  CHECK(line.csa_geometric_rank == 1);
  CHECK(line.equal());

  RankEqualityReport two = rank_equality_report(present(Fs({"Dx", "x*Dx", "x^2*Dx", "Dy", "y*Dy", "y^2*Dy"}, 2)));
  CHECK(two.csa_dim == 2);
  CHECK(two.csa_geometric_rank == 2);

  std::vector<VectorField> a1a2 = projective_block(3, 0, 1);
  auto b = projective_block(3, 1, 2);
  a1a2.insert(a1a2.end(), b.begin(), b.end());
  RankEqualityReport r = rank_equality_report(present(a1a2));
  CHECK(r.csa_dim == 3);
  CHECK(r.csa_geometric_rank == 3);
  CHECK(r.geometric_rank == 3);

  CHECK_THROWS_AS(rank_equality_report(present(Fs({"Dx", "x*Dx"}, 1))), DomainError);
}

TEST_CASE("geometric rank agrees with sampled evaluation rank") {
  std::mt19937_64 rng(5);
  vfl::testing::RandomShape shape{2, 2, false};
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t dim = 1 + rng() % 3, d = 1 + rng() % 4;
    std::vector<VectorField> fs;
    for (std::size_t i = 0; i < d; ++i) fs.push_back(vfl::testing::random_field(rng, dim, shape));
    // force some dependence
    if (d > 1 && rng() % 2) fs.back() = fs[0] * Scalar(3);
    GeometricRank g = geometric_rank(fs, trial);
    CHECK(g.rank <= std::min(d, dim));
    CHECK(g.rank == sampled_rank(fs, rng));
    if (g.rank > 0) {
      Witness w = witness_point(g.certificate->value);
      CHECK(w.exact);
      CHECK(rank_at(fs, w.point) == g.rank);
    }
  }
}

TEST_CASE("geometric rank is independent of the seed and the basis") {
  std::mt19937_64 rng(12);
  std::vector<std::vector<VectorField>> algs{rank1_family(4), projective_block(2, 0, 2), projective_block(3, 0, 3),
                                             Fs({"Dx", "x*Dx", "x^2*Dx", "Dy", "y*Dy", "y^2*Dy"}, 2),
                                             Fs({"Dx", "x*Dy", "Dy"}, 3)};
  for (const auto& fs : algs) {
    const std::size_t r = geometric_rank(fs).rank;
    CHECK(geometric_rank(fs, 99).rank == r);
    for (int trial = 0; trial < 3; ++trial) {
      // unitriangular recombination plus scaling
      std::vector<VectorField> g = fs;
      for (std::size_t i = 0; i < g.size(); ++i) {
        g[i] *= Scalar(static_cast<long>(rng() % 4) + 1);
        for (std::size_t j = i + 1; j < fs.size(); ++j) g[i] += fs[j] * vfl::testing::random_scalar(rng);
      }
      CHECK(geometric_rank(g, trial).rank == r);
    }
  }
}

TEST_CASE("geometric rank is invariant under pushforward") {
  std::mt19937_64 rng(77);
  std::vector<std::vector<VectorField>> algs{rank1_family(3), projective_block(2, 0, 2),
                                             Fs({"Dx", "x*Dx", "x^2*Dx", "Dy", "y*Dy", "y^2*Dy"}, 2),
                                             Fs({"Dx + Dy", "x*Dx + y*Dy", "x^2*Dx + y^2*Dy"}, 2)};
  for (const auto& fs : algs) {
    const std::size_t r = geometric_rank(fs).rank;
    for (int trial = 0; trial < 3; ++trial) {
      PolyAutomorphism phi = vfl::testing::random_triangular(rng, fs[0].dim());
      std::vector<VectorField> pushed;
      for (const auto& v : fs) pushed.push_back(vf_pushforward(phi, v));
      CHECK(geometric_rank(pushed).rank == r);
    }
  }
}
