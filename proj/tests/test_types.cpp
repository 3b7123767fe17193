#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>

#include "chevalley.hpp"
#include "errors.hpp"
#include "types.hpp"

using namespace vfl;

namespace {

// Closed-form dimensions of the simple algebras.
unsigned dim_oracle(const SimpleType& t) {
  const unsigned n = t.rank;
  switch (t.family) {
    case 'A': return n * (n + 2);
    case 'B':
    case 'C': return n * (2 * n + 1);
    case 'D': return n * (2 * n - 1);
    case 'E': return n == 6 ? 78 : n == 7 ? 133 : 248;
    case 'F': return 52;
    default: return 14;
  }
}

}  // namespace

TEST_CASE("type labels") {
  CHECK(TypeLabel::parse("A2xA1").str() == "A1xA2");
  CHECK(TypeLabel::parse("G2").rank() == 2);
  CHECK_THROWS_AS(TypeLabel::parse("B1"), UnsupportedType);
  CHECK_THROWS_AS(TypeLabel::parse("C2"), UnsupportedType);
  CHECK_THROWS_AS(TypeLabel::parse("A1x"), UnsupportedType);
  CHECK_THROWS_AS(TypeLabel::parse("Q3"), UnsupportedType);
}

TEST_CASE("rank_dim_table") {
  CHECK(rank_dim_table(TypeLabel::parse("A2")).rank == 2);
  CHECK(rank_dim_table(TypeLabel::parse("A2")).dim == 8);
  CHECK(rank_dim_table(TypeLabel::parse("A1xA1")).dim == 6);
  CHECK(rank_dim_table(TypeLabel::parse("A3")).dim == 15);
  for (const auto& label : enumerate_types_up_to_rank(8))
    if (label.factors.size() == 1) CHECK(rank_dim_table(label).dim == dim_oracle(label.factors[0]));
  CHECK(rank_dim_table(TypeLabel::parse("A1xB3xG2")).dim == 3 + 21 + 14);
}

TEST_CASE("types up to rank 2") {
  std::vector<std::string> names;
  for (const auto& t : enumerate_types_up_to_rank(2)) names.push_back(t.str());
  CHECK(names == std::vector<std::string>{"A1", "A1xA1", "A2", "B2", "G2"});
  CHECK(enumerate_types_up_to_rank(3).size() == 12);
}

TEST_CASE("classification recovers permuted canonical matrices") {
  std::mt19937_64 rng(4);
  for (const auto& label : enumerate_types_up_to_rank(8)) {
    const Matrix a = cartan_matrix_from_gram(gram_matrix(label));
    const std::size_t n = a.rows();
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    Matrix b(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) b(perm[i], perm[j]) = a(i, j);
    Classification c = classify_cartan_matrix(b);
    CHECK(c.label == label);
  }
  Matrix bad(2, 2);
  bad(0, 0) = Scalar(2);
  bad(1, 1) = Scalar(2);
  bad(0, 1) = Scalar(-1);
  CHECK_THROWS_AS(classify_cartan_matrix(bad), UnrecognizedDiagram);
}

TEST_CASE("A1 Chevalley constants") {
  ChevalleyAlgebra a1 = chevalley_constants(TypeLabel::parse("A1"));
  const LieAlgebra& L = a1.algebra();
  REQUIRE(L.dim() == 3);
  CHECK(L.c(0, 1, 1) == Scalar(2));
  CHECK(L.c(0, 2, 2) == Scalar(-2));
  CHECK(L.c(1, 2, 0) == Scalar(1));
}

TEST_CASE("Chevalley constants for supported types") {
  const std::vector<std::pair<std::string, unsigned>> cases{
      {"A1", 3}, {"A2", 8}, {"B2", 10}, {"G2", 14}, {"A3", 15}, {"B3", 21}, {"C3", 21}, {"A1xG2", 17}};
  for (const auto& [name, dim] : cases) {
    CAPTURE(name);
    ChevalleyAlgebra ch = chevalley_constants(TypeLabel::parse(name));
    const LieAlgebra& L = ch.algebra();
    CHECK(L.dim() == dim);
    CHECK(L.is_antisymmetric());
    CHECK(L.satisfies_jacobi());
    const std::size_t r = ch.rank();
    // root-addition support: [e_a, e_b] != 0 exactly when a + b is a root or zero
    for (std::size_t a = 0; a < ch.roots().size(); ++a)
      for (std::size_t b = 0; b < ch.roots().size(); ++b) {
        if (a == b) continue;
        RootCoeffs s = ch.roots()[a];
        bool zero = true;
        for (std::size_t k = 0; k < s.size(); ++k) {
          s[k] += ch.roots()[b][k];
          zero = zero && s[k] == 0;
        }
        Vec br = L.bracket(L.basis_vector(r + a), L.basis_vector(r + b));
        const bool expected = zero || ch.root_index(s).has_value();
        CHECK(!is_zero(br) == expected);
        if (auto k = ch.root_index(s)) {
          // N^2 = (p+1)^2
          long p = 0;
          RootCoeffs down = ch.roots()[b];
          while (true) {
            for (std::size_t q = 0; q < down.size(); ++q) down[q] -= ch.roots()[a][q];
            if (!ch.root_index(down)) break;
            ++p;
          }
          CHECK(br[r + *k] * br[r + *k] == Scalar((p + 1) * (p + 1)));
        }
      }
    // Serre relations: ad(e_i)^(1 - a_ji) e_j = 0
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) {
        if (i == j) continue;
        const long aji = ch.cartan()(j, i).re().get_num().get_si();
        Vec v = L.basis_vector(r + j);
        for (long t = 0; t < 1 - aji; ++t) v = L.bracket(L.basis_vector(r + i), v);
        CHECK(is_zero(v));
      }
  }
  CHECK_THROWS_AS(chevalley_constants(TypeLabel::parse("A4")), UnsupportedType);
}
