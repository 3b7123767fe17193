#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "errors.hpp"
#include "lie.hpp"
#include "presentation.hpp"
#include "support.hpp"

using namespace vfl;
using vfl::testing::F;

namespace {

std::vector<VectorField> fields(std::initializer_list<const char*> texts, std::size_t dim) {
  std::vector<VectorField> out;
  for (const char* t : texts) out.push_back(F(t, dim));
  return out;
}

LiePresentation P(std::initializer_list<const char*> texts, std::size_t dim) {
  return present(fields(texts, dim));
}

Subspace span_of(const LiePresentation& p, std::initializer_list<const char*> texts) {
  std::vector<Vec> rows;
  for (const char* t : texts) rows.push_back(*p.coordinates(F(t, p.N)));
  return Subspace::span(rows, p.dim());
}

// trace(ad_i ad_j) with ad built column-by-column from field brackets.
Matrix killing_oracle(const LiePresentation& p) {
  const std::size_t d = p.dim();
  std::vector<Matrix> ads;
  for (std::size_t i = 0; i < d; ++i) {
    Matrix a(d, d);
    for (std::size_t j = 0; j < d; ++j) {
      Vec c = *p.coordinates(vf_bracket(p.basis[i], p.basis[j]));
      for (std::size_t k = 0; k < d; ++k) a(k, j) = c[k];
    }
    ads.push_back(a);
  }
  Matrix k(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) k(i, j) = (ads[i] * ads[j]).trace();
  return k;
}

}  // namespace

TEST_CASE("span_reduce") {
  CHECK(span_reduce(fields({"Dx", "2*Dx"}, 1)).size() == 1);
  auto fam = span_reduce(fields({"Dx", "y*Dx", "y^2*Dx"}, 2));
  CHECK(fam.size() == 3);
  auto lin = span_reduce(fields({"x*Dx + y*Dy", "x*Dx", "y*Dy"}, 2));
  REQUIRE(lin.size() == 2);
  CHECK(lin[0] == F("x*Dx + y*Dy", 2));
  CHECK(lin[1] == F("x*Dx", 2));
  CHECK(span_reduce({}).empty());
}

TEST_CASE("closure_check") {
  auto r = closure_check(fields({"Dx", "x*Dx", "x^2*Dx"}, 1));
  REQUIRE(std::holds_alternative<LiePresentation>(r));
  const auto& L = std::get<LiePresentation>(r).algebra;
  CHECK(L.c(0, 1, 0) == Scalar(1));
  CHECK(L.c(0, 2, 1) == Scalar(2));
  CHECK(L.c(1, 2, 2) == Scalar(1));
  CHECK(L.c(1, 0, 0) == Scalar(-1));

  auto nc = closure_check(fields({"Dx", "x^2*Dx"}, 1));
  REQUIRE(std::holds_alternative<NotClosed>(nc));
  CHECK(std::get<NotClosed>(nc).i == 0);
  CHECK(std::get<NotClosed>(nc).j == 1);
  CHECK(std::get<NotClosed>(nc).residual == F("2*x*Dx", 1));

  auto ab = closure_check(fields({"Dx", "y*Dx"}, 2));
  REQUIRE(std::holds_alternative<LiePresentation>(ab));
  CHECK(is_abelian(std::get<LiePresentation>(ab).algebra));

  CHECK_THROWS_AS(closure_check(fields({"Dx", "2*Dx"}, 1)), DomainError);
}

TEST_CASE("killing form") {
  CHECK(killing_form(P({"Dx", "y*Dx", "y^2*Dx"}, 2).algebra).is_zero());

  LiePresentation sl2 = P({"-2*x*Dx", "Dx", "-x^2*Dx"}, 1);
  Matrix k = killing_form(sl2.algebra);
  CHECK(k == killing_oracle(sl2));
  CHECK(k(0, 0) == Scalar(8));
  CHECK(k(1, 2) == Scalar(4));
  CHECK(k(0, 1) == Scalar(0));
  CHECK(k(0, 2) == Scalar(0));

  CHECK(mat_det(killing_form(P({"Dx", "x*Dx"}, 1).algebra)).is_zero());

  LiePresentation sl3 = P({"Dx", "Dy", "x*Dx", "y*Dx", "x*Dy", "y*Dy", "x^2*Dx + x*y*Dy",
                           "x*y*Dx + y^2*Dy"},
                          2);
  CHECK(killing_form(sl3.algebra) == killing_oracle(sl3));
}

TEST_CASE("killing form is ad-invariant") {
  for (const auto& p : {P({"Dx", "x*Dx", "x^2*Dx", "Dy"}, 2),
                        P({"Dx", "Dy", "x*Dx", "y*Dx", "x*Dy", "y*Dy", "x^2*Dx + x*y*Dy",
                           "x*y*Dx + y^2*Dy"},
                          2)}) {
    const auto& L = p.algebra;
    Matrix k = killing_form(L);
    auto K = [&](const Vec& a, const Vec& b) {
      Scalar s;
      Vec kb = k * std::span<const Scalar>(b);
      for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * kb[i];
      return s;
    };
    for (std::size_t z = 0; z < L.dim(); ++z)
      for (std::size_t x = 0; x < L.dim(); ++x)
        for (std::size_t y = 0; y < L.dim(); ++y) {
          Vec ez = L.basis_vector(z), ex = L.basis_vector(x), ey = L.basis_vector(y);
          CHECK((K(L.bracket(ez, ex), ey) + K(ex, L.bracket(ez, ey))).is_zero());
        }
  }
}

TEST_CASE("structural flags") {
  auto affine = P({"Dx", "x*Dx"}, 1).algebra;
  CHECK(is_solvable(affine));
  CHECK_FALSE(is_nilpotent(affine));
  CHECK_FALSE(is_abelian(affine));

  auto sl2 = P({"Dx", "x*Dx", "x^2*Dx"}, 1).algebra;
  CHECK(is_semisimple(sl2));
  CHECK_FALSE(is_solvable(sl2));

  auto fam = P({"Dx", "y*Dx", "y^2*Dx", "y^3*Dx"}, 2).algebra;
  CHECK(is_solvable(fam));
  CHECK(is_abelian(fam));
  CHECK(is_nilpotent(fam));

  auto heis = P({"Dx", "x*Dy", "Dy"}, 3).algebra;
  CHECK(is_nilpotent(heis));
  CHECK_FALSE(is_abelian(heis));
}

TEST_CASE("series and center") {
  auto heis = P({"Dx", "x*Dy", "Dy"}, 3);
  CHECK(center(heis.algebra) == span_of(heis, {"Dy"}));
  auto heis2 = P({"Dx", "x*Dy", "Dy"}, 2);
  CHECK(center(heis2.algebra) == span_of(heis2, {"Dy"}));

  auto fam = P({"Dx", "y*Dx"}, 2);
  CHECK(center(fam.algebra) == Subspace::whole(2));

  auto sl2 = P({"Dx", "x*Dx", "x^2*Dx"}, 1);
  auto ds = derived_series(sl2.algebra);
  CHECK(ds.size() == 1);
  CHECK(ds[0] == Subspace::whole(3));

  auto affine = P({"Dx", "x*Dx"}, 1);
  auto da = derived_series(affine.algebra);
  REQUIRE(da.size() == 3);
  CHECK(da[1] == span_of(affine, {"Dx"}));
  CHECK(da[2].dim() == 0);
  auto lcs = lower_central_series(affine.algebra);
  CHECK(lcs.back() == span_of(affine, {"Dx"}));
}

TEST_CASE("radical") {
  auto sl2 = P({"Dx", "x*Dx", "x^2*Dx"}, 1);
  CHECK(radical(sl2.algebra).dim() == 0);

  auto plus = P({"Dx", "x*Dx", "x^2*Dx", "Dy"}, 2);
  CHECK(radical(plus.algebra) == span_of(plus, {"Dy"}));

  auto affine = P({"Dx", "x*Dx"}, 1);
  CHECK(radical(affine.algebra) == Subspace::whole(2));
}

TEST_CASE("check_levi") {
  auto plus = P({"Dx", "x*Dx", "x^2*Dx", "Dy"}, 2);
  Subspace s = span_of(plus, {"Dx", "x*Dx", "x^2*Dx"});
  Subspace r = span_of(plus, {"Dy"});
  CHECK(check_levi(plus.algebra, s, r).pass());

  auto affine = P({"Dx", "x*Dx"}, 1);
  CHECK(check_levi(affine.algebra, Subspace(2), Subspace::whole(2)).pass());

  auto swapped = check_levi(plus.algebra, r, s);
  CHECK_FALSE(swapped.pass());
  bool found = false;
  for (const auto& item : swapped.items) found = found || item.detail == "S not semisimple";
  CHECK(found);
}

TEST_CASE("Cartan criterion agrees with the derived series") {
  // Solvable ambient: <Dx, x*Dx, Dy, x*Dy, x^2*Dy, y*Dy> on C^2; mixed
  // ambient with an sl(2) block for non-solvable controls.
  auto solv = P({"Dx", "x*Dx", "Dy", "x*Dy", "x^2*Dy", "y*Dy"}, 2);
  auto mixed = P({"Dx", "x*Dx", "x^2*Dx", "Dy", "y*Dy"}, 2);
  auto abel = P({"Dx", "y*Dx", "y^2*Dx", "y^3*Dx", "Dy"}, 3);
  std::mt19937_64 rng(17);
  int solvable_seen = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const auto& amb = trial % 3 == 0 ? solv : trial % 3 == 1 ? abel : mixed;
    std::vector<Vec> gens;
    for (int g = 0; g < 2; ++g) {
      Vec v(amb.dim());
      for (auto& s : v)
        if (rng() % 2) s = Scalar(static_cast<long>(rng() % 7) - 3);
      gens.push_back(v);
    }
    Subspace sub = generated_subalgebra(amb.algebra, gens);
    LieAlgebra L = restrict_to(amb.algebra, sub);
    const bool series = derived_series(L).back().dim() == 0;
    const bool cartan = [&] {
      Matrix k = killing_form(L);
      Subspace d = bracket_space(L, Subspace::whole(L.dim()), Subspace::whole(L.dim()));
      for (std::size_t i = 0; i < L.dim(); ++i)
        for (const auto& y : d.basis()) {
          Scalar s;
          for (std::size_t j = 0; j < L.dim(); ++j) s += k(i, j) * y[j];
          if (!s.is_zero()) return false;
        }
      return true;
    }();
    CHECK(series == cartan);
    CHECK(is_solvable(L) == series);
    if (&amb != &mixed) {
      CHECK(series);
      ++solvable_seen;
    }
    if (is_semisimple(L)) CHECK(radical(L).dim() == 0);
    if (series) CHECK(radical(L) == Subspace::whole(L.dim()));
  }
  CHECK(solvable_seen >= 100);
}
