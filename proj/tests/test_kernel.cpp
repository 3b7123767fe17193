#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "coeff_fn.hpp"
#include "errors.hpp"
#include "linalg.hpp"
#include "spectrum.hpp"
#include "support.hpp"

using namespace vfl;
using vfl::testing::random_fn;

namespace {

CoeffFn x1() { return CoeffFn::variable(1, 0); }
CoeffFn one1() { return CoeffFn::constant(1, Scalar(1)); }
CoeffFn e1(long lam) { return CoeffFn::exponential(1, {Scalar(lam)}); }

}  // namespace

TEST_CASE("scalar arithmetic is exact and canonical") {
  Scalar a = Scalar::rational(2, 4);
  CHECK(a.str() == "1/2");
  Scalar b(mpq_class(1, 3), mpq_class(-2, 6));
  CHECK(b.str() == "1/3-1/3*i");
  CHECK((a * a.inverse()).is_one());
  CHECK((b / b).is_one());
  CHECK((Scalar::imag_unit() * Scalar::imag_unit()) == Scalar(-1));
  CHECK(Scalar::parse("1/3-1/3*i") == b);
  CHECK(Scalar::parse("-i") == -Scalar::imag_unit());
  CHECK(Scalar::parse("7") == Scalar(7));
  CHECK_THROWS_AS(Scalar().inverse(), DomainError);
}

TEST_CASE("cf_add") {
  CHECK(cf_add(x1(), -x1()).is_zero());
  CoeffFn sq = x1() * x1();
  CHECK(cf_add(sq, sq) == sq * Scalar(2));
  CoeffFn f = cf_add(x1() * e1(2), x1());
  REQUIRE(f.size() == 2);
  CHECK(f.coefficient(TermKey{{1}, {Scalar(2)}}) == Scalar(1));
  CHECK(f.coefficient(TermKey{{1}, {Scalar(0)}}) == Scalar(1));
  CHECK_THROWS_AS(cf_add(x1(), CoeffFn::variable(2, 0)), DimensionMismatch);
}

TEST_CASE("cf_mul") {
  CoeffFn xe = cf_mul(x1(), e1(1));
  REQUIRE(xe.size() == 1);
  CHECK(xe.coefficient(TermKey{{1}, {Scalar(1)}}) == Scalar(1));
  CHECK(cf_mul(x1() + one1(), x1() - one1()) == x1() * x1() - one1());
  CHECK(cf_mul(e1(1), e1(-1)) == one1());
}

TEST_CASE("cf_diff") {
  CHECK(cf_diff(x1() * x1(), 0) == x1() * Scalar(2));
  CHECK(cf_diff(e1(2), 0) == e1(2) * Scalar(2));
  // d/dx (x e^{-x}) = e^{-x} - x e^{-x}
  CHECK(cf_diff(x1() * e1(-1), 0) == e1(-1) - x1() * e1(-1));
}

TEST_CASE("cf_eval") {
  CoeffFn f = x1() * x1() - one1();
  auto r = cf_eval(f, Point{Scalar(3)});
  REQUIRE(is_exact(r));
  CHECK(std::get<Scalar>(r) == Scalar(8));

  CoeffFn y3 = CoeffFn::monomial(2, {0, 3});
  CHECK(std::get<Scalar>(cf_eval(y3, Point{Scalar(0), Scalar(2)})) == Scalar(8));

  auto e = cf_eval(e1(1), Point{Scalar(1)});
  REQUIRE_FALSE(is_exact(e));
  const auto& approx = std::get<ApproxValue>(e);
  CHECK(approx.digits == kDefaultPrecisionDigits);
  CHECK(approx.re.rfind("2.71828182845904523536028747135266249775724709369995", 0) == 0);
  CHECK(approx.nonzero);

  auto e20 = cf_eval(e1(1), Point{Scalar(1)}, 20);
  CHECK(std::get<ApproxValue>(e20).re.size() < approx.re.size());
}

TEST_CASE("cf_is_zero") {
  CHECK(cf_is_zero(x1() - x1()));
  CHECK_FALSE(cf_is_zero(e1(1) - one1()));
  CoeffFn p = (x1() + one1()).pow(2) - x1() * x1() - x1() * Scalar(2) - one1();
  CHECK(cf_is_zero(p));
}

TEST_CASE("matrix operations") {
  CHECK(mat_rank(Matrix::identity(2)) == 2);

  Matrix row(1, 2);
  row(0, 0) = Scalar(1);
  row(0, 1) = Scalar(1);
  auto k = mat_kernel(row);
  REQUIRE(k.size() == 1);
  CHECK(k[0] == Vec{Scalar(-1), Scalar(1)});

  Matrix swap(2, 2);
  swap(0, 1) = Scalar(1);
  swap(1, 0) = Scalar(1);
  CHECK(mat_det(swap) == Scalar(-1));

  Vec b{Scalar(2), Scalar(3)};
  auto sol = mat_solve(swap, b);
  REQUIRE(sol);
  CHECK(sol->particular == Vec{Scalar(3), Scalar(2)});
  CHECK(sol->kernel.empty());

  Matrix zero(2, 2);
  CHECK_FALSE(mat_solve(zero, b).has_value());
}

TEST_CASE("mat_solve solutions reproduce the right-hand side") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    std::uniform_int_distribution<std::size_t> dims(1, 5);
    const std::size_t r = dims(rng), c = dims(rng);
    Matrix a(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j)
        if (rng() % 3) a(i, j) = vfl::testing::random_scalar(rng);
    Vec x(c);
    for (auto& s : x) s = vfl::testing::random_scalar(rng);
    Vec b = a * x;
    auto sol = mat_solve(a, b);
    REQUIRE(sol);
    CHECK(a * sol->particular == b);
    for (const auto& kv : sol->kernel) CHECK(is_zero(a * kv));
    CHECK(sol->kernel.size() + mat_rank(a) == c);
  }
}

TEST_CASE("LinearSpan coordinates") {
  LinearSpan span(3);
  CHECK(span.add(Vec{Scalar(1), Scalar(1), Scalar(0)}));
  CHECK(span.add(Vec{Scalar(0), Scalar(1), Scalar(1)}));
  CHECK_FALSE(span.add(Vec{Scalar(1), Scalar(2), Scalar(1)}));
  auto c = span.coordinates(Vec{Scalar(2), Scalar(5), Scalar(3)});
  REQUIRE(c);
  CHECK(*c == Vec{Scalar(2), Scalar(3)});
  CHECK_FALSE(span.coordinates(Vec{Scalar(1), Scalar(0), Scalar(0)}).has_value());
}

TEST_CASE("eigenvalues over Q(i)") {
  Matrix a(3, 3);
  a(0, 0) = Scalar(2);
  a(1, 1) = Scalar(-1);
  a(2, 2) = Scalar(2);
  a(0, 2) = Scalar(5);
  auto ev = eigenvalues(a);
  REQUIRE(ev.size() == 2);
  CHECK(ev[0].value == Scalar(-1));
  CHECK(ev[0].multiplicity == 1);
  CHECK(ev[1].value == Scalar(2));
  CHECK(ev[1].multiplicity == 2);
  CHECK(eigenspace(a, Scalar(2)).size() == 1);
  CHECK(generalized_eigenspace(a, Scalar(2), 2).size() == 2);

  Matrix rot(2, 2);
  rot(0, 1) = Scalar(-1);
  rot(1, 0) = Scalar(1);
  auto ri = eigenvalues(rot);
  REQUIRE(ri.size() == 2);
  CHECK(ri[0].value == -Scalar::imag_unit());
  CHECK(ri[1].value == Scalar::imag_unit());

  Matrix irr(2, 2);
  irr(0, 1) = Scalar(2);
  irr(1, 0) = Scalar(1);
  CHECK_THROWS_AS(eigenvalues(irr), IrrationalSpectrum);
}

TEST_CASE("charpoly matches the determinant at sample points") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + trial % 5;
    Matrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a(i, j) = vfl::testing::random_scalar(rng);
    UPoly p = charpoly(a);
    for (long t = -2; t <= 2; ++t) {
      Matrix shifted = Matrix::identity(n);
      for (std::size_t i = 0; i < n; ++i) shifted(i, i) = Scalar(t);
      CHECK(poly_eval(p, Scalar(t)) == mat_det(shifted - a));
    }
  }
}

// ---------------------------------------------------------------------------
// properties on random exponential polynomials

TEST_CASE("ring axioms and canonical form") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t dim = 1 + trial % 3;
    CoeffFn f = random_fn(rng, dim), g = random_fn(rng, dim), h = random_fn(rng, dim);
    CHECK(f.canonicalized() == f);
    CHECK((f * g) * h == f * (g * h));
    CHECK(f * (g + h) == f * g + f * h);
    CHECK(f * g == g * f);
    CHECK((f + g) - g == f);
  }
}

TEST_CASE("mixed partials commute") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t dim = 2 + trial % 2;
    CoeffFn f = random_fn(rng, dim);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) CHECK(f.diff(i).diff(j) == f.diff(j).diff(i));
  }
}

TEST_CASE("polynomial derivative equals the difference quotient at t = 0") {
  // (f(p + t e_i) - f(p)) / t is a polynomial in t; its value at t = 0 is
  // the derivative. Build it by substituting x_i -> p_i + t symbolically in
  // one extra variable and dividing out t.
  std::mt19937_64 rng(5);
  vfl::testing::RandomShape shape{3, 4, false};
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t dim = 1 + trial % 3;
    CoeffFn f = random_fn(rng, dim, shape);
    Point p(dim);
    for (auto& s : p) s = vfl::testing::random_scalar(rng, false);
    const std::size_t axis = trial % dim;
    // substitute x_k -> p_k (+ t for k = axis), polynomial in the single variable t
    std::vector<CoeffFn> psi;
    for (std::size_t k = 0; k < dim; ++k) {
      CoeffFn c = CoeffFn::constant(1, p[k]);
      if (k == axis) c += CoeffFn::variable(1, 0);
      psi.push_back(c);
    }
    CoeffFn shifted = f.compose(psi);
    CoeffFn diffq = shifted - CoeffFn::constant(1, std::get<Scalar>(f.eval(p)));
    // divide by t: every term has degree >= 1 now
    Scalar at_zero;
    for (const auto& [k, c] : diffq.terms()) {
      REQUIRE(k.alpha[0] >= 1);
      if (k.alpha[0] == 1) at_zero += c;
    }
    CHECK(std::get<Scalar>(f.diff(axis).eval(p)) == at_zero);
  }
}
