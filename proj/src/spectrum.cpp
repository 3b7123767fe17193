#include "spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "errors.hpp"

namespace vfl {

namespace {

void trim(UPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

UPoly mul(const UPoly& a, const UPoly& b) {
  if (a.empty() || b.empty()) return {};
  UPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

UPoly sub(UPoly a, const UPoly& b) {
  if (a.size() < b.size()) a.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

// (quotient, remainder)
std::pair<UPoly, UPoly> divmod(UPoly a, const UPoly& b) {
  if (b.empty()) throw DomainError("polynomial division by zero");
  trim(a);
  if (a.size() < b.size()) return {{}, a};
  UPoly q(a.size() - b.size() + 1);
  Scalar lead_inv = b.back().inverse();
  for (std::size_t shift = q.size(); shift-- > 0;) {
    Scalar c = a[shift + b.size() - 1] * lead_inv;
    q[shift] = c;
    if (!c.is_zero())
      for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] -= c * b[j];
  }
  a.resize(b.size() - 1);
  trim(a);
  trim(q);
  return {q, a};
}

using CLD = std::complex<long double>;

CLD eval_numeric(const std::vector<CLD>& p, CLD x) {
  CLD r = 0;
  for (std::size_t k = p.size(); k-- > 0;) r = r * x + p[k];
  return r;
}

// Aberth iteration for a squarefree polynomial of degree >= 1.
std::vector<CLD> numeric_roots(const UPoly& p) {
  const std::size_t n = p.size() - 1;
  std::vector<CLD> c(p.size());
  for (std::size_t k = 0; k < p.size(); ++k)
    c[k] = CLD(p[k].re().get_d(), p[k].im().get_d());
  for (auto& v : c) v /= c.back();
  std::vector<CLD> dc(n);
  for (std::size_t k = 1; k <= n; ++k) dc[k - 1] = c[k] * static_cast<long double>(k);
  long double bound = 0;
  for (std::size_t k = 0; k < n; ++k) bound = std::max(bound, std::abs(c[k]));
  bound += 1;
  std::vector<CLD> z(n);
  for (std::size_t k = 0; k < n; ++k) {
    long double ang = 2.0L * 3.14159265358979323846L * k / n + 0.4L;
    z[k] = std::polar(bound * 0.9L, ang);
  }
  for (int iter = 0; iter < 2000; ++iter) {
    long double change = 0;
    for (std::size_t k = 0; k < n; ++k) {
      CLD f = eval_numeric(c, z[k]);
      CLD df = eval_numeric(dc, z[k]);
      if (f == CLD(0)) continue;
      CLD ratio = f / df;
      CLD s = 0;
      for (std::size_t j = 0; j < n; ++j)
        if (j != k) s += CLD(1) / (z[k] - z[j]);
      CLD w = ratio / (CLD(1) - ratio * s);
      z[k] -= w;
      change = std::max(change, std::abs(w) / std::max<long double>(1, std::abs(z[k])));
    }
    if (change < 1e-16L) break;
  }
  return z;
}

// Continued-fraction convergents of x with denominators up to 10^9.
std::vector<mpq_class> convergents(long double x) {
  std::vector<mpq_class> out;
  mpz_class h0 = 1, h1 = 0, k0 = 0, k1 = 1;
  long double r = x;
  for (int it = 0; it < 40; ++it) {
    long double a = std::floor(r);
    if (std::abs(a) > 1e15L) break;
    mpz_class ai(static_cast<long>(a));
    mpz_class h2 = ai * h0 + h1, k2 = ai * k0 + k1;
    if (k2 > 1000000000) break;
    mpq_class q(h2, k2);
    q.canonicalize();
    out.push_back(q);
    h1 = h0; h0 = h2; k1 = k0; k0 = k2;
    long double frac = r - a;
    if (std::abs(frac) < 1e-15L) break;
    r = 1.0L / frac;
  }
  return out;
}

std::vector<mpq_class> candidates(long double x) {
  std::vector<mpq_class> out;
  const long double tol = 1e-7L * std::max<long double>(1, std::abs(x));
  for (const auto& q : convergents(x)) {
    if (std::abs(q.get_d() - static_cast<double>(x)) <= tol) out.push_back(q);
    if (out.size() >= 4) break;
  }
  if (out.empty() && std::abs(x) < 1e-6L) out.push_back(0);
  return out;
}

}  // namespace

UPoly charpoly(const Matrix& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch(m.rows(), m.cols());
  const std::size_t n = m.rows();
  Matrix h = m;
  // Similarity reduction to upper Hessenberg form.
  for (std::size_t j = 0; j + 2 < n; ++j) {
    std::size_t i = j + 1;
    while (i < n && h(i, j).is_zero()) ++i;
    if (i == n) continue;
    if (i != j + 1) {
      for (std::size_t c = 0; c < n; ++c) std::swap(h(i, c), h(j + 1, c));
      for (std::size_t r = 0; r < n; ++r) std::swap(h(r, i), h(r, j + 1));
    }
    Scalar inv = h(j + 1, j).inverse();
    for (std::size_t k = j + 2; k < n; ++k) {
      if (h(k, j).is_zero()) continue;
      Scalar u = h(k, j) * inv;
      for (std::size_t c = 0; c < n; ++c) h(k, c) -= u * h(j + 1, c);
      for (std::size_t r = 0; r < n; ++r) h(r, j + 1) += u * h(r, k);
    }
  }
  std::vector<UPoly> p(n + 1);
  p[0] = {Scalar(1)};
  for (std::size_t mm = 1; mm <= n; ++mm) {
    UPoly next = mul({-h(mm - 1, mm - 1), Scalar(1)}, p[mm - 1]);
    Scalar t(1);
    for (std::size_t i = mm - 1; i-- > 0;) {
      t *= h(i + 1, i);
      if (t.is_zero()) break;
      Scalar coef = h(i, mm - 1) * t;
      if (coef.is_zero()) continue;
      UPoly scaled = p[i];
      for (auto& s : scaled) s *= coef;
      next = sub(next, scaled);
    }
    p[mm] = std::move(next);
  }
  return p[n];
}

UPoly poly_derivative(const UPoly& p) {
  UPoly d;
  for (std::size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * Scalar(static_cast<long>(k)));
  trim(d);
  return d;
}

UPoly poly_gcd(UPoly a, UPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    Scalar inv = a.back().inverse();
    for (auto& s : a) s *= inv;
  }
  return a;
}

UPoly poly_exact_div(const UPoly& a, const UPoly& b) {
  auto [q, r] = divmod(a, b);
  VFL_ASSERT(r.empty(), "inexact polynomial division");
  return q;
}

Scalar poly_eval(const UPoly& p, const Scalar& x) {
  Scalar r;
  for (std::size_t k = p.size(); k-- > 0;) r = r * x + p[k];
  return r;
}

std::optional<std::vector<Eigenvalue>> split_roots(const UPoly& p_in) {
  UPoly p = p_in;
  trim(p);
  if (p.empty()) throw DomainError("roots of the zero polynomial");
  std::vector<Eigenvalue> roots;
  if (p.size() == 1) return roots;
  UPoly sqfree = poly_exact_div(p, poly_gcd(p, poly_derivative(p)));
  UPoly rest = sqfree;
  // Exact zero roots first; they are common and cheap.
  while (rest.size() > 1 && rest[0].is_zero()) {
    roots.push_back({Scalar(), 0});
    rest.erase(rest.begin());
  }
  if (rest.size() > 1) {
    for (const CLD& z : numeric_roots(rest)) {
      bool found = false;
      for (const auto& re : candidates(z.real())) {
        for (const auto& im : candidates(z.imag())) {
          Scalar cand(re, im);
          if (rest.size() > 1 && poly_eval(rest, cand).is_zero()) {
            rest = poly_exact_div(rest, {-cand, Scalar(1)});
            roots.push_back({cand, 0});
            found = true;
            break;
          }
        }
        if (found) break;
      }
    }
  }
  if (rest.size() > 1) return std::nullopt;
  for (auto& r : roots) {
    UPoly q = p;
    while (q.size() > 1 && poly_eval(q, r.value).is_zero()) {
      q = poly_exact_div(q, {-r.value, Scalar(1)});
      ++r.multiplicity;
    }
  }
  std::sort(roots.begin(), roots.end(), [](const Eigenvalue& a, const Eigenvalue& b) { return a.value < b.value; });
  return roots;
}

std::vector<Eigenvalue> eigenvalues(const Matrix& a) {
  auto r = split_roots(charpoly(a));
  if (!r) throw IrrationalSpectrum("characteristic polynomial does not split over Q(i)");
  return *r;
}

std::vector<Vec> generalized_eigenspace(const Matrix& a, const Scalar& lambda, unsigned multiplicity) {
  Matrix shifted = a;
  for (std::size_t i = 0; i < a.rows(); ++i) shifted(i, i) -= lambda;
  Matrix power = shifted;
  std::size_t rank = mat_rank(power);
  for (unsigned k = 1; k < multiplicity; ++k) {
    Matrix next = power * shifted;
    std::size_t r = mat_rank(next);
    power = std::move(next);
    if (r == rank) break;
    rank = r;
  }
  return mat_kernel(power);
}

std::vector<Vec> eigenspace(const Matrix& a, const Scalar& lambda) {
  Matrix shifted = a;
  for (std::size_t i = 0; i < a.rows(); ++i) shifted(i, i) -= lambda;
  return mat_kernel(shifted);
}

}  // namespace vfl
