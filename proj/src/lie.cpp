#include "lie.hpp"

#include <algorithm>

#include "errors.hpp"

namespace vfl {

Vec LieAlgebra::basis_vector(std::size_t i) const {
  Vec v(d_);
  v[i] = Scalar(1);
  return v;
}

Vec LieAlgebra::bracket(std::span<const Scalar> a, std::span<const Scalar> b) const {
  if (a.size() != d_) throw DimensionMismatch(a.size(), d_);
  if (b.size() != d_) throw DimensionMismatch(b.size(), d_);
  Vec out(d_);
  for (std::size_t i = 0; i < d_; ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < d_; ++j) {
      if (b[j].is_zero()) continue;
      const Scalar ab = a[i] * b[j];
      for (std::size_t k = 0; k < d_; ++k)
        if (!c(i, j, k).is_zero()) out[k] += ab * c(i, j, k);
    }
  }
  return out;
}

Matrix LieAlgebra::ad(std::span<const Scalar> x) const {
  if (x.size() != d_) throw DimensionMismatch(x.size(), d_);
  Matrix m(d_, d_);
  for (std::size_t i = 0; i < d_; ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < d_; ++j)
      for (std::size_t k = 0; k < d_; ++k)
        if (!c(i, j, k).is_zero()) m(k, j) += x[i] * c(i, j, k);
  }
  return m;
}

bool LieAlgebra::is_antisymmetric() const {
  for (std::size_t i = 0; i < d_; ++i)
    for (std::size_t j = i; j < d_; ++j)
      for (std::size_t k = 0; k < d_; ++k)
        if (c(i, j, k) != -c(j, i, k)) return false;
  return true;
}

bool LieAlgebra::satisfies_jacobi() const {
  // [e_i,[e_j,e_l]] + [e_j,[e_l,e_i]] + [e_l,[e_i,e_j]] for i < j < l
  for (std::size_t i = 0; i < d_; ++i)
    for (std::size_t j = i + 1; j < d_; ++j)
      for (std::size_t l = j + 1; l < d_; ++l)
        for (std::size_t k = 0; k < d_; ++k) {
          Scalar s;
          for (std::size_t m = 0; m < d_; ++m) {
            if (!c(j, l, m).is_zero()) s += c(j, l, m) * c(i, m, k);
            if (!c(l, i, m).is_zero()) s += c(l, i, m) * c(j, m, k);
            if (!c(i, j, m).is_zero()) s += c(i, j, m) * c(l, m, k);
          }
          if (!s.is_zero()) return false;
        }
  return true;
}

void LieAlgebra::check_axioms() const {
  VFL_ASSERT(is_antisymmetric(), "structure constants are not antisymmetric");
  VFL_ASSERT(satisfies_jacobi(), "structure constants violate the Jacobi identity");
}

// ---------------------------------------------------------------------------

Subspace Subspace::span(const std::vector<Vec>& gens, std::size_t ambient) {
  Subspace s(ambient);
  if (gens.empty()) return s;
  Echelon e = rref(Matrix::from_rows(gens, ambient));
  s.rows_ = e.reduced.row_list();
  s.pivots_ = e.pivots;
  return s;
}

Subspace Subspace::whole(std::size_t ambient) {
  std::vector<Vec> rows;
  for (std::size_t i = 0; i < ambient; ++i) {
    Vec v(ambient);
    v[i] = Scalar(1);
    rows.push_back(std::move(v));
  }
  return span(rows, ambient);
}

Vec Subspace::coordinates(std::span<const Scalar> v) const {
  Vec out(rows_.size());
  for (std::size_t a = 0; a < rows_.size(); ++a) out[a] = v[pivots_[a]];
  return out;
}

bool Subspace::contains(std::span<const Scalar> v) const {
  if (v.size() != ambient_) throw DimensionMismatch(v.size(), ambient_);
  Vec r(v.begin(), v.end());
  for (std::size_t a = 0; a < rows_.size(); ++a) {
    const Scalar f = r[pivots_[a]];
    if (f.is_zero()) continue;
    for (std::size_t k = 0; k < ambient_; ++k)
      if (!rows_[a][k].is_zero()) r[k] -= f * rows_[a][k];
  }
  return is_zero(r);
}

bool Subspace::contains(const Subspace& o) const {
  return std::all_of(o.rows_.begin(), o.rows_.end(), [&](const Vec& v) { return contains(v); });
}

Subspace subspace_sum(const Subspace& a, const Subspace& b) {
  std::vector<Vec> gens = a.basis();
  gens.insert(gens.end(), b.basis().begin(), b.basis().end());
  return Subspace::span(gens, a.ambient());
}

Subspace subspace_intersection(const Subspace& a, const Subspace& b) {
  // sum x_i a_i = sum y_j b_j
  const std::size_t n = a.ambient(), p = a.dim(), q = b.dim();
  if (p == 0 || q == 0) return Subspace(n);
  Matrix m(n, p + q);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t k = 0; k < n; ++k) m(k, i) = a.basis()[i][k];
  for (std::size_t j = 0; j < q; ++j)
    for (std::size_t k = 0; k < n; ++k) m(k, p + j) = -b.basis()[j][k];
  std::vector<Vec> gens;
  for (const auto& sol : mat_kernel(m)) {
    Vec v(n);
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t k = 0; k < n; ++k) v[k] += sol[i] * a.basis()[i][k];
    gens.push_back(std::move(v));
  }
  return Subspace::span(gens, n);
}

Subspace bracket_space(const LieAlgebra& L, const Subspace& a, const Subspace& b) {
  std::vector<Vec> gens;
  for (const auto& x : a.basis())
    for (const auto& y : b.basis()) gens.push_back(L.bracket(x, y));
  return Subspace::span(gens, L.dim());
}

bool is_subalgebra(const LieAlgebra& L, const Subspace& s) {
  for (std::size_t i = 0; i < s.dim(); ++i)
    for (std::size_t j = i + 1; j < s.dim(); ++j)
      if (!s.contains(L.bracket(s.basis()[i], s.basis()[j]))) return false;
  return true;
}

bool is_ideal(const LieAlgebra& L, const Subspace& s) {
  for (std::size_t i = 0; i < L.dim(); ++i) {
    const Vec e = L.basis_vector(i);
    for (const auto& y : s.basis())
      if (!s.contains(L.bracket(e, y))) return false;
  }
  return true;
}

LieAlgebra restrict_to(const LieAlgebra& L, const Subspace& s) {
  const std::size_t m = s.dim();
  LieAlgebra out(m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b) {
      const Vec v = L.bracket(s.basis()[a], s.basis()[b]);
      if (!s.contains(v)) throw DomainError("subspace is not closed under the bracket");
      const Vec c = s.coordinates(v);
      for (std::size_t k = 0; k < m; ++k) {
        out.c(a, b, k) = c[k];
        out.c(b, a, k) = -c[k];
      }
    }
  return out;
}

LieAlgebra change_basis(const LieAlgebra& L, const std::vector<Vec>& rows) {
  const std::size_t d = L.dim();
  if (rows.size() != d) throw DimensionMismatch(rows.size(), d);
  // columns of p are the new basis vectors
  Matrix p(d, d);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = 0; k < d; ++k) p(k, j) = rows[j][k];
  if (mat_det(p).is_zero()) throw DomainError("rows do not form a basis");
  LieAlgebra out(d);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = a + 1; b < d; ++b) {
      const auto sol = mat_solve(p, L.bracket(rows[a], rows[b]));
      for (std::size_t k = 0; k < d; ++k) {
        out.c(a, b, k) = sol->particular[k];
        out.c(b, a, k) = -sol->particular[k];
      }
    }
  return out;
}

Subspace generated_subalgebra(const LieAlgebra& L, const std::vector<Vec>& gens) {
  Subspace s = Subspace::span(gens, L.dim());
  while (true) {
    Subspace next = subspace_sum(s, bracket_space(L, s, s));
    if (next == s) return s;
    s = std::move(next);
  }
}

Subspace centralizer(const LieAlgebra& L, const Subspace& s) {
  // x with [x, y] = 0 for every basis y of s: linear in x.
  const std::size_t d = L.dim();
  std::vector<Vec> rows;
  for (const auto& y : s.basis()) {
    Matrix ady = L.ad(y);
    for (std::size_t k = 0; k < d; ++k) rows.push_back(ady.row_vec(k));
  }
  if (rows.empty()) return Subspace::whole(d);
  return Subspace::span(mat_kernel(Matrix::from_rows(rows, d)), d);
}

Subspace normalizer(const LieAlgebra& L, const Subspace& s) {
  // x with [x, y] in s for every basis y of s. Project onto a complement
  // of s: the non-pivot coordinates after reduction must vanish.
  const std::size_t d = L.dim();
  std::vector<Vec> rows;
  std::vector<bool> is_pivot(d, false);
  for (auto p : s.pivots()) is_pivot[p] = true;
  for (const auto& y : s.basis()) {
    Matrix ady = L.ad(y);
    // column i is [y, e_i] reduced modulo s
    std::vector<Vec> cols(d);
    for (std::size_t i = 0; i < d; ++i) {
      Vec col(d);
      for (std::size_t k = 0; k < d; ++k) col[k] = ady(k, i);
      for (std::size_t a = 0; a < s.dim(); ++a) {
        const Scalar f = col[s.pivots()[a]];
        if (f.is_zero()) continue;
        for (std::size_t k = 0; k < d; ++k) col[k] -= f * s.basis()[a][k];
      }
      cols[i] = std::move(col);
    }
    for (std::size_t k = 0; k < d; ++k) {
      if (is_pivot[k]) continue;
      Vec row(d);
      for (std::size_t i = 0; i < d; ++i) row[i] = cols[i][k];
      rows.push_back(std::move(row));
    }
  }
  if (rows.empty()) return Subspace::whole(d);
  return Subspace::span(mat_kernel(Matrix::from_rows(rows, d)), d);
}

Matrix killing_form(const LieAlgebra& L) {
  const std::size_t d = L.dim();
  std::vector<Matrix> ads;
  ads.reserve(d);
  for (std::size_t i = 0; i < d; ++i) ads.push_back(L.ad(L.basis_vector(i)));
  Matrix k(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j) {
      Scalar t;
      for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b)
          if (!ads[i](a, b).is_zero() && !ads[j](b, a).is_zero()) t += ads[i](a, b) * ads[j](b, a);
      k(i, j) = t;
      k(j, i) = t;
    }
  return k;
}

std::vector<Subspace> derived_series(const LieAlgebra& L) {
  std::vector<Subspace> out{Subspace::whole(L.dim())};
  while (true) {
    Subspace next = bracket_space(L, out.back(), out.back());
    if (next == out.back()) break;
    out.push_back(std::move(next));
  }
  return out;
}

std::vector<Subspace> lower_central_series(const LieAlgebra& L) {
  const Subspace whole = Subspace::whole(L.dim());
  std::vector<Subspace> out{whole};
  while (true) {
    Subspace next = bracket_space(L, whole, out.back());
    if (next == out.back()) break;
    out.push_back(std::move(next));
  }
  return out;
}

Subspace center(const LieAlgebra& L) { return centralizer(L, Subspace::whole(L.dim())); }

bool is_abelian(const LieAlgebra& L) {
  for (std::size_t i = 0; i < L.dim(); ++i)
    for (std::size_t j = i + 1; j < L.dim(); ++j)
      for (std::size_t k = 0; k < L.dim(); ++k)
        if (!L.c(i, j, k).is_zero()) return false;
  return true;
}

namespace {

bool killing_orthogonal(const Matrix& k, const Subspace& a, const Subspace& b) {
  for (const auto& x : a.basis()) {
    const Vec kx = k * std::span<const Scalar>(x);
    for (const auto& y : b.basis()) {
      Scalar s;
      for (std::size_t i = 0; i < y.size(); ++i) s += kx[i] * y[i];
      if (!s.is_zero()) return false;
    }
  }
  return true;
}

}  // namespace

bool is_solvable(const LieAlgebra& L) {
  const Subspace whole = Subspace::whole(L.dim());
  const bool cartan = killing_orthogonal(killing_form(L), whole, bracket_space(L, whole, whole));
  const bool series = derived_series(L).back().dim() == 0;
  VFL_ASSERT(cartan == series, "Cartan criterion disagrees with the derived series");
  return series;
}

bool is_nilpotent(const LieAlgebra& L) { return lower_central_series(L).back().dim() == 0; }

bool is_semisimple(const LieAlgebra& L) { return !mat_det(killing_form(L)).is_zero(); }

Subspace radical(const LieAlgebra& L) {
  const std::size_t d = L.dim();
  const Subspace whole = Subspace::whole(d);
  const Subspace derived = bracket_space(L, whole, whole);
  const Matrix k = killing_form(L);
  Subspace rad = whole;
  if (derived.dim() > 0) {
    std::vector<Vec> rows;
    for (const auto& y : derived.basis()) rows.push_back(k * std::span<const Scalar>(y));
    rad = Subspace::span(mat_kernel(Matrix::from_rows(rows, d)), d);
  }
  VFL_ASSERT(is_ideal(L, rad), "Killing-orthogonal complement of [L,L] is not an ideal");
  VFL_ASSERT(derived_series(restrict_to(L, rad)).back().dim() == 0,
             "Killing-orthogonal complement of [L,L] is not solvable");
  return rad;
}

bool LeviReport::pass() const {
  return std::all_of(items.begin(), items.end(), [](const Item& i) { return i.pass; });
}

LeviReport check_levi(const LieAlgebra& L, const Subspace& s, const Subspace& r) {
  LeviReport rep;
  const bool closed = is_subalgebra(L, s);
  rep.items.push_back({"S closed", closed, closed ? "" : "S not closed under the bracket"});
  bool semisimple = false;
  if (closed) semisimple = is_semisimple(restrict_to(L, s));
  rep.items.push_back({"S semisimple", semisimple, semisimple ? "" : "S not semisimple"});
  const bool is_rad = r == radical(L);
  rep.items.push_back({"R radical", is_rad, is_rad ? "" : "R differs from the radical"});
  const bool ideal = is_ideal(L, r);
  rep.items.push_back({"R ideal", ideal, ideal ? "" : "R not an ideal"});
  const bool direct = s.dim() + r.dim() == L.dim() && subspace_sum(s, r).dim() == L.dim();
  rep.items.push_back({"L = S + R direct", direct, direct ? "" : "S and R do not form a direct sum equal to L"});
  return rep;
}

}  // namespace vfl
