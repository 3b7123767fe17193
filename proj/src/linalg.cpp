#include "linalg.hpp"

#include <algorithm>

#include "errors.hpp"

namespace vfl {

bool is_zero(std::span<const Scalar> v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_zero(); });
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar(1);
  return m;
}

Matrix Matrix::from_rows(const std::vector<Vec>& rows, std::size_t cols) {
  Matrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw DimensionMismatch(rows[r].size(), cols);
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

std::vector<Vec> Matrix::row_list() const {
  std::vector<Vec> out;
  out.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out.push_back(row_vec(r));
  return out;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

bool Matrix::is_zero() const { return vfl::is_zero(a_); }

Scalar Matrix::trace() const {
  Scalar t;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw DimensionMismatch(a.cols_, b.rows_);
  Matrix m(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Scalar& x = a(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j)
        if (!b(k, j).is_zero()) m(i, j) += x * b(k, j);
    }
  return m;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionMismatch(a.a_.size(), b.a_.size());
  Matrix m = a;
  for (std::size_t i = 0; i < m.a_.size(); ++i) m.a_[i] += b.a_[i];
  return m;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionMismatch(a.a_.size(), b.a_.size());
  Matrix m = a;
  for (std::size_t i = 0; i < m.a_.size(); ++i) m.a_[i] -= b.a_[i];
  return m;
}

Vec operator*(const Matrix& a, std::span<const Scalar> v) {
  if (a.cols_ != v.size()) throw DimensionMismatch(a.cols_, v.size());
  Vec out(a.rows_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t j = 0; j < a.cols_; ++j)
      if (!a(i, j).is_zero() && !v[j].is_zero()) out[i] += a(i, j) * v[j];
  return out;
}

Echelon rref(const Matrix& m) {
  Matrix a = m;
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c).is_zero()) ++p;
    if (p == a.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(r, j));
    Scalar inv = a(r, c).inverse();
    for (std::size_t j = c; j < a.cols(); ++j) a(r, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || a(i, c).is_zero()) continue;
      Scalar f = a(i, c);
      for (std::size_t j = c; j < a.cols(); ++j)
        if (!a(r, j).is_zero()) a(i, j) -= f * a(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  Matrix reduced(r, a.cols());
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) reduced(i, j) = a(i, j);
  return {std::move(reduced), std::move(pivots)};
}

std::size_t mat_rank(const Matrix& m) { return rref(m).pivots.size(); }

std::vector<Vec> mat_kernel(const Matrix& m) {
  Echelon e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<Vec> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vec v(m.cols());
    v[f] = Scalar(1);
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.reduced(r, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

Scalar mat_det(const Matrix& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch(m.rows(), m.cols());
  Matrix a = m;
  const std::size_t n = a.rows();
  Scalar det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c).is_zero()) ++p;
    if (p == n) return Scalar();
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
      det = -det;
    }
    det *= a(c, c);
    Scalar inv = a(c, c).inverse();
    for (std::size_t i = c + 1; i < n; ++i) {
      if (a(i, c).is_zero()) continue;
      Scalar f = a(i, c) * inv;
      for (std::size_t j = c; j < n; ++j) a(i, j) -= f * a(c, j);
    }
  }
  return det;
}

std::optional<Solution> mat_solve(const Matrix& a, std::span<const Scalar> b) {
  if (b.size() != a.rows()) throw DimensionMismatch(b.size(), a.rows());
  Matrix aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  Echelon e = rref(aug);
  if (!e.pivots.empty() && e.pivots.back() == a.cols()) return std::nullopt;
  Solution s;
  s.particular.assign(a.cols(), Scalar());
  for (std::size_t r = 0; r < e.pivots.size(); ++r) s.particular[e.pivots[r]] = e.reduced(r, a.cols());
  s.kernel = mat_kernel(a);
  return s;
}

// ---------------------------------------------------------------------------

void LinearSpan::reduce(Vec& v, Vec* combo) const {
  for (const Row& row : rows_) {
    const Scalar& x = v[row.pivot];
    if (x.is_zero()) continue;
    Scalar f = x;  // row.v[pivot] == 1
    for (std::size_t j = 0; j < ambient_; ++j)
      if (!row.v[j].is_zero()) v[j] -= f * row.v[j];
    if (combo)
      for (std::size_t k = 0; k < row.combo.size(); ++k)
        if (!row.combo[k].is_zero()) (*combo)[k] -= f * row.combo[k];
  }
}

bool LinearSpan::add(std::span<const Scalar> v) {
  if (v.size() != ambient_) throw DimensionMismatch(v.size(), ambient_);
  Vec w(v.begin(), v.end());
  const std::size_t n = rows_.size();
  Vec combo(n + 1);
  combo[n] = Scalar(1);
  for (auto& row : rows_) row.combo.resize(n + 1);
  reduce(w, &combo);
  auto it = std::find_if(w.begin(), w.end(), [](const Scalar& s) { return !s.is_zero(); });
  if (it == w.end()) {
    for (auto& row : rows_) row.combo.resize(n);
    return false;
  }
  std::size_t pivot = static_cast<std::size_t>(it - w.begin());
  Scalar inv = w[pivot].inverse();
  for (auto& s : w) s *= inv;
  for (auto& s : combo) s *= inv;
  rows_.push_back(Row{std::move(w), std::move(combo), pivot});
  return true;
}

bool LinearSpan::contains(std::span<const Scalar> v) const { return is_zero(residual(v)); }

Vec LinearSpan::residual(std::span<const Scalar> v) const {
  if (v.size() != ambient_) throw DimensionMismatch(v.size(), ambient_);
  Vec w(v.begin(), v.end());
  reduce(w, nullptr);
  return w;
}

std::optional<Vec> LinearSpan::coordinates(std::span<const Scalar> v) const {
  if (v.size() != ambient_) throw DimensionMismatch(v.size(), ambient_);
  Vec w(v.begin(), v.end());
  Vec combo(rows_.size());
  reduce(w, &combo);
  if (!is_zero(w)) return std::nullopt;
  // w_orig - sum f_p * row_p = 0 and row_p = sum combo_p[k] g_k, so the
  // accumulated (negated) combo gives the coordinates.
  for (auto& s : combo) s = -s;
  return combo;
}

}  // namespace vfl
