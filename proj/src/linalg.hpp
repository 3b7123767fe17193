#ifndef VFL_LINALG_HPP
#define VFL_LINALG_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "scalar.hpp"

namespace vfl {

using Vec = std::vector<Scalar>;

bool is_zero(std::span<const Scalar> v);

class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  static Matrix identity(std::size_t n);
  static Matrix from_rows(const std::vector<Vec>& rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Scalar& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }
  std::span<const Scalar> row(std::size_t r) const { return {a_.data() + r * cols_, cols_}; }
  Vec row_vec(std::size_t r) const { return Vec(row(r).begin(), row(r).end()); }
  std::vector<Vec> row_list() const;

  Matrix transpose() const;
  bool is_zero() const;
  Scalar trace() const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  friend Vec operator*(const Matrix& a, std::span<const Scalar> v);
  friend bool operator==(const Matrix& a, const Matrix& b) = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> a_;
};

struct Echelon {
  Matrix reduced;                   // reduced row echelon form, zero rows dropped
  std::vector<std::size_t> pivots;  // pivot column of each row
};

Echelon rref(const Matrix& m);
std::size_t mat_rank(const Matrix& m);
// Basis of {v : M v = 0}, one vector per free column, in canonical form.
std::vector<Vec> mat_kernel(const Matrix& m);
Scalar mat_det(const Matrix& m);

struct Solution {
  Vec particular;
  std::vector<Vec> kernel;
};
// nullopt means the system is inconsistent (Infeasible).
std::optional<Solution> mat_solve(const Matrix& a, std::span<const Scalar> b);

// Incrementally built span of vectors with coordinate recovery relative to
// the accepted (independent) generators, in insertion order.
class LinearSpan {
public:
  explicit LinearSpan(std::size_t ambient) : ambient_(ambient) {}
  std::size_t ambient() const { return ambient_; }
  std::size_t dim() const { return rows_.size(); }

  // Adds v if independent of the current span; returns whether it was added.
  bool add(std::span<const Scalar> v);
  bool contains(std::span<const Scalar> v) const;
  // Coefficients c with v = sum c_k g_k over accepted generators g_k.
  std::optional<Vec> coordinates(std::span<const Scalar> v) const;
  // v minus its projection along the echelon rows (zero iff v in span).
  Vec residual(std::span<const Scalar> v) const;

private:
  struct Row {
    Vec v;
    Vec combo;
    std::size_t pivot;
  };
  void reduce(Vec& v, Vec* combo) const;

  std::size_t ambient_;
  std::vector<Row> rows_;
};

}  // namespace vfl

#endif
