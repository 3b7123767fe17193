#ifndef VFL_COEFF_FN_HPP
#define VFL_COEFF_FN_HPP

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "scalar.hpp"

namespace vfl {

using MultiIndex = std::vector<unsigned>;
using Point = std::vector<Scalar>;

// (alpha, lambda) identifies the basis function x^alpha * exp(<lambda, x>).
struct TermKey {
  MultiIndex alpha;
  std::vector<Scalar> lambda;

  unsigned degree() const;
  bool is_polynomial() const;
  friend bool operator==(const TermKey&, const TermKey&) = default;
};

// Graded-lex on alpha, then lex on lambda.
struct TermKeyLess {
  bool operator()(const TermKey& a, const TermKey& b) const;
};

// Floating approximation of a value that involves exp() of a nonzero
// argument. Decimal strings carry `digits` significant digits.
struct ApproxValue {
  std::string re;
  std::string im;
  unsigned digits = 0;
  bool nonzero = false;  // |value| exceeds 10^-(digits/2)
};

using EvalResult = std::variant<Scalar, ApproxValue>;

inline bool is_exact(const EvalResult& r) { return std::holds_alternative<Scalar>(r); }
bool is_nonzero(const EvalResult& r);
std::string to_string(const EvalResult& r);

inline constexpr unsigned kDefaultPrecisionDigits = 64;

// Exponential polynomial sum c * x^alpha * exp(<lambda, x>) on C^dim in
// canonical form: one entry per key, no zero coefficients.
class CoeffFn {
public:
  using TermMap = std::map<TermKey, Scalar, TermKeyLess>;

  CoeffFn() = default;
  explicit CoeffFn(std::size_t dim) : dim_(dim) {}

  static CoeffFn constant(std::size_t dim, const Scalar& c);
  static CoeffFn variable(std::size_t dim, std::size_t axis);
  static CoeffFn monomial(std::size_t dim, MultiIndex alpha, const Scalar& c = Scalar(1));
  static CoeffFn exponential(std::size_t dim, std::vector<Scalar> lambda);
  static CoeffFn term(std::size_t dim, TermKey key, const Scalar& c);

  std::size_t dim() const { return dim_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_polynomial() const;
  bool is_constant() const;
  // Max |alpha| over terms; 0 for the zero function.
  unsigned degree() const;
  Scalar coefficient(const TermKey& key) const;

  void add_term(const TermKey& key, const Scalar& c);

  CoeffFn& operator+=(const CoeffFn& o);
  CoeffFn& operator-=(const CoeffFn& o);
  CoeffFn& operator*=(const Scalar& c);
  friend CoeffFn operator+(CoeffFn a, const CoeffFn& b) { return a += b; }
  friend CoeffFn operator-(CoeffFn a, const CoeffFn& b) { return a -= b; }
  friend CoeffFn operator*(CoeffFn a, const Scalar& c) { return a *= c; }
  friend CoeffFn operator*(const Scalar& c, CoeffFn a) { return a *= c; }
  friend CoeffFn operator*(const CoeffFn& a, const CoeffFn& b);
  CoeffFn operator-() const { return *this * Scalar(-1); }
  friend bool operator==(const CoeffFn& a, const CoeffFn& b);

  CoeffFn pow(unsigned k) const;

  // Partial derivative along 0-based axis.
  CoeffFn diff(std::size_t axis) const;

  EvalResult eval(std::span<const Scalar> p, unsigned digits = kDefaultPrecisionDigits) const;

  // f(psi_1(y), ..., psi_dim(y)) for polynomial psi on C^M. Throws OutOfClass
  // when an exponential argument stops being a homogeneous linear form.
  CoeffFn compose(std::span<const CoeffFn> psi) const;

  // Rebuilds the term map; an identity on values built through the API.
  CoeffFn canonicalized() const;

private:
  std::size_t dim_ = 0;
  TermMap terms_;
};

CoeffFn cf_add(const CoeffFn& f, const CoeffFn& g);
CoeffFn cf_mul(const CoeffFn& f, const CoeffFn& g);
CoeffFn cf_diff(const CoeffFn& f, std::size_t axis);
EvalResult cf_eval(const CoeffFn& f, std::span<const Scalar> p,
                   unsigned digits = kDefaultPrecisionDigits);
inline bool cf_is_zero(const CoeffFn& f) { return f.is_zero(); }

}  // namespace vfl

#endif
