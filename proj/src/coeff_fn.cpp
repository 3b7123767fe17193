#include "coeff_fn.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>

#include "errors.hpp"

namespace vfl {

unsigned TermKey::degree() const {
  unsigned d = 0;
  for (unsigned a : alpha) d += a;
  return d;
}

bool TermKey::is_polynomial() const {
  return std::all_of(lambda.begin(), lambda.end(), [](const Scalar& s) { return s.is_zero(); });
}

bool TermKeyLess::operator()(const TermKey& a, const TermKey& b) const {
  unsigned da = a.degree(), db = b.degree();
  if (da != db) return da < db;
  if (a.alpha != b.alpha) return a.alpha < b.alpha;
  return a.lambda < b.lambda;
}

// ---------------------------------------------------------------------------
// approximate evaluation

namespace {

class Mpfr {
public:
  explicit Mpfr(mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
  ~Mpfr() { mpfr_clear(v_); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;
  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

private:
  mpfr_t v_;
};

std::string format(const Mpfr& x, unsigned digits) {
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Rg", static_cast<int>(digits), x.get());
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

}  // namespace

bool is_nonzero(const EvalResult& r) {
  if (auto s = std::get_if<Scalar>(&r)) return !s->is_zero();
  return std::get<ApproxValue>(r).nonzero;
}

std::string to_string(const EvalResult& r) {
  if (auto s = std::get_if<Scalar>(&r)) return s->str();
  const auto& a = std::get<ApproxValue>(r);
  return "~(" + a.re + (a.im.empty() || a.im[0] == '-' ? "" : "+") + a.im + "*i)";
}

// ---------------------------------------------------------------------------

CoeffFn CoeffFn::constant(std::size_t dim, const Scalar& c) {
  CoeffFn f(dim);
  f.add_term(TermKey{MultiIndex(dim, 0), std::vector<Scalar>(dim)}, c);
  return f;
}

CoeffFn CoeffFn::variable(std::size_t dim, std::size_t axis) {
  if (axis >= dim) throw DomainError("axis out of range");
  MultiIndex a(dim, 0);
  a[axis] = 1;
  return monomial(dim, std::move(a));
}

CoeffFn CoeffFn::monomial(std::size_t dim, MultiIndex alpha, const Scalar& c) {
  if (alpha.size() != dim) throw DimensionMismatch(alpha.size(), dim);
  CoeffFn f(dim);
  f.add_term(TermKey{std::move(alpha), std::vector<Scalar>(dim)}, c);
  return f;
}

CoeffFn CoeffFn::exponential(std::size_t dim, std::vector<Scalar> lambda) {
  if (lambda.size() != dim) throw DimensionMismatch(lambda.size(), dim);
  CoeffFn f(dim);
  f.add_term(TermKey{MultiIndex(dim, 0), std::move(lambda)}, Scalar(1));
  return f;
}

CoeffFn CoeffFn::term(std::size_t dim, TermKey key, const Scalar& c) {
  if (key.alpha.size() != dim) throw DimensionMismatch(key.alpha.size(), dim);
  if (key.lambda.size() != dim) throw DimensionMismatch(key.lambda.size(), dim);
  CoeffFn f(dim);
  f.add_term(key, c);
  return f;
}

bool CoeffFn::is_polynomial() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const auto& t) { return t.first.is_polynomial(); });
}

bool CoeffFn::is_constant() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) {
    return t.first.is_polynomial() && t.first.degree() == 0;
  });
}

unsigned CoeffFn::degree() const {
  unsigned d = 0;
  for (const auto& [k, c] : terms_) d = std::max(d, k.degree());
  return d;
}

Scalar CoeffFn::coefficient(const TermKey& key) const {
  auto it = terms_.find(key);
  return it == terms_.end() ? Scalar() : it->second;
}

void CoeffFn::add_term(const TermKey& key, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(key, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

CoeffFn& CoeffFn::operator+=(const CoeffFn& o) {
  if (o.dim_ != dim_) throw DimensionMismatch(dim_, o.dim_);
  for (const auto& [k, c] : o.terms_) add_term(k, c);
  return *this;
}

CoeffFn& CoeffFn::operator-=(const CoeffFn& o) {
  if (o.dim_ != dim_) throw DimensionMismatch(dim_, o.dim_);
  for (const auto& [k, c] : o.terms_) add_term(k, -c);
  return *this;
}

CoeffFn& CoeffFn::operator*=(const Scalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, v] : terms_) v *= c;
  return *this;
}

CoeffFn operator*(const CoeffFn& a, const CoeffFn& b) {
  if (a.dim_ != b.dim_) throw DimensionMismatch(a.dim_, b.dim_);
  CoeffFn out(a.dim_);
  for (const auto& [ka, ca] : a.terms_) {
    for (const auto& [kb, cb] : b.terms_) {
      TermKey k{ka.alpha, ka.lambda};
      for (std::size_t i = 0; i < a.dim_; ++i) {
        k.alpha[i] += kb.alpha[i];
        k.lambda[i] += kb.lambda[i];
      }
      out.add_term(k, ca * cb);
    }
  }
  return out;
}

bool operator==(const CoeffFn& a, const CoeffFn& b) {
  return a.dim_ == b.dim_ && a.terms_.size() == b.terms_.size() &&
         std::equal(a.terms_.begin(), a.terms_.end(), b.terms_.begin(),
                    [](const auto& x, const auto& y) { return x.first == y.first && x.second == y.second; });
}

CoeffFn CoeffFn::pow(unsigned k) const {
  CoeffFn r = constant(dim_, Scalar(1));
  CoeffFn base = *this;
  while (k) {
    if (k & 1u) r = r * base;
    k >>= 1u;
    if (k) base = base * base;
  }
  return r;
}

CoeffFn CoeffFn::diff(std::size_t axis) const {
  if (axis >= dim_) throw DomainError("axis out of range");
  CoeffFn out(dim_);
  for (const auto& [k, c] : terms_) {
    if (k.alpha[axis] > 0) {
      TermKey d = k;
      d.alpha[axis] -= 1;
      out.add_term(d, c * Scalar(static_cast<long>(k.alpha[axis])));
    }
    if (!k.lambda[axis].is_zero()) out.add_term(k, c * k.lambda[axis]);
  }
  return out;
}

EvalResult CoeffFn::eval(std::span<const Scalar> p, unsigned digits) const {
  if (p.size() != dim_) throw DimensionMismatch(p.size(), dim_);
  Scalar exact;
  struct Pending {
    Scalar factor;
    Scalar exponent;
  };
  std::vector<Pending> pending;
  for (const auto& [k, c] : terms_) {
    Scalar v = c;
    Scalar z;
    for (std::size_t i = 0; i < dim_; ++i) {
      for (unsigned e = 0; e < k.alpha[i]; ++e) v *= p[i];
      z += k.lambda[i] * p[i];
    }
    if (z.is_zero())
      exact += v;
    else if (!v.is_zero())
      pending.push_back({v, z});
  }
  if (pending.empty()) return exact;

  const mpfr_prec_t prec = static_cast<mpfr_prec_t>(std::ceil(digits * 3.3219280948873623)) + 64;
  Mpfr re(prec), im(prec), a(prec), b(prec), ea(prec), cs(prec), sn(prec), t(prec), fr(prec), fi(prec);
  mpfr_set_q(re.get(), exact.re().get_mpq_t(), MPFR_RNDN);
  mpfr_set_q(im.get(), exact.im().get_mpq_t(), MPFR_RNDN);
  for (const auto& [factor, z] : pending) {
    mpfr_set_q(a.get(), z.re().get_mpq_t(), MPFR_RNDN);
    mpfr_set_q(b.get(), z.im().get_mpq_t(), MPFR_RNDN);
    mpfr_exp(ea.get(), a.get(), MPFR_RNDN);
    mpfr_sin_cos(sn.get(), cs.get(), b.get(), MPFR_RNDN);
    mpfr_mul(cs.get(), cs.get(), ea.get(), MPFR_RNDN);  // Re e^z
    mpfr_mul(sn.get(), sn.get(), ea.get(), MPFR_RNDN);  // Im e^z
    mpfr_set_q(fr.get(), factor.re().get_mpq_t(), MPFR_RNDN);
    mpfr_set_q(fi.get(), factor.im().get_mpq_t(), MPFR_RNDN);
    // (fr + i fi)(cs + i sn)
    mpfr_mul(t.get(), fr.get(), cs.get(), MPFR_RNDN);
    mpfr_add(re.get(), re.get(), t.get(), MPFR_RNDN);
    mpfr_mul(t.get(), fi.get(), sn.get(), MPFR_RNDN);
    mpfr_sub(re.get(), re.get(), t.get(), MPFR_RNDN);
    mpfr_mul(t.get(), fr.get(), sn.get(), MPFR_RNDN);
    mpfr_add(im.get(), im.get(), t.get(), MPFR_RNDN);
    mpfr_mul(t.get(), fi.get(), cs.get(), MPFR_RNDN);
    mpfr_add(im.get(), im.get(), t.get(), MPFR_RNDN);
  }
  ApproxValue out;
  out.digits = digits;
  out.re = format(re, digits);
  out.im = format(im, digits);
  mpfr_hypot(t.get(), re.get(), im.get(), MPFR_RNDN);
  mpfr_set_ui(a.get(), 10, MPFR_RNDN);
  mpfr_pow_si(a.get(), a.get(), -static_cast<long>(digits / 2), MPFR_RNDN);
  out.nonzero = mpfr_greater_p(t.get(), a.get()) != 0;
  return out;
}

CoeffFn CoeffFn::compose(std::span<const CoeffFn> psi) const {
  if (psi.size() != dim_) throw DimensionMismatch(psi.size(), dim_);
  if (psi.empty()) return *this;
  const std::size_t m = psi[0].dim();
  for (const auto& q : psi) {
    if (q.dim() != m) throw DimensionMismatch(q.dim(), m);
    if (!q.is_polynomial()) throw OutOfClass("substituted map must be polynomial");
  }
  std::vector<std::vector<CoeffFn>> powers(dim_);
  auto power = [&](std::size_t i, unsigned e) -> const CoeffFn& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(CoeffFn::constant(m, Scalar(1)));
    while (cache.size() <= e) cache.push_back(cache.back() * psi[i]);
    return cache[e];
  };
  CoeffFn out(m);
  for (const auto& [k, c] : terms_) {
    CoeffFn prod = CoeffFn::constant(m, c);
    for (std::size_t i = 0; i < dim_; ++i)
      if (k.alpha[i]) prod = prod * power(i, k.alpha[i]);
    if (!k.is_polynomial()) {
      CoeffFn arg(m);
      for (std::size_t i = 0; i < dim_; ++i)
        if (!k.lambda[i].is_zero()) arg += psi[i] * k.lambda[i];
      std::vector<Scalar> mu(m);
      for (const auto& [ak, ac] : arg.terms()) {
        if (ak.degree() != 1)
          throw OutOfClass("exponential argument is not a homogeneous linear form after substitution");
        for (std::size_t j = 0; j < m; ++j)
          if (ak.alpha[j]) mu[j] = ac;
      }
      prod = prod * CoeffFn::exponential(m, std::move(mu));
    }
    out += prod;
  }
  return out;
}

CoeffFn CoeffFn::canonicalized() const {
  CoeffFn out(dim_);
  for (const auto& [k, c] : terms_) out.add_term(k, c);
  return out;
}

CoeffFn cf_add(const CoeffFn& f, const CoeffFn& g) { return f + g; }
CoeffFn cf_mul(const CoeffFn& f, const CoeffFn& g) { return f * g; }
CoeffFn cf_diff(const CoeffFn& f, std::size_t axis) { return f.diff(axis); }
EvalResult cf_eval(const CoeffFn& f, std::span<const Scalar> p, unsigned digits) {
  return f.eval(p, digits);
}

}  // namespace vfl
