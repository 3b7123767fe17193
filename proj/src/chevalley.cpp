#include "chevalley.hpp"

#include "errors.hpp"

namespace vfl {

namespace {

RootCoeffs negate(RootCoeffs a) {
  for (auto& c : a) c = -c;
  return a;
}

RootCoeffs add(RootCoeffs a, const RootCoeffs& b, int scale = 1) {
  for (std::size_t k = 0; k < a.size(); ++k) a[k] += scale * b[k];
  return a;
}

}  // namespace

ChevalleyAlgebra::ChevalleyAlgebra(const TypeLabel& t)
    : type_(t), gram_(gram_matrix(t)), cartan_(cartan_matrix_from_gram(gram_)) {
  const std::size_t r = rank();
  std::vector<RootCoeffs> pos = positive_roots(cartan_);
  positive_ = pos.size();
  roots_ = pos;
  for (const auto& a : pos) roots_.push_back(negate(a));
  for (std::size_t k = 0; k < roots_.size(); ++k) index_[roots_[k]] = k;

  for (std::size_t xi = 0; xi < positive_; ++xi)
    for (std::size_t g = 0; g < xi && !extraspecial_.contains(xi); ++g) {
      auto d = root_index(add(roots_[xi], roots_[g], -1));
      if (d && *d < positive_ && g < *d) extraspecial_[xi] = {g, *d};
    }

  const std::size_t dim = r + roots_.size();
  algebra_ = LieAlgebra(dim);
  auto set = [&](std::size_t i, std::size_t j, std::size_t k, const Scalar& v) {
    algebra_.c(i, j, k) = v;
    algebra_.c(j, i, k) = -v;
  };
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t a = 0; a < roots_.size(); ++a) {
      long pairing = 0;
      for (std::size_t k = 0; k < r; ++k)
        pairing += roots_[a][k] * cartan_(k, i).re().get_num().get_si();
      if (pairing) set(i, r + a, r + a, Scalar(pairing));
    }
  for (std::size_t a = 0; a < roots_.size(); ++a)
    for (std::size_t b = a + 1; b < roots_.size(); ++b) {
      RootCoeffs s = add(roots_[a], roots_[b]);
      bool zero = true;
      for (int c : s) zero = zero && c == 0;
      if (zero) {
        Vec h = coroot(roots_[a]);
        for (std::size_t k = 0; k < r; ++k)
          if (!h[k].is_zero()) set(r + a, r + b, k, h[k]);
      } else if (auto sum = root_index(s)) {
        set(r + a, r + b, r + *sum, N(a, b));
      }
    }
  algebra_.check_axioms();
}

std::optional<std::size_t> ChevalleyAlgebra::root_index(const RootCoeffs& a) const {
  auto it = index_.find(a);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Scalar ChevalleyAlgebra::inner(const RootCoeffs& a, const RootCoeffs& b) const {
  Scalar s;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      if (a[i] && b[j]) s += Scalar(static_cast<long>(a[i]) * b[j]) * gram_(i, j);
  return s;
}

Vec ChevalleyAlgebra::coroot(const RootCoeffs& a) const {
  const Scalar len = inner(a, a);
  Vec h(rank());
  for (std::size_t k = 0; k < rank(); ++k) h[k] = Scalar(static_cast<long>(a[k])) * gram_(k, k) / len;
  return h;
}

std::pair<std::size_t, std::size_t> ChevalleyAlgebra::extraspecial(std::size_t xi) const {
  auto it = extraspecial_.find(xi);
  if (it == extraspecial_.end()) throw DomainError("root has no extraspecial pair");
  return it->second;
}

Scalar ChevalleyAlgebra::N(std::size_t a, std::size_t b) const {
  auto key = std::make_pair(a, b);
  if (auto it = n_cache_.find(key); it != n_cache_.end()) return it->second;
  Scalar v = compute_N(a, b);
  n_cache_[key] = v;
  return v;
}

Scalar ChevalleyAlgebra::compute_N(std::size_t a, std::size_t b) const {
  const RootCoeffs& ra = roots_[a];
  const RootCoeffs& rb = roots_[b];
  auto sum = root_index(add(ra, rb));
  if (!sum) return Scalar(0);
  const bool pa = a < positive_, pb = b < positive_;

  if (pa && pb) {
    if (a > b) return -N(b, a);
    const std::size_t xi = *sum;
    const auto [g, d] = extraspecial_.at(xi);
    if (g == a) {
      long p = 0;
      while (root_index(add(rb, ra, -(p + 1)))) ++p;
      return Scalar(p + 1);
    }
    // Jacobi on e_a, e_b, e_-g:
    // N_{a,b} N_{xi,-g} = -(N_{b,-g} N_{b-g,a} + N_{-g,a} N_{a-g,b})
    const std::size_t mg = g + positive_;
    Scalar rhs;
    if (auto bg = root_index(add(rb, roots_[g], -1))) rhs += N(b, mg) * N(*bg, a);
    if (auto ag = root_index(add(ra, roots_[g], -1))) rhs += N(mg, a) * N(*ag, b);
    return -rhs / N(xi, mg);
  }
  if (!pa && !pb) return -N(a - positive_, b - positive_);

  // a + b + c = 0:  N_{a,b}/(c,c) = N_{b,c}/(a,a) = N_{c,a}/(b,b)
  const std::size_t c = *sum < positive_ ? *sum + positive_ : *sum - positive_;
  const RootCoeffs& rc = roots_[c];
  const bool pc = c < positive_;
  if (pb == pc) return inner(rc, rc) / inner(ra, ra) * N(b, c);
  return inner(rc, rc) / inner(rb, rb) * N(c, a);
}

ChevalleyAlgebra chevalley_constants(const TypeLabel& t) {
  for (const auto& f : t.factors)
    if (!is_legal(f) || f.rank > 3) throw UnsupportedType("Chevalley constants not supported for " + f.str());
  if (t.factors.empty()) throw UnsupportedType("empty type label");
  return ChevalleyAlgebra(t);
}

}  // namespace vfl
