#include "georank.hpp"

#include <algorithm>
#include <random>

#include "errors.hpp"

namespace vfl {

namespace {

std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur(k);
  for (std::size_t i = 0; i < k; ++i) cur[i] = i;
  if (k > n) return out;
  while (true) {
    out.push_back(cur);
    std::size_t i = k;
    while (i > 0 && cur[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++cur[i - 1];
    for (std::size_t j = i; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

CoeffFn symbolic_det(const std::vector<std::vector<const CoeffFn*>>& m, std::size_t dim) {
  const std::size_t n = m.size();
  if (n == 1) return *m[0][0];
  CoeffFn out(dim);
  for (std::size_t j = 0; j < n; ++j) {
    if (m[0][j]->is_zero()) continue;
    std::vector<std::vector<const CoeffFn*>> sub;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<const CoeffFn*> row;
      for (std::size_t c = 0; c < n; ++c)
        if (c != j) row.push_back(m[i][c]);
      sub.push_back(std::move(row));
    }
    CoeffFn term = *m[0][j] * symbolic_det(sub, dim);
    if (j % 2) out -= term; else out += term;
  }
  return out;
}

}  // namespace

GeometricRank geometric_rank(const std::vector<VectorField>& fields, std::uint64_t seed) {
  GeometricRank out;
  if (fields.empty()) return out;
  const std::size_t n = fields[0].dim(), d = fields.size();
  for (const auto& f : fields)
    if (f.dim() != n) throw DimensionMismatch(f.dim(), n);

  // exact evaluation at a random integer point, polynomial entries only
  std::mt19937_64 rng(seed);
  Point p(n);
  for (auto& c : p) c = Scalar(static_cast<long>(rng() % 2001) - 1000);
  std::vector<std::vector<std::optional<Scalar>>> at(d, std::vector<std::optional<Scalar>>(n));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < n; ++k)
      if (fields[i][k].is_polynomial()) at[i][k] = std::get<Scalar>(fields[i][k].eval(p));

  for (std::size_t s = 1; s <= std::min(d, n); ++s) {
    const auto rsets = subsets(d, s), csets = subsets(n, s);
    std::optional<Minor> found;
    // promoted pass: numerically nonzero minors certify themselves
    for (const auto& rs : rsets) {
      for (const auto& cs : csets) {
        Matrix num(s, s);
        bool exact = true;
        for (std::size_t a = 0; a < s && exact; ++a)
          for (std::size_t b = 0; b < s && exact; ++b) {
            if (!at[rs[a]][cs[b]]) exact = false;
            else num(a, b) = *at[rs[a]][cs[b]];
          }
        if (exact && !mat_det(num).is_zero()) {
          found = Minor{rs, cs, CoeffFn(n)};
          break;
        }
      }
      if (found) break;
    }
    auto det_of = [&](const std::vector<std::size_t>& rs, const std::vector<std::size_t>& cs) {
      std::vector<std::vector<const CoeffFn*>> m(s, std::vector<const CoeffFn*>(s));
      for (std::size_t a = 0; a < s; ++a)
        for (std::size_t b = 0; b < s; ++b) m[a][b] = &fields[rs[a]][cs[b]];
      return symbolic_det(m, n);
    };
    if (found) {
      found->value = det_of(found->rows, found->cols);
      VFL_ASSERT(!found->value.is_zero(), "numerically nonzero minor vanished symbolically");
    } else {
      for (const auto& rs : rsets) {
        for (const auto& cs : csets) {
          CoeffFn v = det_of(rs, cs);
          if (!v.is_zero()) {
            found = Minor{rs, cs, std::move(v)};
            break;
          }
        }
        if (found) break;
      }
    }
    if (!found) break;
    out.rank = s;
    out.certificate = std::move(found);
  }
  return out;
}

namespace {

long unmap(unsigned m) { return m % 2 ? static_cast<long>((m + 1) / 2) : -static_cast<long>(m / 2); }

}  // namespace

Witness witness_point(const CoeffFn& certificate, unsigned box, unsigned digits) {
  if (certificate.is_zero()) throw DomainError("certificate is identically zero");
  const std::size_t n = certificate.dim();
  auto try_point = [&](const std::vector<unsigned>& mapped) -> std::optional<Witness> {
    Point p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = Scalar(unmap(mapped[i]));
    EvalResult v = certificate.eval(p, digits);
    if (!is_nonzero(v)) return std::nullopt;
    const bool exact = is_exact(v);
    return Witness{std::move(p), exact, std::move(v)};
  };
  for (unsigned shell = 0; shell <= 2 * box; ++shell) {
    // mapped values with |c| <= shell are 0..2*shell; at least one equals shell
    const unsigned top = 2 * shell;
    std::vector<unsigned> m(n, 0);
    if (n == 0) {
      if (shell == 0)
        if (auto w = try_point(m)) return *w;
      continue;
    }
    while (true) {
      unsigned norm = 0;
      for (auto v : m) norm = std::max(norm, (v + 1) / 2);
      if (norm == shell)
        if (auto w = try_point(m)) return *w;
      std::size_t i = n;
      while (i > 0 && m[i - 1] == top) m[--i] = 0;
      if (i == 0) break;
      ++m[i - 1];
    }
  }
  throw NoExactWitness("no point with integer coordinates in [-" + std::to_string(2 * box) + ", " +
                       std::to_string(2 * box) + "]^" + std::to_string(n) + " where the certificate is nonzero");
}

std::size_t rank_at(const std::vector<VectorField>& fields, const Point& p) {
  if (fields.empty()) return 0;
  const std::size_t n = fields[0].dim();
  Matrix m(fields.size(), n);
  for (std::size_t i = 0; i < fields.size(); ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (!fields[i][k].is_polynomial()) throw OutOfClass("rank_at needs polynomial fields");
      m(i, k) = std::get<Scalar>(fields[i][k].eval(p));
    }
  return mat_rank(m);
}

RankEqualityReport rank_equality_report(const LiePresentation& p, const CartanOptions& opts) {
  if (!is_semisimple(p.algebra)) throw DomainError("rank equality report requires a semisimple algebra");
  const CartanData c = find_cartan(p.algebra, opts);
  return {c.csa.dim(), geometric_rank(p.fields(c.csa), opts.seed).rank, geometric_rank(p, opts.seed).rank};
}

}  // namespace vfl
