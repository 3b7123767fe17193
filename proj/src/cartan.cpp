#include "cartan.hpp"

#include <algorithm>
#include <optional>
#include <random>

#include "errors.hpp"
#include "spectrum.hpp"

namespace vfl {

namespace {

Matrix mat_pow(const Matrix& a, std::size_t k) {
  Matrix out = Matrix::identity(a.rows());
  for (std::size_t i = 0; i < k; ++i) out = out * a;
  return out;
}

Subspace generalized_null_space(const LieAlgebra& L, const Vec& x) {
  const std::size_t d = L.dim();
  return Subspace::span(mat_kernel(mat_pow(L.ad(x), d)), d);
}

bool is_cartan(const LieAlgebra& L, const Subspace& c) {
  if (!is_subalgebra(L, c)) return false;
  if (!is_nilpotent(restrict_to(L, c))) return false;
  return normalizer(L, c) == c;
}

// ad(h) nonzero, diagonalizable, spectrum in Q(i).
bool split_semisimple(const LieAlgebra& L, const Vec& h) {
  const Matrix a = L.ad(h);
  if (a.is_zero()) return false;
  std::vector<Eigenvalue> ev;
  try {
    ev = eigenvalues(a);
  } catch (const IrrationalSpectrum&) {
    return false;
  }
  std::size_t total = 0;
  for (const auto& e : ev) total += eigenspace(a, e.value).size();
  return total == L.dim();
}

Vec combine(const std::vector<Vec>& basis, const std::vector<long>& coeffs, std::size_t d) {
  Vec v(d);
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (coeffs[i])
      for (std::size_t k = 0; k < d; ++k) v[k] += Scalar(coeffs[i]) * basis[i][k];
  return v;
}

}  // namespace

CartanData cartan_from_subspace(const LieAlgebra& L, const Subspace& csa) {
  if (csa.ambient() != L.dim()) throw DimensionMismatch(csa.ambient(), L.dim());
  if (!is_cartan(L, csa)) throw DomainError("subspace is not a Cartan subalgebra");
  // a regular element: generic combination whose generalized null space is csa
  std::mt19937_64 rng(0);
  for (int t = 0; t < 64; ++t) {
    std::vector<long> c(csa.dim());
    for (auto& x : c) x = static_cast<long>(rng() % 11) - 5;
    Vec x = combine(csa.basis(), c, L.dim());
    if (generalized_null_space(L, x) == csa) return {csa, x};
  }
  return {csa, csa.dim() ? csa.basis()[0] : Vec(L.dim())};
}

CartanData find_cartan(const LieAlgebra& L, const CartanOptions& opts) {
  const std::size_t d = L.dim();
  if (d == 0) return {Subspace(0), {}};
  std::mt19937_64 rng(opts.seed);
  unsigned budget = opts.trial_budget;

  std::vector<Vec> torus;
  while (true) {
    const Subspace t = Subspace::span(torus, d);
    const Subspace z = centralizer(L, t);
    if (z.dim() == t.dim()) break;
    bool found = false;
    for (const auto& b : z.basis())
      if (!t.contains(b) && split_semisimple(L, b)) {
        torus.push_back(b);
        found = true;
        break;
      }
    while (!found && budget > 0) {
      --budget;
      std::vector<long> c(z.dim());
      for (auto& x : c) x = rng() % 2 ? static_cast<long>(rng() % 7) - 3 : 0;
      Vec v = combine(z.basis(), c, d);
      if (!t.contains(v) && split_semisimple(L, v)) {
        torus.push_back(std::move(v));
        found = true;
      }
    }
    if (!found) break;
  }

  if (!torus.empty()) {
    const Subspace c = centralizer(L, Subspace::span(torus, d));
    if (is_cartan(L, c)) {
      const Subspace t = Subspace::span(torus, d);
      for (unsigned trial = 0; trial < std::max(opts.trial_budget, 1u); ++trial) {
        std::vector<long> co(t.dim());
        for (auto& x : co) x = static_cast<long>(rng() % (4 * (trial + 1) + 1)) - 2 * (trial + 1);
        Vec x = combine(t.basis(), co, d);
        if (generalized_null_space(L, x) == c) return {c, x};
      }
      return {c, t.basis()[0]};
    }
  }

  // generalized null spaces of random elements, smallest dimension wins
  std::optional<CartanData> best;
  for (unsigned trial = 0; trial < std::max(opts.trial_budget, 1u); ++trial) {
    Vec x(d);
    for (auto& s : x) s = Scalar(static_cast<long>(rng() % 11) - 5);
    Subspace g = generalized_null_space(L, x);
    if (!best || g.dim() < best->csa.dim()) best = CartanData{g, x};
  }
  if (best && is_cartan(L, best->csa)) return *best;
  throw CartanNotFound("no verified Cartan subalgebra within the trial budget");
}

RootData root_decomposition(const LieAlgebra& L, const CartanData& c) {
  const std::size_t d = L.dim();
  if (!is_semisimple(L)) throw DomainError("root decomposition requires a semisimple algebra");

  struct Block {
    Vec weight;
    Subspace space;
  };
  std::vector<Block> blocks{{Vec{}, Subspace::whole(d)}};
  for (const auto& h : c.csa.basis()) {
    const Matrix adh = L.ad(h);
    std::vector<Block> next;
    for (const auto& b : blocks) {
      const std::size_t m = b.space.dim();
      Matrix restricted(m, m);
      for (std::size_t j = 0; j < m; ++j) {
        const Vec img = adh * std::span<const Scalar>(b.space.basis()[j]);
        VFL_ASSERT(b.space.contains(img), "weight space is not ad(h)-stable");
        const Vec co = b.space.coordinates(img);
        for (std::size_t i = 0; i < m; ++i) restricted(i, j) = co[i];
      }
      for (const auto& ev : eigenvalues(restricted)) {
        std::vector<Vec> gens;
        for (const auto& v : generalized_eigenspace(restricted, ev.value, ev.multiplicity)) {
          Vec amb(d);
          for (std::size_t j = 0; j < m; ++j)
            if (!v[j].is_zero())
              for (std::size_t k = 0; k < d; ++k) amb[k] += v[j] * b.space.basis()[j][k];
          gens.push_back(std::move(amb));
        }
        Vec w = b.weight;
        w.push_back(ev.value);
        next.push_back({std::move(w), Subspace::span(gens, d)});
      }
    }
    blocks = std::move(next);
  }

  RootData out{c, {}, Subspace(d)};
  for (auto& b : blocks) {
    if (is_zero(b.weight))
      out.zero_space = std::move(b.space);
    else
      out.roots.push_back({std::move(b.weight), std::move(b.space)});
  }
  std::sort(out.roots.begin(), out.roots.end(),
            [](const RootSpace& a, const RootSpace& b) { return a.root < b.root; });
  VFL_ASSERT(out.zero_space == c.csa, "zero weight space differs from the Cartan subalgebra");
  for (const auto& r : out.roots) VFL_ASSERT(r.space.dim() == 1, "root space is not one-dimensional");
  return out;
}

bool is_positive_root(const Vec& root) {
  for (const auto& c : root) {
    if (sgn(c.re()) != 0) return sgn(c.re()) > 0;
    if (sgn(c.im()) != 0) return sgn(c.im()) > 0;
  }
  return false;
}

SimpleSystem simple_system(const LieAlgebra& L, const RootData& r) {
  SimpleSystem s;
  for (std::size_t k = 0; k < r.roots.size(); ++k)
    if (is_positive_root(r.roots[k].root)) s.positive.push_back(k);
  auto add = [](const Vec& a, const Vec& b) {
    Vec v = a;
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += b[i];
    return v;
  };
  for (auto k : s.positive) {
    bool decomposable = false;
    for (std::size_t a = 0; a < s.positive.size() && !decomposable; ++a)
      for (std::size_t b = a; b < s.positive.size() && !decomposable; ++b)
        decomposable = add(r.roots[s.positive[a]].root, r.roots[s.positive[b]].root) == r.roots[k].root;
    if (!decomposable) s.simple.push_back(k);
  }

  // (a, b) = a^T K_h^{-1} b with K_h the Killing form on the CSA basis
  const auto& hb = r.cartan.csa.basis();
  const std::size_t rk = hb.size();
  const Matrix k = killing_form(L);
  Matrix kh(rk, rk);
  for (std::size_t i = 0; i < rk; ++i) {
    const Vec khj = k * std::span<const Scalar>(hb[i]);
    for (std::size_t j = 0; j < rk; ++j) {
      Scalar t;
      for (std::size_t q = 0; q < khj.size(); ++q) t += khj[q] * hb[j][q];
      kh(i, j) = t;
    }
  }
  std::vector<Vec> dual;  // K_h^{-1} alpha_j
  for (auto idx : s.simple) {
    auto sol = mat_solve(kh, r.roots[idx].root);
    VFL_ASSERT(sol && sol->kernel.empty(), "Killing form is degenerate on the Cartan subalgebra");
    dual.push_back(sol->particular);
  }
  const std::size_t n = s.simple.size();
  Matrix g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Scalar t;
      for (std::size_t q = 0; q < rk; ++q) t += r.roots[s.simple[i]].root[q] * dual[j][q];
      g(i, j) = t;
    }
  s.cartan = cartan_matrix_from_gram(g);
  s.classification = classify_cartan_matrix(s.cartan);
  return s;
}

TypeLabel identify_type(const LieAlgebra& L, const RootData& r) {
  return simple_system(L, r).classification.label;
}

ChevalleyNormalization chevalley_normalize(const LieAlgebra& L, const RootData& r) {
  const SimpleSystem s = simple_system(L, r);
  ChevalleyAlgebra target = chevalley_constants(s.classification.label);
  const std::size_t rk = target.rank(), npos = target.num_positive();
  VFL_ASSERT(rk + 2 * npos == L.dim(), "dimension differs from the identified type");

  auto root_space_vector = [&](const Vec& root) -> Vec {
    for (const auto& rs : r.roots)
      if (rs.root == root) return rs.space.basis()[0];
    throw InternalError("missing root space");
  };
  auto scaled = [](Vec v, const Scalar& c) {
    for (auto& x : v) x *= c;
    return v;
  };

  std::vector<Vec> e(target.roots().size()), h(rk);
  for (std::size_t i = 0; i < rk; ++i) {
    const Vec& root = r.roots[s.simple[s.classification.order[i]]].root;
    Vec neg = root;
    for (auto& x : neg) x = -x;
    Vec ei = root_space_vector(root), fi = root_space_vector(neg);
    Vec hi = L.bracket(ei, fi);
    Vec he = L.bracket(hi, ei);
    std::size_t p = 0;
    while (ei[p].is_zero()) ++p;
    const Scalar c = he[p] / ei[p];
    VFL_ASSERT(!c.is_zero(), "degenerate sl2 triple");
    fi = scaled(fi, Scalar(2) / c);
    e[i] = ei;
    e[i + npos] = fi;
    h[i] = L.bracket(ei, fi);
  }
  for (std::size_t k = rk; k < npos; ++k) {
    const auto [g, dd] = target.extraspecial(k);
    e[k] = scaled(L.bracket(e[g], e[dd]), target.N(g, dd).inverse());
    e[k + npos] = scaled(L.bracket(e[g + npos], e[dd + npos]), target.N(g + npos, dd + npos).inverse());
  }

  ChevalleyNormalization out{std::move(target), h};
  out.basis.insert(out.basis.end(), e.begin(), e.end());
  VFL_ASSERT(change_basis(L, out.basis) == out.target.algebra(),
             "normalized basis does not reproduce the Chevalley constants");
  return out;
}

}  // namespace vfl
