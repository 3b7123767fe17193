#include "modsearch.hpp"

#include <algorithm>
#include <numeric>

#include "dsl.hpp"
#include "errors.hpp"
#include "spectrum.hpp"

namespace vfl {

namespace {

unsigned key_degree(const TermKey& k) { return std::accumulate(k.alpha.begin(), k.alpha.end(), 0u); }

void all_alphas(std::size_t n, unsigned d, MultiIndex& cur, std::size_t pos, std::vector<MultiIndex>& out) {
  if (pos == n) {
    out.push_back(cur);
    return;
  }
  const unsigned used = std::accumulate(cur.begin(), cur.begin() + static_cast<long>(pos), 0u);
  for (unsigned a = 0; a + used <= d; ++a) {
    cur[pos] = a;
    all_alphas(n, d, cur, pos + 1, out);
  }
  cur[pos] = 0;
}

}  // namespace

std::string root_str(const RootCoeffs& r) {
  std::string s = "(";
  for (std::size_t i = 0; i < r.size(); ++i) s += (i ? "," : "") + std::to_string(r[i]);
  return s + ")";
}

std::vector<RootEmbedding> simple_root_embedding(const LiePresentation& s, const ChevalleyNormalization& n) {
  const std::size_t rk = n.target.rank(), npos = n.target.num_positive();
  std::vector<RootEmbedding> out;
  for (std::size_t i = 0; i < rk; ++i) {
    RootCoeffs r(rk, 0);
    r[i] = 1;
    out.push_back({r, s.field(n.basis[rk + i]), s.field(n.basis[rk + npos + i])});
  }
  return out;
}

// ---------------------------------------------------------------------------
// AnsatzSpace

AnsatzSpace::AnsatzSpace(std::size_t dim, unsigned degree, std::vector<Vec> freqs)
    : dim_(dim), degree_(degree), freqs_(std::move(freqs)) {
  if (freqs_.empty()) freqs_.push_back(Vec(dim));
  for (const auto& l : freqs_)
    if (l.size() != dim) throw DimensionMismatch(l.size(), dim);
  std::vector<MultiIndex> alphas;
  MultiIndex cur(dim, 0);
  all_alphas(dim, degree, cur, 0, alphas);
  std::sort(alphas.begin(), alphas.end(), [&](const MultiIndex& a, const MultiIndex& b) {
    return TermKeyLess{}(TermKey{a, Vec(dim)}, TermKey{b, Vec(dim)});
  });
  for (std::size_t i = 0; i < freqs_.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (freqs_[i] == freqs_[j]) throw DomainError("repeated frequency in the ansatz");
  for (const auto& l : freqs_)
    for (const auto& a : alphas)
      for (std::size_t k = 0; k < dim; ++k) {
        TermKey key{a, l};
        keys_.push_back({k, key});
        basis_.push_back(VectorField::along(k, CoeffFn::term(dim, key, Scalar(1))));
      }
  index();
}

void AnsatzSpace::index() {
  index_.clear();
  for (std::size_t i = 0; i < keys_.size(); ++i) index_[keys_[i]] = i;
}

bool AnsatzSpace::polynomial() const {
  return freqs_.size() == 1 && is_zero(freqs_[0]);
}

AnsatzSpace AnsatzSpace::reordered(const std::vector<std::size_t>& perm) const {
  if (perm.size() != size()) throw DimensionMismatch(perm.size(), size());
  AnsatzSpace out;
  out.dim_ = dim_;
  out.degree_ = degree_;
  out.freqs_ = freqs_;
  for (auto p : perm) {
    out.keys_.push_back(keys_.at(p));
    out.basis_.push_back(basis_.at(p));
  }
  out.index();
  if (out.index_.size() != size()) throw DomainError("not a permutation");
  return out;
}

std::optional<Vec> AnsatzSpace::coordinates(const VectorField& v) const {
  if (v.dim() != dim_) throw DimensionMismatch(v.dim(), dim_);
  Vec out(size());
  for (std::size_t k = 0; k < dim_; ++k)
    for (const auto& [key, c] : v[k].terms()) {
      auto it = index_.find(FieldKey{k, key});
      if (it == index_.end()) return std::nullopt;
      out[it->second] = c;
    }
  return out;
}

VectorField AnsatzSpace::field(std::span<const Scalar> coords) const {
  if (coords.size() != size()) throw DimensionMismatch(coords.size(), size());
  std::vector<CoeffFn> comps(dim_, CoeffFn(dim_));
  for (std::size_t i = 0; i < coords.size(); ++i)
    if (!coords[i].is_zero()) comps[keys_[i].comp].add_term(keys_[i].key, coords[i]);
  return VectorField(std::move(comps));
}

VectorField SolutionFamily::at(std::span<const Scalar> params) const {
  if (params.size() != directions.size()) throw DimensionMismatch(params.size(), directions.size());
  VectorField out = particular;
  for (std::size_t i = 0; i < params.size(); ++i)
    if (!params[i].is_zero()) out += directions[i] * params[i];
  return out;
}

// ---------------------------------------------------------------------------
// highest weight vectors

BorelChoice borel_from_roots(const LiePresentation& s, const RootData& r, bool opposite) {
  const SimpleSystem ss = simple_system(s.algebra, r);
  BorelChoice b;
  for (const auto& h : r.cartan.csa.basis()) b.cartan.push_back(s.field(h));
  for (auto k : ss.simple) {
    if (!opposite) {
      b.positives.push_back(s.field(r.roots[k].space.basis()[0]));
      continue;
    }
    Vec neg = r.roots[k].root;
    for (auto& c : neg) c = -c;
    auto it = std::find_if(r.roots.begin(), r.roots.end(), [&](const RootSpace& x) { return x.root == neg; });
    VFL_ASSERT(it != r.roots.end(), "negative of a simple root is not a root");
    b.positives.push_back(s.field(it->space.basis()[0]));
  }
  return b;
}

namespace {

// Matrix of ad(g) on A; throws Truncation when the image leaves A.
Matrix ad_on_ansatz(const VectorField& g, const AnsatzSpace& a) {
  Matrix m(a.size(), a.size());
  for (std::size_t j = 0; j < a.size(); ++j) {
    const VectorField img = vf_bracket(g, a.basis()[j]);
    auto c = a.coordinates(img);
    if (!c)
      throw Truncation("ad(" + print_field(g) + ") maps " + print_field(a.basis()[j]) +
                       " outside the ansatz; raise the degree or widen the frequencies");
    for (std::size_t i = 0; i < a.size(); ++i) m(i, j) = (*c)[i];
  }
  return m;
}

// Coordinates in A of a basis of span(S) intersected with A.
Subspace presentation_in_ansatz(const LiePresentation& s, const AnsatzSpace& a) {
  std::vector<VectorField> all = a.basis();
  all.insert(all.end(), s.basis.begin(), s.basis.end());
  FieldCoordinates fc(all);
  const std::size_t m = a.size(), d = s.dim();
  Matrix big(fc.size(), m + d);
  for (std::size_t j = 0; j < m + d; ++j) {
    const Vec c = fc.coords(all[j]);
    for (std::size_t i = 0; i < c.size(); ++i) big(i, j) = j < m ? c[i] : -c[i];
  }
  std::vector<Vec> gens;
  for (const auto& k : mat_kernel(big)) gens.emplace_back(k.begin(), k.begin() + static_cast<long>(m));
  return Subspace::span(gens, m);
}

}  // namespace

BorelChoice stable_borel(const LiePresentation& s, const RootData& r, const AnsatzSpace& a) {
  for (bool opposite : {false, true}) {
    BorelChoice b = borel_from_roots(s, r, opposite);
    const bool stable = std::all_of(b.positives.begin(), b.positives.end(), [&](const VectorField& e) {
      return std::all_of(a.basis().begin(), a.basis().end(),
                         [&](const VectorField& v) { return a.coordinates(vf_bracket(e, v)).has_value(); });
    });
    if (stable) return b;
  }
  throw Truncation("no Borel subalgebra of the given root data preserves the ansatz");
}

std::vector<WeightVector> highest_weight_vectors(const LiePresentation& s, const BorelChoice& b,
                                                 const AnsatzSpace& a) {
  if (s.N != a.dim()) throw DimensionMismatch(s.N, a.dim());
  const std::size_t m = a.size();
  std::vector<Matrix> ads_e, ads_h;
  for (const auto& e : b.positives) ads_e.push_back(ad_on_ansatz(e, a));
  for (const auto& h : b.cartan) ads_h.push_back(ad_on_ansatz(h, a));

  Matrix stacked(m * ads_e.size(), m);
  for (std::size_t q = 0; q < ads_e.size(); ++q)
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) stacked(q * m + i, j) = ads_e[q](i, j);
  Subspace kernel = ads_e.empty() ? Subspace::whole(m) : Subspace::span(mat_kernel(stacked), m);

  struct Block {
    Vec weight;
    Subspace space;
  };
  std::vector<Block> blocks{{Vec{}, kernel}};
  for (const auto& adh : ads_h) {
    std::vector<Block> next;
    for (const auto& blk : blocks) {
      const std::size_t k = blk.space.dim();
      if (k == 0) continue;
      Matrix restricted(k, k);
      for (std::size_t j = 0; j < k; ++j) {
        const Vec img = adh * std::span<const Scalar>(blk.space.basis()[j]);
        VFL_ASSERT(blk.space.contains(img), "joint kernel is not ad(h)-stable");
        const Vec co = blk.space.coordinates(img);
        for (std::size_t i = 0; i < k; ++i) restricted(i, j) = co[i];
      }
      for (const auto& ev : eigenvalues(restricted)) {
        std::vector<Vec> gens;
        for (const auto& v : eigenspace(restricted, ev.value)) {
          Vec amb(m);
          for (std::size_t j = 0; j < k; ++j)
            if (!v[j].is_zero())
              for (std::size_t q = 0; q < m; ++q) amb[q] += v[j] * blk.space.basis()[j][q];
          gens.push_back(std::move(amb));
        }
        Vec w = blk.weight;
        w.push_back(ev.value);
        next.push_back({std::move(w), Subspace::span(gens, m)});
      }
    }
    blocks = std::move(next);
  }
  std::sort(blocks.begin(), blocks.end(), [](const Block& x, const Block& y) { return x.weight < y.weight; });

  const Subspace in_s = presentation_in_ansatz(s, a);
  std::vector<WeightVector> out;
  for (const auto& blk : blocks) {
    const Subspace inter = subspace_intersection(blk.space, in_s);
    std::vector<Vec> reduced;
    for (Vec v : blk.space.basis()) {
      for (std::size_t r = 0; r < inter.dim(); ++r) {
        const Scalar c = v[inter.pivots()[r]];
        if (!c.is_zero())
          for (std::size_t q = 0; q < m; ++q) v[q] -= c * inter.basis()[r][q];
      }
      reduced.push_back(std::move(v));
    }
    const Subspace reps = Subspace::span(reduced, m);
    for (const auto& rep : reps.basis()) out.push_back({a.field(rep), blk.weight});
  }

  for (const auto& w : out) {
    for (const auto& e : b.positives)
      VFL_ASSERT(vf_bracket(e, w.field).is_zero(), "highest weight vector not annihilated by a positive generator");
    for (std::size_t i = 0; i < b.cartan.size(); ++i)
      VFL_ASSERT(vf_bracket(b.cartan[i], w.field) == w.field * w.weight[i], "weight equation fails");
  }
  return out;
}

// ---------------------------------------------------------------------------
// linear relations

namespace {

class RelationSystem {
public:
  RelationSystem(const std::vector<VectorField>& known, const std::vector<Relation>& rels, const AnsatzSpace& a)
      : known_(known), rels_(rels), a_(a) {
    for (const auto& r : rels) {
      if (r.lhs >= known.size()) throw DomainError("relation refers to an unknown label");
      for (const auto& [j, c] : r.rhs)
        if (j >= known.size()) throw DomainError("relation refers to an unknown label");
    }
    for (const auto& k : known)
      if (k.dim() != a.dim()) throw DimensionMismatch(k.dim(), a.dim());
    for (const auto& r : rels) {
      std::vector<VectorField> img;
      for (const auto& b : a.basis()) {
        VectorField t = vf_bracket(known[r.lhs], b);
        if (!r.mu.is_zero()) t -= b * r.mu;
        fc_.include(t);
        img.push_back(std::move(t));
      }
      images_.push_back(std::move(img));
      VectorField rhs(a.dim());
      for (const auto& [j, c] : r.rhs) rhs += known[j] * c;
      fc_.include(rhs);
      rhs_.push_back(std::move(rhs));
    }
    for (const auto& r : images_) {
      std::vector<Vec> cols;
      for (const auto& t : r) cols.push_back(fc_.coords(t));
      cols_.push_back(std::move(cols));
    }
    for (const auto& r : rhs_) rhs_coords_.push_back(fc_.coords(r));
    for (std::size_t i = 0; i < fc_.size(); ++i) {
      Vec e(fc_.size());
      e[i] = Scalar(1);
      const VectorField f = fc_.field(e, a.dim());
      for (std::size_t k = 0; k < f.dim(); ++k)
        if (!f[k].is_zero()) key_degree_.push_back(key_degree(f[k].terms().begin()->first));
    }
  }

  // Relations [0, end); max_degree filters equation rows by term degree.
  std::optional<Solution> solve(std::size_t end, std::optional<unsigned> max_degree = std::nullopt) const {
    std::vector<Vec> rows;
    Vec b;
    for (std::size_t r = 0; r < end; ++r)
      for (std::size_t key = 0; key < fc_.size(); ++key) {
        if (max_degree && key_degree_[key] > *max_degree) continue;
        Vec row(a_.size());
        bool nz = !rhs_coords_[r][key].is_zero();
        for (std::size_t j = 0; j < a_.size(); ++j) {
          row[j] = cols_[r][j][key];
          nz = nz || !row[j].is_zero();
        }
        if (!nz) continue;
        rows.push_back(std::move(row));
        b.push_back(rhs_coords_[r][key]);
      }
    if (rows.empty()) {
      Solution s{Vec(a_.size()), {}};
      for (std::size_t j = 0; j < a_.size(); ++j) {
        Vec e(a_.size());
        e[j] = Scalar(1);
        s.kernel.push_back(std::move(e));
      }
      return s;
    }
    return mat_solve(Matrix::from_rows(rows, a_.size()), b);
  }

  VectorField residual(std::size_t r, const VectorField& w) const {
    VectorField t = vf_bracket(known_[rels_[r].lhs], w);
    if (!rels_[r].mu.is_zero()) t -= w * rels_[r].mu;
    return t - rhs_[r];
  }

  SolutionFamily family(const Solution& s) const {
    SolutionFamily f{a_.field(s.particular), {}};
    for (const auto& k : s.kernel) f.directions.push_back(a_.field(k));
    return f;
  }

  std::size_t size() const { return rels_.size(); }

private:
  const std::vector<VectorField>& known_;
  const std::vector<Relation>& rels_;
  const AnsatzSpace& a_;
  FieldCoordinates fc_;
  std::vector<std::vector<VectorField>> images_;
  std::vector<VectorField> rhs_;
  std::vector<std::vector<Vec>> cols_;
  std::vector<Vec> rhs_coords_;
  std::vector<unsigned> key_degree_;
};

// Output terms of [K, W] - mu W have degree >= deg W - 1, so inconsistency
// of the equations of degree <= d - 1 over A_d persists for every d' >= d.
bool filtration_certifies(const RelationSystem& sys, std::size_t end, const AnsatzSpace& a) {
  if (a.degree() == 0) return false;
  return !sys.solve(end, a.degree() - 1);
}

RelationFailure failure_at(const RelationSystem& sys, std::size_t r, const AnsatzSpace& a) {
  VectorField w(a.dim());
  if (r > 0) {
    auto prev = sys.solve(r);
    VFL_ASSERT(prev.has_value(), "earlier relations already inconsistent");
    w = a.field(prev->particular);
  }
  return {r, sys.residual(r, w), filtration_certifies(sys, r + 1, a)};
}

}  // namespace

RelationResult extend_by_relations(const std::vector<VectorField>& known, const std::vector<Relation>& rels,
                                   const AnsatzSpace& a) {
  RelationSystem sys(known, rels, a);
  if (auto s = sys.solve(rels.size())) {
    return sys.family(*s);
  }
  for (std::size_t r = 0; r < rels.size(); ++r)
    if (!sys.solve(r + 1)) return failure_at(sys, r, a);
  throw InternalError("inconsistent system with consistent prefixes");
}

// ---------------------------------------------------------------------------
// staged extension

namespace {

using Mono = std::vector<std::size_t>;  // sorted parameter indices, length <= 2
using PField = std::map<Mono, VectorField>;

Mono mono_mul(const Mono& a, const Mono& b) {
  Mono m = a;
  m.insert(m.end(), b.begin(), b.end());
  std::sort(m.begin(), m.end());
  return m;
}

void pf_add(PField& acc, const Mono& m, const VectorField& f) {
  if (f.is_zero()) return;
  auto it = acc.find(m);
  if (it == acc.end()) {
    acc.emplace(m, f);
    return;
  }
  it->second += f;
  if (it->second.is_zero()) acc.erase(it);
}

PField pf_bracket(const PField& a, const PField& b) {
  PField out;
  for (const auto& [ma, fa] : a)
    for (const auto& [mb, fb] : b) pf_add(out, mono_mul(ma, mb), vf_bracket(fa, fb));
  return out;
}

VectorField pf_at(const PField& p, std::span<const Scalar> s, std::size_t dim) {
  VectorField out(dim);
  for (const auto& [m, f] : p) {
    Scalar c(1);
    for (auto i : m) c *= s[i];
    if (!c.is_zero()) out += f * c;
  }
  return out;
}

struct Family {
  VectorField particular;
  std::vector<VectorField> directions;  // one per global parameter
  PField as_pfield() const {
    PField p;
    pf_add(p, {}, particular);
    for (std::size_t i = 0; i < directions.size(); ++i) pf_add(p, {i}, directions[i]);
    return p;
  }
};

// Scalar equations of a field-valued polynomial relation, keyed by term.
using Poly = std::map<Mono, Scalar>;

std::vector<Poly> equations(const PField& e) {
  std::map<FieldKey, Poly, FieldKeyLess> by_key;
  for (const auto& [m, f] : e)
    for (std::size_t k = 0; k < f.dim(); ++k)
      for (const auto& [key, c] : f[k].terms()) by_key[FieldKey{k, key}][m] += c;
  std::vector<Poly> out;
  for (auto& [k, p] : by_key) {
    std::erase_if(p, [](const auto& kv) { return kv.second.is_zero(); });
    if (!p.empty()) out.push_back(std::move(p));
  }
  return out;
}

std::size_t poly_degree(const Poly& p) {
  std::size_t d = 0;
  for (const auto& [m, c] : p) d = std::max(d, m.size());
  return d;
}

std::string basis_name(const ChevalleyAlgebra& t, std::size_t i) {
  if (i < t.rank()) return "h" + std::to_string(i + 1);
  return "e" + root_str(t.roots()[i - t.rank()]);
}

// Every monomial field x^alpha d/dx_k of weight gamma has degree <= d (or
// there is none). Needs diagonal linear Cartan fields sum c_i x_i d/dx_i and
// a polynomial ansatz; then alpha solves C alpha = gamma + c_k. Coordinates
// fixed by that system must be nonnegative integers; a free coordinate is
// treated as unbounded.
bool weight_space_bounded(const std::vector<VectorField>& hs, const Vec& gamma, const AnsatzSpace& a) {
  if (!a.polynomial()) return false;
  const std::size_t n = a.dim(), r = hs.size();
  Matrix c(r, n);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const CoeffFn& f = hs[i][k];
      MultiIndex unit(n, 0);
      unit[k] = 1;
      const TermKey lin{unit, Vec(n)};
      if (f.size() > 1 || (f.size() == 1 && !(f.terms().begin()->first == lin))) return false;
      c(i, k) = f.coefficient(lin);
    }
  auto natural = [](const Scalar& x) { return x.is_real() && x.re().get_den() == 1 && sgn(x.re()) >= 0; };
  for (std::size_t k = 0; k < n; ++k) {
    Vec rhs = gamma;
    for (std::size_t i = 0; i < r; ++i) rhs[i] += c(i, k);
    auto sol = mat_solve(c, rhs);
    if (!sol) continue;
    bool possible = true, free = false;
    unsigned deg = 0;
    for (std::size_t i = 0; i < n && possible; ++i) {
      bool fixed = true;
      for (const auto& kv : sol->kernel) fixed = fixed && kv[i].is_zero();
      if (!fixed) {
        free = true;
        continue;
      }
      if (!natural(sol->particular[i])) possible = false;
      else deg += static_cast<unsigned>(sol->particular[i].re().get_num().get_ui());
    }
    if (!possible) continue;
    if (free || deg > a.degree()) return false;
  }
  return true;
}

}  // namespace

StagedResult staged_extension_protocol(const ChevalleyAlgebra& target, const std::vector<RootEmbedding>& embedding,
                                       const AnsatzSpace& a) {
  const LieAlgebra& T = target.algebra();
  const std::size_t rk = target.rank(), dim = T.dim(), n = a.dim();
  std::vector<std::optional<VectorField>> x(dim);
  std::vector<bool> from_s(dim, false);

  // simple generators of S and the Cartan subalgebra they span
  std::vector<VectorField> hb;
  std::vector<Vec> coroots;
  for (const auto& em : embedding) {
    if (em.e.dim() != n) throw DimensionMismatch(em.e.dim(), n);
    if (em.f.dim() != n) throw DimensionMismatch(em.f.dim(), n);
    auto pos = target.root_index(em.root);
    RootCoeffs neg = em.root;
    for (auto& c : neg) c = -c;
    auto ng = target.root_index(neg);
    if (!pos || !ng) throw DomainError("embedding uses " + root_str(em.root) + ", not a root of the target");
    const VectorField h = vf_bracket(em.e, em.f);
    if (!(vf_bracket(h, em.e) == em.e * Scalar(2)) || !(vf_bracket(h, em.f) == em.f * Scalar(-2)))
      throw DomainError("embedded generators for " + root_str(em.root) + " are not an sl2 triple");
    x[rk + *pos] = em.e;
    x[rk + *ng] = em.f;
    hb.push_back(h);
    coroots.push_back(target.coroot(em.root));
  }
  {
    const Matrix c = Matrix::from_rows(coroots, rk).transpose();  // rk x |embedding|
    for (std::size_t k = 0; k < rk; ++k) {
      Vec unit(rk);
      unit[k] = Scalar(1);
      auto sol = mat_solve(c, unit);
      if (!sol) throw DomainError("embedded roots do not span the Cartan subalgebra of the target");
      VectorField h(n);
      for (std::size_t j = 0; j < hb.size(); ++j)
        if (!sol->particular[j].is_zero()) h += hb[j] * sol->particular[j];
      x[k] = h;
    }
  }
  // close under brackets of known root vectors
  for (bool grew = true; grew;) {
    grew = false;
    for (std::size_t i = rk; i < dim; ++i)
      for (std::size_t j = rk; j < dim; ++j) {
        if (!x[i] || !x[j]) continue;
        for (std::size_t k = rk; k < dim; ++k) {
          const Scalar c = T.c(i, j, k);
          if (c.is_zero() || x[k]) continue;
          x[k] = vf_bracket(*x[i], *x[j]) * c.inverse();
          grew = true;
        }
      }
  }
  for (std::size_t i = 0; i < dim; ++i) from_s[i] = x[i].has_value();
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = i + 1; j < dim; ++j) {
      if (!x[i] || !x[j]) continue;
      VectorField rhs(n);
      bool known_rhs = true;
      for (std::size_t k = 0; k < dim; ++k) {
        const Scalar c = T.c(i, j, k);
        if (c.is_zero()) continue;
        if (!x[k]) known_rhs = false;
        else rhs += *x[k] * c;
      }
      if (known_rhs && !(vf_bracket(*x[i], *x[j]) == rhs))
        throw DomainError("embedding is inconsistent with the target at [" + basis_name(target, i) + ", " +
                          basis_name(target, j) + "]");
    }

  StagedResult out{StagedOutcome::Feasible, {}, std::nullopt, std::nullopt};
  std::vector<VectorField> hs;
  for (std::size_t k = 0; k < rk; ++k) hs.push_back(*x[k]);

  auto make_report = [&](std::size_t stage, const RootCoeffs& root, std::size_t rel, std::string relation,
                         VectorField residual, bool indep, std::string reason) {
    return InfeasibilityReport{stage, root, rel, std::move(relation), std::move(residual), a.degree(),
                               a.freqs(), indep, std::move(reason)};
  };

  // linear stages
  std::map<std::size_t, Family> families;
  std::size_t nparams = 0;
  std::vector<std::size_t> pending;
  for (std::size_t i = rk; i < dim; ++i)
    if (!x[i]) pending.push_back(i);
  std::size_t stage = 0;
  while (!pending.empty()) {
    // relations against fixed elements that are linear in the unknown
    auto linear_relations = [&](std::size_t u) {
      std::vector<std::size_t> as;
      for (std::size_t p = 0; p < dim; ++p) {
        if (!x[p]) continue;
        bool ok = true;
        for (std::size_t k = 0; k < dim && ok; ++k)
          if (!T.c(p, u, k).is_zero() && k != u && !x[k]) ok = false;
        if (ok) as.push_back(p);
      }
      return as;
    };
    std::size_t best = 0, best_count = 0;
    for (std::size_t q = 0; q < pending.size(); ++q) {
      const std::size_t cnt = linear_relations(pending[q]).size();
      if (q == 0 || cnt > best_count) {
        best = q;
        best_count = cnt;
      }
    }
    const std::size_t u = pending[best];
    pending.erase(pending.begin() + static_cast<long>(best));
    ++stage;
    const RootCoeffs& root = target.roots()[u - rk];

    std::vector<VectorField> known;
    std::vector<std::size_t> pos(dim, dim);
    for (std::size_t p = 0; p < dim; ++p)
      if (x[p]) {
        pos[p] = known.size();
        known.push_back(*x[p]);
      }
    std::vector<Relation> rels;
    std::vector<std::string> names;
    for (auto p : linear_relations(u)) {
      Relation r{pos[p], {}, T.c(p, u, u)};
      for (std::size_t k = 0; k < dim; ++k)
        if (k != u && !T.c(p, u, k).is_zero()) r.rhs.push_back({pos[k], T.c(p, u, k)});
      rels.push_back(std::move(r));
      names.push_back("[" + basis_name(target, p) + ", " + basis_name(target, u) + "]");
    }
    Vec gamma(rk);
    for (std::size_t i = 0; i < rk; ++i) gamma[i] = T.c(i, u, u);
    const bool bounded = weight_space_bounded(hs, gamma, a);

    RelationSystem sys(known, rels, a);
    auto sol = sys.solve(rels.size());
    if (!sol) {
      std::size_t r = 0;
      while (sys.solve(r + 1)) ++r;
      RelationFailure f = failure_at(sys, r, a);
      out.outcome = StagedOutcome::Infeasible;
      out.report = make_report(stage, root, r + 1, names[r], f.residual, f.degree_independent || bounded,
                               "relations for the root vector are inconsistent");
      out.stages.push_back({root, rels.size(), 0});
      return out;
    }
    SolutionFamily fam = sys.family(*sol);
    if (fam.only_zero()) {
      std::size_t r = 0;
      while (true) {
        auto s = sys.solve(r + 1);
        if (s && !sys.family(*s).only_zero()) ++r;
        else break;
      }
      VectorField w(n);
      if (r > 0) {
        SolutionFamily prev = sys.family(*sys.solve(r));
        w = prev.particular.is_zero() ? prev.directions.front() : prev.particular;
      } else {
        w = a.basis().front();
      }
      out.outcome = StagedOutcome::Infeasible;
      out.report = make_report(stage, root, r + 1, names[r], sys.residual(r, w), bounded,
                               "the root vector is forced to vanish");
      out.stages.push_back({root, rels.size(), 0});
      return out;
    }
    out.stages.push_back({root, rels.size(), fam.directions.size()});
    if (fam.directions.empty()) {
      x[u] = fam.particular;
      continue;
    }
    Family f{fam.particular, {}};
    f.directions.assign(nparams, VectorField(n));
    for (auto& d : fam.directions) f.directions.push_back(std::move(d));
    nparams += fam.directions.size();
    families[u] = std::move(f);
  }
  for (auto& [u, f] : families) f.directions.resize(nparams, VectorField(n));

  // closure stage: every bracket not already verified among elements of S
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = i + 1; j < dim; ++j)
      if (!from_s[i] || !from_s[j]) pairs.push_back({i, j});
  ++stage;
  auto element = [&](std::size_t i) {
    if (x[i]) {
      PField p;
      pf_add(p, {}, *x[i]);
      return p;
    }
    return families.at(i).as_pfield();
  };
  auto relation_field = [&](std::size_t q) {
    const auto [i, j] = pairs[q];
    PField e = pf_bracket(element(i), element(j));
    for (std::size_t k = 0; k < dim; ++k) {
      const Scalar c = T.c(i, j, k);
      if (c.is_zero()) continue;
      for (const auto& [m, f] : element(k)) pf_add(e, m, f * (-c));
    }
    return e;
  };
  auto pair_name = [&](std::size_t q) {
    return "[" + basis_name(target, pairs[q].first) + ", " + basis_name(target, pairs[q].second) + "]";
  };
  auto pair_root = [&](std::size_t q) {
    const auto [i, j] = pairs[q];
    const std::size_t u = (!x[i] || (!from_s[i] && from_s[j])) ? i : j;
    return u < rk ? RootCoeffs(rk, 0) : target.roots()[u - rk];
  };

  while (true) {
    std::vector<PField> rel;
    for (std::size_t q = 0; q < pairs.size(); ++q) rel.push_back(relation_field(q));
    // linear part: equations of degree <= 1, plus t^2 = 0 forcing t = 0
    std::vector<std::vector<Vec>> rows(pairs.size());
    std::vector<Vec> rhs(pairs.size());
    bool informative = false;
    std::optional<std::size_t> first_nonlinear;
    for (std::size_t q = 0; q < pairs.size(); ++q)
      for (const auto& p : equations(rel[q])) {
        const std::size_t deg = poly_degree(p);
        if (deg == 2) {
          if (p.size() == 1 && p.begin()->first[0] == p.begin()->first[1]) {
            Vec row(nparams);
            row[p.begin()->first[0]] = Scalar(1);
            rows[q].push_back(std::move(row));
            rhs[q].push_back(Scalar(0));
            informative = true;
          } else if (!first_nonlinear) {
            first_nonlinear = q;
          }
          continue;
        }
        Vec row(nparams);
        Scalar c0;
        for (const auto& [m, c] : p) {
          if (m.empty()) c0 = c;
          else row[m[0]] = c;
        }
        rows[q].push_back(std::move(row));
        rhs[q].push_back(-c0);
        informative = true;
      }
    if (!informative) {
      if (first_nonlinear) {
        out.outcome = StagedOutcome::Inconclusive;
        out.report = make_report(stage, pair_root(*first_nonlinear), *first_nonlinear + 1, pair_name(*first_nonlinear),
                                 pf_at(rel[*first_nonlinear], Vec(nparams), n), false,
                                 "bilinear bracket conditions remain after linear propagation");
        return out;
      }
      break;
    }
    auto solve_prefix = [&](std::size_t end) -> std::optional<Solution> {
      std::vector<Vec> r;
      Vec b;
      for (std::size_t q = 0; q < end; ++q) {
        r.insert(r.end(), rows[q].begin(), rows[q].end());
        b.insert(b.end(), rhs[q].begin(), rhs[q].end());
      }
      if (r.empty()) {
        Solution s{Vec(nparams), {}};
        for (std::size_t i = 0; i < nparams; ++i) {
          Vec e(nparams);
          e[i] = Scalar(1);
          s.kernel.push_back(std::move(e));
        }
        return s;
      }
      if (nparams == 0) {
        for (const auto& v : b)
          if (!v.is_zero()) return std::nullopt;
        return Solution{{}, {}};
      }
      return mat_solve(Matrix::from_rows(r, nparams), b);
    };
    auto sol = solve_prefix(pairs.size());
    if (!sol) {
      std::size_t q = 0;
      while (solve_prefix(q + 1)) ++q;
      const Vec s0 = q ? solve_prefix(q)->particular : Vec(nparams);
      out.outcome = StagedOutcome::Infeasible;
      out.report = make_report(stage, pair_root(q), q + 1, pair_name(q), pf_at(rel[q], s0, n), false,
                               "bracket relations among the solved root vectors are inconsistent");
      return out;
    }
    // substitute t = t0 + M s
    const std::size_t m2 = sol->kernel.size();
    for (auto& [u, f] : families) {
      Family g{f.particular, std::vector<VectorField>(m2, VectorField(n))};
      for (std::size_t i = 0; i < nparams; ++i) {
        if (!sol->particular[i].is_zero()) g.particular += f.directions[i] * sol->particular[i];
        for (std::size_t j = 0; j < m2; ++j)
          if (!sol->kernel[j][i].is_zero()) g.directions[j] += f.directions[i] * sol->kernel[j][i];
      }
      f = std::move(g);
    }
    nparams = m2;
  }

  // assemble with all remaining parameters at zero
  std::vector<VectorField> basis;
  for (std::size_t i = 0; i < dim; ++i) basis.push_back(x[i] ? *x[i] : families.at(i).particular);
  ClosureResult cr = closure_check(basis);
  VFL_ASSERT(std::holds_alternative<LiePresentation>(cr), "assembled extension is not closed");
  LiePresentation p = std::get<LiePresentation>(std::move(cr));
  VFL_ASSERT(p.algebra == T, "assembled extension does not reproduce the target constants");
  out.presentation = std::move(p);
  return out;
}

}  // namespace vfl
