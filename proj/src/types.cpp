#include "types.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "errors.hpp"

namespace vfl {

std::string SimpleType::str() const { return std::string(1, family) + std::to_string(rank); }

bool is_legal(const SimpleType& t) {
  switch (t.family) {
    case 'A': return t.rank >= 1;
    case 'B': return t.rank >= 2;
    case 'C': return t.rank >= 3;
    case 'D': return t.rank >= 4;
    case 'E': return t.rank >= 6 && t.rank <= 8;
    case 'F': return t.rank == 4;
    case 'G': return t.rank == 2;
    default: return false;
  }
}

TypeLabel TypeLabel::parse(std::string_view text) {
  TypeLabel out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t next = text.find('x', pos);
    if (next == std::string_view::npos) next = text.size();
    std::string_view part = text.substr(pos, next - pos);
    if (part.size() < 2 || part[0] < 'A' || part[0] > 'G')
      throw UnsupportedType("malformed type label '" + std::string(text) + "'");
    unsigned rank = 0;
    for (char ch : part.substr(1)) {
      if (ch < '0' || ch > '9' || rank > 1000)
        throw UnsupportedType("malformed type label '" + std::string(text) + "'");
      rank = rank * 10 + static_cast<unsigned>(ch - '0');
    }
    SimpleType t{part[0], rank};
    if (!is_legal(t)) throw UnsupportedType("no simple type " + t.str());
    out.factors.push_back(t);
    pos = next + 1;
  }
  std::sort(out.factors.begin(), out.factors.end());
  return out;
}

std::string TypeLabel::str() const {
  std::string s;
  for (const auto& f : factors) {
    if (!s.empty()) s += 'x';
    s += f.str();
  }
  return s.empty() ? "0" : s;
}

unsigned TypeLabel::rank() const {
  unsigned r = 0;
  for (const auto& f : factors) r += f.rank;
  return r;
}

namespace {

// Gram matrix of one simple factor.
Matrix simple_gram(const SimpleType& t) {
  const std::size_t n = t.rank;
  Matrix g(n, n);
  auto link = [&](std::size_t i, std::size_t j, long v) {
    g(i, j) = Scalar(v);
    g(j, i) = Scalar(v);
  };
  switch (t.family) {
    case 'A':
      for (std::size_t i = 0; i < n; ++i) g(i, i) = Scalar(2);
      for (std::size_t i = 0; i + 1 < n; ++i) link(i, i + 1, -1);
      break;
    case 'B':
      for (std::size_t i = 0; i < n; ++i) g(i, i) = Scalar(i + 1 < n ? 4 : 2);
      for (std::size_t i = 0; i + 1 < n; ++i) link(i, i + 1, -2);
      break;
    case 'C':
      for (std::size_t i = 0; i < n; ++i) g(i, i) = Scalar(i + 1 < n ? 2 : 4);
      for (std::size_t i = 0; i + 1 < n; ++i) link(i, i + 1, i + 2 < n ? -1 : -2);
      break;
    case 'D':
      for (std::size_t i = 0; i < n; ++i) g(i, i) = Scalar(2);
      for (std::size_t i = 0; i + 2 < n; ++i) link(i, i + 1, -1);
      link(n - 3, n - 1, -1);
      break;
    case 'E':
      for (std::size_t i = 0; i < n; ++i) g(i, i) = Scalar(2);
      link(0, 2, -1);
      link(1, 3, -1);
      for (std::size_t i = 2; i + 1 < n; ++i) link(i, i + 1, -1);
      break;
    case 'F':
      g(0, 0) = Scalar(4);
      g(1, 1) = Scalar(4);
      g(2, 2) = Scalar(2);
      g(3, 3) = Scalar(2);
      link(0, 1, -2);
      link(1, 2, -2);
      link(2, 3, -1);
      break;
    case 'G':
      g(0, 0) = Scalar(2);
      g(1, 1) = Scalar(6);
      link(0, 1, -3);
      break;
    default: throw UnsupportedType("no simple type " + t.str());
  }
  return g;
}

long as_int(const Scalar& s) {
  if (!s.is_real() || s.re().get_den() != 1 || !s.re().get_num().fits_slong_p())
    throw UnrecognizedDiagram("Cartan matrix entry " + s.str() + " is not an integer");
  return s.re().get_num().get_si();
}

}  // namespace

Matrix gram_matrix(const TypeLabel& t) {
  const std::size_t r = t.rank();
  Matrix g(r, r);
  std::size_t off = 0;
  for (const auto& f : t.factors) {
    if (!is_legal(f)) throw UnsupportedType("no simple type " + f.str());
    Matrix b = simple_gram(f);
    for (std::size_t i = 0; i < f.rank; ++i)
      for (std::size_t j = 0; j < f.rank; ++j) g(off + i, off + j) = b(i, j);
    off += f.rank;
  }
  return g;
}

Matrix cartan_matrix_from_gram(const Matrix& g) {
  Matrix a(g.rows(), g.cols());
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) a(i, j) = Scalar(2) * g(i, j) / g(j, j);
  return a;
}

Classification classify_cartan_matrix(const Matrix& a) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw UnrecognizedDiagram("Cartan matrix is not square");
  std::vector<std::vector<long>> m(n, std::vector<long>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = as_int(a(i, j));
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i][i] != 2) throw UnrecognizedDiagram("diagonal entry is not 2");
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (m[i][j] > 0 || (m[i][j] == 0) != (m[j][i] == 0) || m[i][j] * m[j][i] > 3)
        throw UnrecognizedDiagram("entries do not form a Cartan matrix");
    }
  }

  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && m[i][j] != 0) adj[i].push_back(j);

  struct Component {
    SimpleType type;
    std::vector<std::size_t> order;
  };
  std::vector<Component> comps;
  std::vector<bool> seen(n, false);

  for (std::size_t start = 0; start < n; ++start) {
    if (seen[start]) continue;
    std::vector<std::size_t> nodes;
    std::vector<std::size_t> stack{start};
    seen[start] = true;
    while (!stack.empty()) {
      std::size_t v = stack.back();
      stack.pop_back();
      nodes.push_back(v);
      for (auto w : adj[v])
        if (!seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
    }
    std::sort(nodes.begin(), nodes.end());
    const std::size_t k = nodes.size();
    std::size_t edges = 0;
    for (auto v : nodes) edges += adj[v].size();
    edges /= 2;
    if (edges != k - 1) throw UnrecognizedDiagram("Dynkin diagram has a cycle");

    auto bond = [&](std::size_t i, std::size_t j) { return m[i][j] * m[j][i]; };
    // i longer than j when |a_ij| > |a_ji|
    auto longer = [&](std::size_t i, std::size_t j) { return m[i][j] < m[j][i]; };

    // Walk a path from endpoint `from`.
    auto walk = [&](std::size_t from) {
      std::vector<std::size_t> path{from};
      std::size_t prev = n, cur = from;
      while (true) {
        std::size_t next = n;
        for (auto w : adj[cur])
          if (w != prev) next = w;
        if (next == n) break;
        path.push_back(next);
        prev = cur;
        cur = next;
      }
      return path;
    };

    Component c;
    std::size_t branch = n;
    for (auto v : nodes)
      if (adj[v].size() > 2) {
        if (branch != n || adj[v].size() > 3) throw UnrecognizedDiagram("unsupported branching");
        branch = v;
      }

    if (k == 1) {
      c = {{'A', 1}, nodes};
    } else if (branch == n) {
      std::vector<std::size_t> ends;
      for (auto v : nodes)
        if (adj[v].size() == 1) ends.push_back(v);
      std::vector<std::size_t> path = walk(ends[0]);
      int multi = 0;
      std::size_t where = 0;
      for (std::size_t t = 0; t + 1 < k; ++t)
        if (bond(path[t], path[t + 1]) > 1) {
          ++multi;
          where = t;
        }
      if (multi == 0) {
        c = {{'A', static_cast<unsigned>(k)}, path};
      } else if (multi > 1) {
        throw UnrecognizedDiagram("more than one multiple bond");
      } else {
        const long b = bond(path[where], path[where + 1]);
        if (b == 3) {
          if (k != 2) throw UnrecognizedDiagram("triple bond outside G2");
          if (longer(path[0], path[1])) std::reverse(path.begin(), path.end());
          c = {{'G', 2}, path};
        } else if (k == 2) {
          if (!longer(path[0], path[1])) std::reverse(path.begin(), path.end());
          c = {{'B', 2}, path};
        } else {
          // orient so the double bond sits at the far end, or the long
          // half comes first for F4
          if (where == 0) {
            std::reverse(path.begin(), path.end());
            where = k - 2;
          }
          if (where == k - 2) {
            const bool short_end = longer(path[k - 2], path[k - 1]);
            c = {{short_end ? 'B' : 'C', static_cast<unsigned>(k)}, path};
          } else if (k == 4 && where == 1) {
            if (!longer(path[1], path[2])) std::reverse(path.begin(), path.end());
            c = {{'F', 4}, path};
          } else {
            throw UnrecognizedDiagram("double bond in an unsupported position");
          }
        }
      }
    } else {
      for (auto v : nodes)
        for (auto w : adj[v])
          if (bond(v, w) != 1) throw UnrecognizedDiagram("multiple bond in a branched diagram");
      // arms from the branch node, shortest first
      std::vector<std::vector<std::size_t>> arms;
      for (auto w : adj[branch]) {
        std::vector<std::size_t> arm{w};
        std::size_t prev = branch, cur = w;
        while (true) {
          std::size_t next = n;
          for (auto u : adj[cur])
            if (u != prev) next = u;
          if (next == n) break;
          arm.push_back(next);
          prev = cur;
          cur = next;
        }
        arms.push_back(arm);
      }
      std::stable_sort(arms.begin(), arms.end(),
                       [](const auto& x, const auto& y) { return x.size() < y.size(); });
      const std::size_t a0 = arms[0].size(), a1 = arms[1].size(), a2 = arms[2].size();
      std::vector<std::size_t> order;
      if (a0 == 1 && a1 == 1) {
        // D_k: long arm from its far end, branch, then the two leaves
        for (auto it = arms[2].rbegin(); it != arms[2].rend(); ++it) order.push_back(*it);
        order.push_back(branch);
        order.push_back(arms[0][0]);
        order.push_back(arms[1][0]);
        c = {{'D', static_cast<unsigned>(k)}, order};
      } else if (a0 == 1 && a1 == 2 && a2 >= 2 && a2 <= 4) {
        // E_k: alpha1 alpha3 on the 2-arm, alpha2 the leaf, alpha4 branch, rest on the long arm
        order = {arms[1][1], arms[0][0], arms[1][0], branch};
        for (auto v : arms[2]) order.push_back(v);
        c = {{'E', static_cast<unsigned>(k)}, order};
      } else {
        throw UnrecognizedDiagram("branched diagram of unknown shape");
      }
    }
    comps.push_back(std::move(c));
  }

  std::stable_sort(comps.begin(), comps.end(),
                   [](const Component& x, const Component& y) { return x.type < y.type; });
  Classification out;
  for (const auto& c : comps) {
    out.label.factors.push_back(c.type);
    out.order.insert(out.order.end(), c.order.begin(), c.order.end());
  }
  const Matrix canon = cartan_matrix_from_gram(gram_matrix(out.label));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      VFL_ASSERT(m[out.order[i]][out.order[j]] == as_int(canon(i, j)),
                 "classified Cartan matrix does not match the canonical one");
  return out;
}

std::vector<RootCoeffs> positive_roots(const Matrix& cartan) {
  const std::size_t r = cartan.rows();
  std::vector<std::vector<long>> a(r, std::vector<long>(r));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) a[i][j] = as_int(cartan(i, j));

  std::set<RootCoeffs> known;
  std::vector<RootCoeffs> layer;
  for (std::size_t i = 0; i < r; ++i) {
    RootCoeffs e(r, 0);
    e[i] = 1;
    layer.push_back(e);
    known.insert(e);
  }
  std::vector<RootCoeffs> all;
  while (!layer.empty()) {
    std::sort(layer.begin(), layer.end(), std::greater<>());
    all.insert(all.end(), layer.begin(), layer.end());
    std::set<RootCoeffs> next;
    for (const auto& beta : layer)
      for (std::size_t i = 0; i < r; ++i) {
        // p: how far the alpha_i-string extends below beta
        long p = 0;
        RootCoeffs down = beta;
        while (true) {
          --down[i];
          if (!known.contains(down)) break;
          ++p;
        }
        long pairing = 0;  // <beta, alpha_i^vee>
        for (std::size_t k = 0; k < r; ++k) pairing += beta[k] * a[k][i];
        if (p - pairing > 0) {
          RootCoeffs up = beta;
          ++up[i];
          next.insert(up);
        }
      }
    layer.assign(next.begin(), next.end());
    for (const auto& v : layer) known.insert(v);
  }
  return all;
}

RankDim rank_dim_table(const TypeLabel& t) {
  for (const auto& f : t.factors)
    if (!is_legal(f)) throw UnsupportedType("no simple type " + f.str());
  const auto roots = positive_roots(cartan_matrix_from_gram(gram_matrix(t)));
  return {t.rank(), t.rank() + 2 * static_cast<unsigned>(roots.size())};
}

std::vector<TypeLabel> enumerate_types_up_to_rank(unsigned r) {
  std::vector<SimpleType> simple;
  for (char fam : std::string("ABCDEFG"))
    for (unsigned k = 1; k <= r; ++k)
      if (is_legal({fam, k})) simple.push_back({fam, k});
  std::sort(simple.begin(), simple.end());

  std::vector<TypeLabel> out;
  std::vector<SimpleType> cur;
  std::function<void(std::size_t, unsigned)> rec = [&](std::size_t from, unsigned left) {
    if (!cur.empty()) out.push_back(TypeLabel{cur});
    for (std::size_t i = from; i < simple.size(); ++i)
      if (simple[i].rank <= left) {
        cur.push_back(simple[i]);
        rec(i, left - simple[i].rank);
        cur.pop_back();
      }
  };
  rec(0, r);
  std::sort(out.begin(), out.end(), [](const TypeLabel& x, const TypeLabel& y) {
    if (x.rank() != y.rank()) return x.rank() < y.rank();
    return x.str() < y.str();
  });
  return out;
}

}  // namespace vfl
