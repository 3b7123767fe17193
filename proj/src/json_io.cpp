#include "json_io.hpp"

#include "dsl.hpp"
#include "errors.hpp"

namespace vfl {

Json to_json(const Scalar& s) { return s.str(); }

Json to_json(const Vec& v) {
  Json j = Json::array();
  for (const auto& s : v) j.push_back(s.str());
  return j;
}

Json to_json(const Matrix& m) {
  Json j = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) j.push_back(to_json(m.row_vec(r)));
  return j;
}

Json to_json(const std::vector<VectorField>& fs) {
  Json j = Json::array();
  for (const auto& v : fs) j.push_back(print_field(v));
  return j;
}

Json to_json(const LiePresentation& p) {
  const std::size_t d = p.dim();
  Json sc = Json::array();
  for (std::size_t i = 0; i < d; ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < d; ++j) {
      Json cell = Json::array();
      for (std::size_t k = 0; k < d; ++k) cell.push_back(p.algebra.c(i, j, k).str());
      row.push_back(std::move(cell));
    }
    sc.push_back(std::move(row));
  }
  return Json{{"N", p.N}, {"basis", to_json(p.basis)}, {"sc", std::move(sc)}};
}

Json closure_json(const ClosureResult& r) {
  if (const auto* p = std::get_if<LiePresentation>(&r))
    return Json{{"closed", true}, {"dim", p->dim()}, {"presentation", to_json(*p)}};
  const auto& nc = std::get<NotClosed>(r);
  return Json{{"closed", false}, {"i", nc.i + 1}, {"j", nc.j + 1}, {"residual", print_field(nc.residual)}};
}

Json flags_json(const LieAlgebra& L) {
  return Json{{"dim", L.dim()},
              {"abelian", is_abelian(L)},
              {"nilpotent", is_nilpotent(L)},
              {"solvable", is_solvable(L)},
              {"semisimple", is_semisimple(L)}};
}

Json killing_json(const LieAlgebra& L) {
  const Matrix k = killing_form(L);
  return Json{{"dim", L.dim()}, {"killing", to_json(k)}, {"nondegenerate", !mat_det(k).is_zero()}};
}

Json radical_json(const LiePresentation& p) {
  const Subspace r = radical(p.algebra);
  return Json{{"dim", r.dim()}, {"radical", to_json(p.fields(r))}};
}

Json levi_json(const LeviReport& r) {
  Json items = Json::array();
  for (const auto& it : r.items) items.push_back(Json{{"check", it.check}, {"pass", it.pass}, {"detail", it.detail}});
  return Json{{"pass", r.pass()}, {"checks", std::move(items)}};
}

Json cartan_json(const LiePresentation& p, const CartanData& c, std::uint64_t seed) {
  const std::vector<VectorField> csa = p.fields(c.csa);
  return Json{{"dim", c.csa.dim()},
              {"csa", to_json(csa)},
              {"regular_element", print_field(p.field(c.regular_element))},
              {"geometric_rank", geometric_rank(csa, seed).rank}};
}

Json roots_json(const LiePresentation& p, const RootData& r) {
  const SimpleSystem s = simple_system(p.algebra, r);
  Json roots = Json::array();
  for (const auto& rs : r.roots)
    roots.push_back(
        Json{{"root", to_json(rs.root)}, {"positive", is_positive_root(rs.root)}, {"space", to_json(p.fields(rs.space))}});
  Json simple = Json::array();
  for (std::size_t k : s.simple) simple.push_back(to_json(r.roots[k].root));
  return Json{{"csa", to_json(p.fields(r.cartan.csa))},
              {"roots", std::move(roots)},
              {"simple", std::move(simple)},
              {"cartan_matrix", to_json(s.cartan)},
              {"type", s.classification.label.str()}};
}

Json type_json(const TypeLabel& t) {
  const RankDim rd = rank_dim_table(t);
  return Json{{"type", t.str()}, {"rank", rd.rank}, {"dim", rd.dim}};
}

Json georank_json(const LiePresentation& p, const GeometricRank& g, const std::optional<Witness>& w) {
  Json j{{"dim", p.dim()}, {"rank", g.rank}};
  if (g.certificate) {
    Json rows = Json::array(), cols = Json::array();
    for (std::size_t r : g.certificate->rows) rows.push_back(r + 1);
    for (std::size_t c : g.certificate->cols) cols.push_back(variable_name(c, p.N));
    j["certificate"] = Json{{"rows", std::move(rows)}, {"cols", std::move(cols)},
                            {"minor", print_function(g.certificate->value)}};
  } else {
    j["certificate"] = nullptr;
  }
  if (w) {
    j["witness"] = Json{{"point", to_json(w->point)}, {"exact", w->exact}, {"value", to_string(w->value)}};
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

Json rank_equality_json(const RankEqualityReport& r) {
  return Json{{"csa_dim", r.csa_dim},
              {"csa_geometric_rank", r.csa_geometric_rank},
              {"geometric_rank", r.geometric_rank},
              {"equal", r.equal()}};
}

Json ansatz_json(const AnsatzSpace& a) {
  Json lambdas = Json::array();
  for (const auto& l : a.freqs()) lambdas.push_back(to_json(l));
  return Json{{"d", a.degree()}, {"lambda_set", std::move(lambdas)}};
}

Json weight_vectors_json(const std::vector<WeightVector>& ws, const AnsatzSpace& a) {
  Json vs = Json::array();
  for (const auto& w : ws) vs.push_back(Json{{"field", print_field(w.field)}, {"weight", to_json(w.weight)}});
  return Json{{"ansatz", ansatz_json(a)}, {"count", ws.size()}, {"vectors", std::move(vs)}};
}

namespace {

Json root_json(const RootCoeffs& r) {
  Json j = Json::array();
  for (int c : r) j.push_back(c);
  return j;
}

const char* outcome_str(StagedOutcome o) {
  switch (o) {
    case StagedOutcome::Feasible: return "Feasible";
    case StagedOutcome::Infeasible: return "Infeasible";
    case StagedOutcome::Inconclusive: return "Inconclusive";
  }
  return "";
}

}  // namespace

Json infeasibility_json(const InfeasibilityReport& r) {
  Json lambdas = Json::array();
  for (const auto& l : r.lambda_set) lambdas.push_back(to_json(l));
  return Json{{"stage", r.stage},
              {"unknown_root", root_json(r.unknown_root)},
              {"relation_index", r.relation_index},
              {"relation", r.relation},
              {"residual_field", print_field(r.residual_field)},
              {"ansatz", Json{{"d", r.degree}, {"lambda_set", std::move(lambdas)}}},
              {"degree_independent", r.degree_independent},
              {"reason", r.reason}};
}

Json staged_json(const StagedResult& r, const AnsatzSpace& a) {
  Json stages = Json::array();
  for (const auto& s : r.stages)
    stages.push_back(Json{{"root", root_json(s.root)}, {"relations", s.relations}, {"family_dim", s.family_dim}});
  Json j{{"outcome", outcome_str(r.outcome)}, {"ansatz", ansatz_json(a)}, {"stages", std::move(stages)}};
  j["presentation"] = r.presentation ? to_json(*r.presentation) : Json(nullptr);
  j["report"] = r.report ? infeasibility_json(*r.report) : Json(nullptr);
  return j;
}

std::string chevalley_name(const ChevalleyAlgebra& c, std::size_t k) {
  if (k < c.rank()) return "h" + std::to_string(k + 1);
  return "e" + root_str(c.roots()[k - c.rank()]);
}

Json chevalley_constants_json(const ChevalleyAlgebra& c) {
  const LieAlgebra& L = c.algebra();
  Json basis = Json::array();
  for (std::size_t k = 0; k < L.dim(); ++k) basis.push_back(chevalley_name(c, k));
  Json brackets = Json::array();
  for (std::size_t i = 0; i < L.dim(); ++i)
    for (std::size_t j = i + 1; j < L.dim(); ++j) {
      Json rhs = Json::object();
      for (std::size_t k = 0; k < L.dim(); ++k)
        if (!L.c(i, j, k).is_zero()) rhs[chevalley_name(c, k)] = L.c(i, j, k).str();
      if (!rhs.empty()) brackets.push_back(Json{{"x", basis[i]}, {"y", basis[j]}, {"bracket", std::move(rhs)}});
    }
  return Json{{"type", c.type().str()},
              {"rank", c.rank()},
              {"dim", L.dim()},
              {"cartan_matrix", to_json(c.cartan())},
              {"basis", std::move(basis)},
              {"brackets", std::move(brackets)}};
}

Json chevalley_basis_json(const LiePresentation& p, const ChevalleyNormalization& n) {
  Json basis = Json::array();
  for (std::size_t k = 0; k < n.basis.size(); ++k)
    basis.push_back(Json{{"name", chevalley_name(n.target, k)}, {"field", print_field(p.field(n.basis[k]))}});
  return Json{{"type", n.target.type().str()},
              {"matches_constants", rebase(p, n.basis).algebra == n.target.algebra()},
              {"basis", std::move(basis)}};
}

Json fixture_json(const Fixture& f) {
  const FixtureExpectation& x = f.expected;
  Json e{{"closed", x.closed},         {"dim", x.dim},
         {"solvable", x.solvable},     {"nilpotent", x.nilpotent},
         {"abelian", x.abelian},       {"semisimple", x.semisimple},
         {"geometric_rank", x.geometric_rank}};
  if (x.type) e["type"] = *x.type;
  if (x.csa_rank) e["csa_rank"] = *x.csa_rank;
  if (x.radical) e["radical"] = *x.radical;
  if (x.derived) e["derived"] = *x.derived;
  if (x.levi) e["levi"] = *x.levi;
  Json j{{"name", f.name}, {"N", f.N}, {"note", f.note}, {"fields", f.field_texts}, {"expected", std::move(e)}};
  if (!f.embeddings.empty()) {
    Json emb = Json::object();
    for (const auto& [target, list] : f.embeddings) {
      Json l = Json::array();
      for (const auto& r : list)
        l.push_back(Json{{"root", root_json(r.root)}, {"e", print_field(r.e)}, {"f", print_field(r.f)}});
      emb[target] = std::move(l);
    }
    j["embeddings"] = std::move(emb);
  }
  if (!f.related.empty()) {
    Json rel = Json::array();
    for (const auto& r : f.related)
      rel.push_back(Json{{"fixture", r.fixture}, {"forward", r.forward}, {"inverse", r.inverse}});
    j["related"] = std::move(rel);
  }
  return j;
}

Json fixture_report_json(const FixtureReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back(Json{{"check", c.check}, {"pass", c.pass}, {"detail", c.detail}});
  return Json{{"name", r.name}, {"pass", r.pass()}, {"checks", std::move(checks)}};
}

std::vector<Vec> parse_freqs(const std::string& text, std::size_t dim) {
  std::vector<Vec> out;
  std::size_t start = 0;
  while (start <= text.size() && !text.empty()) {
    const std::size_t semi = std::min(text.find(';', start), text.size());
    const std::string item = text.substr(start, semi - start);
    Vec v;
    std::size_t s = 0;
    while (true) {
      const std::size_t comma = std::min(item.find(',', s), item.size());
      try {
        v.push_back(Scalar::parse(item.substr(s, comma - s)));
      } catch (const DomainError& e) {
        throw ParseError(1, start + s + 1, "rational", "bad frequency coordinate");
      }
      if (comma == item.size()) break;
      s = comma + 1;
    }
    if (v.size() != dim)
      throw DimensionMismatch(v.size(), dim);
    out.push_back(std::move(v));
    start = semi + 1;
  }
  return out;
}

std::vector<RootEmbedding> parse_embedding(const std::string& json_text, std::size_t dim) {
  std::vector<RootEmbedding> out;
  try {
    const auto j = nlohmann::json::parse(json_text);
    for (const auto& r : j)
      out.push_back({r.at("root").get<RootCoeffs>(), parse_field(r.at("e").get<std::string>(), dim),
                     parse_field(r.at("f").get<std::string>(), dim)});
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("embedding json: ") + e.what());
  }
  return out;
}

}  // namespace vfl
