#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "errors.hpp"
#include "modsearch.hpp"
#include "support.hpp"

using namespace vfl;
using vfl::testing::F;
using vfl::testing::projective_block;

namespace {

std::vector<VectorField> Fs(std::initializer_list<const char*> texts, std::size_t dim) {
  std::vector<VectorField> out;
  for (const char* t : texts) out.push_back(F(t, dim));
  return out;
}

LiePresentation line_sl2() { return present(Fs({"-2*x*Dx", "Dx", "-x^2*Dx"}, 1)); }

BorelChoice line_borel(std::size_t dim) {
  return {{F("-2*x*Dx", dim)}, {F("Dx", dim)}};
}

std::size_t binom(std::size_t n, std::size_t k) {
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// dim of span(fields) as vector fields
std::size_t field_rank(const std::vector<VectorField>& fs) {
  if (fs.empty()) return 0;
  FieldCoordinates fc(fs);
  std::vector<Vec> rows;
  for (const auto& f : fs) rows.push_back(fc.coords(f));
  return mat_rank(Matrix::from_rows(rows, fc.size()));
}

std::vector<VectorField> with(std::vector<VectorField> a, const std::vector<VectorField>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

std::vector<VectorField> fields_of(const std::vector<WeightVector>& ws) {
  std::vector<VectorField> out;
  for (const auto& w : ws) out.push_back(w.field);
  return out;
}

std::vector<RootEmbedding> b2_embedding() {
  return {{{1, 0}, F("Dx", 2), F("-x^2*Dx", 2)}, {{1, 2}, F("Dy", 2), F("-y^2*Dy", 2)}};
}

std::vector<RootEmbedding> g2_projective_embedding() {
  return {{{0, 1}, F("Dx", 3), F("-x^2*Dx - x*y*Dy", 3)}, {{3, 1}, F("x*Dy", 3), F("y*Dx", 3)}};
}

std::vector<RootEmbedding> g2_linear_embedding() {
  return {{{0, 1}, F("y*Dx", 3), F("x*Dy", 3)}, {{3, 1}, F("z*Dy", 3), F("y*Dz", 3)}};
}

}  // namespace

TEST_CASE("ansatz space") {
  for (std::size_t n = 1; n <= 3; ++n)
    for (unsigned d = 0; d <= 3; ++d) CHECK(AnsatzSpace(n, d).size() == n * binom(n + d, d));
  AnsatzSpace a(2, 2, {Vec{Scalar(0), Scalar(0)}, Vec{Scalar(1), Scalar(0)}});
  CHECK(a.size() == 24);
  CHECK_FALSE(a.polynomial());
  CHECK(AnsatzSpace(2, 2).polynomial());
  CHECK(a.basis().front() == F("Dx", 2));
  const VectorField v = F("3*x*y*exp(x)*Dy - Dx", 2);
  auto c = a.coordinates(v);
  REQUIRE(c);
  CHECK(a.field(*c) == v);
  CHECK_FALSE(a.coordinates(F("x^3*Dx", 2)));
  CHECK_FALSE(a.coordinates(F("exp(y)*Dx", 2)));
  std::vector<std::size_t> perm(a.size());
  std::iota(perm.rbegin(), perm.rend(), 0);
  AnsatzSpace r = a.reordered(perm);
  CHECK(r.basis().front() == a.basis().back());
  CHECK(r.field(*r.coordinates(v)) == v);
  CHECK_THROWS_AS(AnsatzSpace(2, 1, {Vec{Scalar(1)}}), DimensionMismatch);
}

TEST_CASE("highest weight vectors: examples") {
  CHECK(highest_weight_vectors(line_sl2(), line_borel(1), AnsatzSpace(1, 6)).empty());

  auto s2 = present(Fs({"-2*x*Dx", "Dx", "-x^2*Dx"}, 2));
  auto hw = highest_weight_vectors(s2, line_borel(2), AnsatzSpace(2, 0));
  REQUIRE(hw.size() == 1);
  CHECK(hw[0].field == F("Dy", 2));
  CHECK(hw[0].weight == Vec{Scalar(0)});

  auto sl3 = present(projective_block(2, 0, 2));
  const BorelChoice b = borel_from_roots(sl3, root_decomposition(sl3.algebra, find_cartan(sl3.algebra)));
  CHECK(b.positives.size() == 2);
  CHECK(b.cartan.size() == 2);
  for (std::size_t i = 0; i < 2; ++i) {
    const VectorField br = vf_bracket(b.cartan[0], b.positives[i]);
    CHECK(field_rank({br, b.positives[i]}) == 1);
  }
  // simple roots dy (weight (0,-1)) and y dx (weight (-1,1)); dx is their bracket
  BorelChoice constant{{F("x*Dx", 2), F("y*Dy", 2)}, {F("Dy", 2), F("y*Dx", 2)}};
  for (unsigned d = 0; d <= 4; ++d) CHECK(highest_weight_vectors(sl3, constant, AnsatzSpace(2, d)).empty());
}

TEST_CASE("highest weight vectors: truncation") {
  BorelChoice raising{{F("-2*x*Dx", 1)}, {F("-x^2*Dx", 1)}};
  CHECK_THROWS_AS(highest_weight_vectors(line_sl2(), raising, AnsatzSpace(1, 3)), Truncation);
  BorelChoice expo{{F("x*Dx", 1)}, {F("Dx", 1)}};
  CHECK_THROWS_AS(highest_weight_vectors(line_sl2(), expo, AnsatzSpace(1, 1, {Vec{Scalar(1)}})), Truncation);
}

TEST_CASE("highest weight vectors: inert variable count") {
  // kernel of ad(Dx): f(y) Dx (weight 2) and g(y) Dy (weight 0); Dx lies in S
  auto s2 = present(Fs({"-2*x*Dx", "Dx", "-x^2*Dx"}, 2));
  for (unsigned d = 0; d <= 5; ++d) {
    auto hw = highest_weight_vectors(s2, line_borel(2), AnsatzSpace(2, d));
    CHECK(hw.size() == 2 * d + 1);
    std::size_t w2 = 0;
    for (const auto& w : hw) w2 += w.weight[0] == Scalar(2);
    CHECK(w2 == d);
  }
}

TEST_CASE("highest weight vectors: ordering and degree stability") {
  std::mt19937_64 rng(4);
  auto s2 = present(Fs({"-2*x*Dx", "Dx", "-x^2*Dx", "Dy"}, 2));
  BorelChoice b = line_borel(2);
  const std::vector<VectorField> s_fields = s2.basis;
  std::vector<VectorField> prev;
  for (unsigned d = 0; d <= 4; ++d) {
    AnsatzSpace a(2, d);
    auto hw = fields_of(highest_weight_vectors(s2, b, a));
    for (int t = 0; t < 2; ++t) {
      std::vector<std::size_t> perm(a.size());
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      auto other = fields_of(highest_weight_vectors(s2, b, a.reordered(perm)));
      CHECK(other.size() == hw.size());
      // same span modulo S
      CHECK(field_rank(with(with(hw, other), s_fields)) == field_rank(with(hw, s_fields)));
    }
    // earlier classes persist
    CHECK(field_rank(with(with(hw, prev), s_fields)) == field_rank(with(hw, s_fields)));
    prev = hw;
  }
}

TEST_CASE("extend_by_relations: examples") {
  {
    auto r = extend_by_relations({F("Dx", 1)}, {{0, {{0, Scalar(1)}}, Scalar(0)}}, AnsatzSpace(1, 1));
    REQUIRE(std::holds_alternative<SolutionFamily>(r));
    const auto& f = std::get<SolutionFamily>(r);
    REQUIRE(f.directions.size() == 1);
    CHECK(field_rank({f.directions[0], F("Dx", 1)}) == 1);
    CHECK(field_rank({f.particular - F("x*Dx", 1), F("Dx", 1)}) == 1);
  }
  {
    auto r = extend_by_relations(Fs({"Dx", "x*Dx"}, 1), {{0, {}, Scalar(0)}, {1, {{1, Scalar(1)}}, Scalar(0)}},
                                 AnsatzSpace(1, 3));
    REQUIRE(std::holds_alternative<RelationFailure>(r));
    const auto& f = std::get<RelationFailure>(r);
    CHECK(f.relation == 1);
    CHECK(f.residual == F("-x*Dx", 1));
    CHECK(f.degree_independent);
    for (unsigned d = 4; d <= 6; ++d)
      CHECK(std::holds_alternative<RelationFailure>(extend_by_relations(
          Fs({"Dx", "x*Dx"}, 1), {{0, {}, Scalar(0)}, {1, {{1, Scalar(1)}}, Scalar(0)}}, AnsatzSpace(1, d))));
  }
  {
    // centralizer of line sl(2)
    std::vector<Relation> rels{{0, {}, Scalar(0)}, {1, {}, Scalar(0)}, {2, {}, Scalar(0)}};
    auto r = extend_by_relations(line_sl2().basis, rels, AnsatzSpace(1, 6));
    REQUIRE(std::holds_alternative<SolutionFamily>(r));
    CHECK(std::get<SolutionFamily>(r).only_zero());
  }
  {
    // [x Dx, W] = 2 W: W = x^3 Dx
    auto r = extend_by_relations({F("x*Dx", 1)}, {{0, {}, Scalar(2)}}, AnsatzSpace(1, 4));
    REQUIRE(std::holds_alternative<SolutionFamily>(r));
    const auto& f = std::get<SolutionFamily>(r);
    CHECK(f.particular.is_zero());
    REQUIRE(f.directions.size() == 1);
    CHECK(field_rank({f.directions[0], F("x^3*Dx", 1)}) == 1);
  }
}

TEST_CASE("extend_by_relations: families satisfy their relations") {
  std::mt19937_64 rng(21);
  vfl::testing::RandomShape shape{2, 2, false};
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + rng() % 2;
    AnsatzSpace a(n, 2);
    Vec wc(a.size());
    for (auto& c : wc)
      if (rng() % 3 == 0) c = vfl::testing::random_scalar(rng);
    const VectorField target = a.field(wc);
    std::vector<VectorField> known;
    const std::size_t m = 1 + rng() % 3;
    for (std::size_t i = 0; i < m; ++i) known.push_back(vfl::testing::random_field(rng, n, shape));
    std::vector<Relation> rels;
    for (std::size_t i = 0; i < m; ++i) {
      const Scalar mu = rng() % 2 ? Scalar(static_cast<long>(rng() % 3)) : Scalar(0);
      known.push_back(vf_bracket(known[i], target) - target * mu);
      rels.push_back({i, {{m + i, Scalar(1)}}, mu});
    }
    auto r = extend_by_relations(known, rels, a);
    REQUIRE(std::holds_alternative<SolutionFamily>(r));
    const auto& f = std::get<SolutionFamily>(r);
    for (int s = 0; s < 3; ++s) {
      Vec params(f.directions.size());
      for (auto& p : params) p = vfl::testing::random_scalar(rng);
      const VectorField w = f.at(params);
      for (const auto& rel : rels)
        CHECK(vf_bracket(known[rel.lhs], w) == known[rel.rhs[0].first] + w * rel.mu);
    }
    // the planted solution lies in the family
    std::vector<VectorField> span = f.directions;
    span.push_back(f.particular - target);
    CHECK(field_rank(span) == field_rank(f.directions));
  }
}

TEST_CASE("extend_by_relations: degree-independent failures stay infeasible") {
  std::mt19937_64 rng(33);
  vfl::testing::RandomShape shape{1, 2, false};
  int certified = 0;
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<VectorField> known{vfl::testing::random_field(rng, 1, shape),
                                   vfl::testing::random_field(rng, 1, shape)};
    known.push_back(vfl::testing::random_field(rng, 1, {3, 3, false}));
    std::vector<Relation> rels{{0, {{2, Scalar(1)}}, Scalar(0)}, {1, {}, Scalar(static_cast<long>(rng() % 3))}};
    auto r = extend_by_relations(known, rels, AnsatzSpace(1, 2));
    if (!std::holds_alternative<RelationFailure>(r) || !std::get<RelationFailure>(r).degree_independent) continue;
    ++certified;
    for (unsigned d = 3; d <= 5; ++d)
      CHECK(std::holds_alternative<RelationFailure>(extend_by_relations(known, rels, AnsatzSpace(1, d))));
  }
  CHECK(certified > 5);
}

TEST_CASE("staged extension: B2 over A1xA1 on C2") {
  const ChevalleyAlgebra b2 = chevalley_constants(TypeLabel::parse("B2"));
  for (unsigned d = 1; d <= 4; ++d) {
    StagedResult r = staged_extension_protocol(b2, b2_embedding(), AnsatzSpace(2, d));
    CHECK(r.outcome == StagedOutcome::Infeasible);
    REQUIRE(r.report);
    CHECK(r.report->stage == 1);
    CHECK(r.report->degree == d);
    CHECK(r.report->degree_independent);
    CHECK_FALSE(r.report->residual_field.is_zero());
    // short root
    CHECK(b2.inner(r.report->unknown_root, r.report->unknown_root) == Scalar(2));
  }
}

TEST_CASE("staged extension: G2 over A2 on C3") {
  const ChevalleyAlgebra g2 = chevalley_constants(TypeLabel::parse("G2"));
  for (const auto& emb : {g2_projective_embedding(), g2_linear_embedding()}) {
    StagedResult r = staged_extension_protocol(g2, emb, AnsatzSpace(3, 3));
    CHECK(r.outcome == StagedOutcome::Infeasible);
    REQUIRE(r.report);
    CHECK(r.report->relation_index >= 1);
    CHECK_FALSE(r.report->residual_field.is_zero());
    CHECK(g2.inner(r.report->unknown_root, r.report->unknown_root) == Scalar(2));
  }
  // the linear realization fails only once brackets among new vectors are imposed
  StagedResult lin = staged_extension_protocol(g2, g2_linear_embedding(), AnsatzSpace(3, 3));
  CHECK(lin.report->stage == lin.stages.size() + 1);
  CHECK_FALSE(lin.report->degree_independent);
  StagedResult proj = staged_extension_protocol(g2, g2_projective_embedding(), AnsatzSpace(3, 3));
  CHECK(proj.report->stage == 1);
  CHECK(proj.report->degree_independent);
}

TEST_CASE("staged extension: identity embeddings are feasible") {
  std::vector<LiePresentation> algs{line_sl2(), present(Fs({"exp(x)*Dx", "exp(-x)*Dx", "Dx"}, 1)),
                                    present(projective_block(2, 0, 2)),
                                    present(Fs({"Dx", "x*Dx", "x^2*Dx", "Dy", "y*Dy", "y^2*Dy"}, 2)),
                                    present(projective_block(3, 0, 3))};
  for (const auto& s : algs) {
    RootData rd = root_decomposition(s.algebra, find_cartan(s.algebra));
    ChevalleyNormalization n = chevalley_normalize(s.algebra, rd);
    StagedResult r = staged_extension_protocol(n.target, simple_root_embedding(s, n), AnsatzSpace(s.N, 1));
    REQUIRE(r.outcome == StagedOutcome::Feasible);
    CHECK(r.stages.empty());
    REQUIRE(r.presentation);
    CHECK(r.presentation->algebra == n.target.algebra());
    CHECK(field_rank(with(r.presentation->basis, s.basis)) == s.dim());
  }
}

TEST_CASE("staged extension: never infeasible when an extension exists") {
  // adjoint realizations contain the extension at degree 1
  struct Case {
    const char* type;
    std::vector<RootCoeffs> roots;
  };
  for (const Case& c : {Case{"B2", {{1, 0}, {1, 2}}}, Case{"G2", {{0, 1}, {3, 1}}}}) {
    const ChevalleyAlgebra t = chevalley_constants(TypeLabel::parse(c.type));
    const auto fs = vfl::testing::adjoint_fields(t.algebra());
    std::vector<RootEmbedding> emb;
    for (const auto& r : c.roots) {
      RootCoeffs neg = r;
      for (auto& x : neg) x = -x;
      emb.push_back({r, fs[t.rank() + *t.root_index(r)], fs[t.rank() + *t.root_index(neg)]});
    }
    StagedResult r = staged_extension_protocol(t, emb, AnsatzSpace(fs.size(), 1));
    CHECK(r.outcome != StagedOutcome::Infeasible);
  }
}

TEST_CASE("staged extension: embedding checks") {
  const ChevalleyAlgebra b2 = chevalley_constants(TypeLabel::parse("B2"));
  auto bad = b2_embedding();
  bad[0].f = F("x^2*Dx", 2);
  CHECK_THROWS_AS(staged_extension_protocol(b2, bad, AnsatzSpace(2, 1)), DomainError);
  auto partial = b2_embedding();
  partial.pop_back();
  CHECK_THROWS_AS(staged_extension_protocol(b2, partial, AnsatzSpace(2, 1)), DomainError);
  auto wrong_root = b2_embedding();
  wrong_root[0].root = {2, 0};
  CHECK_THROWS_AS(staged_extension_protocol(b2, wrong_root, AnsatzSpace(2, 1)), DomainError);
}
