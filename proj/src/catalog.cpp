#include "catalog.hpp"

#include <fnmatch.h>

#include <algorithm>

#include "json.hpp"

#include "dsl.hpp"
#include "errors.hpp"
#include "fixture_data.hpp"
#include "georank.hpp"
#include "presentation.hpp"

namespace vfl {

namespace {

using nlohmann::json;

std::string stem_of(const std::string& name) {
  std::string s;
  for (char c : name) {
    if (c == '(') s += '.';
    else if (c == ',') s += '-';
    else if (c != ')') s += c;
  }
  return s;
}

const detail::FixtureFile* find_file(const std::string& name) {
  const std::string stem = stem_of(name);
  for (std::size_t i = 0; i < detail::kFixtureFileCount; ++i)
    if (stem == detail::kFixtureFiles[i].stem) return &detail::kFixtureFiles[i];
  return nullptr;
}

std::vector<std::string> strings(const json& j) {
  std::vector<std::string> out;
  for (const auto& s : j) out.push_back(s.get<std::string>());
  return out;
}

std::vector<VectorField> parse_all(const std::vector<std::string>& texts, std::size_t n) {
  std::vector<VectorField> out;
  for (const auto& t : texts) out.push_back(parse_field(t, n));
  return out;
}

std::size_t span_dim(const std::vector<VectorField>& fs) { return span_reduce(fs).size(); }

bool same_span(const std::vector<VectorField>& a, const std::vector<VectorField>& b) {
  std::vector<VectorField> both = a;
  both.insert(both.end(), b.begin(), b.end());
  const std::size_t r = span_dim(both);
  return span_dim(a) == r && span_dim(b) == r;
}

std::string yes_no(bool b) { return b ? "true" : "false"; }

struct Invariants {
  std::size_t dim = 0;
  bool solvable = false, nilpotent = false, abelian = false, semisimple = false;
  std::size_t geometric_rank = 0;
  std::string type;  // empty unless semisimple
  std::size_t csa_dim = 0;
  std::size_t csa_geometric_rank = 0;

  bool operator==(const Invariants&) const = default;
  std::string str() const {
    std::string s = "dim " + std::to_string(dim) + ", solvable " + yes_no(solvable) + ", nilpotent " +
                    yes_no(nilpotent) + ", abelian " + yes_no(abelian) + ", semisimple " + yes_no(semisimple) +
                    ", geometric rank " + std::to_string(geometric_rank);
    if (semisimple) s += ", type " + type + ", csa " + std::to_string(csa_dim);
    return s;
  }
};

Invariants invariants(const LiePresentation& p, std::uint64_t seed) {
  Invariants v;
  v.dim = p.dim();
  v.solvable = is_solvable(p.algebra);
  v.nilpotent = is_nilpotent(p.algebra);
  v.abelian = is_abelian(p.algebra);
  v.semisimple = is_semisimple(p.algebra);
  v.geometric_rank = geometric_rank(p, seed).rank;
  if (v.semisimple) {
    const CartanData c = find_cartan(p.algebra, {seed});
    v.type = identify_type(p.algebra, root_decomposition(p.algebra, c)).str();
    v.csa_dim = c.csa.dim();
    v.csa_geometric_rank = geometric_rank(p.fields(c.csa), seed).rank;
  }
  return v;
}

class Checker {
public:
  explicit Checker(FixtureReport& r) : r_(r) {}

  void add(std::string check, bool pass, std::string detail = {}) {
    r_.checks.push_back({std::move(check), pass, std::move(detail)});
  }
  template <class T>
  void expect(const std::string& check, const T& got, const T& want) {
    add(check, got == want, got == want ? std::string{} : "expected " + show(want) + ", got " + show(got));
  }
  // Runs fn, turning an exception into a failed check.
  template <class Fn>
  void guarded(const std::string& check, Fn&& fn) {
    try {
      fn();
    } catch (const std::exception& e) {
      add(check, false, e.what());
    }
  }

private:
  static std::string show(bool b) { return yes_no(b); }
  static std::string show(std::size_t n) { return std::to_string(n); }
  static std::string show(const std::string& s) { return s; }
  FixtureReport& r_;
};

bool is_sl2_triple(const VectorField& e, const VectorField& f) {
  const VectorField h = vf_bracket(e, f);
  return !h.is_zero() && vf_bracket(h, e) == e * Scalar(2) && vf_bracket(h, f) == f * Scalar(-2);
}

}  // namespace

bool FixtureReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const FixtureCheck& c) { return c.pass; });
}

std::vector<std::string> list_fixtures() {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < detail::kFixtureFileCount; ++i)
    names.push_back(json::parse(detail::kFixtureFiles[i].json).at("name").get<std::string>());
  std::sort(names.begin(), names.end());
  return names;
}

Fixture parse_fixture(std::string_view fields_text, std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw DomainError(std::string("fixture json: ") + e.what());
  }
  Fixture f;
  try {
    if (j.at("format").get<int>() != kFixtureFormat)
      throw DomainError("unsupported fixture format " + j.at("format").dump());
    f.name = j.at("name").get<std::string>();
    f.N = j.at("N").get<std::size_t>();
    f.note = j.value("note", "");
    const json& e = j.at("expected");
    FixtureExpectation& x = f.expected;
    x.closed = e.at("closed").get<bool>();
    x.dim = e.at("dim").get<std::size_t>();
    x.solvable = e.at("solvable").get<bool>();
    x.nilpotent = e.at("nilpotent").get<bool>();
    x.abelian = e.at("abelian").get<bool>();
    x.semisimple = e.at("semisimple").get<bool>();
    x.geometric_rank = e.at("geometric_rank").get<std::size_t>();
    if (e.contains("type")) x.type = e["type"].get<std::string>();
    if (e.contains("csa_rank")) x.csa_rank = e["csa_rank"].get<std::size_t>();
    if (e.contains("radical")) x.radical = strings(e["radical"]);
    if (e.contains("derived")) x.derived = strings(e["derived"]);
    if (e.contains("levi")) x.levi = strings(e["levi"]);
    if (j.contains("embeddings")) {
      for (const auto& [target, list] : j["embeddings"].items()) {
        std::vector<RootEmbedding> emb;
        for (const auto& r : list)
          emb.push_back({r.at("root").get<RootCoeffs>(), parse_field(r.at("e").get<std::string>(), f.N),
                         parse_field(r.at("f").get<std::string>(), f.N)});
        f.embeddings[target] = std::move(emb);
      }
    }
    if (j.contains("related"))
      for (const auto& r : j["related"])
        f.related.push_back({r.at("fixture").get<std::string>(), strings(r.at("forward")), strings(r.at("inverse"))});
  } catch (const json::exception& e) {
    throw DomainError(std::string("fixture json: ") + e.what());
  }

  std::size_t line = 0;
  std::string_view rest = fields_text;
  while (!rest.empty()) {
    ++line;
    const std::size_t nl = rest.find('\n');
    std::string_view l = rest.substr(0, nl);
    rest = nl == std::string_view::npos ? std::string_view{} : rest.substr(nl + 1);
    if (auto hash = l.find('#'); hash != std::string_view::npos) l = l.substr(0, hash);
    const auto b = l.find_first_not_of(" \t\r"), e = l.find_last_not_of(" \t\r");
    if (b == std::string_view::npos) continue;
    l = l.substr(b, e - b + 1);
    f.fields.push_back(parse_field(l, f.N, line));
    f.field_texts.emplace_back(l);
  }
  return f;
}

Fixture load_fixture(const std::string& name) {
  const detail::FixtureFile* file = find_file(name);
  if (!file) throw UnknownFixture(name);
  Fixture f = parse_fixture(file->fields, file->json);
  if (f.name != name) throw UnknownFixture(name);
  return f;
}

FixtureReport verify_fixture(const Fixture& f, std::uint64_t seed) {
  FixtureReport report{f.name, {}};
  Checker ck(report);
  const FixtureExpectation& x = f.expected;

  bool round_trip = true;
  for (const auto& v : f.fields) round_trip = round_trip && parse_field(print_field(v), f.N) == v;
  ck.add("round-trip", round_trip);

  if (span_dim(f.fields) != f.fields.size()) {
    ck.add("independent", false, "fields are linearly dependent");
    return report;
  }
  const ClosureResult closure = closure_check(f.fields);
  if (const auto* nc = std::get_if<NotClosed>(&closure)) {
    ck.add("closed", !x.closed,
           "[" + f.field_texts[nc->i] + ", " + f.field_texts[nc->j] + "] leaves the span by " +
               print_field(nc->residual));
    return report;
  }
  ck.add("closed", x.closed, x.closed ? "" : "expected not closed");
  if (!x.closed) return report;
  const LiePresentation& p = std::get<LiePresentation>(closure);

  std::optional<Invariants> mine;
  ck.guarded("invariants", [&] {
    mine = invariants(p, seed);
    const Invariants& v = *mine;
    ck.expect("dim", v.dim, x.dim);
    ck.expect("solvable", v.solvable, x.solvable);
    ck.expect("nilpotent", v.nilpotent, x.nilpotent);
    ck.expect("abelian", v.abelian, x.abelian);
    ck.expect("semisimple", v.semisimple, x.semisimple);
    ck.expect("geometric_rank", v.geometric_rank, x.geometric_rank);
    if (x.type || v.semisimple) ck.expect("type", v.type, x.type.value_or(""));
    if (x.csa_rank || v.semisimple) {
      ck.expect("csa_rank", v.csa_dim, x.csa_rank.value_or(0));
      ck.expect("csa_geometric_rank", v.csa_geometric_rank, v.csa_dim);
    }
  });

  if (x.derived) {
    ck.guarded("derived", [&] {
      const Subspace whole = Subspace::whole(p.dim());
      ck.add("derived", same_span(p.fields(bracket_space(p.algebra, whole, whole)), parse_all(*x.derived, f.N)));
    });
  }
  if (x.radical) {
    ck.guarded("radical", [&] {
      ck.add("radical", same_span(p.fields(radical(p.algebra)), parse_all(*x.radical, f.N)));
    });
  }
  if (x.levi) {
    ck.guarded("levi", [&] {
      std::vector<Vec> s;
      for (const auto& v : parse_all(*x.levi, f.N)) {
        auto c = p.coordinates(v);
        if (!c) throw DomainError("Levi factor field outside the algebra: " + print_field(v));
        s.push_back(*c);
      }
      const LeviReport lr = check_levi(p.algebra, Subspace::span(s, p.dim()), radical(p.algebra));
      std::string failed;
      for (const auto& item : lr.items)
        if (!item.pass) failed += (failed.empty() ? "" : "; ") + item.check;
      ck.add("levi", lr.pass(), failed);
    });
  }

  for (const auto& [target, emb] : f.embeddings) {
    ck.guarded("embedding " + target, [&] {
      bool ok = true;
      for (const auto& r : emb) ok = ok && p.coordinates(r.e) && p.coordinates(r.f) && is_sl2_triple(r.e, r.f);
      ck.add("embedding " + target, ok, ok ? "" : "not an sl(2) triple inside the algebra");
    });
  }

  for (const auto& rel : f.related) {
    const std::string name = "related " + rel.fixture;
    ck.guarded(name, [&] {
      std::vector<CoeffFn> fwd, inv;
      for (const auto& s : rel.forward) fwd.push_back(parse_function(s, f.N));
      for (const auto& s : rel.inverse) inv.push_back(parse_function(s, f.N));
      const PolyAutomorphism phi(fwd, inv);
      std::vector<VectorField> pushed;
      for (const auto& v : f.fields) pushed.push_back(vf_pushforward(phi, v));
      const Fixture other = load_fixture(rel.fixture);
      if (other.N != f.N || !same_span(pushed, other.fields)) {
        ck.add(name, false, "pushforward does not span " + rel.fixture);
        return;
      }
      const Invariants a = mine ? *mine : invariants(p, seed), b = invariants(present(other.fields), seed);
      ck.add(name, a == b, a == b ? "" : a.str() + " vs " + b.str());
    });
  }
  return report;
}

Fixture fixture(const std::string& name) {
  Fixture f = load_fixture(name);
  const FixtureReport r = verify_fixture(f);
  for (const auto& c : r.checks)
    if (!c.pass) throw InternalError("fixture " + name + " fails " + c.check + ": " + c.detail);
  return f;
}

std::vector<FixtureReport> verify_all(const std::string& filter, std::uint64_t seed) {
  std::vector<FixtureReport> out;
  for (const auto& name : list_fixtures()) {
    if (fnmatch(filter.c_str(), name.c_str(), 0) != 0) continue;
    try {
      out.push_back(verify_fixture(load_fixture(name), seed));
    } catch (const std::exception& e) {
      out.push_back({name, {{"load", false, e.what()}}});
    }
  }
  return out;
}

}  // namespace vfl
