#include "vfl/vfl.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <optional>
#include <string>
#include <utility>

#include "catalog.hpp"
#include "dsl.hpp"
#include "errors.hpp"
#include "json_io.hpp"
#include "scenarios.hpp"

struct vfl_context {
  std::uint64_t seed = 0;
  unsigned digits = vfl::kDefaultPrecisionDigits;
  unsigned degree = 3;
  std::string freqs;
  std::string error;
};

struct vfl_algebra {
  vfl::LiePresentation p;
  std::optional<vfl::Fixture> fixture;
};

namespace {

using vfl::Json;

struct Answer {
  vfl_status status;
  Json json;
};

Answer ok(Json j) { return {VFL_OK, std::move(j)}; }

char* to_c(const Json& j) {
  const std::string s = j.dump(2) + "\n";
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

vfl_status fail(vfl_context* ctx, vfl_status st, const std::string& msg) {
  if (ctx) ctx->error = msg;
  return st;
}

template <class Fn>
vfl_status guarded(vfl_context* ctx, char** out, Fn&& fn) {
  if (out) *out = nullptr;
  if (!ctx) return VFL_USAGE;
  ctx->error.clear();
  try {
    Answer a = fn();
    if (out) *out = to_c(a.json);
    return a.status;
  } catch (const vfl::IrrationalSpectrum& e) {
    if (out) *out = to_c(Json{{"outcome", "IrrationalSpectrum"}, {"message", e.what()}});
    return fail(ctx, VFL_NEGATIVE, e.what());
  } catch (const vfl::CartanNotFound& e) {
    if (out) *out = to_c(Json{{"outcome", "CartanNotFound"}, {"message", e.what()}});
    return fail(ctx, VFL_NEGATIVE, e.what());
  } catch (const vfl::UsageError& e) {
    return fail(ctx, VFL_USAGE, e.what());
  } catch (const vfl::Truncation& e) {
    return fail(ctx, VFL_USAGE, e.what());
  } catch (const vfl::InternalError& e) {
    return fail(ctx, VFL_INTERNAL, e.what());
  } catch (const std::exception& e) {
    return fail(ctx, VFL_INTERNAL, e.what());
  } catch (...) {
    return fail(ctx, VFL_INTERNAL, "unknown exception");
  }
}

// guarded() for calls whose JSON output is mandatory.
template <class Fn>
vfl_status produce(vfl_context* ctx, char** out, Fn&& fn) {
  if (!out) return fail(ctx, VFL_USAGE, "null output pointer");
  return guarded(ctx, out, std::forward<Fn>(fn));
}

std::vector<vfl::VectorField> parse_list(std::size_t dim, const char* const* fields, std::size_t count) {
  if (count > 0 && !fields) throw vfl::DomainError("null field list");
  std::vector<vfl::VectorField> out;
  for (std::size_t k = 0; k < count; ++k) {
    if (!fields[k]) throw vfl::DomainError("null field");
    out.push_back(vfl::parse_field(fields[k], dim, k + 1));
  }
  return out;
}

void require_dim(std::size_t dim) {
  if (dim == 0) throw vfl::DomainError("ambient dimension must be positive");
}

vfl::AnsatzSpace ansatz(const vfl_context* ctx, std::size_t dim) {
  return vfl::AnsatzSpace(dim, ctx->degree, vfl::parse_freqs(ctx->freqs, dim));
}

vfl::RootData root_data(const vfl_context* ctx, const vfl::LiePresentation& p) {
  return vfl::root_decomposition(p.algebra, vfl::find_cartan(p.algebra, {ctx->seed}));
}

#define VFL_CHECK_ALG(a) \
  if (!(a)) throw vfl::DomainError("null algebra handle")

}  // namespace

extern "C" {

const char* vfl_version(void) { return "1.0.0"; }

void vfl_string_free(char* s) { std::free(s); }

vfl_context* vfl_context_new(void) { return new (std::nothrow) vfl_context(); }

void vfl_context_free(vfl_context* ctx) { delete ctx; }

const char* vfl_last_error(const vfl_context* ctx) { return ctx ? ctx->error.c_str() : "null context"; }

void vfl_set_seed(vfl_context* ctx, uint64_t seed) {
  if (ctx) ctx->seed = seed;
}

vfl_status vfl_set_precision(vfl_context* ctx, unsigned digits) {
  if (!ctx) return VFL_USAGE;
  if (digits < 8) return fail(ctx, VFL_USAGE, "precision must be at least 8 digits");
  ctx->digits = digits;
  return VFL_OK;
}

vfl_status vfl_set_ansatz(vfl_context* ctx, unsigned degree, const char* freqs) {
  if (!ctx) return VFL_USAGE;
  const std::string text = freqs ? freqs : "";
  if (!text.empty()) {
    const std::string first = text.substr(0, text.find(';'));
    try {
      vfl::parse_freqs(text, std::count(first.begin(), first.end(), ',') + 1);
    } catch (const std::exception& e) {
      return fail(ctx, VFL_USAGE, e.what());
    }
  }
  ctx->degree = degree;
  ctx->freqs = text;
  return VFL_OK;
}

vfl_status vfl_parse_field(vfl_context* ctx, size_t dim, const char* text, char** out) {
  return produce(ctx, out, [&] {
    require_dim(dim);
    if (!text) throw vfl::DomainError("null field");
    const vfl::VectorField v = vfl::parse_field(text, dim);
    Json comps = Json::array();
    for (const auto& c : v.comps()) comps.push_back(vfl::print_function(c));
    return ok(Json{{"N", dim}, {"field", vfl::print_field(v)}, {"components", std::move(comps)}});
  });
}

vfl_status vfl_bracket(vfl_context* ctx, size_t dim, const char* a, const char* b, char** out) {
  return produce(ctx, out, [&] {
    require_dim(dim);
    if (!a || !b) throw vfl::DomainError("null field");
    const vfl::VectorField x = vfl::parse_field(a, dim, 1), y = vfl::parse_field(b, dim, 2);
    return ok(Json{{"N", dim},
                   {"x", vfl::print_field(x)},
                   {"y", vfl::print_field(y)},
                   {"bracket", vfl::print_field(vfl::vf_bracket(x, y))}});
  });
}

vfl_status vfl_closure(vfl_context* ctx, size_t dim, const char* const* fields, size_t count, char** out) {
  return produce(ctx, out, [&] {
    require_dim(dim);
    const vfl::ClosureResult r = vfl::closure_check(parse_list(dim, fields, count));
    return Answer{std::holds_alternative<vfl::LiePresentation>(r) ? VFL_OK : VFL_NEGATIVE, vfl::closure_json(r)};
  });
}

vfl_status vfl_algebra_from_fields(vfl_context* ctx, size_t dim, const char* const* fields, size_t count,
                                   vfl_algebra** out, char** closure) {
  if (out) *out = nullptr;
  if (!out) return fail(ctx, VFL_USAGE, "null output handle");
  return guarded(ctx, closure, [&] {
    require_dim(dim);
    vfl::ClosureResult r = vfl::closure_check(parse_list(dim, fields, count));
    if (auto* p = std::get_if<vfl::LiePresentation>(&r)) {
      *out = new vfl_algebra{std::move(*p), std::nullopt};
      return ok(Json{{"closed", true}, {"dim", (*out)->p.dim()}});
    }
    ctx->error = "fields do not span a Lie algebra";
    return Answer{VFL_NEGATIVE, vfl::closure_json(r)};
  });
}

vfl_status vfl_algebra_from_fixture(vfl_context* ctx, const char* name, vfl_algebra** out) {
  if (out) *out = nullptr;
  if (!out) return fail(ctx, VFL_USAGE, "null output handle");
  return guarded(ctx, nullptr, [&] {
    if (!name) throw vfl::DomainError("null fixture name");
    vfl::Fixture f = vfl::load_fixture(name);
    vfl::LiePresentation p = vfl::present(f.fields);
    *out = new vfl_algebra{std::move(p), std::move(f)};
    return ok(Json());
  });
}

void vfl_algebra_free(vfl_algebra* a) { delete a; }

size_t vfl_algebra_dim(const vfl_algebra* a) { return a ? a->p.dim() : 0; }

size_t vfl_algebra_ambient(const vfl_algebra* a) { return a ? a->p.N : 0; }

vfl_status vfl_sc(vfl_context* ctx, const vfl_algebra* a, char** out) {
  return produce(ctx, out, [&] {
    VFL_CHECK_ALG(a);
    return ok(vfl::to_json(a->p));
  });
}

vfl_status vfl_killing(vfl_context* ctx, const vfl_algebra* a, char** out) {
  return produce(ctx, out, [&] {
    VFL_CHECK_ALG(a);
    return ok(vfl::killing_json(a->p.algebra));
  });
}

vfl_status vfl_flags(vfl_context* ctx, const vfl_algebra* a, char** out) {
  return produce(ctx, out, [&] {
    VFL_CHECK_ALG(a);
    return ok(vfl::flags_json(a->p.algebra));
  });
}

vfl_status vfl_radical(vfl_context* ctx, const vfl_algebra* a, char** out) {
  return produce(ctx, out, [&] {
    VFL_CHECK_ALG(a);
    return ok(vfl::radical_json(a->p));
  });
}

vfl_status vfl_levi_check(vfl_context* ctx, const vfl_algebra* a, const char* const* s, size_t count, char** out) {
  return produce(ctx, out, [&] {
    VFL_CHECK_ALG(a);
    std::vector<vfl::Vec> rows;
    for (const auto& v : parse_list(a->p.N, s, count)) {
      auto c = a->p.coordinates(v);
      if (!c) throw vfl::DomainError("field " + vfl::print_field(v) + " is not in the algebra");
      rows.push_back(std::move(*c));
    }
    const vfl::LeviReport r = vfl::check_levi(a->p.algebra, vfl::Subspace::span(rows, a->p.dim()),
                                              vfl::radical(a->p.algebra));
    return Answer{r.pass() ? VFL_OK : VFL_NEGATIVE, vfl::levi_json(r)};
  });
}

vfl_status vfl_cartan(vfl_context* ctx, const vfl_algebra* a, char** out) {
  return produce(ctx, out, [&] {
    VFL_CHECK_ALG(a);
    return ok(vfl::cartan_json(a->p, vfl::find_cartan(a->p.algebra, {ctx->seed}), ctx->seed));
  });
}

vfl_status vfl_roots(vfl_context* ctx, const vfl_algebra* a, char** out) {
  return produce(ctx, out, [&] {
    VFL_CHECK_ALG(a);
    return ok(vfl::roots_json(a->p, root_data(ctx, a->p)));
  });
}

vfl_status vfl_type(vfl_context* ctx, const vfl_algebra* a, char** out) {
  return produce(ctx, out, [&] {
    VFL_CHECK_ALG(a);
    if (!vfl::is_semisimple(a->p.algebra)) return Answer{VFL_NEGATIVE, Json{{"type", nullptr}, {"semisimple", false}}};
    return ok(vfl::type_json(vfl::identify_type(a->p.algebra, root_data(ctx, a->p))));
  });
}

vfl_status vfl_georank(vfl_context* ctx, const vfl_algebra* a, char** out) {
  return produce(ctx, out, [&] {
    VFL_CHECK_ALG(a);
    const vfl::GeometricRank g = vfl::geometric_rank(a->p, ctx->seed);
    std::optional<vfl::Witness> w;
    if (g.certificate) {
      try {
        w = vfl::witness_point(g.certificate->value, 5, ctx->digits);
      } catch (const vfl::NoExactWitness&) {
      }
    }
    return ok(vfl::georank_json(a->p, g, w));
  });
}

vfl_status vfl_rank_equality(vfl_context* ctx, const vfl_algebra* a, char** out) {
  return produce(ctx, out, [&] {
    VFL_CHECK_ALG(a);
    const vfl::RankEqualityReport r = vfl::rank_equality_report(a->p, {ctx->seed});
    return Answer{r.equal() ? VFL_OK : VFL_NEGATIVE, vfl::rank_equality_json(r)};
  });
}

vfl_status vfl_chevalley(vfl_context* ctx, const vfl_algebra* a, char** out) {
  return produce(ctx, out, [&] {
    VFL_CHECK_ALG(a);
    return ok(vfl::chevalley_basis_json(a->p, vfl::chevalley_normalize(a->p.algebra, root_data(ctx, a->p))));
  });
}

vfl_status vfl_chevalley_constants(vfl_context* ctx, const char* type, char** out) {
  return produce(ctx, out, [&] {
    if (!type) throw vfl::DomainError("null type");
    return ok(vfl::chevalley_constants_json(vfl::chevalley_constants(vfl::TypeLabel::parse(type))));
  });
}

vfl_status vfl_hw_search(vfl_context* ctx, const vfl_algebra* a, char** out) {
  return produce(ctx, out, [&] {
    VFL_CHECK_ALG(a);
    const vfl::AnsatzSpace as = ansatz(ctx, a->p.N);
    const vfl::BorelChoice b = vfl::stable_borel(a->p, root_data(ctx, a->p), as);
    return ok(vfl::weight_vectors_json(vfl::highest_weight_vectors(a->p, b, as), as));
  });
}

vfl_status vfl_extend(vfl_context* ctx, const vfl_algebra* a, const char* target, const char* embedding, char** out) {
  return produce(ctx, out, [&] {
    VFL_CHECK_ALG(a);
    if (!target) throw vfl::DomainError("null target type");
    const vfl::TypeLabel t = vfl::TypeLabel::parse(target);
    std::vector<vfl::RootEmbedding> emb;
    if (embedding) {
      emb = vfl::parse_embedding(embedding, a->p.N);
    } else {
      if (!a->fixture || !a->fixture->embeddings.count(t.str()))
        throw vfl::DomainError("no shipped embedding into " + t.str() + "; pass one explicitly");
      emb = a->fixture->embeddings.at(t.str());
    }
    for (const auto& r : emb)
      if (!a->p.coordinates(r.e) || !a->p.coordinates(r.f))
        throw vfl::DomainError("embedding field outside the algebra");
    const vfl::AnsatzSpace as = ansatz(ctx, a->p.N);
    const vfl::StagedResult r = vfl::staged_extension_protocol(vfl::chevalley_constants(t), emb, as);
    return Answer{r.outcome == vfl::StagedOutcome::Infeasible ? VFL_NEGATIVE : VFL_OK, vfl::staged_json(r, as)};
  });
}

vfl_status vfl_fixture_list(vfl_context* ctx, char** out) {
  return produce(ctx, out, [&] {
    Json list = Json::array();
    for (const auto& name : vfl::list_fixtures()) {
      const vfl::Fixture f = vfl::load_fixture(name);
      list.push_back(Json{{"name", f.name}, {"N", f.N}, {"dim", f.expected.dim}, {"note", f.note}});
    }
    return ok(Json{{"format", vfl::kFixtureFormat}, {"fixtures", std::move(list)}});
  });
}

vfl_status vfl_fixture_show(vfl_context* ctx, const char* name, char** out) {
  return produce(ctx, out, [&] {
    if (!name) throw vfl::DomainError("null fixture name");
    return ok(vfl::fixture_json(vfl::load_fixture(name)));
  });
}

vfl_status vfl_fixture_verify(vfl_context* ctx, const char* filter, char** out) {
  return produce(ctx, out, [&] {
    Json list = Json::array();
    bool all = true;
    for (const auto& r : vfl::verify_all(filter ? filter : "*", ctx->seed)) {
      all = all && r.pass();
      list.push_back(vfl::fixture_report_json(r));
    }
    return Answer{all ? VFL_OK : VFL_NEGATIVE, Json{{"pass", all}, {"fixtures", std::move(list)}}};
  });
}

vfl_status vfl_verify_paper(vfl_context* ctx, char** out) {
  return produce(ctx, out, [&] {
    Json list = Json::array();
    bool all = true;
    for (const auto& c : vfl::run_scenarios(ctx->seed)) {
      all = all && c.pass;
      list.push_back(Json{{"criterion", c.id}, {"title", c.title}, {"pass", c.pass}, {"detail", c.detail}});
    }
    return Answer{all ? VFL_OK : VFL_NEGATIVE, Json{{"pass", all}, {"criteria", std::move(list)}}};
  });
}

}  // extern "C"
