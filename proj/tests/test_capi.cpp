#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "json.hpp"
#include "vfl/vfl.h"

#include <string>
#include <vector>

using nlohmann::json;

namespace {

struct Ctx {
  vfl_context* p = vfl_context_new();
  ~Ctx() { vfl_context_free(p); }
};

// Runs f(&out), frees the string and returns (status, parsed JSON or null).
template <class F>
std::pair<vfl_status, json> grab(F f) {
  char* out = nullptr;
  const vfl_status st = f(&out);
  json j = out ? json::parse(out) : json();
  vfl_string_free(out);
  return {st, j};
}

}  // namespace

TEST_CASE("version and string free") {
  CHECK(std::string(vfl_version()).size() > 0);
  vfl_string_free(nullptr);
}

TEST_CASE("bracket through the C API") {
  Ctx c;
  auto [st, j] = grab([&](char** o) { return vfl_bracket(c.p, 1, "Dx", "x^2*Dx", o); });
  CHECK(st == VFL_OK);
  CHECK(j["bracket"] == "2*x*Dx");
}

TEST_CASE("parse errors are usage errors with a message") {
  Ctx c;
  char* out = reinterpret_cast<char*>(1);
  CHECK(vfl_parse_field(c.p, 1, "x^^2*Dx", &out) == VFL_USAGE);
  CHECK(out == nullptr);
  CHECK(std::string(vfl_last_error(c.p)).find("parse error") != std::string::npos);
  CHECK(vfl_parse_field(c.p, 0, "Dx", &out) == VFL_USAGE);
}

TEST_CASE("null arguments are rejected") {
  Ctx c;
  char* out = nullptr;
  CHECK(vfl_bracket(c.p, 1, nullptr, "Dx", &out) == VFL_USAGE);
  CHECK(vfl_bracket(c.p, 1, "Dx", "Dx", nullptr) == VFL_USAGE);
  CHECK(vfl_bracket(nullptr, 1, "Dx", "Dx", &out) == VFL_USAGE);
  CHECK(vfl_sc(c.p, nullptr, &out) == VFL_USAGE);
  CHECK(vfl_fixture_show(c.p, nullptr, &out) == VFL_USAGE);
}

TEST_CASE("closure and algebra handles") {
  Ctx c;
  const char* open[] = {"Dx", "x^3*Dx"};
  auto [st, j] = grab([&](char** o) { return vfl_closure(c.p, 1, open, 2, o); });
  CHECK(st == VFL_NEGATIVE);
  CHECK(j["closed"] == false);
  CHECK(j["i"] == 1);
  CHECK(j["j"] == 2);

  vfl_algebra* a = nullptr;
  char* closure = nullptr;
  CHECK(vfl_algebra_from_fields(c.p, 1, open, 2, &a, &closure) == VFL_NEGATIVE);
  CHECK(a == nullptr);
  CHECK(closure != nullptr);
  vfl_string_free(closure);

  const char* sl2[] = {"Dx", "x*Dx", "x^2*Dx"};
  REQUIRE(vfl_algebra_from_fields(c.p, 1, sl2, 3, &a, nullptr) == VFL_OK);
  CHECK(vfl_algebra_dim(a) == 3);
  CHECK(vfl_algebra_ambient(a) == 1);
  auto [ts, tj] = grab([&](char** o) { return vfl_type(c.p, a, o); });
  CHECK(ts == VFL_OK);
  CHECK(tj["type"] == "A1");
  auto [ks, kj] = grab([&](char** o) { return vfl_killing(c.p, a, o); });
  CHECK(ks == VFL_OK);
  CHECK(kj["nondegenerate"] == true);
  vfl_algebra_free(a);
  vfl_algebra_free(nullptr);
}

TEST_CASE("fixtures through the C API") {
  Ctx c;
  auto [ls, lj] = grab([&](char** o) { return vfl_fixture_list(c.p, o); });
  CHECK(ls == VFL_OK);
  CHECK(lj["format"] == 1);
  CHECK(lj["fixtures"].size() == 31);

  vfl_algebra* a = nullptr;
  CHECK(vfl_algebra_from_fixture(c.p, "no.such", &a) == VFL_USAGE);
  REQUIRE(vfl_algebra_from_fixture(c.p, "C2.sl3", &a) == VFL_OK);
  auto [gs, gj] = grab([&](char** o) { return vfl_georank(c.p, a, o); });
  CHECK(gs == VFL_OK);
  CHECK(gj["rank"] == 2);
  auto [cs, cj] = grab([&](char** o) { return vfl_cartan(c.p, a, o); });
  CHECK(cs == VFL_OK);
  CHECK(cj["dim"] == 2);
  vfl_algebra_free(a);

  auto [vs, vj] = grab([&](char** o) { return vfl_fixture_verify(c.p, "line.*", o); });
  CHECK(vs == VFL_OK);
}

TEST_CASE("non-semisimple type is a negative answer") {
  Ctx c;
  vfl_algebra* a = nullptr;
  REQUIRE(vfl_algebra_from_fixture(c.p, "line.affine", &a) == VFL_OK);
  auto [st, j] = grab([&](char** o) { return vfl_type(c.p, a, o); });
  CHECK(st == VFL_NEGATIVE);
  CHECK(j["semisimple"] == false);
  CHECK(j["type"].is_null());
  vfl_algebra_free(a);
}

TEST_CASE("infeasible extension") {
  Ctx c;
  REQUIRE(vfl_set_ansatz(c.p, 3, nullptr) == VFL_OK);
  vfl_algebra* a = nullptr;
  REQUIRE(vfl_algebra_from_fixture(c.p, "C2.sl2xsl2", &a) == VFL_OK);
  auto [st, j] = grab([&](char** o) { return vfl_extend(c.p, a, "B2", nullptr, o); });
  CHECK(st == VFL_NEGATIVE);
  CHECK(j["outcome"] == "Infeasible");
  CHECK(j["report"]["stage"] == 1);
  char* out = nullptr;
  CHECK(vfl_extend(c.p, a, "Q7", nullptr, &out) == VFL_USAGE);
  vfl_algebra_free(a);
}

TEST_CASE("context settings are validated") {
  Ctx c;
  CHECK(vfl_set_precision(c.p, 4) == VFL_USAGE);
  CHECK(vfl_set_precision(c.p, 128) == VFL_OK);
  CHECK(vfl_set_ansatz(c.p, 2, "0;1") == VFL_OK);
  CHECK(vfl_set_ansatz(c.p, 2, "0;x") == VFL_USAGE);
}

TEST_CASE("chevalley constants") {
  Ctx c;
  auto [st, j] = grab([&](char** o) { return vfl_chevalley_constants(c.p, "G2", o); });
  CHECK(st == VFL_OK);
  CHECK(j["dim"] == 14);
  char* out = nullptr;
  CHECK(vfl_chevalley_constants(c.p, "E9", &out) == VFL_USAGE);
}
