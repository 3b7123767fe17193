#include "cli.hpp"

#include <functional>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "golden.hpp"
#include "vfl/vfl.h"

#ifndef VFL_GOLDEN_DIR
#define VFL_GOLDEN_DIR "tests/golden"
#endif

namespace vfl::cli {

namespace {

using Json = nlohmann::ordered_json;

struct Options {
  std::size_t N = 0;
  std::uint64_t seed = 0;
  unsigned deg = 3;
  std::string freqs;
  bool json = false;
  unsigned precision = 64;
  std::string fixture;
  std::vector<std::string> fields;
  // command specific
  std::vector<std::string> levi;
  std::string target;
  std::string embedding;
  std::string type;
  std::string name;
  std::string filter = "*";
  std::string golden = VFL_GOLDEN_DIR;
};

struct Context {
  vfl_context* ctx;
  explicit Context() : ctx(vfl_context_new()) {}
  ~Context() { vfl_context_free(ctx); }
};

struct Algebra {
  vfl_algebra* a = nullptr;
  ~Algebra() { vfl_algebra_free(a); }
};

struct Reply {
  vfl_status status;
  Json json;
};

class UsageFailure : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class Failure : public std::runtime_error {
public:
  Failure(vfl_status s, const std::string& msg) : std::runtime_error(msg), status(s) {}
  vfl_status status;
};

Reply take(vfl_context* ctx, vfl_status st, char* text) {
  std::unique_ptr<char, void (*)(char*)> guard(text, vfl_string_free);
  if (st == VFL_USAGE || st == VFL_INTERNAL || !text) throw Failure(st, vfl_last_error(ctx));
  return {st, Json::parse(text)};
}

// Runs fn(&out) and takes ownership of the returned document.
template <class Fn>
Reply call(vfl_context* ctx, Fn&& fn) {
  char* text = nullptr;
  const vfl_status st = fn(&text);
  return take(ctx, st, text);
}

std::vector<const char*> c_strings(const std::vector<std::string>& v) {
  std::vector<const char*> out;
  for (const auto& s : v) out.push_back(s.c_str());
  return out;
}

// ---- human rendering, a function of the JSON only ----

std::string term(const std::string& coeff, const std::string& name) {
  if (coeff == "1") return name;
  if (coeff == "-1") return "-" + name;
  if (coeff.find_first_of("+-", 1) != std::string::npos) return "(" + coeff + ")*" + name;
  return coeff + "*" + name;
}

std::string join(const Json& arr, const std::string& sep) {
  std::string s;
  for (const auto& x : arr) s += (s.empty() ? "" : sep) + (x.is_string() ? x.get<std::string>() : x.dump());
  return s;
}

std::string tuple(const Json& arr) { return "(" + join(arr, ",") + ")"; }

std::string yes(const Json& b) { return b.get<bool>() ? "yes" : "no"; }

void list_fields(std::ostream& o, const Json& fields, const std::string& prefix) {
  std::size_t k = 0;
  for (const auto& f : fields) o << prefix << ++k << " = " << f.get<std::string>() << "\n";
}

void render_presentation(std::ostream& o, const Json& p) {
  list_fields(o, p["basis"], "X");
  const auto& sc = p["sc"];
  for (std::size_t i = 0; i < sc.size(); ++i)
    for (std::size_t j = i + 1; j < sc.size(); ++j) {
      std::string rhs;
      for (std::size_t k = 0; k < sc[i][j].size(); ++k) {
        const std::string c = sc[i][j][k].get<std::string>();
        if (c == "0") continue;
        std::string t = term(c, "X" + std::to_string(k + 1));
        rhs += rhs.empty() ? t : (t[0] == '-' ? " - " + t.substr(1) : " + " + t);
      }
      if (!rhs.empty()) o << "[X" << i + 1 << ", X" << j + 1 << "] = " << rhs << "\n";
    }
}

void render_report(std::ostream& o, const Json& r) {
  o << "stage " << r["stage"].get<std::size_t>() << ", unknown root " << tuple(r["unknown_root"]) << ", relation "
    << r["relation_index"].get<std::size_t>() << ": " << r["relation"].get<std::string>() << "\n";
  o << "residual: " << r["residual_field"].get<std::string>() << "\n";
  std::string lambdas;
  for (const auto& l : r["ansatz"]["lambda_set"]) lambdas += (lambdas.empty() ? "" : " ") + tuple(l);
  o << "ansatz: d = " << r["ansatz"]["d"].get<unsigned>() << ", lambda = {" << lambdas << "}\n";
  o << "degree independent: " << yes(r["degree_independent"]) << "\n";
  o << r["reason"].get<std::string>() << "\n";
}

void render_checks(std::ostream& o, const Json& checks, const std::string& indent) {
  for (const auto& c : checks) {
    o << indent << (c["pass"].get<bool>() ? "pass " : "FAIL ") << c["check"].get<std::string>();
    if (!c["detail"].get<std::string>().empty()) o << ": " << c["detail"].get<std::string>();
    o << "\n";
  }
}

using Renderer = std::function<void(std::ostream&, const Json&)>;

const std::map<std::string, Renderer>& renderers() {
  static const std::map<std::string, Renderer> r{
      {"bracket", [](std::ostream& o, const Json& j) { o << j["bracket"].get<std::string>() << "\n"; }},
      {"closure",
       [](std::ostream& o, const Json& j) {
         if (j["closed"].get<bool>()) {
           o << "closed, dimension " << j["dim"].get<std::size_t>() << "\n";
         } else {
           o << "not closed: [X" << j["i"].get<std::size_t>() << ", X" << j["j"].get<std::size_t>()
             << "] leaves the span by " << j["residual"].get<std::string>() << "\n";
         }
       }},
      {"sc", render_presentation},
      {"killing",
       [](std::ostream& o, const Json& j) {
         for (const auto& row : j["killing"]) o << join(row, " ") << "\n";
         o << "nondegenerate: " << yes(j["nondegenerate"]) << "\n";
       }},
      {"flags",
       [](std::ostream& o, const Json& j) {
         o << "dimension " << j["dim"].get<std::size_t>() << "\n";
         for (const char* k : {"abelian", "nilpotent", "solvable", "semisimple"}) o << k << ": " << yes(j[k]) << "\n";
       }},
      {"radical",
       [](std::ostream& o, const Json& j) {
         o << "radical dimension " << j["dim"].get<std::size_t>() << "\n";
         list_fields(o, j["radical"], "R");
       }},
      {"levi-check",
       [](std::ostream& o, const Json& j) {
         o << (j["pass"].get<bool>() ? "Levi decomposition verified" : "Levi decomposition rejected") << "\n";
         render_checks(o, j["checks"], "  ");
       }},
      {"cartan",
       [](std::ostream& o, const Json& j) {
         o << "Cartan subalgebra of dimension " << j["dim"].get<std::size_t>() << ", geometric rank "
           << j["geometric_rank"].get<std::size_t>() << "\n";
         list_fields(o, j["csa"], "H");
       }},
      {"roots",
       [](std::ostream& o, const Json& j) {
         o << "type " << j["type"].get<std::string>() << "\n";
         list_fields(o, j["csa"], "H");
         for (const auto& r : j["roots"])
           o << (r["positive"].get<bool>() ? "+ " : "- ") << tuple(r["root"]) << ": " << join(r["space"], ", ")
             << "\n";
         std::string simple;
         for (const auto& s : j["simple"]) simple += (simple.empty() ? "" : " ") + tuple(s);
         o << "simple roots: " << simple << "\n";
       }},
      {"type",
       [](std::ostream& o, const Json& j) {
         o << (j["type"].is_null() ? std::string("not semisimple") : j["type"].get<std::string>()) << "\n";
       }},
      {"georank",
       [](std::ostream& o, const Json& j) {
         o << "geometric rank " << j["rank"].get<std::size_t>() << " (dimension " << j["dim"].get<std::size_t>()
           << ")\n";
         if (!j["certificate"].is_null()) {
           const auto& c = j["certificate"];
           o << "certificate: rows " << join(c["rows"], ",") << ", columns " << join(c["cols"], ",") << ", minor "
             << c["minor"].get<std::string>() << "\n";
         }
         if (!j["witness"].is_null()) {
           const auto& w = j["witness"];
           o << "witness: " << tuple(w["point"]) << (w["exact"].get<bool>() ? "" : " (approximate)") << ", value "
             << w["value"].get<std::string>() << "\n";
         }
       }},
      {"hw-search",
       [](std::ostream& o, const Json& j) {
         o << j["count"].get<std::size_t>() << " highest weight vectors at d = " << j["ansatz"]["d"].get<unsigned>()
           << "\n";
         for (const auto& v : j["vectors"])
           o << "weight " << tuple(v["weight"]) << ": " << v["field"].get<std::string>() << "\n";
       }},
      {"extend",
       [](std::ostream& o, const Json& j) {
         o << j["outcome"].get<std::string>() << "\n";
         for (const auto& s : j["stages"])
           o << "  root " << tuple(s["root"]) << ": " << s["relations"].get<std::size_t>() << " relations, "
             << s["family_dim"].get<std::size_t>() << " free parameters\n";
         if (!j["report"].is_null()) render_report(o, j["report"]);
         if (!j["presentation"].is_null()) render_presentation(o, j["presentation"]);
       }},
      {"chevalley",
       [](std::ostream& o, const Json& j) {
         o << "type " << j["type"].get<std::string>() << "\n";
         if (j.contains("brackets")) {
           for (const auto& b : j["brackets"]) {
             std::string rhs;
             for (const auto& [k, c] : b["bracket"].items()) {
               std::string t = term(c.get<std::string>(), k);
               rhs += rhs.empty() ? t : (t[0] == '-' ? " - " + t.substr(1) : " + " + t);
             }
             o << "[" << b["x"].get<std::string>() << ", " << b["y"].get<std::string>() << "] = " << rhs << "\n";
           }
         } else {
           for (const auto& b : j["basis"]) o << b["name"].get<std::string>() << " = " << b["field"].get<std::string>() << "\n";
           o << "matches Chevalley constants: " << yes(j["matches_constants"]) << "\n";
         }
       }},
      {"fixture list",
       [](std::ostream& o, const Json& j) {
         for (const auto& f : j["fixtures"])
           o << f["name"].get<std::string>() << "  N=" << f["N"].get<std::size_t>() << " dim="
             << f["dim"].get<std::size_t>() << "  " << f["note"].get<std::string>() << "\n";
       }},
      {"fixture show",
       [](std::ostream& o, const Json& j) {
         o << j["name"].get<std::string>() << " on C^" << j["N"].get<std::size_t>() << ": "
           << j["note"].get<std::string>() << "\n";
         list_fields(o, j["fields"], "X");
         for (const auto& [k, v] : j["expected"].items())
           o << "  " << k << ": " << (v.is_string() ? v.get<std::string>() : v.is_array() ? join(v, ", ") : v.dump())
             << "\n";
       }},
      {"fixture verify",
       [](std::ostream& o, const Json& j) {
         for (const auto& f : j["fixtures"]) {
           o << (f["pass"].get<bool>() ? "PASS " : "FAIL ") << f["name"].get<std::string>() << "\n";
           if (!f["pass"].get<bool>()) {
             Json failed = Json::array();
             for (const auto& c : f["checks"])
               if (!c["pass"].get<bool>()) failed.push_back(c);
             render_checks(o, failed, "  ");
           }
         }
       }},
      {"verify-paper",
       [](std::ostream& o, const Json& j) {
         for (const auto& c : j["criteria"]) {
           o << "criterion " << c["criterion"].get<int>() << ": " << (c["pass"].get<bool>() ? "PASS" : "FAIL")
             << "  " << c["title"].get<std::string>();
           if (!c["detail"].get<std::string>().empty()) o << " (" << c["detail"].get<std::string>() << ")";
           o << "\n";
         }
       }},
  };
  return r;
}

// ---- commands ----

void load_algebra(const Options& opt, vfl_context* ctx, Algebra& alg) {
  if (!opt.fixture.empty()) {
    if (!opt.fields.empty()) throw UsageFailure("give either --fixture or fields, not both");
    const vfl_status st = vfl_algebra_from_fixture(ctx, opt.fixture.c_str(), &alg.a);
    if (st != VFL_OK) throw Failure(st, vfl_last_error(ctx));
    return;
  }
  if (opt.N == 0) throw UsageFailure("-N is required with fields");
  if (opt.fields.empty()) throw UsageFailure("no fields given");
  const auto fs = c_strings(opt.fields);
  char* closure = nullptr;
  const vfl_status st = vfl_algebra_from_fields(ctx, opt.N, fs.data(), fs.size(), &alg.a, &closure);
  Reply r = take(ctx, st, closure);
  if (st == VFL_NEGATIVE) throw r;
}

Reply dispatch(const std::string& cmd, const Options& opt, vfl_context* ctx) {
  if (cmd == "bracket") {
    if (opt.N == 0) throw UsageFailure("-N is required");
    if (opt.fields.size() != 2) throw UsageFailure("bracket takes exactly two fields");
    return call(ctx, [&](char** o) { return vfl_bracket(ctx, opt.N, opt.fields[0].c_str(), opt.fields[1].c_str(), o); });
  }
  if (cmd == "closure") {
    std::size_t n = opt.N;
    std::vector<std::string> fields = opt.fields;
    if (!opt.fixture.empty()) {
      if (!fields.empty()) throw UsageFailure("give either --fixture or fields, not both");
      const Json f = call(ctx, [&](char** o) { return vfl_fixture_show(ctx, opt.fixture.c_str(), o); }).json;
      n = f["N"].get<std::size_t>();
      fields = f["fields"].get<std::vector<std::string>>();
    }
    if (n == 0) throw UsageFailure("-N is required");
    const auto fs = c_strings(fields);
    return call(ctx, [&](char** o) { return vfl_closure(ctx, n, fs.data(), fs.size(), o); });
  }
  if (cmd == "fixture list") return call(ctx, [&](char** o) { return vfl_fixture_list(ctx, o); });
  if (cmd == "fixture show") return call(ctx, [&](char** o) { return vfl_fixture_show(ctx, opt.name.c_str(), o); });
  if (cmd == "fixture verify") return call(ctx, [&](char** o) { return vfl_fixture_verify(ctx, opt.filter.c_str(), o); });
  if (cmd == "chevalley" && !opt.type.empty()) {
    if (!opt.fields.empty() || !opt.fixture.empty()) throw UsageFailure("--type excludes fields and --fixture");
    return call(ctx, [&](char** o) { return vfl_chevalley_constants(ctx, opt.type.c_str(), o); });
  }

  static const std::map<std::string, vfl_status (*)(vfl_context*, const vfl_algebra*, char**)> unary{
      {"sc", vfl_sc},       {"killing", vfl_killing},   {"flags", vfl_flags},   {"radical", vfl_radical},
      {"cartan", vfl_cartan}, {"roots", vfl_roots},     {"type", vfl_type},     {"georank", vfl_georank},
      {"hw-search", vfl_hw_search}, {"chevalley", vfl_chevalley}};
  Algebra alg;
  load_algebra(opt, ctx, alg);
  if (auto it = unary.find(cmd); it != unary.end())
    return call(ctx, [&](char** o) { return it->second(ctx, alg.a, o); });
  if (cmd == "levi-check") {
    const auto s = c_strings(opt.levi);
    return call(ctx, [&](char** o) { return vfl_levi_check(ctx, alg.a, s.data(), s.size(), o); });
  }
  if (cmd == "extend") {
    if (opt.target.empty()) throw UsageFailure("--target is required");
    const char* emb = opt.embedding.empty() ? nullptr : opt.embedding.c_str();
    return call(ctx, [&](char** o) { return vfl_extend(ctx, alg.a, opt.target.c_str(), emb, o); });
  }
  throw UsageFailure("unknown command " + cmd);
}

// Criterion 11 run in-process: golden files plus a round-trip over fixture fields.
Json golden_criterion(const std::string& dir, vfl_context* ctx) {
  const golden::Outcome g = golden::check(dir, [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return std::pair<int, std::string>(code, out.str());
  });
  std::size_t fields = 0;
  bool round_trip = true;
  const Json fixtures = call(ctx, [&](char** o) { return vfl_fixture_list(ctx, o); }).json;
  for (const auto& f : fixtures["fixtures"]) {
    const std::string name = f["name"];
    const Json fx = call(ctx, [&](char** o) { return vfl_fixture_show(ctx, name.c_str(), o); }).json;
    const std::size_t n = fx["N"];
    for (const auto& t : fx["fields"]) {
      const std::string text = t;
      const std::string once = call(ctx, [&](char** o) { return vfl_parse_field(ctx, n, text.c_str(), o); }).json["field"];
      const std::string twice = call(ctx, [&](char** o) { return vfl_parse_field(ctx, n, once.c_str(), o); }).json["field"];
      round_trip = round_trip && once == twice;
      ++fields;
    }
  }
  std::string detail = std::to_string(g.cases) + " golden cases";
  if (!g.detail.empty()) detail += ": " + g.detail;
  detail += "; " + std::to_string(fields) + " fixture fields round-trip" + (round_trip ? "" : " FAILED");
  return Json{{"criterion", 11},
              {"title", "CLI golden files and parse/print round-trip"},
              {"pass", g.pass && round_trip},
              {"detail", detail}};
}

void add_common(CLI::App* sub, Options& opt, bool fields) {
  sub->add_option("-N", opt.N, "ambient dimension");
  sub->add_option("--seed", opt.seed, "seed for randomized searches");
  sub->add_option("--deg", opt.deg, "ansatz polynomial degree");
  sub->add_option("--freqs", opt.freqs, "ansatz frequencies, e.g. \"0;1;-1\" or \"0,0;1,0\"");
  sub->add_flag("--json", opt.json, "print JSON");
  sub->add_option("--precision", opt.precision, "digits for approximate evaluation");
  if (fields) {
    sub->add_option("--fixture", opt.fixture, "use a catalog fixture");
    sub->add_option("fields", opt.fields, "vector fields");
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app("Exact computations with finite-dimensional Lie algebras of vector fields", "vfl");
  app.require_subcommand(1);
  std::string command;

  auto field_cmd = [&](const char* name, const char* help) {
    CLI::App* s = app.add_subcommand(name, help);
    add_common(s, opt, true);
    s->callback([&command, name] { command = name; });
    return s;
  };
  field_cmd("bracket", "Lie bracket of two fields");
  field_cmd("closure", "check that fields span a Lie algebra");
  field_cmd("sc", "structure constants");
  field_cmd("killing", "Killing form");
  field_cmd("flags", "abelian, nilpotent, solvable, semisimple");
  field_cmd("radical", "solvable radical");
  field_cmd("levi-check", "verify a Levi decomposition")->add_option("--levi", opt.levi, "field of the Levi factor S");
  field_cmd("cartan", "Cartan subalgebra");
  field_cmd("roots", "root decomposition");
  field_cmd("type", "type of a semisimple algebra");
  field_cmd("georank", "geometric rank with certificate");
  field_cmd("hw-search", "highest weight vectors in the ansatz modulo the algebra");
  CLI::App* ext = field_cmd("extend", "staged search for an extension to a larger type");
  ext->add_option("--target", opt.target, "target type, e.g. B2");
  ext->add_option("--embedding", opt.embedding, "JSON list of {root, e, f}");
  field_cmd("chevalley", "Chevalley basis, or constants with --type")->add_option("--type", opt.type, "type label");

  CLI::App* fx = app.add_subcommand("fixture", "catalog fixtures");
  fx->require_subcommand(1);
  CLI::App* fl = fx->add_subcommand("list", "list fixtures");
  add_common(fl, opt, false);
  fl->callback([&] { command = "fixture list"; });
  CLI::App* fs = fx->add_subcommand("show", "show a fixture");
  add_common(fs, opt, false);
  fs->add_option("name", opt.name, "fixture name")->required();
  fs->callback([&] { command = "fixture show"; });
  CLI::App* fv = fx->add_subcommand("verify", "recompute fixture expectations");
  add_common(fv, opt, false);
  fv->add_option("filter", opt.filter, "shell-style name filter");
  fv->callback([&] { command = "fixture verify"; });

  CLI::App* vp = app.add_subcommand("verify-paper", "run the acceptance criteria");
  add_common(vp, opt, false);
  vp->add_option("--golden", opt.golden, "directory of CLI golden files");
  vp->callback([&] { command = "verify-paper"; });

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return VFL_USAGE;
  }
  // help of a subcommand is handled by CLI11 through CallForHelp as well

  Context c;
  if (!c.ctx) {
    err << "error: out of memory\n";
    return VFL_INTERNAL;
  }
  vfl_set_seed(c.ctx, opt.seed);
  if (vfl_set_precision(c.ctx, opt.precision) != VFL_OK || vfl_set_ansatz(c.ctx, opt.deg, opt.freqs.c_str()) != VFL_OK) {
    err << "error: " << vfl_last_error(c.ctx) << "\n";
    return VFL_USAGE;
  }

  Reply reply{VFL_OK, Json()};
  try {
    if (command == "verify-paper") {
      reply = call(c.ctx, [&](char** o) { return vfl_verify_paper(c.ctx, o); });
      Json crit = golden_criterion(opt.golden, c.ctx);
      if (!crit["pass"].get<bool>()) reply.status = VFL_NEGATIVE;
      reply.json["pass"] = reply.status == VFL_OK;
      reply.json["criteria"].push_back(std::move(crit));
    } else {
      reply = dispatch(command, opt, c.ctx);
    }
  } catch (const Reply& negative) {
    reply = negative;
    if (!opt.json) {
      renderers().at("closure")(out, reply.json);
      return reply.status;
    }
  } catch (const UsageFailure& e) {
    err << "error: " << e.what() << "\n";
    return VFL_USAGE;
  } catch (const Failure& e) {
    err << "error: " << e.what() << "\n";
    return e.status;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return VFL_INTERNAL;
  }

  if (opt.json) {
    out << reply.json.dump(2) << "\n";
  } else if (reply.json.contains("outcome") && reply.json.contains("message") && reply.json.size() == 2) {
    out << reply.json["outcome"].get<std::string>() << ": " << reply.json["message"].get<std::string>() << "\n";
  } else {
    renderers().at(command)(out, reply.json);
  }
  return reply.status;
}

}  // namespace vfl::cli
