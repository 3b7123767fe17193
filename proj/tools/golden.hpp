#ifndef VFL_TOOLS_GOLDEN_HPP
#define VFL_TOOLS_GOLDEN_HPP

#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace vfl::golden {

// dir/cases.json lists {"name", "args", "exit"}; dir/<name>.out holds the
// expected standard output byte for byte.
struct Case {
  std::string name;
  std::vector<std::string> args;
  int exit = 0;
};

struct Outcome {
  bool pass = true;
  std::size_t cases = 0;
  std::string detail;
};

inline bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream s;
  s << in.rdbuf();
  out = s.str();
  return true;
}

inline std::vector<Case> load_cases(const std::string& dir) {
  std::string text;
  if (!read_file(dir + "/cases.json", text)) throw std::runtime_error("cannot read " + dir + "/cases.json");
  std::vector<Case> cases;
  for (const auto& c : nlohmann::json::parse(text))
    cases.push_back({c.at("name").get<std::string>(), c.at("args").get<std::vector<std::string>>(),
                     c.at("exit").get<int>()});
  return cases;
}

// run(args) -> (exit code, stdout)
template <class Runner>
Outcome check(const std::string& dir, Runner&& run) {
  Outcome o;
  std::vector<Case> cases;
  try {
    cases = load_cases(dir);
  } catch (const std::exception& e) {
    return {false, 0, e.what()};
  }
  for (const auto& c : cases) {
    ++o.cases;
    std::string want;
    if (!read_file(dir + "/" + c.name + ".out", want)) {
      o.pass = false;
      o.detail += (o.detail.empty() ? "" : "; ") + c.name + ": missing .out file";
      continue;
    }
    const auto [code, got] = run(c.args);
    if (code != c.exit) {
      o.pass = false;
      o.detail += (o.detail.empty() ? "" : "; ") + c.name + ": exit " + std::to_string(code) + ", expected " +
                  std::to_string(c.exit);
    } else if (got != want) {
      o.pass = false;
      o.detail += (o.detail.empty() ? "" : "; ") + c.name + ": output differs";
    }
  }
  return o;
}

}  // namespace vfl::golden

#endif
