#ifndef VFL_CATALOG_HPP
#define VFL_CATALOG_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "modsearch.hpp"

namespace vfl {

struct FixtureExpectation {
  bool closed = true;
  std::size_t dim = 0;
  bool solvable = false;
  bool nilpotent = false;
  bool abelian = false;
  bool semisimple = false;
  std::optional<std::string> type;
  std::size_t geometric_rank = 0;
  std::optional<std::size_t> csa_rank;
  // spans, as field lists in the DSL
  std::optional<std::vector<std::string>> radical;
  std::optional<std::vector<std::string>> derived;
  std::optional<std::vector<std::string>> levi;
};

// The fixture's fields pushed forward by (forward, inverse) span `fixture`.
struct FixtureRelation {
  std::string fixture;
  std::vector<std::string> forward;
  std::vector<std::string> inverse;
};

struct Fixture {
  std::string name;
  std::size_t N = 0;
  std::string note;
  std::vector<std::string> field_texts;
  std::vector<VectorField> fields;
  FixtureExpectation expected;
  std::map<std::string, std::vector<RootEmbedding>> embeddings;  // keyed by target type label
  std::vector<FixtureRelation> related;
};

struct FixtureCheck {
  std::string check;
  bool pass;
  std::string detail;
};

struct FixtureReport {
  std::string name;
  std::vector<FixtureCheck> checks;
  bool pass() const;
};

inline constexpr int kFixtureFormat = 1;

std::vector<std::string> list_fixtures();

// Parses a fixture without verifying it. Throws UnknownFixture.
Fixture load_fixture(const std::string& name);
// Fixture from file contents; throws ParseError or DomainError on malformed input.
Fixture parse_fixture(std::string_view fields_text, std::string_view json_text);

// Recomputes every expectation. Never throws for mathematical mismatches.
FixtureReport verify_fixture(const Fixture& f, std::uint64_t seed = 0);

// load_fixture followed by verify_fixture; throws InternalError if the
// shipped expectations do not hold.
Fixture fixture(const std::string& name);

// Fixtures whose name matches the shell-style pattern.
std::vector<FixtureReport> verify_all(const std::string& filter = "*", std::uint64_t seed = 0);

}  // namespace vfl

#endif
