#ifndef VFL_FIXTURE_DATA_HPP
#define VFL_FIXTURE_DATA_HPP

#include <cstddef>

namespace vfl::detail {

// Generated at build time from data/fixtures.
struct FixtureFile {
  const char* stem;
  const char* fields;
  const char* json;
};

extern const FixtureFile kFixtureFiles[];
extern const std::size_t kFixtureFileCount;

}  // namespace vfl::detail

#endif
