#ifndef VFL_SCENARIOS_HPP
#define VFL_SCENARIOS_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace vfl {

struct CriterionResult {
  int id;
  std::string title;
  bool pass;
  std::string detail;
};

inline constexpr int kLibraryCriteria = 10;

// Criteria 1..10 (11, the CLI golden files, lives with the CLI). Exceptions
// are caught and reported as failures.
CriterionResult run_criterion(int id, std::uint64_t seed = 0);
std::vector<CriterionResult> run_scenarios(std::uint64_t seed = 0);

}  // namespace vfl

#endif
