#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "revprime/verify/fixtures.hpp"

namespace revprime::verify {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
  double limit_seconds = 0.0;  // 0 when the criterion has no time limit
};

struct SuiteOptions {
  std::optional<Fixtures> fixtures;
  double budget_seconds = std::numeric_limits<double>::infinity();
  unsigned threads = 0;
  // Called as each criterion finishes, so long runs can stream progress.
  std::function<void(const CriterionResult&)> on_result;
};

inline constexpr int kCriterionCount = 10;

// identities, representations, asymptotics, all.
std::vector<std::string> suite_names();
// Throws DomainError for an unknown suite.
std::vector<int> suite_criteria(const std::string& suite);
bool suite_needs_fixtures(const std::string& suite);

// One criterion, including its time limit. Throws DomainError for an id
// outside 1..10 and Error when a needed fixture is absent.
CriterionResult run_criterion(int id, const SuiteOptions& options);

// Runs the suite in order. Once the budget is spent the remaining criteria
// are reported as failures without running. Throws Error when the suite
// needs fixtures and none were given.
std::vector<CriterionResult> run_suite(const std::string& suite, const SuiteOptions& options);

// "PASS 4 title (detail, 1.23 s)".
std::string format_result(const CriterionResult& r);

}  // namespace revprime::verify
