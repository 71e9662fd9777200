#pragma once

#include <functional>
#include <string>
#include <vector>

namespace ibs {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

constexpr int kCriterionCount = 12;

const char* criterion_name(int id);

// Runs the selected criteria (all when `only` is empty) in order.
std::vector<CriterionResult> run_acceptance(const std::vector<int>& only = {},
                                            const std::function<void(const CriterionResult&)>& on_result = {});

CriterionResult run_criterion(int id);

}  // namespace ibs
