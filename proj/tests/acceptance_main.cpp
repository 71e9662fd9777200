// One line per criterion; exit status is the number of failures.
#include <cstdio>
#include <cstdlib>
#include <vector>

#include "ibs/acceptance.hpp"

int main(int argc, char** argv) {
  std::vector<int> only;
  for (int i = 1; i < argc; ++i) only.push_back(std::atoi(argv[i]));
  int failed = 0;
  ibs::run_acceptance(only, [&](const ibs::CriterionResult& r) {
    if (!r.passed) ++failed;
    std::printf("[%s] criterion %2d %s (%.1fs): %s\n", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(), r.seconds,
                r.detail.c_str());
    std::fflush(stdout);
  });
  std::printf("%d failed\n", failed);
  return failed == 0 ? 0 : 1;
}
