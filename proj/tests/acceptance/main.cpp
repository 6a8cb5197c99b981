#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "acceptance/acceptance.hpp"

// Runs the acceptance criteria and prints one PASS/FAIL line each. Exit 0
// only when every requested criterion passes.
int main(int argc, char** argv) {
  std::string only;
  for (int k = 1; k < argc; ++k) {
    const std::string arg = argv[k];
    if (arg == "--only" && k + 1 < argc) {
      only = argv[++k];
    } else if (arg == "--list") {
      for (const auto& id : catlas::acceptance::criterion_ids()) std::printf("%s\n", id.c_str());
      return 0;
    } else {
      std::fprintf(stderr, "usage: %s [--only <criterion>] [--list]\n", argv[0]);
      return 2;
    }
  }
  std::vector<std::string> ids;
  if (only.empty())
    ids = catlas::acceptance::criterion_ids();
  else
    ids.push_back(only);

  int failures = 0;
  for (const auto& id : ids) {
    try {
      const auto res = catlas::acceptance::run_criterion(id);
      std::printf("%s %s: %s\n", res.passed ? "PASS" : "FAIL", res.id.c_str(),
                  res.details.c_str());
      if (!res.passed) ++failures;
    } catch (const std::exception& e) {
      std::printf("FAIL %s: exception: %s\n", id.c_str(), e.what());
      ++failures;
    }
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
