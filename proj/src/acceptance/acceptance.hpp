#pragma once

#include <string>
#include <vector>

namespace catlas::acceptance {

struct CriterionResult {
  std::string id;
  bool passed = false;
  std::string details;
};

// Stable ids, in run order.
const std::vector<std::string>& criterion_ids();

// Runs one criterion by id. Unknown ids throw std::invalid_argument.
CriterionResult run_criterion(const std::string& id);

std::vector<CriterionResult> run_all();

}  // namespace catlas::acceptance
