#pragma once

#include <functional>
#include <string>
#include <vector>

namespace gevrey {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

// Runs acceptance criteria 1-10. The full run adds extra families and
// trials on top of the quick run.
std::vector<CriterionResult> run_acceptance(bool quick,
                                            const std::function<void(const CriterionResult&)>& on_result = {});

std::string format_result(const CriterionResult& r);

}  // namespace gevrey
