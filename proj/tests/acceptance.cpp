#include <chrono>
#include <cstdio>
#include <cstring>

#include "gevrey/verify.hpp"

int main(int argc, char** argv) {
  bool quick = argc > 1 && std::strcmp(argv[1], "--quick") == 0;
  auto t0 = std::chrono::steady_clock::now();
  auto results = gevrey::run_acceptance(quick, [](const gevrey::CriterionResult& r) {
    std::printf("%s\n", gevrey::format_result(r).c_str());
    std::fflush(stdout);
  });
  double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool ok = true;
  for (const auto& r : results) ok = ok && r.pass;
  bool fast = total < 120.0;
  std::printf("%s criterion 11 Runtime budget: %.2f s total (limit 120 s)\n", fast ? "PASS" : "FAIL", total);
  return ok && fast ? 0 : 1;
}
