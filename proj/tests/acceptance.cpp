// Runs the full acceptance suite on the default group (rank 3, all labels 7)
// and prints one line per criterion. Exits nonzero unless every criterion
// passes.

#include <cstdio>

#include "artin/acceptance.hpp"

int main() {
  artin::AcceptanceConfig cfg;
  bool all = true;
  auto report = artin::run_acceptance(cfg, [&](const artin::CriterionResult& r) {
    bool pass = r.status == artin::CriterionStatus::pass;
    all = all && pass;
    std::printf("criterion %d %s %s: observed %s; bound %s (%.1fs)\n", r.id, pass ? "PASS" : "FAIL",
                r.name.c_str(), r.observed.c_str(), r.bound.c_str(), r.seconds);
    if (!pass) std::printf("  status %s %s\n", artin::status_name(r.status), r.note.c_str());
    std::fflush(stdout);
  });
  if (report.results.size() != 8) {
    std::printf("only %zu of 8 criteria ran\n", report.results.size());
    all = false;
  }
  std::printf("acceptance %s\n", all ? "PASS" : "FAIL");
  return all ? 0 : 1;
}
