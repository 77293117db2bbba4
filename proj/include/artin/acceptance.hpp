#pragma once

// The acceptance suite: eight property checks, each with an observed value
// and a bound.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "artin/words.hpp"

namespace artin {

struct AcceptanceConfig {
  GroupSpec spec = GroupSpec::uniform(3, 7);  // the group under test
  std::uint64_t seed = 1;
  int radius = 3, slack = 1;
  std::size_t geodesic_cap = 64;
  std::size_t quadrilateral_cap = 50000;
  unsigned threads = 0;
  std::vector<int> only;  // criterion ids to run; empty: all
  // sizes
  int exhaustive_max_m = 8;
  std::size_t oracle_words = 10000;
  std::size_t dehn_words = 1000;
  std::size_t pipeline_paths = 200;
  int intersection_radius = 6;
  int delta_bound = 28;  // doubled units
};

enum class CriterionStatus { pass, fail, skip, resource };

struct CriterionResult {
  int id = 0;
  std::string name;
  CriterionStatus status = CriterionStatus::pass;
  std::string observed;
  std::string bound;
  std::string note;
  double seconds = 0;
};

struct AcceptanceReport {
  std::vector<CriterionResult> results;
  bool ok() const;              // no failures (skips allowed)
  bool resource_hit() const;
};

// Runs the selected criteria in order. A resource error ends the run after
// recording a partial result. `progress` is called after each criterion.
AcceptanceReport run_acceptance(
    const AcceptanceConfig& config,
    const std::function<void(const CriterionResult&)>& progress = nullptr);

const char* status_name(CriterionStatus s);

// Number of trivial words in G_12 (dihedral, label m) with exactly
// `syllables` syllables and exponents in {-2,-1,1,2}, either starting letter.
// Counted by a meet-in-the-middle join on Garside keys (or amalgam keys).
std::size_t trivial_pair_words(int m, int syllables, bool garside);

}  // namespace artin
