#pragma once

// Command implementations shared by the C API and the command-line tool.
// Each command returns records; the text and machine renderings are built
// from the same fields, so they carry the same numbers.

#include <cstdint>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "artin/acceptance.hpp"
#include "artin/relhyp.hpp"

namespace artin {

struct Record {
  std::string type;
  std::vector<std::pair<std::string, std::string>> fields;

  explicit Record(std::string t) : type(std::move(t)) {}
  Record& add(const std::string& key, const std::string& value);
  Record& add(const std::string& key, const char* value) { return add(key, std::string(value)); }
  template <class T>
    requires std::is_integral_v<T>
  Record& add(const std::string& key, T value) {
    return add(key, std::to_string(value));
  }
  Record& flag(const std::string& key, bool value) { return add(key, value ? "yes" : "no"); }
  const std::string* get(const std::string& key) const;
};

using Records = std::vector<Record>;

// One line per record: `type=<t> key=value ...`; values with spaces, quotes,
// '=' or nothing at all are double-quoted with backslash escapes.
std::string render_machine(const Records& records);
std::string render_text(const Records& records);

// Identity is written as "1".
std::string word_field(const Word& w);

struct CommandConfig {
  int radius = 3, slack = 1;
  std::uint64_t seed = 1;
  std::size_t geodesic_cap = 64;
  std::size_t quadrilateral_cap = 50000;
  ScanMode mode = ScanMode::vertex;
  unsigned threads = 0;
  bool strong = false;              // k = 4 in `reduce`
  bool allow_small_labels = false;  // run word-problem commands outside scope
  bool allow_extra_large = false;   // run the pipeline on 4 <= m < 7
  bool per_pair = false;            // bigons: one record per scanned item
  bool timing = true;               // accept: include runtimes
  std::size_t samples = 20;         // pipeline: sampled geodesics
  int search_radius = 4;            // intersect
};

Records cmd_info(const GroupSpec& spec);
Records cmd_relator(const GroupSpec& spec, Gen i, Gen j);
Records cmd_nf(const GroupSpec& spec, Gen i, Gen j, const Word& w);
Records cmd_minsyll(const GroupSpec& spec, Gen i, Gen j, const Word& w);
// Dehn solver with its numbered trace; with `other`, decides w = other.
Records cmd_wp(const GroupSpec& spec, const Word& w, const std::optional<Word>& other,
               const CommandConfig& cfg);
// Violations at level 3 (or 4 with cfg.strong) and the reduced flags.
Records cmd_reduce(const GroupSpec& spec, const Word& w, const CommandConfig& cfg);
Records cmd_intersect(const GroupSpec& spec, Gen i, Gen j, Gen s, Gen t, const CommandConfig& cfg);
Records ball_records(const ConedBall& ball);
Records cmd_dist(const GroupSpec& spec, const Word& from, const Word& to, const CommandConfig& cfg);
Records cmd_geo(const GroupSpec& spec, const Word& from, const Word& to, const CommandConfig& cfg);
// Given endpoints: one geodesic from -> to; otherwise cfg.samples stable pairs.
Records cmd_pipeline(const GroupSpec& spec, const std::optional<std::pair<Word, Word>>& ends,
                     const CommandConfig& cfg);
Records cmd_bigons(const GroupSpec& spec, const CommandConfig& cfg);
Records cmd_delta(const std::vector<std::pair<std::string, GroupSpec>>& specs, const CommandConfig& cfg);
Records accept_records(const AcceptanceReport& report, bool timing);
Record accept_record(const CriterionResult& r, bool timing);

}  // namespace artin
