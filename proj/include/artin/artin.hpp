#pragma once

// Word problem in the full Artin group: Artin-reduced scanning and the
// Dehn-style solver that rewrites relator pieces v -> u^-1.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "artin/dihedral.hpp"
#include "artin/words.hpp"

namespace artin {

struct ScanOptions {
  int k = 3;  // 3: Artin-reduced, 4: strongly Artin-reduced
  // Accept specs with some m_ij < 4; results are then heuristic.
  bool allow_small_labels = false;
};

struct Violation {
  SyllableSpan span;
  DihedralPair pair;
  Word completion;  // u with r = v u in R_ij
};

// Leftmost-then-longest violation (by letter position), or nullopt.
std::optional<Violation> find_violation(const Word& w, const GroupSpec& spec,
                                        const ScanOptions& options = {});
// All violations in scan order; `limit` = 0 means unlimited.
std::vector<Violation> all_violations(const Word& w, const GroupSpec& spec,
                                      const ScanOptions& options = {}, std::size_t limit = 0);

bool is_artin_reduced(const Word& w, const GroupSpec& spec, bool allow_small_labels = false);
bool is_strongly_artin_reduced(const Word& w, const GroupSpec& spec,
                               bool allow_small_labels = false);

struct ReductionStep {
  Word before;
  Violation violation;
  Word after;
};

enum class Verdict { trivial, nontrivial, stalled };

struct DehnResult {
  Verdict verdict = Verdict::trivial;
  Word residual;
  std::vector<ReductionStep> trace;
};

// Replaces violations by u^-1 while the syllable length strictly drops. A
// stalled result means violations remain but none of them shortens the word
// (possible only when some m_ij = 4).
DehnResult dehn_solve(const Word& w, const GroupSpec& spec, bool allow_small_labels = false);

// Throws Error(scope) if the solver stalls.
bool equal_in_G(const Word& w1, const Word& w2, const GroupSpec& spec,
                bool allow_small_labels = false);

// Image of G in GL_n(F_p) through the geometric representation of the
// Coxeter quotient. Equal elements have equal images; used as a hash filter.
class CoxeterImage {
 public:
  explicit CoxeterImage(const GroupSpec& spec);
  std::uint64_t prime() const { return p_; }
  // Matrix entries plus the abelianization vector.
  std::string key(const Word& w) const;
  std::vector<std::uint64_t> matrix(const Word& w) const;

 private:
  int n_;
  std::uint64_t p_;
  std::vector<std::vector<std::uint64_t>> gens_;  // reflection matrices, row-major
  std::vector<int> classes_;
  int class_count_;
};

// Image of G under the reflection representation of its Hecke algebra over
// F_p (generic parameter q = r^2). Unlike CoxeterImage it does not factor
// through the Coxeter group; used to bucket elements before exact comparison.
class HeckeImage {
 public:
  explicit HeckeImage(const GroupSpec& spec);
  std::uint64_t prime() const { return p_; }
  std::string key(const Word& w) const;
  std::vector<std::uint64_t> matrix(const Word& w) const;

 private:
  int n_;
  std::uint64_t p_;
  // per generator: diagonal entry and row s entries of T_s and of its inverse
  std::vector<std::uint64_t> diag_, diag_inv_, self_, self_inv_;
  std::vector<std::vector<std::uint64_t>> row_, row_inv_;
  std::vector<int> classes_;
  int class_count_;
};

struct CommonElement {
  Word left;   // word in the first pair
  Word right;  // word in the second pair
  bool allowed = false;
};

struct IntersectionReport {
  DihedralPair first, second;
  std::optional<Gen> shared;
  int radius = 0;
  std::size_t first_elements = 0;
  std::size_t second_elements = 0;
  std::size_t candidate_pairs = 0;  // pairs surviving the hash filter
  std::vector<CommonElement> common;
  bool ok = true;
};

// Elements of G_{first} and G_{second} up to letter length `radius`,
// deduplicated by normal form, compared with equal_in_G. Common elements must
// be powers of the shared generator, or trivial for disjoint pairs.
IntersectionReport parabolic_intersection_check(const GroupSpec& spec, Gen i, Gen j, Gen s, Gen t,
                                                int radius);

// Distinct elements of G_ij of letter length <= radius, shortlex-least words.
std::vector<Word> pair_ball(const DihedralPair& pair, int radius);

}  // namespace artin
