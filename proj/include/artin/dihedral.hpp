#pragma once

// Exact computation in the dihedral Artin groups
//   G_ij = < a_i, a_j | a_i a_j a_i ... = a_j a_i a_j ... (m letters each side) >.
//
// Two independent equality tests are provided:
//  * Garside left normal form  Delta^inf * s_1 ... s_l, computed incrementally
//    on the letter level (GarsideState);
//  * the amalgamated-product normal form obtained by mapping the word into
//      <x> *_{x^k = z} (<z> x <y>)  for m = 2k   (a -> y, b -> y^-1 x)
//      <x> *_{x^2 = y^m} <y>        for m = 2k+1 (a -> y^-k x, b -> x^-1 y^(k+1))
//    (AmalgamState).
// Local letters: 0 stands for a_i, 1 for a_j.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "artin/words.hpp"

namespace artin {

struct DihedralPair {
  Gen i = 1;
  Gen j = 2;
  int m = 2;
  friend bool operator==(const DihedralPair&, const DihedralPair&) = default;
  bool contains(Gen g) const { return g == i || g == j; }
  Gen other(Gen g) const { return g == i ? j : i; }
  Gen local_to_gen(int x) const { return x == 0 ? i : j; }
};

// Validated pair: i != j and m_ij finite. Throws Error(argument) otherwise.
DihedralPair dihedral_pair(const GroupSpec& spec, Gen i, Gen j);
DihedralPair dihedral_pair(Gen i, Gen j, int m);

// Alternating positive word of length `len` beginning with a_i (start = 0) or
// a_j (start = 1). len = 0 is the identity and len = m is Delta; both are stored
// with start = 0.
struct SimpleElement {
  int start = 0;
  int len = 0;
  friend auto operator<=>(const SimpleElement&, const SimpleElement&) = default;
};

SimpleElement make_simple(int start, int len, int m);
std::vector<SimpleElement> simples(const DihedralPair& pair);
Word simple_word(const DihedralPair& pair, SimpleElement s);

struct GarsideNF {
  long inf = 0;
  std::vector<SimpleElement> factors;
  bool is_identity() const { return inf == 0 && factors.empty(); }
  friend bool operator==(const GarsideNF&, const GarsideNF&) = default;
};

// Incremental normal form. Invariant: the element is Delta^delta * P where P is
// a positive word with no alternating run of length m; P is then already in
// left normal form, factored at its repeated letters.
class GarsideState {
 public:
  explicit GarsideState(int m) : m_(m) {}

  void multiply(int x, int exp);  // right-multiply by (local letter x)^exp
  void multiply(const Word& w, const DihedralPair& pair);
  bool is_identity() const { return delta_ == 0 && stored_.empty(); }
  GarsideNF normal_form() const;
  // Byte string identifying the element; equal iff the elements are equal.
  std::string key() const;
  long letter_count() const { return static_cast<long>(stored_.size()); }

 private:
  int actual(std::uint8_t s) const { return s ^ twist_; }
  void push_positive(int x);
  void pop_positive();
  void recompute_run();
  void multiply_inverse_letter(int x);

  int m_;
  long delta_ = 0;
  std::vector<std::uint8_t> stored_;  // letters of P, XOR twist_ gives the actual letter
  std::uint8_t twist_ = 0;
  int run_ = 0;  // length of the trailing alternating run of P
};

GarsideNF garside_nf(const Word& w, const DihedralPair& pair);
std::string format_nf(const GarsideNF& nf, const DihedralPair& pair);

struct AmalgamNF {
  // Power q of the amalgamated generator (x^k = z, resp. x^2 = y^m).
  long central = 0;
  // Alternating coset representatives: (factor, value) with factor 0 = <x>
  // and factor 1 = the other vertex group.
  std::vector<std::pair<int, long>> reps;
  bool is_identity() const { return central == 0 && reps.empty(); }
  friend bool operator==(const AmalgamNF&, const AmalgamNF&) = default;
};

class AmalgamState {
 public:
  explicit AmalgamState(int m) : m_(m) {}
  void multiply_x(long e);
  void multiply_y(long e);
  // Right-multiplies by the image of (local letter)^exp.
  void multiply(int x, int exp);
  void multiply(const Word& w, const DihedralPair& pair);
  const AmalgamNF& normal_form() const { return nf_; }
  bool is_identity() const { return nf_.is_identity(); }
  std::string key() const;

 private:
  int m_;
  AmalgamNF nf_;
};

AmalgamNF amalgam_nf(const Word& w, const DihedralPair& pair);
std::string format_amalgam(const AmalgamNF& nf, const DihedralPair& pair);

// u_ij * u_ji^-1.
Word build_relator(const DihedralPair& pair);
// u_ij: the alternating word of length m starting with a_i.
Word alternating_word(const DihedralPair& pair, Gen start, int len);

// Member of R_ij: nonempty, only a_i/a_j, cyclically reduced, trivial in G_ij.
bool in_Rij(const Word& w, const DihedralPair& pair);

bool uses_only_pair(const Word& w, const DihedralPair& pair);
void require_pair_word(const Word& w, const DihedralPair& pair);

struct SearchBounds {
  std::size_t max_syllables = 0;  // 0: ||w||
  int max_exponent = 0;           // 0: letter_length(w) + 2m
};

enum class Minimality { exhaustive, bounded };

struct MinSyllableResult {
  Word word;
  Minimality minimality = Minimality::bounded;
};

struct MinSyllableOptions {
  SearchBounds bounds;
  // Use ||r|| >= 2m for r in R_ij to certify minimality without search.
  bool use_cancellation_bound = true;
};

// Representative of minimal syllable length (ties broken by letter length,
// then shortlex) among words with exponents bounded by `bounds.max_exponent`.
MinSyllableResult min_syllable_rep(const Word& w, const DihedralPair& pair,
                                   const MinSyllableOptions& options = {});

struct CompletionOptions {
  int exponent_bound = 0;  // 0: letter_length(v) + m
  // Skip candidates with ||v|| + k < 2m, which cannot occur for r in R_ij.
  bool use_length_bound = true;
};

// Some u with ||u|| <= k such that the concatenation r = v u (no cancellation
// at the junction) lies in R_ij, or nullopt. Shorter u are preferred.
std::optional<Word> relator_completion(const Word& v, const DihedralPair& pair, int k,
                                       const CompletionOptions& options = {});

}  // namespace artin
