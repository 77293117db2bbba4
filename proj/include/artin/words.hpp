#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace artin {

enum class ErrorKind { parse, argument, scope, resource, internal };

// All library failures are reported through this one exception type; the C
// API maps the kind onto a status code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// Generator index, 1-based.
using Gen = int;

// One entry m_ij of the Coxeter-style matrix. Infinity is a distinct state and
// never leaks out as an integer.
class Label {
 public:
  static Label infinity() { return Label(0); }
  static Label finite(int m);

  bool is_infinite() const { return m_ == 0; }
  bool is_finite() const { return m_ != 0; }
  // Throws for the infinite label.
  int value() const;
  // True iff the label is infinite or at least `bound`.
  bool at_least(int bound) const { return is_infinite() || m_ >= bound; }
  std::string str() const;

  friend bool operator==(Label, Label) = default;

 private:
  explicit Label(int m) : m_(m) {}
  int m_;
};

class GroupSpec {
 public:
  // Rank n with every pair labelled infinity (the free group).
  explicit GroupSpec(int n);
  static GroupSpec uniform(int n, int m);

  int rank() const { return n_; }
  Label label(Gen i, Gen j) const;
  void set_label(Gen i, Gen j, Label m);

  // All m_ij >= 4 (infinity counts as large).
  bool is_extra_large() const;
  // All m_ij >= 7.
  bool is_theorem_scope() const;
  // Unordered pairs (i < j) with a finite label.
  std::vector<std::pair<Gen, Gen>> finite_pairs() const;
  // Generator classes of the abelianization: i ~ j whenever m_ij is odd.
  std::vector<int> abelian_classes() const;
  int abelian_class_count() const;

  void check_generator(Gen g) const;

 private:
  int index(Gen i, Gen j) const { return (i - 1) * n_ + (j - 1); }
  int n_;
  std::vector<Label> m_;
};

struct Syllable {
  Gen gen;
  int exp;
  friend auto operator<=>(const Syllable&, const Syllable&) = default;
};

// Freely reduced word over a_1..a_n, stored as syllables a_gen^exp with
// adjacent generators distinct and exponents nonzero.
class Word {
 public:
  Word() = default;
  static Word from_syllables(std::span<const Syllable> syllables);
  static Word generator(Gen g, int exp = 1);

  const std::vector<Syllable>& syllables() const { return syl_; }
  std::size_t syllable_length() const { return syl_.size(); }
  long letter_length() const;
  bool empty() const { return syl_.empty(); }
  const Syllable& front() const { return syl_.front(); }
  const Syllable& back() const { return syl_.back(); }
  const Syllable& operator[](std::size_t i) const { return syl_[i]; }

  // Right-multiplies by a_gen^exp, merging or cancelling as needed.
  void append(Gen gen, int exp);
  void append(const Word& w);

  Word inverse() const;
  // Signed generator letters, e.g. a1^2 a2^-1 -> {1, 1, -2}.
  std::vector<int> letters() const;
  // Largest generator index used (0 for the empty word).
  Gen max_generator() const;

  // Tokens like "a1^2 a2^-1"; the empty word prints as "e".
  std::string str() const;
  // Same tokens joined by commas, for line-oriented records.
  std::string compact() const;

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word& a, const Word& b) { return a.syl_ <=> b.syl_; }

 private:
  std::vector<Syllable> syl_;
};

Word operator*(const Word& a, const Word& b);

// Free reduction of signed letters; throws if a letter is 0 or exceeds `rank`
// (rank <= 0 skips the range check).
Word free_reduce(std::span<const int> letters, int rank = 0);

struct CyclicReduction {
  Word core;
  Word conjugator;
};
// w = conjugator * core * conjugator^-1 with core cyclically reduced.
CyclicReduction cyclic_reduce(const Word& w);
bool is_cyclically_reduced(const Word& w);

// A contiguous subword given by an inclusive syllable interval. The boundary
// syllables may be cut: `first_exp` is the exponent kept from the first
// syllable (a suffix of it), `last_exp` the exponent kept from the last one (a
// prefix of it). Both carry the sign of the syllable.
struct SyllableSpan {
  std::size_t first = 0;
  std::size_t last = 0;
  int first_exp = 0;
  int last_exp = 0;
  friend bool operator==(const SyllableSpan&, const SyllableSpan&) = default;
};

Word subword(const Word& w, const SyllableSpan& span);
// Every nonempty contiguous subword span, including cut boundary syllables.
std::vector<SyllableSpan> all_subword_spans(const Word& w);
// Prefix and suffix around a span, so that w = prefix * subword * suffix.
std::pair<Word, Word> split_around(const Word& w, const SyllableSpan& span);

// Parses tokens `a3`, `a3^-2` separated by whitespace or commas; "e" or "1" denote the
// identity. Throws Error(parse) on bad tokens or generators above `rank`.
Word parse_word(std::string_view text, int rank);

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept;
};

}  // namespace artin
