#include "artin/dihedral.hpp"

#include <algorithm>
#include <memory>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>
#include <tuple>
#include <unordered_map>

namespace artin {

namespace {

long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

long floor_mod(long a, long b) { return a - floor_div(a, b) * b; }

int local_of(const DihedralPair& pair, Gen g) { return g == pair.i ? 0 : 1; }

}  // namespace

DihedralPair dihedral_pair(Gen i, Gen j, int m) {
  if (i == j) throw Error(ErrorKind::argument, "dihedral pair needs two distinct generators");
  if (i < 1 || j < 1) throw Error(ErrorKind::argument, "generator indices are 1-based");
  if (m < 2) throw Error(ErrorKind::argument, "dihedral label must be >= 2");
  return {i, j, m};
}

DihedralPair dihedral_pair(const GroupSpec& spec, Gen i, Gen j) {
  Label l = spec.label(i, j);
  if (l.is_infinite())
    throw Error(ErrorKind::argument, "m_" + std::to_string(i) + std::to_string(j) +
                                         " is infinite: no dihedral parabolic");
  return dihedral_pair(i, j, l.value());
}

SimpleElement make_simple(int start, int len, int m) {
  if (len < 0 || len > m || (start != 0 && start != 1))
    throw Error(ErrorKind::argument, "invalid simple element");
  if (len == 0 || len == m) start = 0;
  return {start, len};
}

std::vector<SimpleElement> simples(const DihedralPair& pair) {
  std::vector<SimpleElement> out;
  out.push_back(make_simple(0, 0, pair.m));
  for (int len = 1; len < pair.m; ++len)
    for (int start = 0; start < 2; ++start) out.push_back(make_simple(start, len, pair.m));
  out.push_back(make_simple(0, pair.m, pair.m));
  return out;
}

Word alternating_word(const DihedralPair& pair, Gen start, int len) {
  Word w;
  Gen g = start;
  for (int t = 0; t < len; ++t) {
    w.append(g, 1);
    g = pair.other(g);
  }
  return w;
}

Word simple_word(const DihedralPair& pair, SimpleElement s) {
  return alternating_word(pair, pair.local_to_gen(s.start), s.len);
}

Word build_relator(const DihedralPair& pair) {
  return alternating_word(pair, pair.i, pair.m) * alternating_word(pair, pair.j, pair.m).inverse();
}

bool uses_only_pair(const Word& w, const DihedralPair& pair) {
  return std::all_of(w.syllables().begin(), w.syllables().end(),
                     [&](const Syllable& s) { return pair.contains(s.gen); });
}

void require_pair_word(const Word& w, const DihedralPair& pair) {
  if (!uses_only_pair(w, pair))
    throw Error(ErrorKind::argument, "word " + w.str() + " uses a generator outside {a" +
                                         std::to_string(pair.i) + ", a" + std::to_string(pair.j) + "}");
}

// ---------------------------------------------------------------------------
// Garside normal form

void GarsideState::recompute_run() {
  run_ = stored_.empty() ? 0 : 1;
  for (std::size_t idx = stored_.size(); idx >= 2 && run_ < m_; --idx) {
    if (stored_[idx - 1] == stored_[idx - 2]) break;
    ++run_;
  }
}

void GarsideState::push_positive(int x) {
  if (stored_.empty())
    run_ = 1;
  else
    run_ = actual(stored_.back()) != x ? run_ + 1 : 1;
  stored_.push_back(static_cast<std::uint8_t>(x ^ twist_));
  if (run_ == m_) {
    // P = P' Delta = Delta tau(P'), tau swapping the letters when m is odd
    stored_.resize(stored_.size() - static_cast<std::size_t>(m_));
    ++delta_;
    if (m_ % 2 == 1) twist_ ^= 1;
    recompute_run();
  }
}

void GarsideState::pop_positive() {
  stored_.pop_back();
  recompute_run();
}

void GarsideState::multiply_inverse_letter(int x) {
  if (!stored_.empty() && actual(stored_.back()) == x) {
    pop_positive();
    return;
  }
  // x^-1 = Delta^-1 w' with Delta = w' x, and P Delta^-1 = Delta^-1 tau(P).
  --delta_;
  if (m_ % 2 == 1) twist_ ^= 1;
  const int len = m_ - 1;
  const int start = (len % 2 == 1) ? (1 - x) : x;
  for (int t = 0; t < len; ++t) push_positive(start ^ (t & 1));
}

void GarsideState::multiply(int x, int exp) {
  if (exp > 0)
    for (int t = 0; t < exp; ++t) push_positive(x);
  else
    for (int t = 0; t < -exp; ++t) multiply_inverse_letter(x);
}

void GarsideState::multiply(const Word& w, const DihedralPair& pair) {
  require_pair_word(w, pair);
  for (const auto& s : w.syllables()) multiply(local_of(pair, s.gen), s.exp);
}

GarsideNF GarsideState::normal_form() const {
  GarsideNF nf;
  nf.inf = delta_;
  int start = -1, len = 0, prev = -1;
  for (std::uint8_t s : stored_) {
    int x = actual(s);
    if (x == prev) {
      nf.factors.push_back(make_simple(start, len, m_));
      start = x;
      len = 1;
    } else {
      if (start < 0) start = x;
      ++len;
    }
    prev = x;
  }
  if (len > 0) nf.factors.push_back(make_simple(start, len, m_));
  return nf;
}

std::string GarsideState::key() const {
  std::string k(sizeof(long) + stored_.size(), '\0');
  std::memcpy(k.data(), &delta_, sizeof(long));
  for (std::size_t t = 0; t < stored_.size(); ++t)
    k[sizeof(long) + t] = static_cast<char>(actual(stored_[t]));
  return k;
}

GarsideNF garside_nf(const Word& w, const DihedralPair& pair) {
  GarsideState st(pair.m);
  st.multiply(w, pair);
  return st.normal_form();
}

std::string format_nf(const GarsideNF& nf, const DihedralPair& pair) {
  std::ostringstream out;
  out << "D^" << nf.inf;
  for (const auto& f : nf.factors) out << " [" << simple_word(pair, f).str() << "]";
  return out.str();
}

// ---------------------------------------------------------------------------
// Amalgamated product normal form

void AmalgamState::multiply_x(long e) {
  if (e == 0) return;
  const long period = (m_ % 2 == 0) ? m_ / 2 : 2;
  long total = period * nf_.central + e;
  if (!nf_.reps.empty() && nf_.reps.back().first == 0) {
    total += nf_.reps.back().second;
    nf_.reps.pop_back();
  }
  nf_.central = floor_div(total, period);
  if (long r = floor_mod(total, period); r != 0) nf_.reps.emplace_back(0, r);
}

void AmalgamState::multiply_y(long e) {
  if (e == 0) return;
  if (m_ % 2 == 0) {
    // <z> x <y>: y commutes with the central part
    long s = e;
    if (!nf_.reps.empty() && nf_.reps.back().first == 1) {
      s += nf_.reps.back().second;
      nf_.reps.pop_back();
    }
    if (s != 0) nf_.reps.emplace_back(1, s);
    return;
  }
  long total = static_cast<long>(m_) * nf_.central + e;
  if (!nf_.reps.empty() && nf_.reps.back().first == 1) {
    total += nf_.reps.back().second;
    nf_.reps.pop_back();
  }
  nf_.central = floor_div(total, m_);
  if (long r = floor_mod(total, m_); r != 0) nf_.reps.emplace_back(1, r);
}

void AmalgamState::multiply(int x, int exp) {
  const int reps = std::abs(exp);
  const bool pos = exp > 0;
  if (m_ % 2 == 0) {
    if (x == 0) {
      multiply_y(exp);  // a -> y
      return;
    }
    for (int t = 0; t < reps; ++t) {  // b -> y^-1 x
      if (pos) {
        multiply_y(-1);
        multiply_x(1);
      } else {
        multiply_x(-1);
        multiply_y(1);
      }
    }
    return;
  }
  const long k = (m_ - 1) / 2;
  for (int t = 0; t < reps; ++t) {
    if (x == 0) {  // a -> y^-k x
      if (pos) {
        multiply_y(-k);
        multiply_x(1);
      } else {
        multiply_x(-1);
        multiply_y(k);
      }
    } else {  // b -> x^-1 y^(k+1)
      if (pos) {
        multiply_x(-1);
        multiply_y(k + 1);
      } else {
        multiply_y(-(k + 1));
        multiply_x(1);
      }
    }
  }
}

void AmalgamState::multiply(const Word& w, const DihedralPair& pair) {
  require_pair_word(w, pair);
  for (const auto& s : w.syllables()) multiply(local_of(pair, s.gen), s.exp);
}

std::string AmalgamState::key() const {
  std::string k;
  k.append(reinterpret_cast<const char*>(&nf_.central), sizeof(long));
  for (const auto& [f, v] : nf_.reps) {
    k.push_back(static_cast<char>(f));
    k.append(reinterpret_cast<const char*>(&v), sizeof(long));
  }
  return k;
}

AmalgamNF amalgam_nf(const Word& w, const DihedralPair& pair) {
  AmalgamState st(pair.m);
  st.multiply(w, pair);
  return st.normal_form();
}

std::string format_amalgam(const AmalgamNF& nf, const DihedralPair& pair) {
  std::ostringstream out;
  const bool even = pair.m % 2 == 0;
  out << (even ? "z^" : "c^") << nf.central;
  for (const auto& [f, v] : nf.reps) out << ' ' << (f == 0 ? "x^" : "y^") << v;
  return out.str();
}

bool in_Rij(const Word& w, const DihedralPair& pair) {
  if (w.empty() || !uses_only_pair(w, pair) || !is_cyclically_reduced(w)) return false;
  return garside_nf(w, pair).is_identity();
}

// ---------------------------------------------------------------------------
// Bounded searches over two-generator words

namespace {

using LocalWord = std::vector<std::pair<int, int>>;  // (local letter, exponent)

Word to_word(const LocalWord& lw, const DihedralPair& pair) {
  Word w;
  for (auto [x, e] : lw) w.append(pair.local_to_gen(x), e);
  return w;
}

// Calls `leaf(state, word)` for every word with exactly `count` syllables,
// exponents in [-bound, bound] \ {0}, whose first letter differs from
// `forbid_first` (-1: no restriction). States are built incrementally by right
// multiplication with the syllables; if `inverted` the state is multiplied by
// the inverse syllables in reverse order, i.e. leaf sees state * word^-1 and the
// word is generated from its last syllable backwards.
void enumerate_syllable_words(const GarsideState& base, int count, int bound, int forbid_first,
                              bool inverted,
                              const std::function<void(const GarsideState&, const LocalWord&)>& leaf) {
  LocalWord word(static_cast<std::size_t>(count));
  std::function<void(const GarsideState&, int, int)> rec = [&](const GarsideState& st, int depth,
                                                               int prev) {
    if (depth == count) {
      LocalWord out = word;
      if (inverted) std::reverse(out.begin(), out.end());
      leaf(st, out);
      return;
    }
    for (int x = 0; x < 2; ++x) {
      if (x == prev) continue;
      if (!inverted && depth == 0 && x == forbid_first) continue;
      if (inverted && depth == count - 1 && x == forbid_first) continue;
      for (int sign = 1; sign >= -1; sign -= 2) {
        GarsideState cur = st;
        for (int e = 1; e <= bound; ++e) {
          cur.multiply(x, inverted ? -sign : sign);
          word[static_cast<std::size_t>(depth)] = {x, sign * e};
          rec(cur, depth + 1, x);
        }
      }
    }
  };
  rec(base, 0, -1);
}

int abelian_sum(const Word& w, const DihedralPair& pair, int which) {
  // which: 0 -> a_i exponent sum, 1 -> a_j, 2 -> total
  long s = 0;
  for (const auto& syl : w.syllables()) {
    if (which == 2 || local_of(pair, syl.gen) == which) s += syl.exp;
  }
  return static_cast<int>(s);
}

bool same_element(const Word& a, const GarsideState& target, const DihedralPair& pair) {
  GarsideState st(pair.m);
  st.multiply(a, pair);
  return st.key() == target.key();
}

}  // namespace

MinSyllableResult min_syllable_rep(const Word& w, const DihedralPair& pair,
                                   const MinSyllableOptions& options) {
  require_pair_word(w, pair);
  const std::size_t L0 = w.syllable_length();
  if (L0 == 0) return {w, Minimality::exhaustive};

  GarsideState target(pair.m);
  target.multiply(w, pair);
  const int bound = options.bounds.max_exponent > 0
                        ? options.bounds.max_exponent
                        : static_cast<int>(w.letter_length()) + 2 * pair.m;
  const std::size_t max_syll =
      options.bounds.max_syllables > 0 ? options.bounds.max_syllables : L0;
  const bool even = pair.m % 2 == 0;
  const int sum_a = abelian_sum(w, pair, 0), sum_b = abelian_sum(w, pair, 1);
  const int total = abelian_sum(w, pair, 2);

  bool all_exact = true;
  auto verdict = [&] { return all_exact ? Minimality::exhaustive : Minimality::bounded; };

  for (std::size_t len = 0; len < L0; ++len) {
    if (len > max_syll) {
      all_exact = false;
      break;
    }
    if (len == 0) {
      if (target.is_identity()) return {Word(), verdict()};
      continue;
    }
    if (len == 1) {
      // The exponent of a single syllable is pinned by the abelianization.
      std::vector<Word> found;
      for (int x = 0; x < 2; ++x) {
        int e = even ? (x == 0 ? sum_a : sum_b) : total;
        if (even && (x == 0 ? sum_b : sum_a) != 0) continue;
        if (e == 0) continue;
        Word cand = Word::generator(pair.local_to_gen(x), e);
        if (same_element(cand, target, pair)) found.push_back(cand);
      }
      if (!found.empty()) return {*std::min_element(found.begin(), found.end()), verdict()};
      continue;
    }
    if (len == 2 && even) {
      std::vector<Word> found;
      if (sum_a != 0 && sum_b != 0) {
        Word ab = Word::generator(pair.i, sum_a) * Word::generator(pair.j, sum_b);
        Word ba = Word::generator(pair.j, sum_b) * Word::generator(pair.i, sum_a);
        for (const Word& c : {ab, ba})
          if (same_element(c, target, pair)) found.push_back(c);
      }
      if (!found.empty()) return {*std::min_element(found.begin(), found.end()), verdict()};
      continue;
    }
    if (options.use_cancellation_bound && len + L0 < 2 * static_cast<std::size_t>(pair.m)) {
      // w w'^-1 would be a nonempty relator shorter than 2m.
      continue;
    }

    // Meet in the middle: w = x y with ||x|| = h, ||y|| = len - h.
    const int h = static_cast<int>(len / 2);
    const int r = static_cast<int>(len) - h;
    std::unordered_map<std::string, std::vector<LocalWord>> table;
    if (h == 0) {
      table[GarsideState(pair.m).key()].push_back({});
    } else {
      enumerate_syllable_words(GarsideState(pair.m), h, bound, -1, false,
                               [&](const GarsideState& st, const LocalWord& lw) {
                                 table[st.key()].push_back(lw);
                               });
    }
    std::vector<Word> found;
    enumerate_syllable_words(target, r, bound, -1, true,
                             [&](const GarsideState& st, const LocalWord& y) {
                               auto it = table.find(st.key());
                               if (it == table.end()) return;
                               for (const auto& x : it->second) {
                                 if (!x.empty() && x.back().first == y.front().first) continue;
                                 LocalWord xy = x;
                                 xy.insert(xy.end(), y.begin(), y.end());
                                 found.push_back(to_word(xy, pair));
                               }
                             });
    if (!found.empty()) {
      auto best = std::min_element(found.begin(), found.end(), [](const Word& a, const Word& b) {
        return std::make_tuple(a.letter_length(), a) < std::make_tuple(b.letter_length(), b);
      });
      return {*best, verdict()};
    }
    all_exact = false;
  }
  return {w, verdict()};
}

namespace {

struct InverseTable {
  std::unordered_map<std::string, std::vector<LocalWord>> by_key;
};

// key(NF(y^-1)) -> y, over all y with exactly `count` syllables.
const InverseTable& inverse_table(int m, int count, int bound) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, int>, std::unique_ptr<InverseTable>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[{m, count, bound}];
  if (!slot) {
    slot = std::make_unique<InverseTable>();
    if (count == 0) {
      slot->by_key[GarsideState(m).key()].push_back({});
    } else {
      enumerate_syllable_words(GarsideState(m), count, bound, -1, true,
                               [&](const GarsideState& st, const LocalWord& y) {
                                 slot->by_key[st.key()].push_back(y);
                               });
    }
  }
  return *slot;
}

std::optional<Word> completion_search(const Word& v, const DihedralPair& pair, int k, int bound) {
  if (in_Rij(v, pair)) return Word();
  GarsideState base(pair.m);
  base.multiply(v, pair);
  const Syllable first = v.front();
  const Syllable last = v.back();
  for (int len = 1; len <= k; ++len) {
    const int h = len - len / 2;
    const int r = len / 2;
    const InverseTable& table = inverse_table(pair.m, r, bound);
    std::optional<Word> best;
    enumerate_syllable_words(base, h, bound, -1, false,
                             [&](const GarsideState& st, const LocalWord& x) {
                               if (best) return;
                               auto it = table.by_key.find(st.key());
                               if (it == table.by_key.end()) return;
                               for (const auto& y : it->second) {
                                 if (!y.empty() && y.front().first == x.back().first) continue;
                                 LocalWord xy = x;
                                 xy.insert(xy.end(), y.begin(), y.end());
                                 Word u = to_word(xy, pair);
                                 const Syllable uf = u.front(), ul = u.back();
                                 // no cancellation at the junction v|u
                                 if (uf.gen == last.gen && (uf.exp > 0) != (last.exp > 0)) continue;
                                 // r = v u cyclically reduced
                                 if (ul.gen == first.gen && (ul.exp > 0) != (first.exp > 0)) continue;
                                 best = u;
                                 return;
                               }
                             });
    if (best) return best;
  }
  return std::nullopt;
}

}  // namespace

std::optional<Word> relator_completion(const Word& v, const DihedralPair& pair, int k,
                                       const CompletionOptions& options) {
  if (k < 0) throw Error(ErrorKind::argument, "completion length must be nonnegative");
  if (v.empty() || !uses_only_pair(v, pair)) return std::nullopt;
  if (options.use_length_bound && static_cast<int>(v.syllable_length()) + k < 2 * pair.m)
    return std::nullopt;
  const int bound = options.exponent_bound > 0 ? options.exponent_bound
                                               : static_cast<int>(v.letter_length()) + pair.m;

  static std::mutex mu;
  static std::unordered_map<std::string, std::optional<Word>> memo;
  std::string key = std::to_string(pair.i) + ':' + std::to_string(pair.j) + ':' +
                    std::to_string(pair.m) + ':' + std::to_string(k) + ':' +
                    std::to_string(bound) + ':' + v.compact();
  {
    std::lock_guard lock(mu);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
  }
  auto result = completion_search(v, pair, k, bound);
  std::lock_guard lock(mu);
  memo.emplace(std::move(key), result);
  return result;
}

}  // namespace artin
