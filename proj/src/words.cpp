#include "artin/words.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <numeric>
#include <sstream>

namespace artin {

Label Label::finite(int m) {
  if (m < 2) throw Error(ErrorKind::argument, "label m must be >= 2, got " + std::to_string(m));
  return Label(m);
}

int Label::value() const {
  if (is_infinite()) throw Error(ErrorKind::argument, "infinite label has no integer value");
  return m_;
}

std::string Label::str() const { return is_infinite() ? "inf" : std::to_string(m_); }

GroupSpec::GroupSpec(int n) : n_(n) {
  if (n < 1) throw Error(ErrorKind::argument, "rank must be positive");
  m_.assign(static_cast<std::size_t>(n) * n, Label::infinity());
}

GroupSpec GroupSpec::uniform(int n, int m) {
  GroupSpec spec(n);
  for (Gen i = 1; i <= n; ++i)
    for (Gen j = i + 1; j <= n; ++j) spec.set_label(i, j, Label::finite(m));
  return spec;
}

void GroupSpec::check_generator(Gen g) const {
  if (g < 1 || g > n_)
    throw Error(ErrorKind::argument,
                "generator a" + std::to_string(g) + " out of range 1.." + std::to_string(n_));
}

Label GroupSpec::label(Gen i, Gen j) const {
  check_generator(i);
  check_generator(j);
  if (i == j) throw Error(ErrorKind::argument, "m_ii is undefined");
  return m_[index(i, j)];
}

void GroupSpec::set_label(Gen i, Gen j, Label m) {
  check_generator(i);
  check_generator(j);
  if (i == j) throw Error(ErrorKind::argument, "m_ii is undefined");
  m_[index(i, j)] = m;
  m_[index(j, i)] = m;
}

bool GroupSpec::is_extra_large() const {
  for (Gen i = 1; i <= n_; ++i)
    for (Gen j = i + 1; j <= n_; ++j)
      if (!label(i, j).at_least(4)) return false;
  return true;
}

bool GroupSpec::is_theorem_scope() const {
  for (Gen i = 1; i <= n_; ++i)
    for (Gen j = i + 1; j <= n_; ++j)
      if (!label(i, j).at_least(7)) return false;
  return true;
}

std::vector<std::pair<Gen, Gen>> GroupSpec::finite_pairs() const {
  std::vector<std::pair<Gen, Gen>> out;
  for (Gen i = 1; i <= n_; ++i)
    for (Gen j = i + 1; j <= n_; ++j)
      if (label(i, j).is_finite()) out.emplace_back(i, j);
  return out;
}

std::vector<int> GroupSpec::abelian_classes() const {
  std::vector<int> parent(n_ + 1);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto [i, j] : finite_pairs())
    if (label(i, j).value() % 2 == 1) parent[find(i)] = find(j);
  std::vector<int> cls(n_ + 1, -1), ids(n_ + 1, -1);
  int next = 0;
  for (Gen g = 1; g <= n_; ++g) {
    int r = find(g);
    if (ids[r] < 0) ids[r] = next++;
    cls[g] = ids[r];
  }
  return cls;
}

int GroupSpec::abelian_class_count() const {
  auto cls = abelian_classes();
  return *std::max_element(cls.begin() + 1, cls.end()) + 1;
}

Word Word::from_syllables(std::span<const Syllable> syllables) {
  Word w;
  for (const auto& s : syllables) w.append(s.gen, s.exp);
  return w;
}

Word Word::generator(Gen g, int exp) {
  Word w;
  w.append(g, exp);
  return w;
}

long Word::letter_length() const {
  long total = 0;
  for (const auto& s : syl_) total += std::labs(s.exp);
  return total;
}

void Word::append(Gen gen, int exp) {
  if (exp == 0) return;
  if (!syl_.empty() && syl_.back().gen == gen) {
    syl_.back().exp += exp;
    if (syl_.back().exp == 0) syl_.pop_back();
    return;
  }
  syl_.push_back({gen, exp});
}

void Word::append(const Word& w) {
  for (const auto& s : w.syl_) append(s.gen, s.exp);
}

Word Word::inverse() const {
  Word w;
  w.syl_.reserve(syl_.size());
  for (auto it = syl_.rbegin(); it != syl_.rend(); ++it) w.syl_.push_back({it->gen, -it->exp});
  return w;
}

std::vector<int> Word::letters() const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(letter_length()));
  for (const auto& s : syl_)
    for (int k = 0; k < std::abs(s.exp); ++k) out.push_back(s.exp > 0 ? s.gen : -s.gen);
  return out;
}

Gen Word::max_generator() const {
  Gen g = 0;
  for (const auto& s : syl_) g = std::max(g, s.gen);
  return g;
}

namespace {

std::string join_tokens(const std::vector<Syllable>& syl, char sep) {
  if (syl.empty()) return "e";
  std::string out;
  for (std::size_t i = 0; i < syl.size(); ++i) {
    if (i) out += sep;
    out += 'a';
    out += std::to_string(syl[i].gen);
    if (syl[i].exp != 1) {
      out += '^';
      out += std::to_string(syl[i].exp);
    }
  }
  return out;
}

}  // namespace

std::string Word::str() const { return join_tokens(syl_, ' '); }
std::string Word::compact() const { return join_tokens(syl_, ','); }

Word operator*(const Word& a, const Word& b) {
  Word w = a;
  w.append(b);
  return w;
}

Word free_reduce(std::span<const int> letters, int rank) {
  Word w;
  for (int l : letters) {
    if (l == 0 || (rank > 0 && std::abs(l) > rank))
      throw Error(ErrorKind::argument, "generator index " + std::to_string(l) + " out of range");
    w.append(std::abs(l), l > 0 ? 1 : -1);
  }
  return w;
}

CyclicReduction cyclic_reduce(const Word& w) {
  std::vector<Syllable> syl = w.syllables();
  Word conj;
  std::size_t lo = 0, hi = syl.size();  // live range [lo, hi)
  while (hi - lo >= 2) {
    Syllable& f = syl[lo];
    Syllable& l = syl[hi - 1];
    if (f.gen != l.gen || (f.exp > 0) == (l.exp > 0)) break;
    int t = std::min(std::abs(f.exp), std::abs(l.exp));
    int sf = f.exp > 0 ? 1 : -1;
    conj.append(f.gen, sf * t);
    f.exp -= sf * t;
    l.exp += sf * t;
    if (f.exp == 0) ++lo;
    if (l.exp == 0) --hi;
  }
  std::vector<Syllable> core(syl.begin() + static_cast<std::ptrdiff_t>(lo),
                             syl.begin() + static_cast<std::ptrdiff_t>(hi));
  return {Word::from_syllables(core), conj};
}

bool is_cyclically_reduced(const Word& w) {
  if (w.syllable_length() < 2) return true;
  const auto& f = w.front();
  const auto& l = w.back();
  return f.gen != l.gen || (f.exp > 0) == (l.exp > 0);
}

namespace {

void check_span(const Word& w, const SyllableSpan& s) {
  const auto& syl = w.syllables();
  auto fits = [](int part, int whole) {
    return part != 0 && (part > 0) == (whole > 0) && std::abs(part) <= std::abs(whole);
  };
  if (s.first > s.last || s.last >= syl.size() || !fits(s.first_exp, syl[s.first].exp) ||
      !fits(s.last_exp, syl[s.last].exp) || (s.first == s.last && s.first_exp != s.last_exp))
    throw Error(ErrorKind::argument, "subword interval out of range");
}

}  // namespace

Word subword(const Word& w, const SyllableSpan& span) {
  check_span(w, span);
  const auto& syl = w.syllables();
  Word out;
  out.append(syl[span.first].gen, span.first_exp);
  if (span.first == span.last) return out;
  for (std::size_t i = span.first + 1; i < span.last; ++i) out.append(syl[i].gen, syl[i].exp);
  out.append(syl[span.last].gen, span.last_exp);
  return out;
}

std::vector<SyllableSpan> all_subword_spans(const Word& w) {
  std::vector<SyllableSpan> out;
  const auto& syl = w.syllables();
  for (std::size_t a = 0; a < syl.size(); ++a) {
    int sa = syl[a].exp > 0 ? 1 : -1;
    for (int ta = std::abs(syl[a].exp); ta >= 1; --ta) {
      // single-syllable subwords: any contiguous piece a^t with 1 <= t <= |exp|
      // (all placements give the same word, record the suffix form once)
      out.push_back({a, a, sa * ta, sa * ta});
      for (std::size_t b = a + 1; b < syl.size(); ++b) {
        int sb = syl[b].exp > 0 ? 1 : -1;
        for (int tb = std::abs(syl[b].exp); tb >= 1; --tb) out.push_back({a, b, sa * ta, sb * tb});
      }
    }
  }
  return out;
}

std::pair<Word, Word> split_around(const Word& w, const SyllableSpan& span) {
  check_span(w, span);
  const auto& syl = w.syllables();
  Word prefix, suffix;
  for (std::size_t i = 0; i < span.first; ++i) prefix.append(syl[i].gen, syl[i].exp);
  prefix.append(syl[span.first].gen, syl[span.first].exp - span.first_exp);
  if (span.first == span.last) {
    // a single cut syllable is taken as a suffix piece of that syllable
  } else {
    suffix.append(syl[span.last].gen, syl[span.last].exp - span.last_exp);
  }
  for (std::size_t i = span.last + 1; i < syl.size(); ++i) suffix.append(syl[i].gen, syl[i].exp);
  return {prefix, suffix};
}

Word parse_word(std::string_view text, int rank) {
  Word w;
  std::string spaced(text);
  std::replace(spaced.begin(), spaced.end(), ',', ' ');  // compact form a1,a2^-1
  std::istringstream in{spaced};
  std::string tok;
  while (in >> tok) {
    if (tok == "e" || tok == "1") continue;
    auto bad = [&] { return Error(ErrorKind::parse, "bad word token '" + tok + "'"); };
    if (tok.size() < 2 || tok[0] != 'a') throw bad();
    std::string_view body(tok);
    body.remove_prefix(1);
    std::string_view gen_part = body, exp_part;
    if (auto caret = body.find('^'); caret != std::string_view::npos) {
      gen_part = body.substr(0, caret);
      exp_part = body.substr(caret + 1);
      if (exp_part.empty()) throw bad();
    }
    int gen = 0, exp = 1;
    auto r1 = std::from_chars(gen_part.data(), gen_part.data() + gen_part.size(), gen);
    if (r1.ec != std::errc() || r1.ptr != gen_part.data() + gen_part.size()) throw bad();
    if (!exp_part.empty()) {
      const char* b = exp_part.data();
      if (*b == '+') ++b;
      auto r2 = std::from_chars(b, exp_part.data() + exp_part.size(), exp);
      if (r2.ec != std::errc() || r2.ptr != exp_part.data() + exp_part.size()) throw bad();
    }
    if (gen < 1 || (rank > 0 && gen > rank))
      throw Error(ErrorKind::parse, "generator out of range in token '" + tok + "'");
    w.append(gen, exp);
  }
  return w;
}

std::size_t WordHash::operator()(const Word& w) const noexcept {
  std::size_t h = 0xcbf29ce484222325ull;
  for (const auto& s : w.syllables()) {
    h ^= static_cast<std::size_t>(s.gen) * 0x9e3779b97f4a7c15ull + static_cast<std::uint32_t>(s.exp);
    h *= 0x100000001b3ull;
    h ^= h >> 29;
  }
  return h;
}

}  // namespace artin
