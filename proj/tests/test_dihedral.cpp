#include <map>
#include <random>
#include <set>

#include "artin/dihedral.hpp"
#include "doctest.h"

using namespace artin;

namespace {

Word random_pair_word(std::mt19937_64& rng, const DihedralPair& p, int letters) {
  std::uniform_int_distribution<int> coin(0, 1);
  std::vector<int> l;
  for (int t = 0; t < letters; ++t) {
    Gen g = coin(rng) ? p.i : p.j;
    l.push_back(coin(rng) ? g : -g);
  }
  return free_reduce(l);
}

Word pow(const Word& w, int e) {
  Word out;
  for (int t = 0; t < std::abs(e); ++t) out.append(e > 0 ? w : w.inverse());
  return out;
}

// Independent brute force: every word with <= syllables, |exp| <= bound, keyed
// by the amalgam normal form.
std::vector<Word> all_words(const DihedralPair& p, int syllables, int bound) {
  std::vector<Word> out{Word()};
  std::vector<Word> frontier{Word()};
  for (int s = 0; s < syllables; ++s) {
    std::vector<Word> next;
    for (const Word& w : frontier)
      for (Gen g : {p.i, p.j}) {
        if (!w.empty() && w.back().gen == g) continue;
        for (int e = -bound; e <= bound; ++e)
          if (e != 0) next.push_back(w * Word::generator(g, e));
      }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

}  // namespace

TEST_CASE("build_relator shapes") {
  Word r2 = build_relator(dihedral_pair(1, 2, 2));
  CHECK(r2 == parse_word("a1 a2 a1^-1 a2^-1", 2));
  Word r3 = build_relator(dihedral_pair(1, 2, 3));
  CHECK(r3 == parse_word("a1 a2 a1 a2^-1 a1^-1 a2^-1", 2));
  Word r7 = build_relator(dihedral_pair(1, 2, 7));
  CHECK(r7.letter_length() == 14);
  CHECK(r7.syllable_length() == 14);
  for (int m = 2; m <= 9; ++m) {
    auto p = dihedral_pair(1, 2, m);
    Word r = build_relator(p);
    CHECK(is_cyclically_reduced(r));
    CHECK(r.syllable_length() == static_cast<std::size_t>(2 * m));
    CHECK(garside_nf(r, p).is_identity());
    CHECK(amalgam_nf(r, p).is_identity());
  }
}

TEST_CASE("simples: 2m elements, identified by enumeration") {
  for (int m : {2, 3, 7}) {
    auto p = dihedral_pair(1, 2, m);
    // enumerate alternating words of length 0..m from both starts, dedup by
    // the amalgam normal form (independent of the Garside code)
    std::set<std::string> distinct;
    for (int start = 0; start < 2; ++start)
      for (int len = 0; len <= m; ++len) {
        AmalgamState st(m);
        st.multiply(alternating_word(p, p.local_to_gen(start), len), p);
        distinct.insert(st.key());
      }
    CHECK(distinct.size() == static_cast<std::size_t>(2 * m));
    auto s = simples(p);
    CHECK(s.size() == static_cast<std::size_t>(2 * m));
    // closed under s -> s^-1 Delta
    Word delta = alternating_word(p, p.i, m);
    std::set<std::string> keys;
    for (auto e : s) {
      GarsideState st(m);
      st.multiply(simple_word(p, e), p);
      keys.insert(st.key());
    }
    for (auto e : s) {
      GarsideState st(m);
      st.multiply(simple_word(p, e).inverse() * delta, p);
      CHECK(keys.count(st.key()) == 1);
    }
  }
  auto s3 = simples(dihedral_pair(1, 2, 3));
  std::set<SimpleElement> set3(s3.begin(), s3.end());
  CHECK(set3.count({0, 0}) == 1);
  CHECK(set3.count({0, 3}) == 1);
  CHECK(set3.count({1, 2}) == 1);
}

TEST_CASE("garside_nf examples") {
  auto p3 = dihedral_pair(1, 2, 3);
  CHECK(garside_nf(Word(), p3).is_identity());

  GarsideNF d2 = garside_nf(pow(parse_word("a1 a2", 2), 3), p3);
  CHECK(d2.inf == 2);
  CHECK(d2.factors.empty());
  // the amalgam oracle agrees: (ab)^3 = Delta^2
  CHECK(amalgam_nf(pow(parse_word("a1 a2", 2), 3), p3) ==
        amalgam_nf(pow(parse_word("a1 a2 a1", 2), 2), p3));

  GarsideNF inv = garside_nf(Word::generator(1, -1), p3);
  CHECK(inv.inf == -1);
  REQUIRE(inv.factors.size() == 1);
  CHECK(simple_word(p3, inv.factors[0]) == parse_word("a1 a2", 2));
  CHECK(amalgam_nf(Word::generator(1, -1), p3) ==
        amalgam_nf(parse_word("a1 a2 a1", 2).inverse() * parse_word("a1 a2", 2), p3));

  CHECK_THROWS_AS(garside_nf(Word::generator(3), p3), Error);
  CHECK_THROWS_AS(amalgam_nf(Word::generator(3), p3), Error);
}

TEST_CASE("garside factors are left-weighted and proper") {
  std::mt19937_64 rng(3);
  for (int m : {2, 3, 4, 7}) {
    auto p = dihedral_pair(1, 2, m);
    for (int t = 0; t < 300; ++t) {
      GarsideNF nf = garside_nf(random_pair_word(rng, p, 20), p);
      for (std::size_t k = 0; k < nf.factors.size(); ++k) {
        const auto& f = nf.factors[k];
        CHECK(f.len > 0);
        CHECK(f.len < m);
        if (k + 1 < nf.factors.size()) {
          int last = (f.len % 2 == 1) ? f.start : 1 - f.start;
          CHECK(nf.factors[k + 1].start == last);
        }
      }
    }
  }
}

TEST_CASE("isomorphisms verified by substitution") {
  // m = 3: x = aba, y = ab satisfy x^2 = y^3
  auto p3 = dihedral_pair(1, 2, 3);
  Word x = parse_word("a1 a2 a1", 2), y = parse_word("a1 a2", 2);
  CHECK(garside_nf(pow(x, 2) * pow(y, -3), p3).is_identity());
  CHECK(amalgam_nf(pow(x, 2) * pow(y, -3), p3).is_identity());

  // odd m = 2k+1: x -> u_ij, y -> ab; inverse a -> y^-k x, b -> x^-1 y^(k+1)
  for (int m : {3, 5, 7, 9}) {
    auto p = dihedral_pair(1, 2, m);
    int k = (m - 1) / 2;
    Word X = alternating_word(p, 1, m), Y = parse_word("a1 a2", 2);
    CHECK(garside_nf(pow(X, 2) * pow(Y, -m), p).is_identity());
    CHECK(garside_nf(pow(Y, -k) * X * Word::generator(1, -1), p).is_identity());
    CHECK(garside_nf(X.inverse() * pow(Y, k + 1) * Word::generator(2, -1), p).is_identity());
  }
  // even m = 2k: a -> y, b -> y^-1 x; inverse x -> ab, y -> a
  for (int m : {2, 4, 8}) {
    auto p = dihedral_pair(1, 2, m);
    int k = m / 2;
    Word X = parse_word("a1 a2", 2), Y = Word::generator(1);
    // y^-1 x^k y x^-k maps to a trivial word
    CHECK(garside_nf(Y.inverse() * pow(X, k) * Y * pow(X, -k), p).is_identity());
    // the relator maps to a trivial element of <x,y | y^-1 x^k y = x^k>
    CHECK(amalgam_nf(build_relator(p), p).is_identity());
  }
  // m = 4 explicitly: the image of the relator reduces in the amalgam
  AmalgamState st(4);
  st.multiply(build_relator(dihedral_pair(1, 2, 4)), dihedral_pair(1, 2, 4));
  CHECK(st.is_identity());
}

TEST_CASE("oracle equivalence on random words") {
  std::mt19937_64 rng(42);
  for (int m : {2, 3, 4, 7, 8}) {
    auto p = dihedral_pair(1, 2, m);
    Word r = build_relator(p);
    int agree = 0, trivial = 0;
    for (int t = 0; t < 2000; ++t) {
      Word w;
      if (t % 4 == 0) {
        Word g = random_pair_word(rng, p, 4);
        w = g * r * g.inverse() * random_pair_word(rng, p, 2);
      } else {
        w = random_pair_word(rng, p, 1 + t % 12);
      }
      bool gt = garside_nf(w, p).is_identity();
      bool at = amalgam_nf(w, p).is_identity();
      agree += gt == at;
      trivial += gt;
    }
    CHECK(agree == 2000);
    CHECK(trivial > 0);
  }
}

TEST_CASE("equality agreement between the two normal forms") {
  std::mt19937_64 rng(5);
  for (int m : {3, 4, 7}) {
    auto p = dihedral_pair(1, 2, m);
    auto words = all_words(p, 3, 2);
    std::map<std::string, std::string> g2a;
    bool consistent = true;
    for (const Word& w : words) {
      GarsideState g(m);
      AmalgamState a(m);
      g.multiply(w, p);
      a.multiply(w, p);
      auto [it, fresh] = g2a.emplace(g.key(), a.key());
      if (!fresh && it->second != a.key()) consistent = false;
    }
    // and conversely: distinct Garside keys map to distinct amalgam keys
    std::set<std::string> avals;
    for (auto& [gk, ak] : g2a) avals.insert(ak);
    CHECK(consistent);
    CHECK(avals.size() == g2a.size());
  }
}

TEST_CASE("Delta^2 central; Delta central for even m; conjugation swaps for odd m") {
  std::mt19937_64 rng(9);
  for (int m : {2, 3, 4, 5, 7, 8}) {
    auto p = dihedral_pair(1, 2, m);
    Word d = alternating_word(p, 1, m);
    for (int t = 0; t < 100; ++t) {
      Word g = random_pair_word(rng, p, 10);
      CHECK(garside_nf(pow(d, 2) * g * pow(d, -2) * g.inverse(), p).is_identity());
      if (m % 2 == 0) CHECK(garside_nf(d * g * d.inverse() * g.inverse(), p).is_identity());
    }
    if (m % 2 == 1) {
      CHECK(garside_nf(d * Word::generator(1) * d.inverse(), p) == garside_nf(Word::generator(2), p));
    }
  }
}

TEST_CASE("short relator-family words are nontrivial (small m brute force)") {
  for (int m : {2, 3, 4}) {
    auto p = dihedral_pair(1, 2, m);
    int counterexamples = 0;
    for (const Word& w : all_words(p, 2 * m - 1, 2)) {
      if (w.empty() || !is_cyclically_reduced(w)) continue;
      if (garside_nf(w, p).is_identity() || amalgam_nf(w, p).is_identity()) ++counterexamples;
    }
    CHECK(counterexamples == 0);
  }
}

TEST_CASE("in_Rij") {
  for (int m : {2, 3, 7}) {
    auto p = dihedral_pair(1, 2, m);
    CHECK(in_Rij(build_relator(p), p));
    CHECK_FALSE(in_Rij(Word::generator(1), p));
    CHECK_FALSE(in_Rij(Word(), p));
    Word r = build_relator(p);
    // conjugate that is not cyclically reduced
    CHECK_FALSE(in_Rij(Word::generator(1) * r * Word::generator(1, -1), p));
    CHECK_FALSE(in_Rij(r * Word::generator(3), p));
  }
}

TEST_CASE("min_syllable_rep examples") {
  auto p7 = dihedral_pair(1, 2, 7);
  auto r5 = min_syllable_rep(Word::generator(1, 5), p7);
  CHECK(r5.word == Word::generator(1, 5));
  CHECK(r5.minimality == Minimality::exhaustive);

  Word u = alternating_word(p7, 1, 7);
  auto ru = min_syllable_rep(u, p7);
  CHECK(ru.word.syllable_length() == 7);
  CHECK(garside_nf(ru.word, p7) == garside_nf(u, p7));

  // m = 3: Delta^2 = (ab)^3, compared against brute force over the amalgam oracle
  auto p3 = dihedral_pair(1, 2, 3);
  Word d2 = pow(parse_word("a1 a2", 2), 3);
  MinSyllableOptions opt;
  opt.bounds.max_exponent = 6;
  auto rd = min_syllable_rep(d2, p3, opt);
  CHECK(garside_nf(rd.word, p3) == garside_nf(d2, p3));
  AmalgamNF target = amalgam_nf(d2, p3);
  std::size_t brute = 99;
  for (const Word& w : all_words(p3, 5, 6))
    if (amalgam_nf(w, p3) == target) brute = std::min(brute, w.syllable_length());
  CHECK(rd.word.syllable_length() == brute);
  CHECK(brute == 4);
}

TEST_CASE("min_syllable_rep matches brute force on small elements") {
  std::mt19937_64 rng(13);
  for (int m : {3, 4}) {
    auto p = dihedral_pair(1, 2, m);
    auto words = all_words(p, 4, 3);
    std::map<std::string, std::size_t> best;  // amalgam key -> min syllables
    for (const Word& w : words) {
      AmalgamState a(m);
      a.multiply(w, p);
      auto [it, fresh] = best.emplace(a.key(), w.syllable_length());
      if (!fresh) it->second = std::min(it->second, w.syllable_length());
    }
    for (int t = 0; t < 60; ++t) {
      Word w = random_pair_word(rng, p, 8);
      AmalgamState a(m);
      a.multiply(w, p);
      auto it = best.find(a.key());
      MinSyllableOptions opt;
      opt.bounds.max_exponent = 3;
      auto res = min_syllable_rep(w, p, opt);
      CHECK(res.word.syllable_length() <= w.syllable_length());
      CHECK(garside_nf(res.word, p) == garside_nf(w, p));
      if (it != best.end() && w.syllable_length() <= 4 + 0u) CHECK(res.word.syllable_length() == it->second);
    }
  }
}

TEST_CASE("min_syllable_rep length invariant across equal inputs") {
  auto p = dihedral_pair(1, 2, 7);
  Word u = alternating_word(p, 1, 7), v = alternating_word(p, 2, 7);
  auto a = min_syllable_rep(u, p), b = min_syllable_rep(v, p);
  REQUIRE(a.minimality == Minimality::exhaustive);
  REQUIRE(b.minimality == Minimality::exhaustive);
  CHECK(a.word.syllable_length() == b.word.syllable_length());
  CHECK_THROWS_AS(min_syllable_rep(Word::generator(3), p), Error);
}

TEST_CASE("relator_completion examples") {
  auto p = dihedral_pair(1, 2, 7);
  Word r = build_relator(p);
  // relator with the last three syllables removed
  std::vector<Syllable> head(r.syllables().begin(), r.syllables().end() - 3);
  std::vector<Syllable> tail(r.syllables().end() - 3, r.syllables().end());
  auto u = relator_completion(Word::from_syllables(head), p, 3);
  REQUIRE(u.has_value());
  CHECK(*u == Word::from_syllables(tail));

  CHECK_FALSE(relator_completion(Word::generator(1, 9), p, 3).has_value());
  auto full = relator_completion(r, p, 3);
  REQUIRE(full.has_value());
  CHECK(full->empty());

  // four syllables missing: only k = 4 succeeds
  std::vector<Syllable> head4(r.syllables().begin(), r.syllables().end() - 4);
  CHECK_FALSE(relator_completion(Word::from_syllables(head4), p, 3).has_value());
  CHECK(relator_completion(Word::from_syllables(head4), p, 4).has_value());
}

TEST_CASE("relator_completion agrees with brute force for m = 4") {
  auto p = dihedral_pair(1, 2, 4);
  Word r = build_relator(p);
  auto candidates = all_words(p, 3, 2);
  CompletionOptions opt;
  opt.exponent_bound = 2;
  opt.use_length_bound = false;
  std::mt19937_64 rng(17);
  int checked = 0;
  for (const auto& sp : all_subword_spans(r * r)) {
    Word v = subword(r * r, sp);
    if (v.syllable_length() < 3 || v.syllable_length() > 8) continue;
    bool brute = false;
    for (const Word& u : candidates) {
      if (u.syllable_length() > 3) continue;
      if (!u.empty() && u.front().gen == v.back().gen && (u.front().exp > 0) != (v.back().exp > 0))
        continue;
      Word vu = v * u;
      const Syllable& tail = u.empty() ? v.back() : u.back();
      if (tail.gen == v.front().gen && (tail.exp > 0) != (v.front().exp > 0) && !(u.empty() && v.syllable_length() == 1))
        continue;
      if (!vu.empty() && garside_nf(vu, p).is_identity()) {
        brute = true;
        break;
      }
    }
    auto got = relator_completion(v, p, 3, opt);
    CHECK(got.has_value() == brute);
    if (got) CHECK(in_Rij(v * *got, p));
    ++checked;
  }
  CHECK(checked > 20);
}
