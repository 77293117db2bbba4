#include <random>

#include "artin/artin.hpp"
#include "doctest.h"

using namespace artin;

namespace {

Word random_word(std::mt19937_64& rng, int rank, int letters) {
  std::uniform_int_distribution<int> g(1, rank), s(0, 1);
  std::vector<int> l;
  for (int t = 0; t < letters; ++t) l.push_back(s(rng) ? g(rng) : -g(rng));
  return free_reduce(l);
}

Word random_conjugated_relator(std::mt19937_64& rng, const GroupSpec& spec, int conj_len) {
  auto pairs = spec.finite_pairs();
  std::uniform_int_distribution<std::size_t> pick(0, pairs.size() - 1);
  auto [i, j] = pairs[pick(rng)];
  Word r = build_relator(dihedral_pair(spec, i, j));
  std::uniform_int_distribution<int> coin(0, 1);
  if (coin(rng)) r = r.inverse();
  // rotate the relator to a random cyclic position
  auto letters = r.letters();
  std::uniform_int_distribution<std::size_t> rot(0, letters.size() - 1);
  std::rotate(letters.begin(), letters.begin() + rot(rng), letters.end());
  Word g = random_word(rng, spec.rank(), conj_len);
  return g * free_reduce(letters) * g.inverse();
}

Word drop_last(const Word& w, std::size_t k) {
  std::vector<Syllable> s(w.syllables().begin(), w.syllables().end() - k);
  return Word::from_syllables(s);
}

const GroupSpec e7 = GroupSpec::uniform(3, 7);

}  // namespace

TEST_CASE("find_violation examples") {
  Word r = build_relator(dihedral_pair(1, 2, 7));
  auto v = find_violation(r, e7);
  REQUIRE(v.has_value());
  CHECK(v->completion.empty());
  CHECK(v->span.first == 0);
  CHECK(v->span.last == r.syllable_length() - 1);

  CHECK_FALSE(find_violation(parse_word("a1 a2 a1 a2", 3), e7).has_value());

  Word cut = drop_last(r, 4);
  CHECK_FALSE(find_violation(cut, e7, {3}).has_value());
  auto v4 = find_violation(cut, e7, {4});
  REQUIRE(v4.has_value());
  CHECK(v4->completion.syllable_length() == 4);
  CHECK(in_Rij(subword(cut, v4->span) * v4->completion, v4->pair));
}

TEST_CASE("scope enforcement") {
  GroupSpec small = GroupSpec::uniform(3, 3);
  CHECK_THROWS_AS(find_violation(Word::generator(1), small), Error);
  CHECK_NOTHROW(find_violation(Word::generator(1), small, {3, true}));
  CHECK_THROWS_AS(dehn_solve(Word::generator(1), small), Error);
}

TEST_CASE("reducedness predicates") {
  CHECK(is_artin_reduced(Word(), e7));
  CHECK(is_strongly_artin_reduced(Word(), e7));
  Word cut = drop_last(build_relator(dihedral_pair(1, 2, 7)), 4);
  CHECK(is_artin_reduced(cut, e7));
  CHECK_FALSE(is_strongly_artin_reduced(cut, e7));
  std::mt19937_64 rng(21);
  for (int t = 0; t < 300; ++t) {
    Word w = t % 3 == 0 ? random_conjugated_relator(rng, e7, 2) * random_word(rng, 3, 4)
                        : random_word(rng, 3, 20);
    if (is_strongly_artin_reduced(w, e7)) CHECK(is_artin_reduced(w, e7));
  }
}

TEST_CASE("leftmost-then-longest selection") {
  auto p = dihedral_pair(1, 2, 7);
  Word r = build_relator(p);
  Word w = Word::generator(3) * r * Word::generator(3, 2) * r;
  auto vs = all_violations(w, e7);
  REQUIRE(!vs.empty());
  CHECK(vs[0].span.first == 1);
  CHECK(vs[0].completion.empty());
  for (std::size_t k = 1; k < vs.size(); ++k) CHECK(vs[k - 1].span.first <= vs[k].span.first);
}

TEST_CASE("dehn_solve examples") {
  Word r = build_relator(dihedral_pair(1, 2, 7));
  auto res = dehn_solve(r, e7);
  CHECK(res.verdict == Verdict::trivial);
  CHECK(res.trace.size() == 1);

  Word w = parse_word("a1 a2 a3", 3);
  auto nt = dehn_solve(w, e7);
  CHECK(nt.verdict == Verdict::nontrivial);
  CHECK(nt.residual == w);
  CHECK(nt.trace.empty());

  CHECK(dehn_solve(Word(), e7).verdict == Verdict::trivial);
}

TEST_CASE("dehn_solve reduces products of conjugated relators") {
  std::mt19937_64 rng(1);
  for (GroupSpec spec : {e7, GroupSpec::uniform(4, 8), GroupSpec::uniform(3, 4)}) {
    for (int t = 0; t < 300; ++t) {
      Word w;
      int count = 1 + t % 4;
      for (int c = 0; c < count; ++c) w = w * random_conjugated_relator(rng, spec, t % 6);
      auto res = dehn_solve(w, spec);
      CHECK(res.verdict != Verdict::nontrivial);
      if (spec.is_theorem_scope()) CHECK(res.verdict == Verdict::trivial);
      CHECK(res.trace.size() <= w.syllable_length());
      for (const auto& step : res.trace) {
        CHECK(step.after.syllable_length() < step.before.syllable_length());
        CHECK(in_Rij(subword(step.before, step.violation.span) * step.violation.completion,
                     step.violation.pair));
      }
    }
  }
}

TEST_CASE("dehn_solve never declares a word trivial whose Coxeter image is not") {
  std::mt19937_64 rng(2);
  CoxeterImage img(e7);
  std::string id = img.key(Word());
  int nontrivial_images = 0;
  for (int t = 0; t < 500; ++t) {
    Word w = random_word(rng, 3, 4 + t % 30);
    if (img.key(w) == id) continue;
    ++nontrivial_images;
    CHECK(dehn_solve(w, e7).verdict == Verdict::nontrivial);
  }
  CHECK(nontrivial_images > 400);
}

TEST_CASE("equal_in_G") {
  auto p = dihedral_pair(1, 2, 7);
  CHECK(equal_in_G(alternating_word(p, 1, 7), alternating_word(p, 2, 7), e7));
  CHECK_FALSE(equal_in_G(Word::generator(1), Word::generator(2), e7));
  std::mt19937_64 rng(3);
  for (int t = 0; t < 100; ++t) {
    Word w = random_word(rng, 3, 12);
    CHECK(equal_in_G(w, w * random_conjugated_relator(rng, e7, 5), e7));
  }
}

TEST_CASE("equal_in_G agrees with Garside on two-generator words") {
  std::mt19937_64 rng(4);
  auto p = dihedral_pair(1, 2, 7);
  std::uniform_int_distribution<int> coin(0, 1);
  for (int t = 0; t < 300; ++t) {
    auto gen = [&] {
      std::vector<int> l;
      int len = 1 + t % 16;
      for (int k = 0; k < len; ++k) l.push_back((coin(rng) ? 1 : 2) * (coin(rng) ? 1 : -1));
      return free_reduce(l);
    };
    Word a = gen();
    Word b = t % 2 ? gen() : a * (coin(rng) ? build_relator(p) : Word()) * a.inverse() * a;
    CHECK(equal_in_G(a, b, e7) == (garside_nf(a, p) == garside_nf(b, p)));
  }
}

TEST_CASE("Coxeter image is a homomorphism killing relators") {
  for (GroupSpec spec : {e7, GroupSpec::uniform(4, 8), GroupSpec::uniform(3, 2)}) {
    CoxeterImage img(spec);
    CHECK((img.prime() - 1) % 2 == 0);
    Word id;
    for (Gen g = 1; g <= spec.rank(); ++g)
      CHECK(img.matrix(Word::generator(g, 2)) == img.matrix(id));
    for (auto [i, j] : spec.finite_pairs()) {
      auto p = dihedral_pair(spec, i, j);
      CHECK(img.key(build_relator(p)) == img.key(id));
      // (s_i s_j)^m = 1 in the quotient but no smaller power
      Word st = parse_word("a" + std::to_string(i) + " a" + std::to_string(j), spec.rank());
      Word pw;
      for (int k = 1; k <= p.m; ++k) {
        pw = pw * st;
        CHECK((img.matrix(pw) == img.matrix(id)) == (k == p.m));
      }
    }
  }
}

TEST_CASE("parabolic intersections") {
  auto shared = parabolic_intersection_check(e7, 1, 2, 1, 3, 4);
  CHECK(shared.ok);
  REQUIRE(shared.shared.has_value());
  CHECK(*shared.shared == 1);
  // a1^e for |e| <= 4
  CHECK(shared.common.size() == 9);
  for (const auto& c : shared.common) CHECK(c.allowed);

  GroupSpec e7n4 = GroupSpec::uniform(4, 7);
  auto disjoint = parabolic_intersection_check(e7n4, 1, 2, 3, 4, 4);
  CHECK(disjoint.ok);
  CHECK_FALSE(disjoint.shared.has_value());
  REQUIRE(disjoint.common.size() == 1);
  CHECK(disjoint.common[0].left.empty());

  CHECK_THROWS_AS(parabolic_intersection_check(e7, 1, 2, 2, 1, 2), Error);
  GroupSpec free3(3);
  CHECK_THROWS_AS(parabolic_intersection_check(free3, 1, 2, 1, 3, 2), Error);
}

TEST_CASE("pair_ball sizes match brute force") {
  auto p = dihedral_pair(1, 2, 7);
  // up to radius 6 < m no positive relation can be used; words are distinct iff
  // freely distinct, except that the relator has length 14
  CHECK(pair_ball(p, 0).size() == 1);
  CHECK(pair_ball(p, 1).size() == 5);
  CHECK(pair_ball(p, 2).size() == 17);
  CHECK(pair_ball(p, 3).size() == 53);
}

TEST_CASE("Hecke image respects the braid relations and separates squares") {
  for (GroupSpec spec : {e7, GroupSpec::uniform(4, 8), GroupSpec::uniform(3, 4), GroupSpec(2)}) {
    HeckeImage img(spec);
    Word id;
    for (auto [i, j] : spec.finite_pairs())
      CHECK(img.key(build_relator(dihedral_pair(spec, i, j))) == img.key(id));
    for (Gen g = 1; g <= spec.rank(); ++g) {
      CHECK(img.key(Word::generator(g) * Word::generator(g, -1)) == img.key(id));
      CHECK(img.matrix(Word::generator(g, 2)) != img.matrix(id));
    }
  }
  std::mt19937_64 rng(6);
  HeckeImage img(e7);
  for (int t = 0; t < 200; ++t) {
    Word w = random_word(rng, 3, 10);
    CHECK(img.key(w) == img.key(w * random_conjugated_relator(rng, e7, 5)));
  }
}
