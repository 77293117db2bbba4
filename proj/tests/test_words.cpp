#include <random>

#include "artin/words.hpp"
#include "doctest.h"

using namespace artin;

namespace {

std::vector<int> random_letters(std::mt19937_64& rng, int rank, int len) {
  std::uniform_int_distribution<int> g(1, rank), s(0, 1);
  std::vector<int> out;
  for (int t = 0; t < len; ++t) out.push_back(s(rng) ? g(rng) : -g(rng));
  return out;
}

}  // namespace

TEST_CASE("free_reduce examples") {
  CHECK(free_reduce(std::vector<int>{1, -1}).empty());
  Word w = free_reduce(std::vector<int>{1, 2, -2, 1});
  REQUIRE(w.syllable_length() == 1);
  CHECK(w[0] == Syllable{1, 2});
  Word v = free_reduce(std::vector<int>{1, 2, 1});
  CHECK(v.syllables() == std::vector<Syllable>{{1, 1}, {2, 1}, {1, 1}});
  CHECK(v.syllable_length() == 3);
  CHECK(v.letter_length() == 3);
}

TEST_CASE("free_reduce rejects bad generators") {
  CHECK_THROWS_AS(free_reduce(std::vector<int>{1, 4}, 3), Error);
  CHECK_THROWS_AS(free_reduce(std::vector<int>{0}, 3), Error);
}

TEST_CASE("cyclic_reduce examples") {
  auto r1 = cyclic_reduce(free_reduce(std::vector<int>{1, 2, -1}));
  CHECK(r1.core == Word::generator(2));
  CHECK(r1.conjugator == Word::generator(1));

  Word aba = free_reduce(std::vector<int>{1, 2, 1});
  auto r2 = cyclic_reduce(aba);
  CHECK(r2.core == aba);
  CHECK(r2.conjugator.empty());

  auto r3 = cyclic_reduce(free_reduce(std::vector<int>{-1, 2, 2, 1}));
  CHECK(r3.core == Word::generator(2, 2));
  CHECK(r3.conjugator == Word::generator(1, -1));
}

TEST_CASE("concat, invert, subword") {
  CHECK((Word::generator(1) * Word::generator(1, -1)).empty());
  Word w = Word::from_syllables(std::vector<Syllable>{{1, 2}, {2, -1}});
  CHECK(w.inverse().syllables() == std::vector<Syllable>{{2, 1}, {1, -2}});

  Word cube = Word::generator(1, 3);
  std::vector<Word> subs;
  for (const auto& sp : all_subword_spans(cube)) subs.push_back(subword(cube, sp));
  CHECK(std::count(subs.begin(), subs.end(), Word::generator(1, 1)) >= 1);
  CHECK(std::count(subs.begin(), subs.end(), Word::generator(1, 2)) >= 1);
  CHECK(std::count(subs.begin(), subs.end(), Word::generator(1, 3)) >= 1);

  CHECK_THROWS_AS(subword(cube, {0, 1, 1, 1}), Error);
  CHECK_THROWS_AS(subword(cube, {0, 0, 4, 4}), Error);
}

TEST_CASE("split_around reassembles the word") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    Word w = free_reduce(random_letters(rng, 3, 10));
    for (const auto& sp : all_subword_spans(w)) {
      auto [pre, suf] = split_around(w, sp);
      REQUIRE(pre * subword(w, sp) * suf == w);
    }
  }
}

TEST_CASE("free reduction properties") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    auto lu = random_letters(rng, 3, trial % 13);
    auto lv = random_letters(rng, 3, trial % 7);
    Word u = free_reduce(lu), v = free_reduce(lv);
    // idempotent
    CHECK(free_reduce(u.letters()) == u);
    CHECK((u * u.inverse()).empty());
    Word uv = u * v;
    CHECK(uv.syllable_length() <= u.syllable_length() + v.syllable_length());
    CHECK(uv.letter_length() <= u.letter_length() + v.letter_length());
    auto cr = cyclic_reduce(u);
    CHECK(cr.conjugator * cr.core * cr.conjugator.inverse() == u);
    CHECK(is_cyclically_reduced(cr.core));
    auto again = cyclic_reduce(cr.core);
    CHECK(again.core == cr.core);
    CHECK(again.conjugator.empty());
    for (std::size_t i = 1; i < uv.syllable_length(); ++i) CHECK(uv[i].gen != uv[i - 1].gen);
  }
}

TEST_CASE("parse_word tokens") {
  Word w = parse_word("a3 a3^-2 a1^5", 3);
  CHECK(w.syllables() == std::vector<Syllable>{{3, -1}, {1, 5}});
  CHECK(parse_word("e", 2).empty());
  CHECK(parse_word("", 2).empty());
  CHECK(w.str() == "a3^-1 a1^5");
  CHECK(w.compact() == "a3^-1,a1^5");
  CHECK_THROWS_AS(parse_word("a4", 3), Error);
  CHECK_THROWS_AS(parse_word("b1", 3), Error);
  CHECK_THROWS_AS(parse_word("a1^", 3), Error);
  CHECK_THROWS_AS(parse_word("a1^x", 3), Error);
}

TEST_CASE("group spec classification") {
  GroupSpec e7 = GroupSpec::uniform(3, 7);
  CHECK(e7.is_extra_large());
  CHECK(e7.is_theorem_scope());
  CHECK(e7.abelian_class_count() == 1);
  GroupSpec mixed = e7;
  mixed.set_label(1, 2, Label::finite(3));
  CHECK_FALSE(mixed.is_extra_large());
  CHECK_FALSE(mixed.is_theorem_scope());
  GroupSpec free3(3);
  CHECK(free3.is_theorem_scope());
  CHECK(free3.finite_pairs().empty());
  CHECK(free3.abelian_class_count() == 3);
  CHECK(GroupSpec::uniform(3, 8).abelian_class_count() == 3);
  CHECK_THROWS_AS(Label::finite(1), Error);
  CHECK_THROWS_AS(Label::infinity().value(), Error);
  CHECK_THROWS_AS(e7.label(1, 1), Error);
}
