#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "heisec/gadgets.hpp"
#include "heisec/words.hpp"

using namespace heisec;

namespace {

Word make_word(std::initializer_list<int> idx) { return Word{std::vector<int>(idx)}; }

AmbientElement y_element() { return AmbientElement(h_from_y({Int(1)})); }

}  // namespace

TEST_CASE("evaluate_word over {t, y, x}") {
  Alphabet a = tyx_alphabet();
  // t y x = y; t x y = y z.
  CHECK(evaluate_word(a, make_word({0, 1, 2})) == y_element());
  HeisenbergElement yz = h_multiply(h_from_y({Int(1)}), h_from_z(1, 1));
  CHECK(evaluate_word(a, make_word({0, 2, 1})) == AmbientElement(yz));
  CHECK(evaluate_word(a, Word{}) == AmbientElement(h_identity(1)));
  CHECK_THROWS_AS(evaluate_word(a, make_word({3})), UsageError);
  CHECK_THROWS_AS(evaluate_word(a, make_word({-1})), UsageError);
}

TEST_CASE("evaluate_word splits multiplicatively") {
  Alphabet a = tyx_alphabet();
  std::mt19937_64 gen(7);
  std::uniform_int_distribution<int> letter(0, 2), len(0, 10);
  for (int trial = 0; trial < 200; ++trial) {
    Word w;
    int total = len(gen);
    for (int i = 0; i < total; ++i) w.indices.push_back(letter(gen));
    int split = total == 0 ? 0 : std::uniform_int_distribution<int>(0, total)(gen);
    Word left{std::vector<int>(w.indices.begin(), w.indices.begin() + split)};
    Word right{std::vector<int>(w.indices.begin() + split, w.indices.end())};
    CHECK(evaluate_word(a, w) ==
          ambient_multiply(evaluate_word(a, left), evaluate_word(a, right)));
  }
}

TEST_CASE("find_words_with_value: the t^n y x^n family") {
  Alphabet a = tyx_alphabet();
  EnumerationBudget budget;
  budget.max_len = 9;
  WordSearchResult r = find_words_with_value(a, y_element(), budget);
  CHECK(!r.truncated);
  REQUIRE(r.words.size() == 5);
  for (int n = 0; n <= 4; ++n) {
    Word expected;
    expected.indices.assign(n, 0);
    expected.indices.push_back(1);
    expected.indices.insert(expected.indices.end(), n, 2);
    CHECK(r.words[n] == expected);
  }
}

TEST_CASE("find_words_with_value: unique-product target is a single word") {
  UniqueProductGadget g = make_unique_product_gadget(3);
  Alphabet a;
  a.descriptor = GroupDescriptor::heisenberg_mod(1, g.e);
  for (const auto& h : g.h) a.letters.emplace_back(quotient_project(h, g.e));
  EnumerationBudget budget;
  budget.max_len = 3;
  WordSearchResult r = find_words_with_value(a, AmbientElement(g.v), budget);
  REQUIRE(r.words.size() == 1);
  CHECK(r.words[0] == make_word({0, 1, 2}));
}

TEST_CASE("find_words_with_value: identity at length zero") {
  Alphabet a = tyx_alphabet();
  EnumerationBudget budget;
  budget.max_len = 0;
  WordSearchResult r = find_words_with_value(a, AmbientElement(h_identity(1)), budget);
  REQUIRE(r.words.size() == 1);
  CHECK(r.words[0] == Word{});
}

TEST_CASE("pruned and unpruned enumeration agree") {
  std::vector<Alphabet> alphabets;
  alphabets.push_back(tyx_alphabet());
  for (int n : {2, 3}) {
    UniqueProductGadget g = make_unique_product_gadget(n);
    Alphabet a;
    a.descriptor = GroupDescriptor::heisenberg_mod(1, g.e);
    for (const auto& h : g.h) a.letters.emplace_back(quotient_project(h, g.e));
    alphabets.push_back(std::move(a));
  }
  for (const auto& a : alphabets) {
    for (int max_len : {4, 8}) {
      AmbientElement target = evaluate_word(a, make_word({0, 1}));
      EnumerationBudget pruned;
      pruned.max_len = max_len;
      EnumerationBudget unpruned = pruned;
      unpruned.projection_pruning = false;
      WordSearchResult rp = find_words_with_value(a, target, pruned);
      WordSearchResult ru = find_words_with_value(a, target, unpruned);
      CHECK(rp.words == ru.words);
      CHECK(rp.examined <= ru.examined);
    }
  }
}

TEST_CASE("enumeration order is (length, lex) and runs are reproducible") {
  Alphabet a = tyx_alphabet();
  EnumerationBudget budget;
  budget.max_len = 7;
  WordSearchResult first = find_words_with_value(a, y_element(), budget);
  WordSearchResult second = find_words_with_value(a, y_element(), budget);
  CHECK(first.words == second.words);
  CHECK(first.examined == second.examined);
  for (std::size_t i = 1; i < first.words.size(); ++i) {
    CHECK(word_less(first.words[i - 1], first.words[i]));
  }
}

TEST_CASE("candidate cap yields a truncated partial result") {
  Alphabet a = tyx_alphabet();
  EnumerationBudget budget;
  budget.max_len = 9;
  budget.max_candidates = 100;
  WordSearchResult r = find_words_with_value(a, y_element(), budget);
  CHECK(r.truncated);
  CHECK(r.examined <= 100);
}

TEST_CASE("check_prop21 verifies the characterization") {
  GadgetCertificate cert = check_prop21(4, 9);
  CHECK(cert.verdict == Verdict::Verified);
  CHECK(cert.candidates_examined == 29524);  // sum of 3^k, k = 0..9
  CHECK(cert.facts.at("words-with-value-y") == "5");

  GadgetCertificate tiny = check_prop21(0, 1);
  CHECK(tiny.verdict == Verdict::Verified);
  CHECK(tiny.facts.at("words-with-value-y") == "1");

  CHECK_THROWS_AS(check_prop21(4, 5), UsageError);
}

TEST_CASE("words of length 2 miss the value y") {
  // t y and y x evaluate off target, so max_len 2 sees only n = 0.
  Alphabet a = tyx_alphabet();
  CHECK(evaluate_word(a, make_word({0, 1})) ==
        AmbientElement(HeisenbergElement{{Int(-1)}, {Int(1)}, Int(1)}));
  CHECK(evaluate_word(a, make_word({1, 2})) ==
        AmbientElement(HeisenbergElement{{Int(1)}, {Int(1)}, Int(-1)}));
  EnumerationBudget budget;
  budget.max_len = 2;
  WordSearchResult r = find_words_with_value(a, y_element(), budget);
  REQUIRE(r.words.size() == 1);
  CHECK(r.words[0] == make_word({1}));
}
