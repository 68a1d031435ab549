#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "thompson/words.hpp"

using namespace thompson;
using forest::GenLabel;
using forest::MarkedForest;
using words::NormalForm;
using words::PositiveWord;

namespace {

// Every word reachable by applying x_j x_i -> x_i x_{j+1} (i < j) anywhere,
// in any order; returns the irreducible ones.
std::set<std::vector<unsigned>> all_terminal_forms(const std::vector<unsigned>& w) {
  std::set<std::vector<unsigned>> seen{w}, terminal;
  std::vector<std::vector<unsigned>> stack{w};
  while (!stack.empty()) {
    const auto cur = stack.back();
    stack.pop_back();
    bool reducible = false;
    for (std::size_t p = 0; p + 1 < cur.size(); ++p) {
      if (cur[p] <= cur[p + 1]) continue;
      reducible = true;
      auto next = cur;
      next[p] = cur[p + 1];
      next[p + 1] = cur[p] + 1;
      if (seen.insert(next).second) stack.push_back(next);
    }
    if (!reducible) terminal.insert(cur);
  }
  return terminal;
}

// Marked forest of an arbitrary positive word, bypassing normal forms.
std::optional<MarkedForest> forest_of_raw(const PositiveWord& w, std::size_t n) {
  return words::follow_path(MarkedForest::identity(n), words::inverse_word(words::expand_to_standard(w)));
}

}  // namespace

TEST_CASE("letter parsing and formatting") {
  const auto ls = words::parse_letters("x0 X1  x12");
  REQUIRE(ls.size() == 3);
  CHECK(ls[1].inverse);
  CHECK(ls[2].index == 12);
  CHECK(words::format_letters(ls) == "x0 X1 x12");
  for (const char* bad : {"y0", "x", "x-1", "x1x2", "X"})
    CHECK_THROWS_AS(words::parse_letters(bad), std::invalid_argument);
  CHECK_THROWS_AS(PositiveWord::parse("x0 X1"), std::invalid_argument);
  CHECK(PositiveWord::parse("x3 x1").letters == std::vector<unsigned>{3, 1});
  CHECK_THROWS_AS(NormalForm({2, 1}), std::invalid_argument);
}

TEST_CASE("normal form examples") {
  CHECK(words::normalize(PositiveWord{{1, 0}}).letters() == std::vector<unsigned>{0, 2});
  CHECK(words::normalize(PositiveWord{{3, 1, 0}}).letters() == std::vector<unsigned>{0, 2, 5});
  CHECK(words::normalize(PositiveWord{{0, 0, 2}}).letters() == std::vector<unsigned>{0, 0, 2});
  CHECK(words::normalize(PositiveWord{}).letters().empty());
}

TEST_CASE("rewriting is confluent: every order reaches the same normal form") {
  std::vector<unsigned> w;
  std::function<void(std::size_t)> rec = [&](std::size_t len) {
    const auto terminal = all_terminal_forms(w);
    REQUIRE(terminal.size() == 1);
    CHECK(*terminal.begin() == words::normalize(PositiveWord{w}).letters());
    if (len == 5) return;
    for (unsigned i = 0; i <= 3; ++i) {
      w.push_back(i);
      rec(len + 1);
      w.pop_back();
    }
  };
  rec(0);
}

TEST_CASE("expansion into x0, x1 with free reduction") {
  using G = GenLabel;
  CHECK(words::expand_to_standard(PositiveWord{{2}}) == words::GroupLetterWord{G::x0_inv, G::x1, G::x0});
  // x2 x2 = X0 x1 x0 X0 x1 x0 -> X0 x1 x1 x0
  CHECK(words::expand_to_standard(PositiveWord{{2, 2}}) ==
        words::GroupLetterWord{G::x0_inv, G::x1, G::x1, G::x0});
  CHECK(words::inverse_word({G::x0, G::x1_inv}) == words::GroupLetterWord{G::x1, G::x0_inv});
}

TEST_CASE("equal elements give equal forests (normalization preserves the element)") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    PositiveWord w;
    const int len = std::uniform_int_distribution<int>(0, 6)(rng);
    for (int i = 0; i < len; ++i) w.letters.push_back(std::uniform_int_distribution<unsigned>(0, 4)(rng));
    const auto nf = words::normalize(w);
    const std::size_t n = 16;
    const auto a = forest_of_raw(w, n);
    const auto b = words::word_to_marked_forest(nf, n);
    REQUIRE(a.has_value() == b.has_value());
    if (a) CHECK(*a == *b);
  }
}

TEST_CASE("word -> forest -> word is the identity on normal forms") {
  std::vector<unsigned> w;
  std::function<void(unsigned)> rec = [&](unsigned min_index) {
    const auto f = words::word_to_marked_forest(NormalForm(w), 14);
    REQUIRE(f.has_value());
    CHECK(words::marked_forest_to_word(*f) == NormalForm(w));
    if (w.size() == 4) return;
    for (unsigned i = min_index; i <= 5; ++i) {
      w.push_back(i);
      rec(i);
      w.pop_back();
    }
  };
  rec(0);
}

TEST_CASE("forest -> word -> forest is the identity on BB(n, n)") {
  for (std::size_t n = 1; n <= 7; ++n) {
    for (const auto& v : forest::enumerate_marked_forests(n, static_cast<int>(n))) {
      const auto w = words::marked_forest_to_word(v);
      const auto back = words::word_to_marked_forest(w, n);
      REQUIRE(back.has_value());
      CHECK(*back == v);
    }
  }
}

TEST_CASE("identity and generators") {
  CHECK(words::word_to_marked_forest(NormalForm(), 4)->to_string() == ">. . . .");
  // x_i merges trees i-1 and i (x0 moves the marker right).
  CHECK(words::word_to_marked_forest(NormalForm({0}), 3)->to_string() == ". >. .");
  CHECK(words::word_to_marked_forest(NormalForm({1}), 3)->to_string() == ">(.^.) .");
  CHECK(words::word_to_marked_forest(NormalForm({2}), 3)->to_string() == ">. (.^.)");
  CHECK_FALSE(words::word_to_marked_forest(NormalForm({3}), 3).has_value());
}

TEST_CASE("sixteen-leaf fixture") {
  const NormalForm w({0, 0, 0, 0, 0, 1, 4, 4, 6, 10, 10, 13, 14, 15});
  const std::string want = "(.^.) . ((.^.)^(.^.)) . . >((.^.)^.) (.^(.^(.^.)))";
  const auto f = words::word_to_marked_forest(w, 16);
  REQUIRE(f.has_value());
  CHECK(f->to_string() == want);
  CHECK(f->marker() == 5);
  CHECK(words::marked_forest_to_word(*f) == w);
  // One more leaf only appends a trivial tree.
  CHECK(words::word_to_marked_forest(w, 17)->to_string() == want + " .");
  CHECK_FALSE(words::word_to_marked_forest(w, 15).has_value());
}

TEST_CASE("twelve-leaf fixture") {
  const NormalForm w({0, 0, 0, 4, 5, 8, 10, 10});
  CHECK(words::word_to_marked_forest(w, 12)->to_string() == ". . . >(.^(.^.)) . (.^.) ((.^.)^.)");
}

TEST_CASE("defining relations on every marked forest with up to 8 leaves") {
  const std::size_t defined[] = {0, 0, 0, 0, 1, 7, 34, 145, 583};
  for (std::size_t n = 1; n <= 8; ++n) {
    const auto c = words::check_defining_relations(n);
    CHECK(c.holds());
    CHECK(c.defined_cases == defined[n]);
    CHECK(words::verify_defining_relations(n));
  }
}

TEST_CASE("follow_path stops at the first undefined step") {
  using G = GenLabel;
  CHECK_FALSE(words::follow_path(MarkedForest::identity(3), {G::x0_inv, G::x0, G::x0}).has_value());
  CHECK(words::follow_path(MarkedForest::identity(3), {G::x0_inv, G::x0}) == MarkedForest::identity(3));
}
