#include "thompson/words.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <stdexcept>

namespace thompson::words {

using forest::GenLabel;
using forest::MarkedForest;

std::vector<Letter> parse_letters(std::string_view text) {
  std::vector<Letter> out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    const std::string_view tok = text.substr(i, j - i);
    if (tok.size() < 2 || (tok[0] != 'x' && tok[0] != 'X'))
      throw std::invalid_argument("bad letter '" + std::string(tok) + "'");
    Letter l;
    l.inverse = tok[0] == 'X';
    const auto* first = tok.data() + 1;
    const auto* last = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(first, last, l.index);
    if (ec != std::errc() || ptr != last)
      throw std::invalid_argument("bad letter '" + std::string(tok) + "'");
    out.push_back(l);
    i = j;
  }
  return out;
}

std::string format_letters(const std::vector<Letter>& letters) {
  std::string out;
  for (const auto& l : letters) {
    if (!out.empty()) out.push_back(' ');
    out.push_back(l.inverse ? 'X' : 'x');
    out += std::to_string(l.index);
  }
  return out;
}

namespace {

std::string format_positive(const std::vector<unsigned>& idx) {
  std::vector<Letter> ls;
  ls.reserve(idx.size());
  for (unsigned i : idx) ls.push_back({i, false});
  return format_letters(ls);
}

}  // namespace

PositiveWord PositiveWord::parse(std::string_view text) {
  PositiveWord w;
  for (const auto& l : parse_letters(text)) {
    if (l.inverse) throw std::invalid_argument("positive words cannot contain inverse letters");
    w.letters.push_back(l.index);
  }
  return w;
}

std::string PositiveWord::to_string() const { return format_positive(letters); }

NormalForm::NormalForm(std::vector<unsigned> letters) : letters_(std::move(letters)) {
  if (!std::is_sorted(letters_.begin(), letters_.end()))
    throw std::invalid_argument("normal form indices must be non-decreasing");
}

std::string NormalForm::to_string() const { return format_positive(letters_); }

NormalForm normalize(const PositiveWord& w) {
  // Bubble passes of x_j x_i -> x_i x_{j+1}; the system is terminating and
  // confluent, so any order reaches the same result.
  std::vector<unsigned> s = w.letters;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t p = 0; p + 1 < s.size(); ++p) {
      if (s[p] > s[p + 1]) {
        const unsigned j = s[p];
        s[p] = s[p + 1];
        s[p + 1] = j + 1;
        changed = true;
      }
    }
  }
  return NormalForm(std::move(s));
}

namespace {

void push_reduced(GroupLetterWord& out, GenLabel g) {
  if (!out.empty() && out.back() == forest::inverse(g)) {
    out.pop_back();
  } else {
    out.push_back(g);
  }
}

}  // namespace

GroupLetterWord expand_to_standard(const PositiveWord& w) {
  GroupLetterWord out;
  for (unsigned i : w.letters) {
    if (i == 0) {
      push_reduced(out, GenLabel::x0);
      continue;
    }
    for (unsigned r = 1; r < i; ++r) push_reduced(out, GenLabel::x0_inv);
    push_reduced(out, GenLabel::x1);
    for (unsigned r = 1; r < i; ++r) push_reduced(out, GenLabel::x0);
  }
  return out;
}

GroupLetterWord inverse_word(const GroupLetterWord& w) {
  GroupLetterWord out(w.rbegin(), w.rend());
  for (auto& g : out) g = forest::inverse(g);
  return out;
}

std::optional<MarkedForest> follow_path(MarkedForest v, const GroupLetterWord& path,
                                        std::optional<int> height_cap) {
  for (GenLabel g : path) {
    auto next = forest::apply_generator(v, g, height_cap);
    if (!next) return std::nullopt;
    v = std::move(*next);
  }
  return v;
}

std::optional<MarkedForest> word_to_marked_forest(const NormalForm& w, std::size_t n) {
  if (n == 0) return std::nullopt;
  // Following the path labelled u from h ends at u^-1 h, so the path
  // labelled w^-1 carries the identity to w (last letter of w acts first).
  return follow_path(MarkedForest::identity(n), inverse_word(expand_to_standard(w.word())));
}

NormalForm marked_forest_to_word(const MarkedForest& start) {
  std::vector<unsigned> letters;
  MarkedForest v = start;
  while (v.marker() > 0) {
    v = *forest::apply_generator(v, GenLabel::x0);
    letters.push_back(0);
  }
  for (;;) {
    const auto& trees = v.trees();
    const auto it = std::find_if(trees.begin(), trees.end(),
                                 [](const forest::Tree& t) { return !t.is_leaf(); });
    if (it == trees.end()) break;
    const auto j = static_cast<unsigned>(it - trees.begin());
    // act(x_{j+1}) = walk right j times, split, walk back.
    GroupLetterWord step(j, GenLabel::x0_inv);
    step.push_back(GenLabel::x1);
    step.insert(step.end(), j, GenLabel::x0);
    v = *follow_path(v, step);
    letters.push_back(j + 1);
  }
  return normalize(PositiveWord{std::move(letters)});
}

RelationCheck check_defining_relations(std::size_t n) {
  using G = GenLabel;
  // a^b = b^-1 a b
  const std::vector<std::pair<GroupLetterWord, GroupLetterWord>> relations = {
      {{G::x0_inv, G::x0_inv, G::x1, G::x0, G::x0},
       {G::x1_inv, G::x0_inv, G::x1, G::x0, G::x1}},
      {{G::x0_inv, G::x0_inv, G::x0_inv, G::x1, G::x0, G::x0, G::x0},
       {G::x1_inv, G::x0_inv, G::x0_inv, G::x1, G::x0, G::x0, G::x1}},
  };
  RelationCheck result;
  forest::for_each_marked_forest(n, static_cast<int>(n), [&](const MarkedForest& v) {
    for (const auto& [lhs, rhs] : relations) {
      const auto a = follow_path(v, lhs);
      const auto b = follow_path(v, rhs);
      if (!a || !b) continue;
      ++result.defined_cases;
      if (!(*a == *b)) ++result.mismatches;
    }
  });
  return result;
}

bool verify_defining_relations(std::size_t n) { return check_defining_relations(n).holds(); }

}  // namespace thompson::words
