#pragma once

// Positive words over x0, x1, x2, ..., their non-decreasing normal forms,
// and the correspondence between positive elements and marked forests.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "thompson/forest.hpp"

namespace thompson::words {

/// A letter x_i or its inverse; text form "x<i>" / "X<i>".
struct Letter {
  unsigned index = 0;
  bool inverse = false;

  friend bool operator==(const Letter&, const Letter&) = default;
};

/// Parses whitespace-separated "x<i>"/"X<i>" tokens.
/// Throws std::invalid_argument on malformed tokens.
std::vector<Letter> parse_letters(std::string_view text);
std::string format_letters(const std::vector<Letter>& letters);

struct PositiveWord {
  std::vector<unsigned> letters;

  /// Rejects inverse letters with std::invalid_argument.
  static PositiveWord parse(std::string_view text);
  std::string to_string() const;

  friend bool operator==(const PositiveWord&, const PositiveWord&) = default;
};

/// Normal form x_{i1} ... x_{ik} with i1 <= ... <= ik.
class NormalForm {
 public:
  NormalForm() = default;
  /// Throws std::invalid_argument if the indices decrease anywhere.
  explicit NormalForm(std::vector<unsigned> letters);

  const std::vector<unsigned>& letters() const { return letters_; }
  PositiveWord word() const { return {letters_}; }
  std::string to_string() const;

  friend bool operator==(const NormalForm&, const NormalForm&) = default;

 private:
  std::vector<unsigned> letters_;
};

/// A word in the standard generators x0, x1 and their inverses.
using GroupLetterWord = std::vector<forest::GenLabel>;

/// Rewrites x_j x_i -> x_i x_{j+1} (i < j) until no rule applies.
NormalForm normalize(const PositiveWord& w);

/// Replaces every x_i (i >= 2) by x0^-(i-1) x1 x0^(i-1), freely reducing as
/// it goes.
GroupLetterWord expand_to_standard(const PositiveWord& w);

/// Follows the path labelled by `path` (letters read left to right) from v in
/// the left Cayley graph; the endpoint represents path^-1 * v. Returns
/// std::nullopt as soon as a step is not representable.
std::optional<forest::MarkedForest> follow_path(forest::MarkedForest v,
                                                const GroupLetterWord& path,
                                                std::optional<int> height_cap = std::nullopt);

/// Formal inverse of a group word.
GroupLetterWord inverse_word(const GroupLetterWord& w);

/// Marked forest with n leaves representing the positive element w, or
/// std::nullopt if n is too small to represent it.
std::optional<forest::MarkedForest> word_to_marked_forest(const NormalForm& w, std::size_t n);

/// Normal form of the positive element represented by v. Peels the forest
/// back to the identity: x0 moves bring the marker leftmost, then each caret
/// of the leftmost nontrivial tree (index j) is removed as a letter x_{j+1}.
NormalForm marked_forest_to_word(const forest::MarkedForest& v);

struct RelationCheck {
  std::size_t defined_cases = 0;
  std::size_t mismatches = 0;
  bool holds() const { return mismatches == 0; }
};

/// Counts, over all marked forests with n leaves and both relations, the
/// cases where both sides' paths are defined and those whose endpoints differ.
RelationCheck check_defining_relations(std::size_t n);

/// Checks x1^(x0^2) = x1^(x0 x1) and x1^(x0^3) = x1^(x0^2 x1) on every
/// marked forest with n leaves where both sides' paths are defined.
bool verify_defining_relations(std::size_t n);

}  // namespace thompson::words
