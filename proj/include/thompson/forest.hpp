#pragma once

// Rooted binary trees, forests and marked forests, together with the partial
// left-Cayley-graph action of the generators x0, x1, x2 and their inverses.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "thompson/bigint.hpp"

namespace thompson::forest {

/// A rooted binary tree, stored as its preorder code: '1' for a caret
/// followed by the codes of its left and right subtrees, '0' for a leaf.
class Tree {
 public:
  /// The trivial tree.
  Tree() : code_("0"), height_(0) {}

  static Tree leaf() { return Tree(); }
  static Tree caret(const Tree& left, const Tree& right);

  /// Parses a preorder code. Throws std::invalid_argument if malformed.
  static Tree from_code(std::string_view code);

  bool is_leaf() const { return code_.size() == 1; }
  /// Subtrees of a caret. Throws std::logic_error on a leaf.
  Tree left() const;
  Tree right() const;

  int height() const { return height_; }
  std::size_t leaf_count() const { return (code_.size() + 1) / 2; }
  std::size_t caret_count() const { return code_.size() / 2; }
  const std::string& code() const { return code_; }

  /// Text form: "." for a leaf, "(L^R)" for a caret.
  std::string to_string() const;

  friend bool operator==(const Tree&, const Tree&) = default;
  friend std::strong_ordering operator<=>(const Tree& a, const Tree& b) {
    return a.code_ <=> b.code_;
  }

 private:
  Tree(std::string code, int height) : code_(std::move(code)), height_(height) {}
  std::size_t left_end() const;

  std::string code_;
  int height_;
};

/// A nonempty ordered sequence of trees, enumerated left to right.
class Forest {
 public:
  explicit Forest(std::vector<Tree> trees);
  /// n trivial trees.
  static Forest trivial(std::size_t n);

  const std::vector<Tree>& trees() const { return trees_; }
  std::size_t size() const { return trees_.size(); }
  const Tree& operator[](std::size_t i) const { return trees_[i]; }
  std::size_t leaf_count() const;
  int max_height() const;

  friend bool operator==(const Forest&, const Forest&) = default;

 private:
  std::vector<Tree> trees_;
};

class MarkedForest {
 public:
  /// Throws std::out_of_range unless marker < forest.size().
  MarkedForest(Forest forest, std::size_t marker);
  /// The identity element at width n: n trivial trees, marker on the leftmost.
  static MarkedForest identity(std::size_t n);

  const Forest& forest() const { return forest_; }
  const std::vector<Tree>& trees() const { return forest_.trees(); }
  std::size_t marker() const { return marker_; }
  const Tree& marked_tree() const { return forest_[marker_]; }
  std::size_t leaf_count() const { return forest_.leaf_count(); }

  /// Text form: trees separated by spaces, the marked one prefixed by '>'.
  /// Example: "(.^.) >. .".
  std::string to_string() const;
  /// Inverse of to_string(). Throws std::invalid_argument on bad input.
  static MarkedForest parse(std::string_view text);

  friend bool operator==(const MarkedForest&, const MarkedForest&) = default;

 private:
  Forest forest_;
  std::size_t marker_;
};

enum class GenLabel : std::uint8_t { x0, x0_inv, x1, x1_inv, x2, x2_inv };

GenLabel inverse(GenLabel g);
/// "x0", "X0", "x1", ... (capital letter = inverse).
std::string_view label_name(GenLabel g);
std::optional<GenLabel> parse_label(std::string_view name);

/// Partial action of a generator on a marked forest, following the edge with
/// that label in the left Cayley graph. Returns std::nullopt where the move
/// is not representable. With a height cap k, the caret-adding moves x1_inv
/// and x2_inv also require both merged trees to have height <= k-1.
std::optional<MarkedForest> apply_generator(const MarkedForest& v, GenLabel g,
                                            std::optional<int> height_cap = std::nullopt);

BigInt catalan(unsigned n);

/// Visits every tree with `leaves` leaves and height <= max_height: for each
/// split, left-subtree leaf count ascending, then left tree, then right tree.
void for_each_tree(std::size_t leaves, int max_height,
                   const std::function<void(const Tree&)>& visit);
std::vector<Tree> enumerate_trees(std::size_t leaves, int max_height);

/// Visits every (unmarked) forest with n leaves whose trees all have height
/// <= max_height, in lexicographic order of the tree sequence (each tree
/// keyed by leaf count, then by its enumeration order).
void for_each_forest(std::size_t n, int max_height,
                     const std::function<void(const Forest&)>& visit);

/// Visits BB(n, k): every marked forest with n leaves and trees of height
/// <= k, forests in for_each_forest order, markers ascending.
void for_each_marked_forest(std::size_t n, int k,
                            const std::function<void(const MarkedForest&)>& visit);
std::vector<MarkedForest> enumerate_marked_forests(std::size_t n, int k);

/// Injective byte key. Layout: tree count (u32 little endian), marker
/// (u32 little endian), then the preorder bits of every tree concatenated
/// (caret = 1, leaf = 0), packed most significant bit first, last byte
/// zero-padded.
std::string canonical_key(const MarkedForest& v);
/// Inverse of canonical_key. Throws std::invalid_argument on malformed keys.
MarkedForest decode_key(std::string_view key);
/// Lowercase hex rendering of a key, for text exports.
std::string key_hex(std::string_view key);

}  // namespace thompson::forest
