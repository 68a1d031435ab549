#include "thompson/forest.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <stdexcept>
#include <utility>

namespace thompson::forest {

// ---------------------------------------------------------------- Tree

Tree Tree::caret(const Tree& left, const Tree& right) {
  std::string code;
  code.reserve(1 + left.code_.size() + right.code_.size());
  code.push_back('1');
  code += left.code_;
  code += right.code_;
  return Tree(std::move(code), std::max(left.height_, right.height_) + 1);
}

Tree Tree::from_code(std::string_view code) {
  // Parse with an explicit stack of pending carets; height is the deepest
  // nesting of carets on any root-to-leaf path.
  struct Pending {
    int children_done;
    int depth;
  };
  std::vector<Pending> stack;
  int height = 0;
  std::size_t i = 0;
  for (; i < code.size(); ++i) {
    const char c = code[i];
    const int depth = static_cast<int>(stack.size());
    if (c == '1') {
      stack.push_back({0, depth});
    } else if (c == '0') {
      height = std::max(height, depth);
      while (!stack.empty() && ++stack.back().children_done == 2) stack.pop_back();
      if (stack.empty()) break;
    } else {
      throw std::invalid_argument("tree code may only contain '0' and '1'");
    }
  }
  if (i + 1 != code.size() || !stack.empty())
    throw std::invalid_argument("malformed tree code: " + std::string(code));
  return Tree(std::string(code), height);
}

std::size_t Tree::left_end() const {
  int open = 1;
  std::size_t i = 1;
  for (; open > 0; ++i) open += code_[i] == '1' ? 1 : -1;
  return i;
}

Tree Tree::left() const {
  if (is_leaf()) throw std::logic_error("a trivial tree has no subtrees");
  return from_code(std::string_view(code_).substr(1, left_end() - 1));
}

Tree Tree::right() const {
  if (is_leaf()) throw std::logic_error("a trivial tree has no subtrees");
  return from_code(std::string_view(code_).substr(left_end()));
}

std::string Tree::to_string() const {
  if (is_leaf()) return ".";
  return "(" + left().to_string() + "^" + right().to_string() + ")";
}

// ---------------------------------------------------------------- Forest

Forest::Forest(std::vector<Tree> trees) : trees_(std::move(trees)) {
  if (trees_.empty()) throw std::invalid_argument("a forest has at least one tree");
}

Forest Forest::trivial(std::size_t n) { return Forest(std::vector<Tree>(n)); }

std::size_t Forest::leaf_count() const {
  std::size_t n = 0;
  for (const auto& t : trees_) n += t.leaf_count();
  return n;
}

int Forest::max_height() const {
  int h = 0;
  for (const auto& t : trees_) h = std::max(h, t.height());
  return h;
}

// ---------------------------------------------------------------- MarkedForest

MarkedForest::MarkedForest(Forest forest, std::size_t marker)
    : forest_(std::move(forest)), marker_(marker) {
  if (marker_ >= forest_.size()) throw std::out_of_range("marker outside the forest");
}

MarkedForest MarkedForest::identity(std::size_t n) {
  return MarkedForest(Forest::trivial(n), 0);
}

std::string MarkedForest::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < forest_.size(); ++i) {
    if (i) out.push_back(' ');
    if (i == marker_) out.push_back('>');
    out += forest_[i].to_string();
  }
  return out;
}

namespace {

class TreeParser {
 public:
  explicit TreeParser(std::string_view text) : text_(text) {}

  Tree parse_tree() {
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (text_[pos_] == '.') {
      ++pos_;
      return Tree::leaf();
    }
    expect('(');
    Tree l = parse_tree();
    expect('^');
    Tree r = parse_tree();
    expect(')');
    return Tree::caret(l, r);
  }

  bool done() const { return pos_ == text_.size(); }

 private:
  void expect(char c) {
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw std::invalid_argument("bad tree '" + std::string(text_) + "': " + msg);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

MarkedForest MarkedForest::parse(std::string_view text) {
  std::vector<Tree> trees;
  std::optional<std::size_t> marker;
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    std::string_view token = text.substr(i, j - i);
    if (token.front() == '>') {
      if (marker) throw std::invalid_argument("more than one marked tree");
      marker = trees.size();
      token.remove_prefix(1);
    }
    TreeParser p(token);
    trees.push_back(p.parse_tree());
    if (!p.done()) throw std::invalid_argument("trailing characters in '" + std::string(token) + "'");
    i = j;
  }
  if (trees.empty()) throw std::invalid_argument("empty forest");
  if (!marker) throw std::invalid_argument("no marked tree");
  return MarkedForest(Forest(std::move(trees)), *marker);
}

// ---------------------------------------------------------------- generators

GenLabel inverse(GenLabel g) {
  const auto v = static_cast<std::uint8_t>(g);
  return static_cast<GenLabel>(v ^ 1u);
}

std::string_view label_name(GenLabel g) {
  switch (g) {
    case GenLabel::x0: return "x0";
    case GenLabel::x0_inv: return "X0";
    case GenLabel::x1: return "x1";
    case GenLabel::x1_inv: return "X1";
    case GenLabel::x2: return "x2";
    case GenLabel::x2_inv: return "X2";
  }
  return "?";
}

std::optional<GenLabel> parse_label(std::string_view name) {
  for (auto g : {GenLabel::x0, GenLabel::x0_inv, GenLabel::x1, GenLabel::x1_inv,
                 GenLabel::x2, GenLabel::x2_inv})
    if (label_name(g) == name) return g;
  return std::nullopt;
}

namespace {

bool fits_under_caret(const Tree& a, const Tree& b, std::optional<int> cap) {
  return !cap || (a.height() <= *cap - 1 && b.height() <= *cap - 1);
}

MarkedForest split_at(const MarkedForest& v, std::size_t i, std::size_t marker) {
  std::vector<Tree> trees;
  trees.reserve(v.trees().size() + 1);
  const auto& src = v.trees();
  trees.insert(trees.end(), src.begin(), src.begin() + static_cast<std::ptrdiff_t>(i));
  trees.push_back(src[i].left());
  trees.push_back(src[i].right());
  trees.insert(trees.end(), src.begin() + static_cast<std::ptrdiff_t>(i) + 1, src.end());
  return MarkedForest(Forest(std::move(trees)), marker);
}

MarkedForest merge_at(const MarkedForest& v, std::size_t i, std::size_t marker) {
  std::vector<Tree> trees;
  trees.reserve(v.trees().size() - 1);
  const auto& src = v.trees();
  trees.insert(trees.end(), src.begin(), src.begin() + static_cast<std::ptrdiff_t>(i));
  trees.push_back(Tree::caret(src[i], src[i + 1]));
  trees.insert(trees.end(), src.begin() + static_cast<std::ptrdiff_t>(i) + 2, src.end());
  return MarkedForest(Forest(std::move(trees)), marker);
}

}  // namespace

std::optional<MarkedForest> apply_generator(const MarkedForest& v, GenLabel g,
                                            std::optional<int> height_cap) {
  const std::size_t m = v.marker();
  const std::size_t count = v.trees().size();
  const auto& t = v.trees();
  switch (g) {
    case GenLabel::x0:
      if (m == 0) return std::nullopt;
      return MarkedForest(v.forest(), m - 1);
    case GenLabel::x0_inv:
      if (m + 1 >= count) return std::nullopt;
      return MarkedForest(v.forest(), m + 1);
    case GenLabel::x1:
      if (t[m].is_leaf()) return std::nullopt;
      return split_at(v, m, m);
    case GenLabel::x1_inv:
      if (m + 1 >= count || !fits_under_caret(t[m], t[m + 1], height_cap)) return std::nullopt;
      return merge_at(v, m, m);
    case GenLabel::x2:
      if (m + 1 >= count || t[m + 1].is_leaf()) return std::nullopt;
      return split_at(v, m + 1, m);
    case GenLabel::x2_inv:
      if (m + 2 >= count || !fits_under_caret(t[m + 1], t[m + 2], height_cap))
        return std::nullopt;
      return merge_at(v, m + 1, m);
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- enumeration

BigInt catalan(unsigned n) {
  // (2n)! / (n! (n+1)!) as a running product of exact binomial steps.
  BigInt c = 1;
  for (unsigned i = 0; i < n; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
  return c;
}

namespace {

using TreeTable = std::map<std::pair<std::size_t, int>, std::vector<Tree>>;

const std::vector<Tree>& trees_memo(std::size_t leaves, int h, TreeTable& memo) {
  const auto key = std::make_pair(leaves, h);
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  std::vector<Tree> out;
  if (h >= 0 && leaves >= 1) {
    if (leaves == 1) {
      out.push_back(Tree::leaf());
    } else if (h >= 1) {
      for (std::size_t l = 1; l < leaves; ++l) {
        const auto& lefts = trees_memo(l, h - 1, memo);
        const auto& rights = trees_memo(leaves - l, h - 1, memo);
        for (const auto& a : lefts)
          for (const auto& b : rights) out.push_back(Tree::caret(a, b));
      }
    }
  }
  return memo.emplace(key, std::move(out)).first->second;
}

// A tree of height h has at most 2^h leaves, so capping the height at
// leaves - 1 changes nothing and keeps memo keys bounded.
int effective_height(std::size_t leaves, int max_height) {
  const int bound = leaves == 0 ? 0 : static_cast<int>(leaves) - 1;
  return std::min(max_height, bound);
}

}  // namespace

std::vector<Tree> enumerate_trees(std::size_t leaves, int max_height) {
  TreeTable memo;
  return trees_memo(leaves, effective_height(leaves, max_height), memo);
}

void for_each_tree(std::size_t leaves, int max_height,
                   const std::function<void(const Tree&)>& visit) {
  for (const auto& t : enumerate_trees(leaves, max_height)) visit(t);
}

void for_each_forest(std::size_t n, int max_height,
                     const std::function<void(const Forest&)>& visit) {
  if (n == 0 || max_height < 0) return;
  std::vector<std::vector<Tree>> by_leaves(n + 1);
  {
    TreeTable memo;
    for (std::size_t l = 1; l <= n; ++l)
      by_leaves[l] = trees_memo(l, effective_height(l, max_height), memo);
  }
  std::vector<Tree> prefix;
  std::function<void(std::size_t)> extend = [&](std::size_t remaining) {
    if (remaining == 0) {
      visit(Forest(prefix));
      return;
    }
    for (std::size_t l = 1; l <= remaining; ++l) {
      for (const auto& t : by_leaves[l]) {
        prefix.push_back(t);
        extend(remaining - l);
        prefix.pop_back();
      }
    }
  };
  extend(n);
}

void for_each_marked_forest(std::size_t n, int k,
                            const std::function<void(const MarkedForest&)>& visit) {
  for_each_forest(n, k, [&](const Forest& f) {
    for (std::size_t m = 0; m < f.size(); ++m) visit(MarkedForest(f, m));
  });
}

std::vector<MarkedForest> enumerate_marked_forests(std::size_t n, int k) {
  std::vector<MarkedForest> out;
  for_each_marked_forest(n, k, [&](const MarkedForest& v) { out.push_back(v); });
  return out;
}

// ---------------------------------------------------------------- keys

namespace {

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xffu));
}

std::uint32_t get_u32(std::string_view in, std::size_t at) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i)
    v |= static_cast<std::uint32_t>(static_cast<unsigned char>(in[at + i])) << (8 * i);
  return v;
}

}  // namespace

std::string canonical_key(const MarkedForest& v) {
  std::string out;
  put_u32(out, static_cast<std::uint32_t>(v.trees().size()));
  put_u32(out, static_cast<std::uint32_t>(v.marker()));
  unsigned char byte = 0;
  int used = 0;
  for (const auto& t : v.trees()) {
    for (char c : t.code()) {
      byte = static_cast<unsigned char>((byte << 1) | (c == '1' ? 1u : 0u));
      if (++used == 8) {
        out.push_back(static_cast<char>(byte));
        byte = 0;
        used = 0;
      }
    }
  }
  if (used) out.push_back(static_cast<char>(byte << (8 - used)));
  return out;
}

MarkedForest decode_key(std::string_view key) {
  if (key.size() < 8) throw std::invalid_argument("key shorter than its header");
  const std::uint32_t count = get_u32(key, 0);
  const std::uint32_t marker = get_u32(key, 4);
  const std::string_view body = key.substr(8);
  const std::size_t total_bits = body.size() * 8;
  std::size_t bit = 0;
  auto next_bit = [&]() -> char {
    if (bit >= total_bits) throw std::invalid_argument("key body truncated");
    const auto b = static_cast<unsigned char>(body[bit / 8]);
    const char c = ((b >> (7 - bit % 8)) & 1u) ? '1' : '0';
    ++bit;
    return c;
  };
  std::vector<Tree> trees;
  trees.reserve(count);
  for (std::uint32_t i = 0; i < count; ++i) {
    std::string code;
    int open = 1;
    while (open > 0) {
      const char c = next_bit();
      code.push_back(c);
      open += c == '1' ? 1 : -1;
    }
    trees.push_back(Tree::from_code(code));
  }
  if ((bit + 7) / 8 != body.size()) throw std::invalid_argument("key has trailing bytes");
  while (bit < total_bits)
    if (next_bit() != '0') throw std::invalid_argument("nonzero key padding");
  if (trees.empty()) throw std::invalid_argument("key encodes no trees");
  return MarkedForest(Forest(std::move(trees)), marker);
}

std::string key_hex(std::string_view key) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string out;
  out.reserve(key.size() * 2);
  for (char c : key) {
    const auto b = static_cast<unsigned char>(c);
    out.push_back(digits[b >> 4]);
    out.push_back(digits[b & 0xf]);
  }
  return out;
}

}  // namespace thompson::forest
