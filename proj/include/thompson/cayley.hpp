#pragma once

// Induced labelled subgraphs of the left Cayley graph of F on a finite set
// of marked forests with a common leaf count.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "thompson/bigint.hpp"
#include "thompson/forest.hpp"

namespace thompson::cayley {

class GeneratorSet {
 public:
  static GeneratorSet standard() { return GeneratorSet(2); }    // {x0, x1}
  static GeneratorSet three() { return GeneratorSet(3); }       // {x0, x1, x2}
  /// "x0x1" or "x0x1x2"; std::nullopt otherwise.
  static std::optional<GeneratorSet> parse(const std::string& name);

  int m() const { return m_; }
  /// The 2m labels: x0, X0, x1, X1[, x2, X2]. Slot i of a vertex is labels()[i].
  std::vector<forest::GenLabel> labels() const;
  std::string name() const { return m_ == 2 ? "x0x1" : "x0x1x2"; }

  friend bool operator==(const GeneratorSet&, const GeneratorSet&) = default;

 private:
  explicit GeneratorSet(int m) : m_(m) {}
  int m_;
};

inline constexpr std::int64_t kExternal = -1;

class Subgraph {
 public:
  const std::vector<forest::MarkedForest>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  const GeneratorSet& generators() const { return gens_; }
  std::optional<int> height_cap() const { return height_cap_; }
  std::size_t slots() const { return static_cast<std::size_t>(2 * gens_.m()); }

  /// Target vertex index of slot `s` at vertex `v`, or kExternal.
  std::int64_t target(std::size_t v, std::size_t s) const { return adjacency_[v * slots() + s]; }
  std::size_t degree(std::size_t v) const;
  std::optional<std::size_t> index_of(const forest::MarkedForest& v) const;
  /// Distinct representable vertices outside the set joined to it by an edge.
  std::size_t outer_boundary_size() const { return outer_boundary_; }

  /// Overwrites a slot; test hook for corrupting adjacency.
  void set_target(std::size_t v, std::size_t s, std::int64_t t) { adjacency_[v * slots() + s] = t; }

 private:
  friend Subgraph build_subgraph(std::vector<forest::MarkedForest>, GeneratorSet,
                                 std::optional<int>);
  std::vector<forest::MarkedForest> vertices_;
  GeneratorSet gens_ = GeneratorSet::standard();
  std::optional<int> height_cap_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::int64_t> adjacency_;
  std::size_t outer_boundary_ = 0;
};

/// Induced subgraph on `vertices`. A slot is internal when the generator
/// move is defined (caret-adding moves x1_inv, x2_inv respecting
/// height_cap) and lands in the set; otherwise it is external. Throws
/// std::invalid_argument on an empty set, mixed leaf counts or duplicates.
/// The build runs on up to THOMPSON_DENSITY_THREADS worker threads.
Subgraph build_subgraph(std::vector<forest::MarkedForest> vertices, GeneratorSet gens,
                        std::optional<int> height_cap);

struct DensityReport {
  std::size_t vertex_count = 0;
  std::size_t internal_directed_edges = 0;
  std::size_t external_directed_edges = 0;  // |Cheeger boundary|
  std::vector<std::pair<forest::GenLabel, std::size_t>> external_by_label;
  std::size_t inner_boundary_size = 0;
  std::size_t outer_boundary_size = 0;
  int m = 2;
  Rational density;
  Rational cheeger;

  std::size_t external(forest::GenLabel g) const;
  std::string to_json() const;
};

DensityReport density_report(const Subgraph& g);

/// Per-label counts of external slots, in GeneratorSet::labels() order.
std::vector<std::pair<forest::GenLabel, std::size_t>> boundary_census(const Subgraph& g);

/// Every label has as many external edges as its inverse.
bool symmetric_property_check(const Subgraph& g);

/// Every internal edge v -a-> w is paired with w -a^-1-> v.
bool edge_pairing_check(const Subgraph& g);

/// One line per slot: "<srcKeyHex>  <label>  <dstKeyHex|EXT>".
std::string edge_list(const Subgraph& g);

/// Worker count: THOMPSON_DENSITY_THREADS if set and positive, otherwise
/// the hardware concurrency (at least 1).
unsigned worker_threads();

}  // namespace thompson::cayley
