#pragma once

// Belk-Brown sets BB(n,k) and their surgery: every occurrence of the
// pattern (trivial, height k, trivial, height k, nontrivial) at trees
// i..i+4 of a forest contributes three low-degree vertices a, b, c (marker
// on tree i, i+1, i+2); removing them all raises the density.

#include <cstddef>
#include <string>
#include <vector>

#include "thompson/bigint.hpp"
#include "thompson/cayley.hpp"
#include "thompson/forest.hpp"

namespace thompson::bbsets {

struct SpecialOccurrence {
  forest::Forest base;
  std::size_t position;  // index of the first trivial tree

  forest::MarkedForest a() const { return {base, position}; }
  forest::MarkedForest b() const { return {base, position + 1}; }
  forest::MarkedForest c() const { return {base, position + 2}; }
  /// The pattern does not start at the leftmost tree.
  bool interior() const { return position > 0; }
};

/// True when trees i..i+4 of f match the pattern for height bound k.
bool is_special_at(const forest::Forest& f, std::size_t i, int k);

/// Every (forest, position) pair in BB(n,k) matching the pattern. Requires k >= 1.
std::vector<SpecialOccurrence> find_special_occurrences(std::size_t n, int k);

std::vector<forest::MarkedForest> bb_set(std::size_t n, int k);

struct SurgeryResult {
  std::vector<forest::MarkedForest> surviving;
  std::size_t occurrences = 0;             // sigma_k(n)
  std::size_t removed_vertices = 0;        // 3 sigma
  std::size_t removed_edge_upper_bound = 0;  // 10 sigma over {x0,x1}, 14 sigma over {x0,x1,x2}
};

/// BB(n,k) without the a, b, c vertices of every occurrence.
SurgeryResult surgery(std::size_t n, int k, const cayley::GeneratorSet& gens);

struct OccurrenceDegrees {
  SpecialOccurrence occurrence;
  std::size_t deg_a = 0;
  std::size_t deg_b = 0;
  std::size_t deg_c = 0;
};

/// Degrees of a, b, c in the full BB(n,k) graph for every occurrence.
std::vector<OccurrenceDegrees> degree_census_special(std::size_t n, int k,
                                                     const cayley::GeneratorSet& gens);
/// Same, reusing an already built full BB(n,k) graph.
std::vector<OccurrenceDegrees> degree_census_special(const cayley::Subgraph& full,
                                                     const std::vector<SpecialOccurrence>& occ);

struct SurgeryDensity {
  std::size_t n = 0;
  int k = 0;
  cayley::GeneratorSet gens = cayley::GeneratorSet::standard();
  BigInt beta;   // |BB(n,k)|
  BigInt sigma;  // occurrences
  std::size_t vertices_removed = 0;
  /// Internal directed edges of BB(n,k) minus those of the surgered graph.
  std::size_t removed_internal_edges = 0;
  cayley::DensityReport full;
  cayley::DensityReport report;
  /// (4 beta - 2 alpha - 2 gamma(n-1) - 10 sigma) / (beta - 3 sigma) over
  /// {x0,x1}; (6 beta - 4 alpha - 2 gamma(n-1) - 2 beta(n-1) - 14 sigma) /
  /// (beta - 3 sigma) over {x0,x1,x2}; series values throughout.
  Rational lower_bound;

  std::string to_json() const;
};

/// Builds the surgered graph and compares its exact density against the
/// series lower bound. Requires k >= 1 and n >= 2.
SurgeryDensity density_bb_prime(std::size_t n, int k, const cayley::GeneratorSet& gens);

/// Lower-bound formula from series coefficients alone.
Rational lower_bound_formula(std::size_t n, int k, const cayley::GeneratorSet& gens);

}  // namespace thompson::bbsets
