#include "thompson/bbsets.hpp"

#include <stdexcept>
#include <unordered_set>

#include <json.hpp>

#include "thompson/series.hpp"

namespace thompson::bbsets {

using forest::Forest;
using forest::MarkedForest;

bool is_special_at(const Forest& f, std::size_t i, int k) {
  if (i + 4 >= f.size()) return false;
  return f[i].is_leaf() && f[i + 1].height() == k && f[i + 2].is_leaf() &&
         f[i + 3].height() == k && !f[i + 4].is_leaf();
}

std::vector<SpecialOccurrence> find_special_occurrences(std::size_t n, int k) {
  if (k < 1) throw std::invalid_argument("special occurrences need k >= 1");
  std::vector<SpecialOccurrence> out;
  forest::for_each_forest(n, k, [&](const Forest& f) {
    for (std::size_t i = 0; i + 4 < f.size(); ++i)
      if (is_special_at(f, i, k)) out.push_back({f, i});
  });
  return out;
}

std::vector<MarkedForest> bb_set(std::size_t n, int k) {
  return forest::enumerate_marked_forests(n, k);
}

SurgeryResult surgery(std::size_t n, int k, const cayley::GeneratorSet& gens) {
  const auto occ = find_special_occurrences(n, k);
  std::unordered_set<std::string> removed;
  for (const auto& o : occ) {
    removed.insert(forest::canonical_key(o.a()));
    removed.insert(forest::canonical_key(o.b()));
    removed.insert(forest::canonical_key(o.c()));
  }
  SurgeryResult r;
  r.occurrences = occ.size();
  r.removed_vertices = removed.size();
  r.removed_edge_upper_bound = occ.size() * (gens.m() == 2 ? 10 : 14);
  forest::for_each_marked_forest(n, k, [&](const MarkedForest& v) {
    if (!removed.count(forest::canonical_key(v))) r.surviving.push_back(v);
  });
  return r;
}

std::vector<OccurrenceDegrees> degree_census_special(const cayley::Subgraph& full,
                                                     const std::vector<SpecialOccurrence>& occ) {
  std::vector<OccurrenceDegrees> out;
  out.reserve(occ.size());
  auto degree = [&](const MarkedForest& v) {
    const auto i = full.index_of(v);
    if (!i) throw std::invalid_argument("occurrence vertex missing from the graph");
    return full.degree(*i);
  };
  for (const auto& o : occ) out.push_back({o, degree(o.a()), degree(o.b()), degree(o.c())});
  return out;
}

std::vector<OccurrenceDegrees> degree_census_special(std::size_t n, int k,
                                                     const cayley::GeneratorSet& gens) {
  const auto full = cayley::build_subgraph(bb_set(n, k), gens, k);
  return degree_census_special(full, find_special_occurrences(n, k));
}

Rational lower_bound_formula(std::size_t n, int k, const cayley::GeneratorSet& gens) {
  if (k < 1 || n < 2) throw std::invalid_argument("lower bound needs k >= 1 and n >= 2");
  const auto alpha = series::series_alpha(k, n);
  const auto gamma = series::series_gamma(k, n);
  const auto beta = series::series_beta(k, n);
  const auto sigma = series::series_sigma(k, n);
  BigInt edges;
  if (gens.m() == 2) {
    edges = 4 * beta[n] - 2 * alpha[n] - 2 * gamma[n - 1] - 10 * sigma[n];
  } else {
    edges = 6 * beta[n] - 4 * alpha[n] - 2 * gamma[n - 1] - 2 * beta[n - 1] - 14 * sigma[n];
  }
  return Rational(edges, beta[n] - 3 * sigma[n]);
}

SurgeryDensity density_bb_prime(std::size_t n, int k, const cayley::GeneratorSet& gens) {
  SurgeryDensity d;
  d.n = n;
  d.k = k;
  d.gens = gens;
  d.lower_bound = lower_bound_formula(n, k, gens);

  const auto full = cayley::build_subgraph(bb_set(n, k), gens, k);
  d.full = cayley::density_report(full);
  auto cut = surgery(n, k, gens);
  d.beta = static_cast<unsigned long long>(full.size());
  d.sigma = static_cast<unsigned long long>(cut.occurrences);
  d.vertices_removed = cut.removed_vertices;
  const auto rest = cayley::build_subgraph(std::move(cut.surviving), gens, k);
  d.report = cayley::density_report(rest);
  d.removed_internal_edges = d.full.internal_directed_edges - d.report.internal_directed_edges;
  return d;
}

std::string SurgeryDensity::to_json() const {
  nlohmann::ordered_json j;
  j["n"] = n;
  j["k"] = k;
  j["gens"] = gens.name();
  j["beta"] = beta.str();
  j["sigma"] = sigma.str();
  j["vertices_removed"] = vertices_removed;
  j["removed_internal_edges"] = removed_internal_edges;
  j["removed_edge_upper_bound"] = sigma.convert_to<unsigned long long>() * (gens.m() == 2 ? 10 : 14);
  j["density_exact"] = to_fraction_string(report.density);
  j["density_float"] = to_double(report.density);
  j["lower_bound_formula_exact"] = to_fraction_string(lower_bound);
  j["lower_bound_formula_float"] = to_double(lower_bound);
  j["full_density_exact"] = to_fraction_string(full.density);
  j["report"] = nlohmann::ordered_json::parse(report.to_json());
  return j.dump();
}

}  // namespace thompson::bbsets
