#include "thompson/cayley.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <unordered_set>

#include <json.hpp>

namespace thompson::cayley {

using forest::GenLabel;
using forest::MarkedForest;

std::optional<GeneratorSet> GeneratorSet::parse(const std::string& name) {
  if (name == "x0x1") return standard();
  if (name == "x0x1x2") return three();
  return std::nullopt;
}

std::vector<GenLabel> GeneratorSet::labels() const {
  std::vector<GenLabel> out{GenLabel::x0, GenLabel::x0_inv, GenLabel::x1, GenLabel::x1_inv};
  if (m_ == 3) {
    out.push_back(GenLabel::x2);
    out.push_back(GenLabel::x2_inv);
  }
  return out;
}

unsigned worker_threads() {
  if (const char* env = std::getenv("THOMPSON_DENSITY_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::size_t Subgraph::degree(std::size_t v) const {
  std::size_t d = 0;
  for (std::size_t s = 0; s < slots(); ++s) d += target(v, s) != kExternal;
  return d;
}

std::optional<std::size_t> Subgraph::index_of(const MarkedForest& v) const {
  const auto it = index_.find(forest::canonical_key(v));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Subgraph build_subgraph(std::vector<MarkedForest> vertices, GeneratorSet gens,
                        std::optional<int> height_cap) {
  if (vertices.empty()) throw std::invalid_argument("build_subgraph: empty vertex set");
  const std::size_t n = vertices.front().leaf_count();
  Subgraph g;
  g.gens_ = gens;
  g.height_cap_ = height_cap;
  g.index_.reserve(vertices.size());
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (vertices[i].leaf_count() != n)
      throw std::invalid_argument("build_subgraph: vertices with different leaf counts");
    if (!g.index_.emplace(forest::canonical_key(vertices[i]), i).second)
      throw std::invalid_argument("build_subgraph: duplicate vertex " + vertices[i].to_string());
  }
  g.vertices_ = std::move(vertices);

  const auto labels = gens.labels();
  const std::size_t slots = labels.size();
  const std::size_t count = g.vertices_.size();
  g.adjacency_.assign(count * slots, kExternal);

  // Workers fill disjoint adjacency ranges; the key index is read-only here.
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(worker_threads(), (count + 1023) / 1024));
  std::vector<std::unordered_set<std::string>> outside(std::max(1u, workers));
  auto work = [&](std::size_t begin, std::size_t end, std::unordered_set<std::string>& out) {
    for (std::size_t v = begin; v < end; ++v) {
      for (std::size_t s = 0; s < slots; ++s) {
        auto moved = forest::apply_generator(g.vertices_[v], labels[s], height_cap);
        if (moved) {
          const std::string key = forest::canonical_key(*moved);
          if (auto it = g.index_.find(key); it != g.index_.end()) {
            g.adjacency_[v * slots + s] = static_cast<std::int64_t>(it->second);
          } else {
            out.insert(key);
          }
          continue;
        }
        // Blocked only by the cap: the neighbour still exists in F.
        if (height_cap) {
          if (auto free = forest::apply_generator(g.vertices_[v], labels[s])) {
            std::string key = forest::canonical_key(*free);
            if (!g.index_.count(key)) out.insert(std::move(key));
          }
        }
      }
    }
  };
  if (workers <= 1) {
    work(0, count, outside[0]);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (count + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::size_t begin = std::min(count, w * chunk);
      const std::size_t end = std::min(count, begin + chunk);
      pool.emplace_back(work, begin, end, std::ref(outside[w]));
    }
    for (auto& t : pool) t.join();
  }
  for (std::size_t w = 1; w < outside.size(); ++w) outside[0].merge(outside[w]);
  g.outer_boundary_ = outside[0].size();
  return g;
}

std::vector<std::pair<GenLabel, std::size_t>> boundary_census(const Subgraph& g) {
  const auto labels = g.generators().labels();
  std::vector<std::pair<GenLabel, std::size_t>> out;
  for (std::size_t s = 0; s < labels.size(); ++s) {
    std::size_t c = 0;
    for (std::size_t v = 0; v < g.size(); ++v) c += g.target(v, s) == kExternal;
    out.emplace_back(labels[s], c);
  }
  return out;
}

std::size_t DensityReport::external(GenLabel g) const {
  for (const auto& [label, c] : external_by_label)
    if (label == g) return c;
  throw std::out_of_range("label not in this generating set");
}

DensityReport density_report(const Subgraph& g) {
  DensityReport r;
  r.vertex_count = g.size();
  r.m = g.generators().m();
  r.external_by_label = boundary_census(g);
  for (const auto& [label, c] : r.external_by_label) r.external_directed_edges += c;
  r.internal_directed_edges = g.size() * g.slots() - r.external_directed_edges;
  for (std::size_t v = 0; v < g.size(); ++v) r.inner_boundary_size += g.degree(v) < g.slots();
  r.outer_boundary_size = g.outer_boundary_size();
  const BigInt vertices = static_cast<unsigned long long>(r.vertex_count);
  r.density = Rational(BigInt(static_cast<unsigned long long>(r.internal_directed_edges)), vertices);
  r.cheeger = Rational(BigInt(static_cast<unsigned long long>(r.external_directed_edges)), vertices);
  return r;
}

std::string DensityReport::to_json() const {
  nlohmann::ordered_json j;
  j["vertex_count"] = vertex_count;
  j["generators"] = m == 2 ? "x0x1" : "x0x1x2";
  j["internal_directed_edges"] = internal_directed_edges;
  j["external_directed_edges"] = external_directed_edges;
  nlohmann::ordered_json per_label = nlohmann::ordered_json::object();
  for (const auto& [label, c] : external_by_label) per_label[std::string(forest::label_name(label))] = c;
  j["external_by_label"] = per_label;
  j["inner_boundary_size"] = inner_boundary_size;
  j["outer_boundary_size"] = outer_boundary_size;
  j["density"] = to_fraction_string(density);
  j["density_float"] = to_double(density);
  j["cheeger"] = to_fraction_string(cheeger);
  j["cheeger_float"] = to_double(cheeger);
  return j.dump();
}

bool symmetric_property_check(const Subgraph& g) {
  const auto census = boundary_census(g);
  for (std::size_t s = 0; s + 1 < census.size(); s += 2)
    if (census[s].second != census[s + 1].second) return false;
  return true;
}

bool edge_pairing_check(const Subgraph& g) {
  // labels() lists each generator next to its inverse: slot s ^ 1 is a^-1.
  for (std::size_t v = 0; v < g.size(); ++v) {
    for (std::size_t s = 0; s < g.slots(); ++s) {
      const std::int64_t w = g.target(v, s);
      if (w == kExternal) continue;
      if (g.target(static_cast<std::size_t>(w), s ^ 1u) != static_cast<std::int64_t>(v)) return false;
    }
  }
  return true;
}

std::string edge_list(const Subgraph& g) {
  const auto labels = g.generators().labels();
  std::vector<std::string> hex;
  hex.reserve(g.size());
  for (const auto& v : g.vertices()) hex.push_back(forest::key_hex(forest::canonical_key(v)));
  std::ostringstream out;
  for (std::size_t v = 0; v < g.size(); ++v) {
    for (std::size_t s = 0; s < labels.size(); ++s) {
      const std::int64_t w = g.target(v, s);
      out << hex[v] << "  " << forest::label_name(labels[s]) << "  "
          << (w == kExternal ? std::string("EXT") : hex[static_cast<std::size_t>(w)]) << '\n';
    }
  }
  return out.str();
}

}  // namespace thompson::cayley
