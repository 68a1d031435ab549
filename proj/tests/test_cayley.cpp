#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <map>
#include <set>
#include <sstream>

#include "oracle.hpp"
#include "thompson/bbsets.hpp"
#include "thompson/cayley.hpp"
#include "thompson/series.hpp"

using namespace thompson;
using cayley::GeneratorSet;
using forest::GenLabel;

namespace {

cayley::Subgraph bb_graph(std::size_t n, int k, GeneratorSet gens) {
  return cayley::build_subgraph(forest::enumerate_marked_forests(n, k), gens, k);
}

// External edge counts per label name, from the string model.
std::map<std::string, std::size_t> brute_external(std::size_t n, int k, int m) {
  const auto verts = oracle::marked_forests(n, k);
  std::set<std::string> in;
  for (const auto& v : verts) in.insert(v.text());
  std::vector<std::string> names{"x0", "X0", "x1", "X1"};
  if (m == 3) names.insert(names.end(), {"x2", "X2"});
  std::map<std::string, std::size_t> ext;
  for (const auto& name : names) ext[name] = 0;
  for (const auto& v : verts)
    for (const auto& name : names) {
      const auto w = oracle::move(v, name, k);
      if (!w || !in.count(w->text())) ++ext[name];
    }
  return ext;
}

}  // namespace

TEST_CASE("generator sets") {
  CHECK(GeneratorSet::parse("x0x1") == GeneratorSet::standard());
  CHECK(GeneratorSet::parse("x0x1x2") == GeneratorSet::three());
  CHECK_FALSE(GeneratorSet::parse("x1x0").has_value());
  CHECK(GeneratorSet::three().labels().size() == 6);
  for (auto gens : {GeneratorSet::standard(), GeneratorSet::three()}) {
    const auto ls = gens.labels();
    for (std::size_t s = 0; s < ls.size(); ++s) CHECK(ls[s ^ 1] == forest::inverse(ls[s]));
  }
}

TEST_CASE("BB(3,1) over {x0,x1}") {
  const auto g = bb_graph(3, 1, GeneratorSet::standard());
  const auto r = cayley::density_report(g);
  CHECK(r.vertex_count == 7);
  CHECK(r.internal_directed_edges == 12);  // 4*7 - 2*3 - 2*5
  CHECK(r.density == Rational(12, 7));
  CHECK(r.cheeger == Rational(16, 7));
}

TEST_CASE("per-label boundary counts match the string model") {
  for (std::size_t n = 1; n <= 7; ++n)
    for (int k = 0; k <= 3; ++k)
      for (auto gens : {GeneratorSet::standard(), GeneratorSet::three()}) {
        const auto r = cayley::density_report(bb_graph(n, k, gens));
        for (const auto& [name, c] : brute_external(n, k, gens.m()))
          CHECK(r.external(*forest::parse_label(name)) == c);
      }
}

TEST_CASE("internal edge formulas on full BB(n,k)") {
  for (int k = 0; k <= 2; ++k) {
    const auto a = series::series_alpha(k, 12), b = series::series_beta(k, 12), g = series::series_gamma(k, 12);
    for (std::size_t n = 1; n <= 11; ++n) {
      const auto two = cayley::density_report(bb_graph(n, k, GeneratorSet::standard()));
      CHECK(BigInt(static_cast<unsigned long long>(two.internal_directed_edges)) ==
            4 * b[n] - 2 * a[n] - 2 * g[n - 1]);
      const auto three = cayley::density_report(bb_graph(n, k, GeneratorSet::three()));
      CHECK(BigInt(static_cast<unsigned long long>(three.internal_directed_edges)) ==
            6 * b[n] - 4 * a[n] - 2 * g[n - 1] - 2 * b[n - 1]);
      CHECK(three.external(GenLabel::x2) == three.external(GenLabel::x2_inv));
    }
  }
}

TEST_CASE("density plus Cheeger constant is 2m, boundaries are consistent") {
  for (std::size_t n = 1; n <= 9; ++n)
    for (int k = 1; k <= 3; ++k)
      for (auto gens : {GeneratorSet::standard(), GeneratorSet::three()}) {
        const auto g = bb_graph(n, k, gens);
        const auto r = cayley::density_report(g);
        CHECK(r.density + r.cheeger == Rational(2 * gens.m()));
        CHECK(r.internal_directed_edges + r.external_directed_edges == r.vertex_count * 2 * gens.m());
        CHECK(r.external_directed_edges >= r.outer_boundary_size);
        CHECK(r.external_directed_edges >= r.inner_boundary_size);
        CHECK(cayley::symmetric_property_check(g));
        CHECK(cayley::edge_pairing_check(g));
      }
}

TEST_CASE("symmetric property holds on arbitrary vertex subsets") {
  std::mt19937_64 rng(3);
  const auto all = forest::enumerate_marked_forests(8, 3);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<forest::MarkedForest> subset;
    for (const auto& v : all)
      if (std::uniform_int_distribution<int>(0, 2)(rng) == 0) subset.push_back(v);
    if (subset.empty()) continue;
    for (auto gens : {GeneratorSet::standard(), GeneratorSet::three()}) {
      const auto g = cayley::build_subgraph(subset, gens, std::nullopt);
      CHECK(cayley::symmetric_property_check(g));
      CHECK(cayley::edge_pairing_check(g));
    }
  }
}

TEST_CASE("edge pairing check catches a corrupted slot") {
  auto g = bb_graph(5, 2, GeneratorSet::standard());
  REQUIRE(cayley::edge_pairing_check(g));
  for (std::size_t v = 0; v < g.size(); ++v) {
    if (g.target(v, 0) != cayley::kExternal) {
      const auto w = g.target(v, 0);
      g.set_target(v, 0, w == 0 ? 1 : 0);
      break;
    }
  }
  CHECK_FALSE(cayley::edge_pairing_check(g));
}

TEST_CASE("density of BB(n,k) rises toward 4 - 2 xi_k") {
  for (int k = 1; k <= 2; ++k) {
    const double limit = series::density_limit_bb(k).mid();
    Rational prev = 0;
    for (std::size_t n = 1; n <= 12; ++n) {
      const auto d = cayley::density_report(bb_graph(n, k, GeneratorSet::standard())).density;
      CHECK(d >= prev);
      CHECK(to_double(d) < limit);
      prev = d;
    }
  }
}

TEST_CASE("outer boundary counts distinct outside neighbours") {
  // BB(2,0) = {>. ., . >.}: the only outside neighbours are the two merges.
  const auto g = bb_graph(2, 0, GeneratorSet::standard());
  CHECK(g.outer_boundary_size() == 1);  // >(.^.)
  const auto g3 = bb_graph(3, 0, GeneratorSet::three());
  // merges at positions 0-1 and 1-2 with the marker on the merged tree or left of it
  CHECK(g3.outer_boundary_size() == 3);
}

TEST_CASE("build_subgraph input validation") {
  using forest::MarkedForest;
  CHECK_THROWS_AS(cayley::build_subgraph({}, GeneratorSet::standard(), std::nullopt), std::invalid_argument);
  CHECK_THROWS_AS(cayley::build_subgraph({MarkedForest::identity(2), MarkedForest::identity(2)},
                                         GeneratorSet::standard(), std::nullopt),
                  std::invalid_argument);
  CHECK_THROWS_AS(cayley::build_subgraph({MarkedForest::identity(2), MarkedForest::identity(3)},
                                         GeneratorSet::standard(), std::nullopt),
                  std::invalid_argument);
}

TEST_CASE("thread count does not change the result") {
  setenv("THOMPSON_DENSITY_THREADS", "1", 1);
  CHECK(cayley::worker_threads() == 1);
  const auto one = bb_graph(11, 2, GeneratorSet::three());
  const auto r1 = cayley::density_report(one).to_json();
  const auto e1 = cayley::edge_list(one);
  setenv("THOMPSON_DENSITY_THREADS", "4", 1);
  CHECK(cayley::worker_threads() == 4);
  const auto four = bb_graph(11, 2, GeneratorSet::three());
  CHECK(cayley::density_report(four).to_json() == r1);
  CHECK(cayley::edge_list(four) == e1);
  unsetenv("THOMPSON_DENSITY_THREADS");
}

TEST_CASE("edge list export") {
  const auto g = bb_graph(3, 1, GeneratorSet::standard());
  const auto text = cayley::edge_list(g);
  std::istringstream in(text);
  std::string line;
  std::size_t lines = 0, ext = 0;
  while (std::getline(in, line)) {
    ++lines;
    ext += line.ends_with("EXT");
  }
  CHECK(lines == 7 * 4);
  CHECK(ext == 16);
}

TEST_CASE("report json") {
  const auto j = cayley::density_report(bb_graph(3, 1, GeneratorSet::standard())).to_json();
  CHECK(j.find("\"density\":\"12/7\"") != std::string::npos);
  CHECK(j.find("\"external_by_label\":{\"x0\":3,\"X0\":3,\"x1\":5,\"X1\":5}") != std::string::npos);
}
