#include "thompson/cli.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "thompson/acceptance.hpp"
#include "thompson/bbsets.hpp"
#include "thompson/cayley.hpp"
#include "thompson/errors.hpp"
#include "thompson/forest.hpp"
#include "thompson/series.hpp"

namespace thompson::cli {

namespace {

using json = nlohmann::ordered_json;

json interval_json(const Interval& v) {
  json j;
  j["lo"] = v.lo();
  j["hi"] = v.hi();
  return j;
}

cayley::GeneratorSet gens_or_throw(const std::string& name) {
  auto g = cayley::GeneratorSet::parse(name);
  if (!g) throw std::invalid_argument("unknown generating set '" + name + "' (use x0x1 or x0x1x2)");
  return *g;
}

// |BB(n,k)| from the series, so oversized builds fail before enumerating.
void guard_graph(std::size_t n, int k) {
  if (k < 0) throw std::invalid_argument("k must be nonnegative");
  const int kk = std::min<int>(k, static_cast<int>(n));  // heights never exceed n-1
  const auto beta = series::series_beta(kk, n);
  if (beta[n] > BigInt(kMaxGraphVertices))
    throw GuardViolation("|BB(" + std::to_string(n) + "," + std::to_string(k) + ")| = " +
                         beta[n].str() + " exceeds the graph guard of " +
                         std::to_string(kMaxGraphVertices) + " vertices");
}

struct Flags {
  std::string kind;
  int k = 0;
  std::size_t n = series::kDefaultOrder;
  double tol = 1e-13;
  std::string gens = "x0x1";
  std::string what = "marked";
  bool count_only = false;
  bool edges = false;
};

void cmd_series(const Flags& f, std::ostream& out) {
  const auto kind = series::parse_kind(f.kind);
  if (!kind || *kind == series::SeriesKind::custom)
    throw std::invalid_argument("unknown series kind '" + f.kind + "'");
  series::SeriesTable t;
  switch (*kind) {
    case series::SeriesKind::alpha: t = series::series_alpha(f.k, f.n); break;
    case series::SeriesKind::gamma: t = series::series_gamma(f.k, f.n); break;
    case series::SeriesKind::beta: t = series::series_beta(f.k, f.n); break;
    default: t = series::series_sigma(f.k, f.n); break;
  }
  out << t.to_csv();
}

void cmd_xi(const Flags& f, std::ostream& out) { out << series::xi(f.k, f.tol).to_json() << '\n'; }

void cmd_limits(const Flags& f, std::ostream& out) {
  if (f.k < 1) throw std::invalid_argument("limits need k >= 1");
  const auto root = series::xi(f.k, f.tol);
  const auto bb = series::density_limit_bb(f.k, f.tol);
  const auto bbp = series::density_limit_bb_prime(f.k, f.tol);
  const auto t2base = series::density_limit_thm2_base(f.k, f.tol);
  const auto t2 = series::density_limit_thm2(f.k, f.tol);
  const Interval offset = (root.enclosure() - Interval::point(0.25)) * Interval::point(double(f.k) * f.k) /
                          Interval::point(std::numbers::pi * std::numbers::pi);
  json j;
  j["k"] = f.k;
  j["tol"] = f.tol;
  j["xi"] = json::parse(root.to_json());
  j["p_at_xi"] = interval_json(series::p_at_xi(f.k, f.tol));
  j["p_limit"] = interval_json(series::p_limit());
  j["prob_marked_height_k"] = interval_json(series::prob_marked_height_k(f.k, f.tol));
  j["density_limit_bb"] = interval_json(bb);
  j["density_limit_bb_prime"] = interval_json(bbp);
  j["density_limit_thm2_base"] = interval_json(t2base);
  j["density_limit_thm2"] = interval_json(t2);
  j["xi_minus_quarter_k2_over_pi2"] = interval_json(offset);
  j["bb_prime_gt_3_5004"] = bbp.certainly_gt(3.5004);
  j["thm2_gt_5_0008"] = t2.certainly_gt(5.0008);
  out << j.dump(2) << '\n';
}

void cmd_enumerate(const Flags& f, std::ostream& out) {
  if (f.n < 1) throw std::invalid_argument("n must be positive");
  if (f.k < 0) throw std::invalid_argument("k must be nonnegative");
  guard_graph(f.n, f.k);
  std::size_t count = 0;
  if (f.what == "trees") {
    forest::for_each_tree(f.n, f.k, [&](const forest::Tree& t) {
      ++count;
      if (!f.count_only) out << t.to_string() << '\n';
    });
  } else if (f.what == "forests") {
    forest::for_each_forest(f.n, f.k, [&](const forest::Forest& fo) {
      ++count;
      if (f.count_only) return;
      for (std::size_t i = 0; i < fo.size(); ++i) out << (i ? " " : "") << fo[i].to_string();
      out << '\n';
    });
  } else if (f.what == "marked") {
    forest::for_each_marked_forest(f.n, f.k, [&](const forest::MarkedForest& v) {
      ++count;
      if (!f.count_only) out << v.to_string() << '\n';
    });
  } else {
    throw std::invalid_argument("--what must be trees, forests or marked");
  }
  if (f.count_only) out << count << '\n';
}

void cmd_graph(const Flags& f, std::ostream& out) {
  const auto gens = gens_or_throw(f.gens);
  if (f.n < 1) throw std::invalid_argument("n must be positive");
  guard_graph(f.n, f.k);
  const auto g = cayley::build_subgraph(bbsets::bb_set(f.n, f.k), gens, f.k);
  if (f.edges) {
    out << cayley::edge_list(g);
    return;
  }
  json j = json::parse(cayley::density_report(g).to_json());
  j["symmetric_property"] = cayley::symmetric_property_check(g);
  j["edge_pairing"] = cayley::edge_pairing_check(g);
  out << j.dump(2) << '\n';
}

void cmd_special(const Flags& f, std::ostream& out) {
  guard_graph(f.n, f.k);
  const auto occ = bbsets::find_special_occurrences(f.n, f.k);
  json j;
  j["n"] = f.n;
  j["k"] = f.k;
  j["sigma"] = occ.size();
  json list = json::array();
  for (const auto& o : occ) {
    json e;
    e["a"] = o.a().to_string();
    e["position"] = o.position;
    e["interior"] = o.interior();
    list.push_back(std::move(e));
  }
  j["occurrences"] = std::move(list);
  out << j.dump(2) << '\n';
}

void cmd_surgery(const Flags& f, std::ostream& out) {
  const auto gens = gens_or_throw(f.gens);
  guard_graph(f.n, f.k);
  out << json::parse(bbsets::density_bb_prime(f.n, f.k, gens).to_json()).dump(2) << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dense finite subgraphs of the Cayley graph of Thompson's group F", "thompson-density"};
  app.require_subcommand(1, 1);
  Flags f;

  auto* series_cmd = app.add_subcommand("series", "coefficient table as CSV");
  series_cmd->add_option("--kind", f.kind, "alpha, gamma, beta or sigma")->required();
  series_cmd->add_option("--k", f.k, "height bound")->required();
  series_cmd->add_option("--n", f.n, "last coefficient index")->capture_default_str();

  auto* xi_cmd = app.add_subcommand("xi", "certified enclosure of the root of Phi_k = 1");
  xi_cmd->add_option("--k", f.k)->required();
  xi_cmd->add_option("--tol", f.tol)->capture_default_str();

  auto* limits_cmd = app.add_subcommand("limits", "density limits at height bound k");
  limits_cmd->add_option("--k", f.k)->required();
  limits_cmd->add_option("--tol", f.tol)->capture_default_str();

  auto* enum_cmd = app.add_subcommand("enumerate", "list trees, forests or marked forests");
  enum_cmd->add_option("--n", f.n, "leaf count")->required();
  enum_cmd->add_option("--k", f.k, "height bound")->required();
  enum_cmd->add_option("--what", f.what, "trees, forests or marked")->capture_default_str();
  enum_cmd->add_flag("--count", f.count_only, "print only the count");

  auto* graph_cmd = app.add_subcommand("graph", "density report of BB(n,k)");
  graph_cmd->add_option("--n", f.n)->required();
  graph_cmd->add_option("--k", f.k)->required();
  graph_cmd->add_option("--gens", f.gens, "x0x1 or x0x1x2")->capture_default_str();
  graph_cmd->add_flag("--edges", f.edges, "print the labelled edge list instead");

  auto* special_cmd = app.add_subcommand("special", "special occurrences in BB(n,k)");
  special_cmd->add_option("--n", f.n)->required();
  special_cmd->add_option("--k", f.k)->required();

  auto* surgery_cmd = app.add_subcommand("surgery", "BB(n,k) with special triples removed");
  surgery_cmd->add_option("--n", f.n)->required();
  surgery_cmd->add_option("--k", f.k)->required();
  surgery_cmd->add_option("--gens", f.gens)->capture_default_str();

  auto* verify_cmd = app.add_subcommand("verify", "run the acceptance suite");

  std::vector<std::string> argv_store{"thompson-density"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (series_cmd->parsed()) cmd_series(f, out);
    else if (xi_cmd->parsed()) cmd_xi(f, out);
    else if (limits_cmd->parsed()) cmd_limits(f, out);
    else if (enum_cmd->parsed()) cmd_enumerate(f, out);
    else if (graph_cmd->parsed()) cmd_graph(f, out);
    else if (special_cmd->parsed()) cmd_special(f, out);
    else if (surgery_cmd->parsed()) cmd_surgery(f, out);
    else if (verify_cmd->parsed()) return acceptance::run_all(out) ? kExitOk : kExitFailure;
  } catch (const GuardViolation& e) {
    err << "guard: " << e.what() << '\n';
    return kExitGuard;
  } catch (const std::invalid_argument& e) {
    err << "usage: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace thompson::cli
