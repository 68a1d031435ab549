#include "thompson/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <numbers>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "thompson/bbsets.hpp"
#include "thompson/cayley.hpp"
#include "thompson/forest.hpp"
#include "thompson/series.hpp"
#include "thompson/words.hpp"

namespace thompson::acceptance {

namespace {

using forest::GenLabel;

// ------------------------------------------------------------ oracle
//
// Counts straight from the definitions: every binary tree is built as a
// nested pair and its height measured, every forest is a composition of n
// into tree sizes. Nothing here touches the series code or the library
// enumerators.

struct Node;
using NodePtr = std::shared_ptr<const Node>;
struct Node {
  NodePtr l, r;
};

int height_of(const NodePtr& t) { return t ? 1 + std::max(height_of(t->l), height_of(t->r)) : 0; }

// all[l] lists every tree with l leaves.
std::vector<std::vector<NodePtr>> all_trees(std::size_t max_leaves) {
  std::vector<std::vector<NodePtr>> all(max_leaves + 1);
  if (max_leaves >= 1) all[1] = {nullptr};
  for (std::size_t l = 2; l <= max_leaves; ++l)
    for (std::size_t left = 1; left < l; ++left)
      for (const auto& a : all[left])
        for (const auto& b : all[l - left]) all[l].push_back(std::make_shared<Node>(Node{a, b}));
  return all;
}

class Oracle {
 public:
  explicit Oracle(std::size_t max_leaves) {
    const auto all = all_trees(max_leaves);
    exact_.resize(max_leaves + 1);
    for (std::size_t l = 1; l <= max_leaves; ++l) {
      exact_[l].assign(l, BigInt(0));
      for (const auto& t : all[l]) exact_[l][height_of(t)] += 1;
    }
  }

  BigInt trees_at_most(std::size_t l, int k) const {
    BigInt c = 0;
    for (std::size_t h = 0; h < exact_[l].size() && static_cast<int>(h) <= k; ++h) c += exact_[l][h];
    return c;
  }
  BigInt trees_exactly(std::size_t l, int h) const {
    return h >= 0 && static_cast<std::size_t>(h) < exact_[l].size() ? exact_[l][h] : BigInt(0);
  }

  // Visits every composition of n (as a list of tree sizes).
  static void compositions(std::size_t n, const std::function<void(const std::vector<std::size_t>&)>& f) {
    std::vector<std::size_t> parts;
    std::function<void(std::size_t)> rec = [&](std::size_t rest) {
      if (rest == 0) {
        f(parts);
        return;
      }
      for (std::size_t p = 1; p <= rest; ++p) {
        parts.push_back(p);
        rec(rest - p);
        parts.pop_back();
      }
    };
    rec(n);
  }

  BigInt forests(std::size_t n, int k) const {
    if (n == 0) return 1;
    BigInt total = 0;
    compositions(n, [&](const auto& parts) { total += product(parts, k); });
    return total;
  }

  BigInt marked(std::size_t n, int k) const {
    BigInt total = 0;
    compositions(n, [&](const auto& parts) { total += product(parts, k) * parts.size(); });
    return total;
  }

  // Ordered pairs of (possibly empty) forests with n leaves between them.
  BigInt forest_pairs(std::size_t n, int k) const {
    BigInt total = 0;
    for (std::size_t j = 0; j <= n; ++j) total += forests(j, k) * forests(n - j, k);
    return total;
  }

  // (forest, position) pairs: trivial, height k, trivial, height k, nontrivial.
  BigInt special(std::size_t n, int k) const {
    BigInt total = 0;
    compositions(n, [&](const std::vector<std::size_t>& parts) {
      for (std::size_t i = 0; i + 4 < parts.size(); ++i) {
        if (parts[i] != 1 || parts[i + 2] != 1 || parts[i + 4] < 2) continue;
        BigInt c = trees_exactly(parts[i + 1], k) * trees_exactly(parts[i + 3], k) *
                   trees_at_most(parts[i + 4], k);
        for (std::size_t j = 0; j < parts.size(); ++j)
          if (j < i || j > i + 4) c *= trees_at_most(parts[j], k);
        total += c;
      }
    });
    return total;
  }

 private:
  BigInt product(const std::vector<std::size_t>& parts, int k) const {
    BigInt c = 1;
    for (auto p : parts) c *= trees_at_most(p, k);
    return c;
  }
  std::vector<std::vector<BigInt>> exact_;  // [leaves][height]
};

// ------------------------------------------------------------ reporting

class Reporter {
 public:
  explicit Reporter(std::ostream& out) : out_(out) {}
  bool record(int id, const std::string& title, bool ok, const std::string& detail) {
    out_ << (ok ? "PASS" : "FAIL") << "  [" << id << "] " << title << " -- " << detail << '\n';
    out_.flush();
    all_ &= ok;
    return ok;
  }
  void info(const std::string& line) { out_ << "  # " << line << '\n'; }
  bool all() const { return all_; }

 private:
  std::ostream& out_;
  bool all_ = true;
};

std::string fmt(double v, int digits = 12) {
  std::ostringstream s;
  s.precision(digits);
  s << v;
  return s.str();
}

// Collects the first few failure messages.
struct Failures {
  std::vector<std::string> items;
  std::size_t count = 0;
  void add(std::string m) {
    if (items.size() < 5) items.push_back(std::move(m));
    ++count;
  }
  bool none() const { return count == 0; }
  std::string summary(const std::string& ok_text) const {
    if (none()) return ok_text;
    std::string s = std::to_string(count) + " failure(s):";
    for (const auto& m : items) s += " [" + m + "]";
    return s;
  }
};

std::size_t count_marked(std::size_t n, int k) {
  std::size_t c = 0;
  forest::for_each_marked_forest(n, k, [&](const forest::MarkedForest&) { ++c; });
  return c;
}

std::size_t count_forests(std::size_t n, int k) {
  std::size_t c = 0;
  forest::for_each_forest(n, k, [&](const forest::Forest&) { ++c; });
  return c;
}

std::string at(std::size_t n, int k) { return "n=" + std::to_string(n) + ",k=" + std::to_string(k); }

// ------------------------------------------------------------ criteria

void enumeration_vs_series(Reporter& rep) {
  Failures f;
  std::size_t checked = 0;
  for (int k = 1; k <= 3; ++k) {
    const std::size_t n_max = k == 3 ? 12 : 14;
    const auto alpha = series::series_alpha(k, n_max);
    const auto beta = series::series_beta(k, n_max);
    const auto sigma = series::series_sigma(k, n_max);
    for (std::size_t n = 1; n <= n_max; ++n) {
      ++checked;
      const BigInt marked = static_cast<unsigned long long>(count_marked(n, k));
      const BigInt forests = static_cast<unsigned long long>(count_forests(n, k));
      const BigInt special = static_cast<unsigned long long>(bbsets::find_special_occurrences(n, k).size());
      if (marked != beta[n]) f.add("beta " + at(n, k) + ": " + marked.str() + " vs " + beta[n].str());
      if (forests != alpha[n]) f.add("alpha " + at(n, k) + ": " + forests.str() + " vs " + alpha[n].str());
      if (special != sigma[n]) f.add("sigma " + at(n, k) + ": " + special.str() + " vs " + sigma[n].str());
    }
  }
  rep.record(1, "enumeration/series agreement", f.none(),
             f.summary(std::to_string(checked) + " (n,k) cells, |BB|=beta, #forests=alpha, #special=sigma"));
}

void spot_values(Reporter& rep, const Oracle& oracle) {
  Failures f;
  auto expect = [&](const std::string& what, const BigInt& brute, const BigInt& series_value,
                    const BigInt& want) {
    if (brute != want || series_value != want)
      f.add(what + ": oracle " + brute.str() + ", series " + series_value.str() + ", expected " + want.str());
  };
  const auto b1 = series::series_beta(1, 3);
  expect("beta_1(2)", oracle.marked(2, 1), b1[2], 3);
  expect("beta_1(3)", oracle.marked(3, 1), b1[3], 7);
  const auto a1 = series::series_alpha(1, 12);
  BigInt fib_prev = 1, fib = 1;  // F(1), F(2)
  for (std::size_t n = 1; n <= 12; ++n) {
    // alpha_1(n) = F(n+1)
    expect("alpha_1(" + std::to_string(n) + ")", oracle.forests(n, 1), a1[n], fib);
    const BigInt next = fib + fib_prev;
    fib_prev = fib;
    fib = next;
  }
  expect("gamma_1(4)", oracle.forest_pairs(4, 1), series::series_gamma(1, 4)[4], 20);
  expect("sigma_2(10)", oracle.special(10, 2), series::series_sigma(2, 10)[10], 4);
  rep.record(2, "spot values via brute-force oracle", f.none(),
             f.summary("beta_1(2)=3, beta_1(3)=7, alpha_1(n)=F(n+1) for n<=12, gamma_1(4)=20, sigma_2(10)=4"));
}

void boundary_identities(Reporter& rep) {
  Failures f;
  std::size_t graphs = 0;
  std::size_t x1_gamma = 0, x1_beta = 0, cells = 0;
  for (int k = 0; k <= 2; ++k) {
    const auto alpha = series::series_alpha(k, 12);
    const auto gamma = series::series_gamma(k, 12);
    const auto beta = series::series_beta(k, 12);
    for (std::size_t n = 1; n <= 12; ++n) {
      ++cells;
      for (const auto gens : {cayley::GeneratorSet::standard(), cayley::GeneratorSet::three()}) {
        ++graphs;
        const auto g = cayley::build_subgraph(bbsets::bb_set(n, k), gens, k);
        const auto r = cayley::density_report(g);
        const std::string where = at(n, k) + "," + gens.name();
        auto ext = [&](GenLabel l) { return BigInt(static_cast<unsigned long long>(r.external(l))); };
        if (ext(GenLabel::x0) != alpha[n] || ext(GenLabel::x0_inv) != alpha[n])
          f.add("x0 boundary " + where);
        if (ext(GenLabel::x1) != ext(GenLabel::x1_inv)) f.add("x1 asymmetric " + where);
        if (gens.m() == 2) {
          if (ext(GenLabel::x1) == gamma[n - 1]) ++x1_gamma;
          if (ext(GenLabel::x1) == beta[n - 1]) ++x1_beta;
          if (ext(GenLabel::x1) != gamma[n - 1]) f.add("x1 boundary != gamma(n-1) " + where);
        } else if (ext(GenLabel::x2) != alpha[n] + beta[n - 1] ||
                   ext(GenLabel::x2_inv) != alpha[n] + beta[n - 1]) {
          f.add("x2 boundary " + where);
        }
        if (r.density + r.cheeger != Rational(2 * gens.m())) f.add("delta+iota != 2m " + where);
        if (!cayley::symmetric_property_check(g)) f.add("symmetric property " + where);
        if (!cayley::edge_pairing_check(g)) f.add("edge pairing " + where);
      }
    }
  }
  rep.info("x1-external matches gamma_k(n-1) in " + std::to_string(x1_gamma) + "/" + std::to_string(cells) +
           " cells and beta_k(n-1) in " + std::to_string(x1_beta) + "/" + std::to_string(cells) +
           " (adjudicated: gamma_k(n-1))");
  rep.record(3, "boundary identities on full BB(n,k), n<=12, k<=2", f.none(),
             f.summary(std::to_string(graphs) +
                       " graphs: x0=X0=alpha, x1=X1=gamma(n-1), x2=X2=alpha+beta(n-1), delta+iota=2m, "
                       "per-label symmetry"));
}

void degree_census(Reporter& rep) {
  Failures f;
  std::size_t interior = 0, leftmost = 0;
  std::map<std::string, std::size_t> three_gen;
  for (std::size_t n = 10; n <= 14; ++n) {
    const int k = 2;
    const auto occ = bbsets::find_special_occurrences(n, k);
    std::unordered_set<std::string> seen;
    for (const auto& o : occ)
      for (const auto& v : {o.a(), o.b(), o.c()})
        if (!seen.insert(forest::canonical_key(v)).second) f.add("shared vertex " + v.to_string());
    const auto full = cayley::build_subgraph(bbsets::bb_set(n, k), cayley::GeneratorSet::standard(), k);
    for (const auto& d : bbsets::degree_census_special(full, occ)) {
      if (!d.occurrence.interior()) {
        ++leftmost;
        continue;
      }
      ++interior;
      if (d.deg_a != 2 || d.deg_b != 3 || d.deg_c != 2)
        f.add(d.occurrence.a().to_string() + " has (" + std::to_string(d.deg_a) + "," +
              std::to_string(d.deg_b) + "," + std::to_string(d.deg_c) + ")");
    }
    if (n <= 12) {
      for (const auto& d : bbsets::degree_census_special(n, k, cayley::GeneratorSet::three())) {
        if (!d.occurrence.interior()) continue;
        ++three_gen["(" + std::to_string(d.deg_a) + "," + std::to_string(d.deg_b) + "," +
                    std::to_string(d.deg_c) + ")"];
      }
    }
  }
  std::string census;
  for (const auto& [key, c] : three_gen) census += " " + key + "x" + std::to_string(c);
  rep.info("over {x0,x1,x2}, interior occurrences at n=10..12, k=2:" + census);
  rep.record(4, "degree census of special triples, n=10..14, k=2", f.none(),
             f.summary(std::to_string(interior) + " interior occurrences all (2,3,2) over {x0,x1} (" +
                       std::to_string(leftmost) + " leftmost skipped), all triples disjoint"));
}

bool surgery_accounting(Reporter& rep) {
  Failures f;
  std::size_t runs = 0;
  double worst_margin = 1e300;
  for (const auto gens : {cayley::GeneratorSet::standard(), cayley::GeneratorSet::three()}) {
    const std::size_t per = gens.m() == 2 ? 10 : 14;
    for (std::size_t n = 2; n <= 14; ++n) {
      const int k = 2;
      ++runs;
      const auto d = bbsets::density_bb_prime(n, k, gens);
      const std::string where = at(n, k) + "," + gens.name();
      const BigInt survivors = static_cast<unsigned long long>(d.report.vertex_count);
      if (survivors != d.beta - 3 * d.sigma) f.add("|BB'| != beta-3sigma " + where);
      const BigInt removed = static_cast<unsigned long long>(d.removed_internal_edges);
      if (removed > per * d.sigma)
        f.add("removed " + removed.str() + " > " + std::to_string(per) + "sigma " + where);
      if (d.report.density < d.lower_bound) f.add("density below formula " + where);
      if (d.sigma > 0) worst_margin = std::min(worst_margin, to_double(d.report.density - d.lower_bound));
    }
  }
  rep.info("smallest density - formula margin with sigma > 0: " + fmt(worst_margin));
  return rep.record(5, "surgery cardinality and edge accounting, n<=14, k=2", f.none(),
                    f.summary(std::to_string(runs) +
                              " surgeries: |BB'|=beta-3sigma, removed edges <= 10sigma/14sigma, "
                              "exact density >= lower-bound formula"));
}

void root_certificates(Reporter& rep) {
  Failures f;
  for (int k = 1; k <= 64; ++k) {
    const auto r = series::xi(k, 1e-13);
    const Interval upper = Interval::of(Rational(1, 4) + Rational(3, 2 * k));
    if (!(r.lo > 0.25)) f.add("xi_" + std::to_string(k) + " not above 1/4");
    if (!(r.hi < upper.lo())) f.add("xi_" + std::to_string(k) + " not below 1/4+3/(2k)");
  }
  const auto r1 = series::xi(1, 1e-13);
  const Interval golden = (sqrt(Interval::point(5.0)) - Interval::point(1.0)) * Interval::point(0.5);
  const double dist = std::max(r1.hi - golden.lo(), golden.hi() - r1.lo);
  if (!(dist <= 1e-12)) f.add("xi_1 off the golden ratio conjugate by " + fmt(dist));
  // Fit xi_k - 1/4 ~ c k^e between k = 100 and k = 1000; reported, not asserted.
  const double g100 = series::xi(100, 1e-15).enclosure().mid() - 0.25;
  const double g1000 = series::xi(1000, 1e-15).enclosure().mid() - 0.25;
  const double exponent = std::log(g1000 / g100) / std::log(10.0);
  rep.info("xi_k - 1/4 ~ c k^e fit on k=100..1000: e = " + fmt(exponent, 4) + ", c = " +
           fmt(g1000 * std::pow(1000.0, -exponent), 4) + " (pi^2 = " + fmt(std::numbers::pi * std::numbers::pi, 4) + ")");
  const auto suite = series::bound_suite(64);
  if (!suite.all_pass) f.add("bound_suite failed " + suite.failed_check + " at k=" + std::to_string(*suite.failed_k));
  rep.record(6, "root certificates", f.none(),
             f.summary("1/4 < xi_k < 1/4+3/(2k) for k<=64, |xi_1-(sqrt5-1)/2| <= " + fmt(dist, 3) +
                       " <= 1e-12, bound_suite(64) passes in dyadic rationals"));
}

bool headline_numbers(Reporter& rep) {
  using clock = std::chrono::steady_clock;
  Failures f;
  const Interval p = series::p_limit();
  if (!p.certainly_gt(1.0 / 1200)) f.add("p not > 1/1200");
  const Interval gain = Interval::point(0.5) * p / (1.0 - 3.0 * p);
  if (!gain.certainly_gt(1.0 / 2400)) f.add("0.5p/(1-3p) not > 1/2400");

  auto t0 = clock::now();
  const Interval bbp = series::density_limit_bb_prime(7200, 1e-13);
  const double t_bbp = std::chrono::duration<double>(clock::now() - t0).count();
  t0 = clock::now();
  const Interval t2 = series::density_limit_thm2(7200, 1e-13);
  const double t_t2 = std::chrono::duration<double>(clock::now() - t0).count();
  if (!bbp.certainly_gt(3.5004)) f.add("density_limit_bb_prime(7200) = [" + fmt(bbp.lo()) + "," + fmt(bbp.hi()) + "]");
  if (!t2.certainly_gt(5.0008)) f.add("density_limit_thm2(7200) = [" + fmt(t2.lo()) + "," + fmt(t2.hi()) + "]");
  if (t_bbp >= 1.0 || t_t2 >= 1.0) f.add("limit evaluation took " + fmt(std::max(t_bbp, t_t2), 3) + " s");

  const auto cross = series::bb_prime_crossover(3.5, 2000);
  rep.info("p = [" + fmt(p.lo()) + ", " + fmt(p.hi()) + "], 0.5p/(1-3p) lo = " + fmt(gain.lo()));
  rep.info("density_limit_bb_prime(7200) lo = " + fmt(bbp.lo()) + " (" + fmt(t_bbp, 3) +
           " s), density_limit_thm2(7200) lo = " + fmt(t2.lo()) + " (" + fmt(t_t2, 3) + " s)");
  rep.info(cross.k ? "least k with density_limit_bb_prime(k) > 3.5: " + std::to_string(*cross.k) +
                         (cross.below_certified ? " (all smaller k certified below)" : " (smaller k not all certified)")
                   : std::string("no k <= 2000 with density_limit_bb_prime(k) > 3.5"));
  return rep.record(7, "headline limits", f.none(),
                    f.summary("p > 1/1200, 0.5p/(1-3p) > 1/2400, BB' limit(7200) > 3.5004, "
                              "three-generator limit(7200) > 5.0008, each < 1 s"));
}

void convergence(Reporter& rep) {
  Failures f;
  for (int k = 1; k <= 2; ++k) {
    const auto beta = series::series_beta(k, 60);
    const double x = series::xi(k, 1e-14).enclosure().mid();
    double prev = 1e300;
    for (std::size_t n = 40; n <= 60; ++n) {
      const double dev = std::abs(to_double(Rational(beta[n - 1], beta[n])) - x);
      if (!(dev < prev)) f.add("deviation not decreasing at k=" + std::to_string(k) + ", n=" + std::to_string(n));
      prev = dev;
    }
  }
  const auto sigma = series::series_sigma(2, 60);
  const auto gamma = series::series_gamma(2, 60);
  const double ratio = to_double(Rational(sigma[60], gamma[60]));
  const Interval target = series::special_polynomial(2).evaluate(series::xi(2, 1e-14).enclosure());
  const double gap = std::max(std::abs(ratio - target.lo()), std::abs(ratio - target.hi()));
  if (!(gap <= 1e-2)) f.add("sigma/gamma at n=60 off P(xi_2) by " + fmt(gap));
  rep.info("sigma_2(60)/gamma_2(60) = " + fmt(ratio) + ", P(xi_2) = " + fmt(target.mid()));
  rep.record(8, "coefficient ratio convergence", f.none(),
             f.summary("|beta(n-1)/beta(n) - xi| strictly decreasing on n=40..60 for k=1,2; "
                       "|sigma/gamma - P(xi_2)| = " + fmt(gap, 3) + " <= 1e-2 at n=60"));
}

void fixtures(Reporter& rep) {
  Failures f;
  const words::NormalForm w6({0, 0, 0, 0, 0, 1, 4, 4, 6, 10, 10, 13, 14, 15});
  const auto sixteen_leaf = forest::MarkedForest::parse("(.^.) . ((.^.)^(.^.)) . . >((.^.)^.) (.^(.^(.^.)))");
  const auto got = words::word_to_marked_forest(w6, sixteen_leaf.leaf_count());
  if (!got || !(*got == sixteen_leaf)) f.add("word -> forest gives " + (got ? got->to_string() : std::string("undefined")));
  if (!(words::marked_forest_to_word(sixteen_leaf) == w6)) f.add("forest -> word gives " + words::marked_forest_to_word(sixteen_leaf).to_string());

  const words::NormalForm w5({0, 0, 0, 4, 5, 8, 10, 10});
  const auto twelve_leaf = forest::MarkedForest::parse(". . . >(.^(.^.)) . (.^.) ((.^.)^.)");
  const auto got5 = words::word_to_marked_forest(w5, twelve_leaf.leaf_count());
  if (!got5 || !(*got5 == twelve_leaf)) f.add("second fixture gives " + (got5 ? got5->to_string() : std::string("undefined")));
  if (!(words::marked_forest_to_word(twelve_leaf) == w5)) f.add("second fixture does not invert");

  std::string rel;
  for (std::size_t n = 1; n <= 8; ++n) {
    const auto c = words::check_defining_relations(n);
    if (!c.holds()) f.add("relations fail at n=" + std::to_string(n));
    rel += " " + std::to_string(c.defined_cases);
  }
  rep.info("defining relations: defined cases for n=1..8:" + rel);
  rep.record(9, "fixture reproduction", f.none(),
             f.summary("x0^5 x1 x4^2 x6 x10^2 x13 x14 x15 <-> transcribed 16-leaf forest both ways, "
                       "second fixture both ways, defining relations hold for n<=8"));
}

}  // namespace

bool run_all(std::ostream& out) {
  Reporter rep(out);
  const Oracle oracle(12);
  enumeration_vs_series(rep);
  spot_values(rep, oracle);
  boundary_identities(rep);
  degree_census(rep);
  const bool surgery_ok = surgery_accounting(rep);
  root_certificates(rep);
  const bool limits_ok = headline_numbers(rep);
  convergence(rep);
  fixtures(rep);
  rep.info("a finite subgraph of density > 3.5 needs sets far beyond enumeration; the claim is carried by "
           "the exact surgery accounting and the certified limits");
  rep.record(10, "density > 3.5 claim via [5] and [7]", surgery_ok && limits_ok,
             surgery_ok && limits_ok ? "both components pass" : "a component failed");
  return rep.all();
}

}  // namespace thompson::acceptance
