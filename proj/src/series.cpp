#include "thompson/series.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "thompson/errors.hpp"

namespace thompson::series {

namespace {

using Coeffs = std::vector<BigInt>;

void require_k(int k, int min_k) {
  if (k < min_k) throw std::invalid_argument("k must be at least " + std::to_string(min_k));
}

void trim(Coeffs& c) {
  while (c.size() > 1 && c.back() == 0) c.pop_back();
}

// Truncated product; N = npos keeps every term.
Coeffs multiply(const Coeffs& a, const Coeffs& b, std::size_t N = std::numeric_limits<std::size_t>::max()) {
  if (a.empty() || b.empty()) return {};
  const std::size_t full = a.size() + b.size() - 1;
  const std::size_t len = std::min(full, N == std::numeric_limits<std::size_t>::max() ? full : N + 1);
  Coeffs out(len, BigInt(0));
  for (std::size_t i = 0; i < a.size() && i < len; ++i) {
    if (a[i] == 0) continue;
    const std::size_t jmax = std::min(b.size(), len - i);
    for (std::size_t j = 0; j < jmax; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

Coeffs square(const Coeffs& a, std::size_t N = std::numeric_limits<std::size_t>::max()) {
  if (a.empty()) return {};
  const std::size_t full = 2 * a.size() - 1;
  const std::size_t len = std::min(full, N == std::numeric_limits<std::size_t>::max() ? full : N + 1);
  Coeffs out(len, BigInt(0));
  // Cross terms once, doubled; then the diagonal.
  for (std::size_t i = 0; i < a.size() && 2 * i < len; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = i + 1; j < a.size() && i + j < len; ++j) out[i + j] += a[i] * a[j];
  }
  for (auto& c : out) c *= 2;
  for (std::size_t i = 0; i < a.size() && 2 * i < len; ++i) out[2 * i] += a[i] * a[i];
  return out;
}

Coeffs subtract(Coeffs a, const Coeffs& b) {
  if (a.size() < b.size()) a.resize(b.size(), BigInt(0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  return a;
}

// Phi_{j+1} from Phi_j, truncated after x^N when N is given.
Coeffs phi_step(const Coeffs& prev, std::size_t N = std::numeric_limits<std::size_t>::max()) {
  Coeffs next = square(prev, N);
  if (next.size() < 2) next.resize(2, BigInt(0));
  next[1] += 1;
  return next;
}

void guard_series(int k, std::size_t N) {
  require_k(k, 0);
  if (k > kMaxExpandedK)
    throw GuardViolation("series height bound k=" + std::to_string(k) + " exceeds " +
                         std::to_string(kMaxExpandedK));
  const std::size_t width = std::min<std::size_t>(std::size_t{1} << k, N + 1);
  if (N > kMaxSeriesWork || N * width > kMaxSeriesWork)
    throw GuardViolation("series order N=" + std::to_string(N) + " exceeds the work guard");
}

Coeffs padded(Coeffs c, std::size_t N) {
  c.resize(N + 1, BigInt(0));
  return c;
}

// x^2 (Phi_k - Phi_{k-1})^2 (Phi_k - x), truncated after x^N if given.
Coeffs special_coeffs(const Coeffs& phi_prev, const Coeffs& phi,
                      std::size_t N = std::numeric_limits<std::size_t>::max()) {
  const Coeffs top = subtract(phi, phi_prev);
  Coeffs nontrivial = phi;
  nontrivial[1] -= 1;
  Coeffs out = multiply(square(top, N), nontrivial, N);
  out.insert(out.begin(), 2, BigInt(0));
  if (N != std::numeric_limits<std::size_t>::max() && out.size() > N + 1) out.resize(N + 1);
  return out;
}

Coeffs alpha_from_phi(const Coeffs& phi, std::size_t N) {
  Coeffs a(N + 1, BigInt(0));
  a[0] = 1;
  for (std::size_t n = 1; n <= N; ++n) {
    BigInt s = 0;
    const std::size_t top = std::min(n, phi.size() - 1);
    for (std::size_t i = 1; i <= top; ++i) s += phi[i] * a[n - i];
    a[n] = s;
  }
  return a;
}

}  // namespace

// ---------------------------------------------------------------- polynomials

Rational ExactPolynomial::evaluate(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * x + Rational(*it);
  return acc;
}

Interval ExactPolynomial::evaluate(const Interval& x) const {
  Interval acc = Interval::point(0.0);
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it)
    acc = acc * x + Interval::of(Rational(*it));
  return acc;
}

ExactPolynomial phi_polynomial(int k) {
  require_k(k, 0);
  if (k > kMaxExpandedK)
    throw GuardViolation("phi_polynomial: degree 2^" + std::to_string(k) + " exceeds the guard");
  Coeffs p{0, 1};
  for (int i = 1; i <= k; ++i) p = phi_step(p);
  trim(p);
  return {std::move(p)};
}

ExactPolynomial special_polynomial(int k) {
  require_k(k, 1);
  if (k > kMaxExpandedK)
    throw GuardViolation("special_polynomial: degree exceeds the guard");
  Coeffs prev{0, 1};
  for (int i = 1; i < k; ++i) prev = phi_step(prev);
  Coeffs out = special_coeffs(prev, phi_step(prev));
  trim(out);
  return {std::move(out)};
}

Rational phi_eval(int k, const Rational& x) {
  require_k(k, 0);
  Rational y = x;
  for (int i = 0; i < k; ++i) y = x + y * y;
  return y;
}

Interval phi_eval(int k, const Interval& x) {
  require_k(k, 0);
  Interval y = x;
  for (int i = 0; i < k; ++i) y = x + y.square();
  return y;
}

DyadicInterval phi_eval(int k, const DyadicInterval& x) {
  require_k(k, 0);
  DyadicInterval y = x;
  for (int i = 0; i < k; ++i) y = x + y * y;
  return y;
}

// ---------------------------------------------------------------- root

namespace {

enum class Side { below, above, unknown };

// Where Phi_k(x) sits relative to 1. Once a lower bound exceeds 1 it stays
// above: y > 1 implies x + y^2 > y.
Side classify(int k, double x) {
  const Interval X = Interval::point(x);
  Interval y = X;
  for (int i = 0; i < k; ++i) {
    if (y.certainly_gt(1.0)) return Side::above;
    y = X + y.square();
  }
  if (y.certainly_lt(1.0)) return Side::below;
  if (y.certainly_gt(1.0)) return Side::above;
  return Side::unknown;
}

std::string hex_double(double d) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%a", d);
  return buf;
}

}  // namespace

std::string RootInterval::to_json() const {
  nlohmann::ordered_json j;
  j["k"] = k;
  j["lo_hex"] = hex_double(lo);
  j["hi_hex"] = hex_double(hi);
  j["tol"] = tol;
  return j.dump();
}

RootInterval xi(int k, double tol) {
  require_k(k, 0);
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  RootInterval r;
  r.k = k;
  r.tol = tol;
  if (k == 0) return r;  // Phi_0(x) = x
  // Phi_k(1/4) < 1/2 and Phi_k(1) >= 2 for k >= 1.
  double lo = 0.25;
  double hi = 1.0;
  if (classify(k, lo) != Side::below || classify(k, hi) != Side::above)
    throw std::logic_error("xi: initial bracket not certified");
  while (hi - lo > tol) {
    const double mid = lo + (hi - lo) / 2;
    if (mid <= lo || mid >= hi) break;
    const Side s = classify(k, mid);
    if (s == Side::below) {
      lo = mid;
    } else if (s == Side::above) {
      hi = mid;
    } else {
      break;  // rounding noise now straddles 1
    }
  }
  r.lo = lo;
  r.hi = hi;
  return r;
}

// ---------------------------------------------------------------- series

std::string kind_name(SeriesKind kind) {
  switch (kind) {
    case SeriesKind::alpha: return "alpha";
    case SeriesKind::gamma: return "gamma";
    case SeriesKind::beta: return "beta";
    case SeriesKind::sigma: return "sigma";
    case SeriesKind::custom: return "custom";
  }
  return "custom";
}

std::optional<SeriesKind> parse_kind(const std::string& name) {
  for (auto kind : {SeriesKind::alpha, SeriesKind::gamma, SeriesKind::beta, SeriesKind::sigma,
                    SeriesKind::custom})
    if (kind_name(kind) == name) return kind;
  return std::nullopt;
}

std::string SeriesTable::to_csv() const {
  std::ostringstream out;
  out << "kind,k,n,coefficient\n";
  const std::string name = kind_name(kind);
  for (std::size_t n = 0; n < coefficients.size(); ++n)
    out << name << ',' << k << ',' << n << ',' << coefficients[n].str() << '\n';
  return out.str();
}

std::vector<BigInt> phi_truncated(int k, std::size_t N) {
  require_k(k, 0);
  Coeffs p{0, 1};
  // Trees with at most N leaves have height below N, so later steps only
  // touch coefficients past x^N.
  const auto steps = static_cast<std::size_t>(k) < N ? static_cast<std::size_t>(k) : N;
  for (std::size_t i = 0; i < steps; ++i) p = phi_step(p, N);
  return padded(std::move(p), N);
}

std::vector<BigInt> convolve(const std::vector<BigInt>& a, const std::vector<BigInt>& b,
                             std::size_t N) {
  return padded(multiply(a, b, N), N);
}

SeriesTable series_alpha(int k, std::size_t N) {
  guard_series(k, N);
  return {SeriesKind::alpha, k, alpha_from_phi(phi_truncated(k, N), N)};
}

SeriesTable series_gamma(int k, std::size_t N) {
  guard_series(k, N);
  const Coeffs a = alpha_from_phi(phi_truncated(k, N), N);
  return {SeriesKind::gamma, k, padded(square(a, N), N)};
}

SeriesTable series_beta(int k, std::size_t N) {
  guard_series(k, N);
  const Coeffs phi = phi_truncated(k, N);
  const Coeffs a = alpha_from_phi(phi, N);
  return {SeriesKind::beta, k, convolve(phi, padded(square(a, N), N), N)};
}

SeriesTable series_sigma(int k, std::size_t N) {
  require_k(k, 1);
  guard_series(k, N);
  const Coeffs prev = phi_truncated(k - 1, N);
  const Coeffs phi = padded(phi_step(prev, N), N);
  const Coeffs a = alpha_from_phi(phi, N);
  return {SeriesKind::sigma, k, convolve(special_coeffs(prev, phi, N), padded(square(a, N), N), N)};
}

bool recurrence_check(int k, const SeriesTable& table) {
  require_k(k, 0);
  if (table.kind == SeriesKind::custom)
    throw std::invalid_argument("recurrence_check: custom tables have no defining recurrence");
  if (k >= 30 || table.coefficients.size() < 2 * (std::size_t{1} << k) + 1)
    throw std::invalid_argument("recurrence_check: need at least 2*2^k+1 coefficients");
  if (table.kind == SeriesKind::sigma) require_k(k, 1);
  const std::size_t N = table.order();

  const Coeffs prev = k >= 1 ? phi_truncated(k - 1, N) : Coeffs{};
  const Coeffs phi = phi_truncated(k, N);
  Coeffs one_minus_phi = padded(Coeffs{1}, N);
  for (std::size_t i = 1; i <= N; ++i) one_minus_phi[i] -= phi[i];

  Coeffs denominator = one_minus_phi;
  Coeffs numerator{1};
  switch (table.kind) {
    case SeriesKind::alpha:
      break;
    case SeriesKind::gamma:
      denominator = padded(square(one_minus_phi, N), N);
      break;
    case SeriesKind::beta:
      denominator = padded(square(one_minus_phi, N), N);
      numerator = phi;
      break;
    case SeriesKind::sigma:
      denominator = padded(square(one_minus_phi, N), N);
      numerator = special_coeffs(prev, phi, N);
      break;
    case SeriesKind::custom:
      return false;
  }
  if (convolve(table.coefficients, denominator, N) != padded(numerator, N)) return false;

  if (table.kind == SeriesKind::gamma) {
    const Coeffs a = alpha_from_phi(phi, N);
    if (padded(square(a, N), N) != table.coefficients) return false;
  }
  return true;
}

// ---------------------------------------------------------------- ratios

std::vector<double> ratio_deviations(const SeriesTable& table, double target) {
  std::vector<double> out;
  for (std::size_t n = 1; n < table.coefficients.size(); ++n) {
    if (table[n] == 0) {
      out.push_back(std::numeric_limits<double>::quiet_NaN());
      continue;
    }
    const double r = to_double(Rational(table[n - 1], table[n]));
    out.push_back(std::abs(r - target));
  }
  return out;
}

namespace {

double last_window_max(const std::vector<double>& devs, std::size_t window) {
  if (window == 0 || window > devs.size())
    throw std::invalid_argument("ratio window longer than the table");
  double worst = 0.0;
  for (std::size_t i = devs.size() - window; i < devs.size(); ++i) {
    if (std::isnan(devs[i])) return std::numeric_limits<double>::quiet_NaN();
    worst = std::max(worst, devs[i]);
  }
  return worst;
}

}  // namespace

double ratio_limit_check(const SeriesTable& table, int k, std::size_t window) {
  return last_window_max(ratio_deviations(table, xi(k).enclosure().mid()), window);
}

std::vector<double> product_ratio_deviations(const SeriesTable& product, const SeriesTable& base,
                                             double target) {
  const std::size_t len = std::min(product.coefficients.size(), base.coefficients.size());
  std::vector<double> out;
  for (std::size_t n = 0; n < len; ++n) {
    if (base[n] == 0) {
      out.push_back(std::numeric_limits<double>::quiet_NaN());
      continue;
    }
    out.push_back(std::abs(to_double(Rational(product[n], base[n])) - target));
  }
  return out;
}

double product_ratio_check(const SeriesTable& product, const SeriesTable& base, double target,
                           std::size_t window) {
  return last_window_max(product_ratio_deviations(product, base, target), window);
}

// ---------------------------------------------------------------- limits

namespace {

Interval special_at(const Interval& x) {
  const Interval one_minus = 1.0 - x;
  const Interval gap = 1.0 - sqrt(one_minus);
  return x.square() * gap.square() * one_minus;
}

}  // namespace

Interval p_at_xi(int k, double tol) {
  require_k(k, 1);
  return special_at(xi(k, tol).enclosure());
}

Interval p_limit() {
  const Interval gap = 1.0 - sqrt(Interval::point(3.0)) * Interval::point(0.5);
  return Interval::of(Rational(3, 64)) * gap.square();
}

Interval density_limit_bb(int k, double tol) {
  return 4.0 - 2.0 * xi(k, tol).enclosure();
}

Interval density_limit_bb_prime(int k, double tol) {
  require_k(k, 1);
  const Interval x = xi(k, tol).enclosure();
  const Interval p = special_at(x);
  return (4.0 - 2.0 * x - 10.0 * p) / (1.0 - 3.0 * p);
}

Interval density_limit_thm2_base(int k, double tol) {
  return 6.0 - 4.0 * xi(k, tol).enclosure();
}

Interval density_limit_thm2(int k, double tol) {
  require_k(k, 1);
  const Interval x = xi(k, tol).enclosure();
  const Interval p = special_at(x);
  return (6.0 - 4.0 * x - 14.0 * p) / (1.0 - 3.0 * p);
}

Interval prob_marked_height_k(int k, double tol) {
  require_k(k, 1);
  return 1.0 - sqrt(1.0 - xi(k, tol).enclosure());
}

Rational slope_bound(int k) {
  return Rational(k + 4, 3) - Rational(2, (k + 2) * (k + 3));
}

namespace {

// Phi_j(x) increases with j for x > 0, so a lower bound that clears the
// target at any step j <= k clears it at step k; stopping there also keeps
// the numerators small when x is far above xi_k.
bool certainly_reaches(int k, const DyadicInterval& x, const Rational& target, bool strict) {
  DyadicInterval y = x;
  auto clears = [&] { return strict ? y.certainly_gt(target) : y.certainly_ge(target); };
  for (int i = 0; i < k; ++i) {
    if (clears()) return true;
    y = x + y * y;
  }
  return clears();
}

}  // namespace

BoundSuiteReport bound_suite(int k_max, unsigned precision) {
  BoundSuiteReport report;
  report.k_max = k_max;
  const Rational quarter(1, 4);
  const Rational half(1, 2);
  for (int k = 1; k <= k_max && report.all_pass; ++k) {
    auto fail = [&](std::string check) {
      report.all_pass = false;
      report.failed_k = k;
      report.failed_check = std::move(check);
    };
    const DyadicInterval at_quarter = phi_eval(k, DyadicInterval::of(quarter, precision));
    if (!at_quarter.certainly_lt(half)) {
      fail("a");
      break;
    }
    if (!at_quarter.certainly_ge(half - Rational(1, k + 4))) {
      fail("b");
      break;
    }
    const Rational w = slope_bound(k);
    const Rational epsilons[] = {Rational(3, 2 * k), Rational(1, k * k),
                                 Rational(1, BigInt(1) << k)};
    const char* names[] = {"c:3/(2k)", "c:1/k^2", "c:2^-k"};
    for (int e = 0; e < 3; ++e) {
      const auto x = DyadicInterval::of(quarter + epsilons[e], precision);
      if (!certainly_reaches(k, x, at_quarter.hi() + w * epsilons[e], false)) {
        fail(names[e]);
        break;
      }
    }
    if (report.all_pass &&
        !certainly_reaches(k, DyadicInterval::of(quarter + epsilons[0], precision), Rational(1), true))
      fail("d");
  }
  return report;
}

Crossover bb_prime_crossover(double threshold, int k_max, double tol) {
  Crossover c;
  for (int k = 1; k <= k_max; ++k) {
    const Interval d = density_limit_bb_prime(k, tol);
    if (d.certainly_gt(threshold)) {
      c.k = k;
      return c;
    }
    if (!d.certainly_lt(threshold)) c.below_certified = false;
  }
  return c;
}

}  // namespace thompson::series
