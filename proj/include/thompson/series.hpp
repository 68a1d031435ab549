#pragma once

// Generating functions of height-bounded trees and forests.
//
//   Phi_0 = x,  Phi_k = x + Phi_{k-1}^2        trees of height <= k
//   alpha_k = 1 / (1 - Phi_k)                  forests
//   gamma_k = 1 / (1 - Phi_k)^2                pairs of forests
//   beta_k  = Phi_k / (1 - Phi_k)^2            marked forests, |BB(n,k)|
//   sigma_k = P_k / (1 - Phi_k)^2              special occurrences, where
//   P_k     = x^2 (Phi_k - Phi_{k-1})^2 (Phi_k - x)
//
// xi_k is the unique positive root of Phi_k(x) = 1; it governs the growth
// of every coefficient sequence above and hence the limiting densities.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "thompson/bigint.hpp"
#include "thompson/interval.hpp"

namespace thompson::series {

inline constexpr int kMaxExpandedK = 20;
inline constexpr std::size_t kMaxSeriesWork = std::size_t{1} << 26;
inline constexpr std::size_t kDefaultOrder = 64;

/// Polynomial with exact integer coefficients; coefficients[i] multiplies x^i.
/// Every polynomial in this module has integer coefficients.
struct ExactPolynomial {
  std::vector<BigInt> coefficients;

  int degree() const { return static_cast<int>(coefficients.size()) - 1; }
  BigInt coefficient(std::size_t i) const {
    return i < coefficients.size() ? coefficients[i] : BigInt(0);
  }
  Rational evaluate(const Rational& x) const;
  Interval evaluate(const Interval& x) const;

  friend bool operator==(const ExactPolynomial&, const ExactPolynomial&) = default;
};

/// Full expansion of Phi_k, degree 2^k. Throws GuardViolation if k > 20.
ExactPolynomial phi_polynomial(int k);
/// Full expansion of P_k. Requires 1 <= k <= 20.
ExactPolynomial special_polynomial(int k);

/// Phi_k(x) by k steps of y <- x + y^2 (no expansion).
Rational phi_eval(int k, const Rational& x);
Interval phi_eval(int k, const Interval& x);
/// Requires x >= 0.
DyadicInterval phi_eval(int k, const DyadicInterval& x);

/// Certified enclosure of xi_k: Phi_k(lo) <= 1 <= Phi_k(hi) under outward
/// rounding. hi - lo <= tol unless double precision runs out first.
struct RootInterval {
  int k = 0;
  double lo = 1.0;
  double hi = 1.0;
  double tol = 0.0;

  Interval enclosure() const { return {lo, hi}; }
  double width() const { return hi - lo; }
  /// {"k":..,"lo_hex":"0x..","hi_hex":"0x..","tol":..}
  std::string to_json() const;
};

RootInterval xi(int k, double tol = 1e-13);

enum class SeriesKind { alpha, gamma, beta, sigma, custom };
std::string kind_name(SeriesKind kind);
std::optional<SeriesKind> parse_kind(const std::string& name);

struct SeriesTable {
  SeriesKind kind = SeriesKind::custom;
  int k = 0;
  std::vector<BigInt> coefficients;  // index n = 0..N

  std::size_t order() const { return coefficients.empty() ? 0 : coefficients.size() - 1; }
  const BigInt& operator[](std::size_t n) const { return coefficients[n]; }
  /// Header "kind,k,n,coefficient", one row per n.
  std::string to_csv() const;
};

/// Phi_k truncated after x^N (exact; cheap for any k).
std::vector<BigInt> phi_truncated(int k, std::size_t N);

/// Coefficients through x^N. Throw GuardViolation when k > 20 or
/// N * min(2^k, N + 1) exceeds kMaxSeriesWork.
SeriesTable series_alpha(int k, std::size_t N = kDefaultOrder);
SeriesTable series_gamma(int k, std::size_t N = kDefaultOrder);
SeriesTable series_beta(int k, std::size_t N = kDefaultOrder);
/// Requires k >= 1.
SeriesTable series_sigma(int k, std::size_t N = kDefaultOrder);

/// Truncated product of two coefficient sequences.
std::vector<BigInt> convolve(const std::vector<BigInt>& a, const std::vector<BigInt>& b,
                             std::size_t N);

/// Checks the table against its defining rational function: with
/// D = (1 - Phi_k)^e, the product table * D must equal the numerator through
/// x^N (for n past the numerator's degree this is the linear recurrence with
/// the coefficients of Phi_k). Gamma tables are additionally checked against
/// the convolution square of an independently recomputed alpha.
/// Throws std::invalid_argument for custom tables or tables shorter than
/// 2 * 2^k + 1 coefficients.
bool recurrence_check(int k, const SeriesTable& table);

/// |c(n-1)/c(n) - target| for n = 1..N (entries where c(n) = 0 are NaN).
std::vector<double> ratio_deviations(const SeriesTable& table, double target);
/// Largest |c(n-1)/c(n) - xi_k| over the last `window` indices.
double ratio_limit_check(const SeriesTable& table, int k, std::size_t window);
/// |delta(n)/gamma(n) - target| for n = 0..N, with delta = product table.
std::vector<double> product_ratio_deviations(const SeriesTable& product,
                                             const SeriesTable& base, double target);
/// Largest |delta(n)/gamma(n) - target| over the last `window` indices.
double product_ratio_check(const SeriesTable& product, const SeriesTable& base,
                           double target, std::size_t window);

/// P_k(xi_k) via the closed form xi^2 (1 - sqrt(1 - xi))^2 (1 - xi).
Interval p_at_xi(int k, double tol = 1e-13);
/// The k -> infinity limit p = (3/64) (1 - sqrt(3)/2)^2.
Interval p_limit();

/// 4 - 2 xi_k: limiting density of BB(n,k) over {x0, x1}.
Interval density_limit_bb(int k, double tol = 1e-13);
/// (4 - 2 xi_k - 10 P(xi_k)) / (1 - 3 P(xi_k)). Requires k >= 1.
Interval density_limit_bb_prime(int k, double tol = 1e-13);
/// 6 - 4 xi_k: limiting density of BB(n,k) over {x0, x1, x2}.
Interval density_limit_thm2_base(int k, double tol = 1e-13);
/// (6 - 4 xi_k - 14 P(xi_k)) / (1 - 3 P(xi_k)). Requires k >= 1.
Interval density_limit_thm2(int k, double tol = 1e-13);
/// 1 - sqrt(1 - xi_k): limiting probability that the marked tree has
/// height exactly k. Requires k >= 1.
Interval prob_marked_height_k(int k, double tol = 1e-13);

struct BoundSuiteReport {
  int k_max = 0;
  bool all_pass = true;
  std::optional<int> failed_k;
  std::string failed_check;  // "a", "b", "c:<eps>", "d"
};

/// For 1 <= k <= k_max, with outward-rounded dyadic enclosures of Phi_k:
///  (a) Phi_k(1/4) < 1/2
///  (b) Phi_k(1/4) >= 1/2 - 1/(k+4)
///  (c) Phi_k(1/4 + e) >= Phi_k(1/4) + w_k e, e in {3/(2k), 1/k^2, 2^-k},
///      w_k = (k+4)/3 - 2/((k+2)(k+3))
///  (d) Phi_k(1/4 + 3/(2k)) > 1
BoundSuiteReport bound_suite(int k_max, unsigned precision = 2048);

/// w_k of the bound suite.
Rational slope_bound(int k);

struct Crossover {
  std::optional<int> k;       // least k with density_limit_bb_prime(k) certainly > threshold
  bool below_certified = true;  // every smaller k certainly < threshold
};
/// Scans k = 1..k_max.
Crossover bb_prime_crossover(double threshold, int k_max, double tol = 1e-13);

}  // namespace thompson::series
