#pragma once

// Outward-rounded enclosures: Interval over doubles (every operation widened
// by one ulp on each side, which covers round-to-nearest error), and
// DyadicInterval with big-integer endpoints over a fixed power-of-two
// denominator.

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "thompson/bigint.hpp"

namespace thompson {

class Interval {
 public:
  Interval() = default;
  Interval(double lo, double hi) : lo_(lo), hi_(hi) {
    if (!(lo <= hi)) throw std::invalid_argument("interval with lo > hi");
  }
  static Interval point(double x) { return {x, x}; }
  /// Enclosure of an exact rational.
  static Interval of(const Rational& r);

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double width() const { return hi_ - lo_; }
  double mid() const { return lo_ + (hi_ - lo_) / 2; }
  bool contains(double x) const { return lo_ <= x && x <= hi_; }
  bool certainly_gt(double x) const { return lo_ > x; }
  bool certainly_lt(double x) const { return hi_ < x; }

  friend Interval operator+(const Interval& a, const Interval& b) {
    return {down(a.lo_ + b.lo_), up(a.hi_ + b.hi_)};
  }
  friend Interval operator-(const Interval& a, const Interval& b) {
    return {down(a.lo_ - b.hi_), up(a.hi_ - b.lo_)};
  }
  friend Interval operator*(const Interval& a, const Interval& b);
  friend Interval operator/(const Interval& a, const Interval& b);
  friend Interval operator+(double a, const Interval& b) { return point(a) + b; }
  friend Interval operator-(double a, const Interval& b) { return point(a) - b; }
  friend Interval operator*(double a, const Interval& b) { return point(a) * b; }

  Interval square() const;

 private:
  static double down(double x) { return std::nextafter(x, -std::numeric_limits<double>::infinity()); }
  static double up(double x) { return std::nextafter(x, std::numeric_limits<double>::infinity()); }
  friend Interval sqrt(const Interval& a);

  double lo_ = 0.0;
  double hi_ = 0.0;
};

Interval sqrt(const Interval& a);

/// Enclosure [lo, hi] * 2^-precision with big-integer numerators. Only the
/// operations needed for evaluating polynomials with nonnegative
/// coefficients at nonnegative points are provided.
class DyadicInterval {
 public:
  DyadicInterval(BigInt lo, BigInt hi, unsigned precision);
  static DyadicInterval of(const Rational& r, unsigned precision);

  unsigned precision() const { return precision_; }
  Rational lo() const;
  Rational hi() const;

  bool certainly_gt(const Rational& r) const { return lo() > r; }
  bool certainly_lt(const Rational& r) const { return hi() < r; }
  bool certainly_ge(const Rational& r) const { return lo() >= r; }

  friend DyadicInterval operator+(const DyadicInterval& a, const DyadicInterval& b);
  /// Requires both operands nonnegative (throws std::domain_error otherwise).
  friend DyadicInterval operator*(const DyadicInterval& a, const DyadicInterval& b);

 private:
  BigInt lo_;
  BigInt hi_;
  unsigned precision_;
};

}  // namespace thompson
