#include "thompson/interval.hpp"

#include <algorithm>

namespace thompson {

Interval Interval::of(const Rational& r) {
  const double d = r.convert_to<double>();
  Interval out{down(d), up(d)};
  // Tighten to the point when the rational is exactly representable.
  if (Rational(d) == r) out = point(d);
  return out;
}

Interval operator*(const Interval& a, const Interval& b) {
  const double p[] = {a.lo_ * b.lo_, a.lo_ * b.hi_, a.hi_ * b.lo_, a.hi_ * b.hi_};
  return {Interval::down(*std::min_element(std::begin(p), std::end(p))),
          Interval::up(*std::max_element(std::begin(p), std::end(p)))};
}

Interval operator/(const Interval& a, const Interval& b) {
  if (b.lo_ <= 0.0 && b.hi_ >= 0.0) throw std::domain_error("interval division by a range containing 0");
  const double p[] = {a.lo_ / b.lo_, a.lo_ / b.hi_, a.hi_ / b.lo_, a.hi_ / b.hi_};
  return {Interval::down(*std::min_element(std::begin(p), std::end(p))),
          Interval::up(*std::max_element(std::begin(p), std::end(p)))};
}

Interval Interval::square() const {
  if (lo_ >= 0.0) return {down(lo_ * lo_), up(hi_ * hi_)};
  if (hi_ <= 0.0) return {down(hi_ * hi_), up(lo_ * lo_)};
  return {0.0, up(std::max(lo_ * lo_, hi_ * hi_))};
}

Interval sqrt(const Interval& a) {
  if (a.lo_ < 0.0) throw std::domain_error("sqrt of an interval reaching below 0");
  // std::sqrt is correctly rounded, so one ulp outward is an enclosure.
  const double lo = std::sqrt(a.lo_);
  return {lo == 0.0 ? 0.0 : Interval::down(lo), Interval::up(std::sqrt(a.hi_))};
}

// ---------------------------------------------------------------- dyadic

DyadicInterval::DyadicInterval(BigInt lo, BigInt hi, unsigned precision)
    : lo_(std::move(lo)), hi_(std::move(hi)), precision_(precision) {
  if (lo_ > hi_) throw std::invalid_argument("dyadic interval with lo > hi");
}

namespace {

BigInt floor_div(const BigInt& num, const BigInt& den) {
  BigInt q = num / den;  // truncates toward zero
  if (q * den > num) q -= 1;
  return q;
}

BigInt ceil_div(const BigInt& num, const BigInt& den) {
  BigInt q = num / den;
  if (q * den < num) q += 1;
  return q;
}

}  // namespace

DyadicInterval DyadicInterval::of(const Rational& r, unsigned precision) {
  const BigInt scale = BigInt(1) << precision;
  const BigInt num = boost::multiprecision::numerator(r) * scale;
  const BigInt den = boost::multiprecision::denominator(r);
  return {floor_div(num, den), ceil_div(num, den), precision};
}

Rational DyadicInterval::lo() const { return Rational(lo_, BigInt(1) << precision_); }
Rational DyadicInterval::hi() const { return Rational(hi_, BigInt(1) << precision_); }

DyadicInterval operator+(const DyadicInterval& a, const DyadicInterval& b) {
  if (a.precision_ != b.precision_) throw std::invalid_argument("mixed dyadic precisions");
  return {a.lo_ + b.lo_, a.hi_ + b.hi_, a.precision_};
}

DyadicInterval operator*(const DyadicInterval& a, const DyadicInterval& b) {
  if (a.precision_ != b.precision_) throw std::invalid_argument("mixed dyadic precisions");
  if (a.lo_ < 0 || b.lo_ < 0) throw std::domain_error("dyadic product needs nonnegative operands");
  const BigInt scale = BigInt(1) << a.precision_;
  return {floor_div(a.lo_ * b.lo_, scale), ceil_div(a.hi_ * b.hi_, scale), a.precision_};
}

}  // namespace thompson
