#pragma once

#include <string>

#include <boost/multiprecision/gmp.hpp>

namespace thompson {

using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

/// Renders a rational as "p/q" (always with a denominator, "3/1" for integers).
inline std::string to_fraction_string(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" +
         boost::multiprecision::denominator(r).str();
}

/// Nearest double to an exact rational.
inline double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace thompson
