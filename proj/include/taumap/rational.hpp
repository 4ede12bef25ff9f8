#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace taumap {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer numerator_of(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer denominator_of(const Rational& q) { return boost::multiprecision::denominator(q); }

// n! for n >= 0.
Integer factorial(int n);

// num! / den!.  den < 0 yields 0 (reciprocal of a negative-argument
// factorial); num must be >= 0.
Rational factorial_ratio(int num, int den);

double to_double(const Rational& q);

std::string to_decimal_string(const Integer& n);
Integer integer_from_string(const std::string& s);

// Order-insensitive product of a list of indices as a Rational.
Rational product_of(const std::vector<int>& xs);

// FNV-style combine for composite hash keys.
inline std::size_t hash_combine(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::size_t hash_int_vector(const std::vector<int>& v, std::size_t seed = 0xcbf29ce484222325ULL);

}  // namespace taumap
