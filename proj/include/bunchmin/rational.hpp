#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <array>
#include <sstream>
#include <string>

namespace bunchmin {

// Exact arbitrary-precision rational. All solver arithmetic goes through
// this type; no floating point is used anywhere in the library.
using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Coefficient vector over the point-count variables (C0, C1, C2, C3).
using Coeffs = std::array<Rat, 4>;

inline bool is_integer(const Rat& r) { return denominator(r) == 1; }

inline BigInt floor_rat(const Rat& r) {
  BigInt q = numerator(r) / denominator(r);
  if (numerator(r) < 0 && q * denominator(r) != numerator(r)) --q;
  return q;
}

inline BigInt ceil_rat(const Rat& r) {
  BigInt q = numerator(r) / denominator(r);
  if (numerator(r) > 0 && q * denominator(r) != numerator(r)) ++q;
  return q;
}

inline long long to_ll(const BigInt& v) { return static_cast<long long>(v); }

inline long long to_ll(const Rat& r) {
  return static_cast<long long>(numerator(r) / denominator(r));
}

inline std::string rat_str(const Rat& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

}  // namespace bunchmin
