#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace cpg {

// Exact rational scalar used for all combinatorial predicates.
using Rat = boost::multiprecision::cpp_rational;

// Canonical "num/den" form, lowest terms, positive denominator.
inline std::string to_fraction_string(const Rat& q) {
  return numerator(q).str() + "/" + denominator(q).str();
}

inline Rat parse_fraction(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  Rat q(s);  // accepts "n" and "n/d"
  return q;
}

// Exact conversion: every finite double is a dyadic rational.
inline Rat rat_from_double(double x) { return Rat(x); }

template <class T>
T scalar_from_double(double x);

template <>
inline double scalar_from_double<double>(double x) { return x; }

template <>
inline Rat scalar_from_double<Rat>(double x) { return rat_from_double(x); }

inline double to_double(const Rat& q) { return q.convert_to<double>(); }
inline double to_double(double q) { return q; }

}  // namespace cpg
