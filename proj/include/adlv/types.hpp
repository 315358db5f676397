#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace adlv {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Integer cocharacter in lattice coordinates. Group elements stay small, so
// fixed width is enough here; lattice quotients promote to Integer.
using Coweight = std::vector<std::int64_t>;
using RationalVector = std::vector<Rational>;

// A subset of simple indices (0-based) stored as a bit mask.
using IndexSet = std::uint32_t;

inline bool contains(IndexSet set, int i) { return (set >> i) & 1U; }
inline int set_size(IndexSet set) { return __builtin_popcount(set); }

// Computation could not be completed (infeasible input, exhausted search).
class ComputationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// An internal consistency check failed.
class InvariantViolation : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

std::string to_string(const Rational& q);
Rational parse_rational(const std::string& text);

RationalVector to_rational(const Coweight& v);

}  // namespace adlv
