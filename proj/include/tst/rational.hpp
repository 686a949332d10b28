#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <functional>
#include <string>

namespace tst {

// Exact time arithmetic. Clock values and delays are rationals; guard
// constants stay integral. No floating point anywhere in the semantics.
using Rational = boost::rational<std::int64_t>;

inline Rational rat(std::int64_t num, std::int64_t den = 1) {
  return Rational(num, den);
}

/// Renders as "7" or "7/2".
std::string rat_to_string(const Rational& r);

/// Parses "7", "-3", "7/2". Throws std::invalid_argument on malformed input.
Rational rat_from_string(const std::string& s);

/// Largest integer <= r.
std::int64_t rat_floor(const Rational& r);

struct RationalHash {
  std::size_t operator()(const Rational& r) const {
    std::size_t h1 = std::hash<std::int64_t>{}(r.numerator());
    std::size_t h2 = std::hash<std::int64_t>{}(r.denominator());
    return h1 ^ (h2 * 0x9e3779b97f4a7c15ull);
  }
};

}  // namespace tst
