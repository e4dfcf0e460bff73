#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "zslen/error.hpp"

namespace zslen {

// Nonnegative reduced fraction; used for g-norms and elasticities.
struct Rational {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  Rational() = default;
  Rational(std::uint64_t n, std::uint64_t d) : num(n), den(d) {
    if (den == 0) throw InvalidArgument("zero denominator");
    auto g = std::gcd(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  bool is_integer() const { return den == 1; }
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string to_string() const { return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den); }

  bool operator==(const Rational&) const = default;
};

}  // namespace zslen
