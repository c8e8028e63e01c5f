#pragma once

#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <string>

namespace dialectic {

// Exact fraction for failure rates and confidence ratios. Report rendering
// rounds; everything upstream stays exact.
struct Rational {
  long long num = 0;
  long long den = 1;  // always > 0, gcd(|num|, den) == 1

  constexpr Rational() = default;
  Rational(long long n, long long d) : num(n), den(d) {
    if (den == 0) throw std::invalid_argument("rational: zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }

  Rational operator+(const Rational& o) const { return {num * o.den + o.num * den, den * o.den}; }
  Rational operator-(const Rational& o) const { return {num * o.den - o.num * den, den * o.den}; }
  Rational operator*(const Rational& o) const { return {num * o.num, den * o.den}; }
  Rational operator/(const Rational& o) const {
    if (o.num == 0) throw std::invalid_argument("rational: division by zero");
    return {num * o.den, den * o.num};
  }

  bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
  bool operator!=(const Rational& o) const { return !(*this == o); }
  bool operator<(const Rational& o) const { return num * o.den < o.num * den; }
  bool operator<=(const Rational& o) const { return num * o.den <= o.num * den; }
  bool operator>(const Rational& o) const { return o < *this; }
  bool operator>=(const Rational& o) const { return o <= *this; }
};

// "41.6" style rendering: percent, one decimal place, half away from zero.
std::string percent_1dp(const Rational& r);

}  // namespace dialectic
