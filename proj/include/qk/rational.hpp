#pragma once

#include <charconv>
#include <compare>
#include <numeric>
#include <string>
#include <string_view>

#include "qk/errors.hpp"

namespace qk {

// Exact fraction for threshold parameters and bound ratios.
// Invariants: den > 0 and gcd(|num|, den) == 1.
struct Rational {
  long long num = 0;
  long long den = 1;

  constexpr Rational() = default;
  constexpr Rational(long long n, long long d = 1) : num(n), den(d) {
    if (den == 0) throw Error("rational with zero denominator");
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

  // t -> t/(t+1), the fraction of n the bound machinery certifies.
  constexpr Rational bound_ratio() const { return Rational(num, num + den); }

  // t * count >= target, exact.
  constexpr bool times_count_at_least(long long count, long long target) const {
    return static_cast<__int128>(num) * count >=
           static_cast<__int128>(den) * target;
  }

  std::string str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
  }

  // Accepts "p" or "p/q".
  static Rational parse(std::string_view s) {
    auto read = [](std::string_view part) -> long long {
      long long value = 0;
      auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
      if (ec != std::errc() || ptr != part.data() + part.size())
        throw Error("bad rational component '" + std::string(part) + "'");
      return value;
    };
    auto slash = s.find('/');
    if (slash == std::string_view::npos) return Rational(read(s));
    return Rational(read(s.substr(0, slash)), read(s.substr(slash + 1)));
  }

  friend constexpr bool operator==(const Rational&, const Rational&) = default;
  friend constexpr std::strong_ordering operator<=>(const Rational& a,
                                                    const Rational& b) {
    __int128 l = static_cast<__int128>(a.num) * b.den;
    __int128 r = static_cast<__int128>(b.num) * a.den;
    if (l < r) return std::strong_ordering::less;
    if (l > r) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend constexpr Rational operator+(const Rational& a, const Rational& b) {
    return Rational(a.num * b.den + b.num * a.den, a.den * b.den);
  }
  friend constexpr Rational operator*(const Rational& a, const Rational& b) {
    return Rational(a.num * b.num, a.den * b.den);
  }
};

}  // namespace qk
