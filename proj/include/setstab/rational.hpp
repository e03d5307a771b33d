#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace setstab {

// Exact rational arithmetic for coordinates, magnitudes, radii and levels.
// Denominator is always positive, fractions are kept reduced.
struct Rational {
  long long num = 0;
  long long den = 1;

  Rational() = default;
  Rational(long long n) : num(n), den(1) {}
  Rational(long long n, long long d) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
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

  bool is_negative() const { return num < 0; }

  std::string str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
  }
};

inline Rational operator+(const Rational& a, const Rational& b) {
  return Rational(a.num * b.den + b.num * a.den, a.den * b.den);
}

inline Rational operator-(const Rational& a, const Rational& b) {
  return Rational(a.num * b.den - b.num * a.den, a.den * b.den);
}

inline Rational operator*(const Rational& a, const Rational& b) {
  return Rational(a.num * b.num, a.den * b.den);
}

inline bool operator==(const Rational& a, const Rational& b) {
  return a.num == b.num && a.den == b.den;
}

inline bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }

inline bool operator<(const Rational& a, const Rational& b) {
  return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
}

inline bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
inline bool operator>(const Rational& a, const Rational& b) { return b < a; }
inline bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

inline Rational abs(const Rational& a) { return a.num < 0 ? Rational(-a.num, a.den) : a; }

// Doubles are binary rationals, so this conversion is exact. Values such as
// 0.25 parse to 1/4; a value like 0.1 yields its exact binary expansion.
inline Rational rational_from_double(double v) {
  if (!std::isfinite(v)) throw std::invalid_argument("non-finite value");
  Rational r(0);
  if (v == 0.0) return r;
  int exp = 0;
  double mant = std::frexp(v, &exp);  // v = mant * 2^exp, 0.5 <= |mant| < 1
  long long m = static_cast<long long>(std::ldexp(mant, 53));
  exp -= 53;
  while (m != 0 && (m & 1) == 0) {
    m >>= 1;
    ++exp;
  }
  if (exp >= 0) {
    if (exp > 60) throw std::invalid_argument("value too large for exact rational");
    return Rational(m << exp, 1);
  }
  if (exp < -62) throw std::invalid_argument("value too small for exact rational");
  return Rational(m, 1ll << (-exp));
}

// Accepts "3", "-3/4" and decimal notation like "0.25".
inline Rational rational_from_string(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash != std::string::npos) {
      long long n = std::stoll(s.substr(0, slash));
      long long d = std::stoll(s.substr(slash + 1));
      return Rational(n, d);
    }
    auto dot = s.find('.');
    if (dot != std::string::npos) {
      return rational_from_double(std::stod(s));
    }
    return Rational(std::stoll(s));
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("cannot parse rational: " + s);
  } catch (const std::out_of_range&) {
    throw std::invalid_argument("rational out of range: " + s);
  }
}

}  // namespace setstab
