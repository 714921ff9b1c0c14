#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <numeric>
#include <ostream>
#include <string>

#include "deltatour/error.hpp"

namespace deltatour {

// Exact fraction over 64-bit integers. Intermediates use 128 bits and any
// result that does not fit throws instead of wrapping.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT: implicit on purpose
  Rational(std::int64_t n, std::int64_t d) { assign(n, d); }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  static Rational parse(const std::string& s) {
    auto slash = s.find('/');
    try {
      std::size_t used = 0;
      if (slash == std::string::npos) {
        std::int64_t n = std::stoll(s, &used);
        if (used != s.size()) throw Error(ErrorCode::Parse, "bad rational '" + s + "'");
        return Rational(n);
      }
      std::string a = s.substr(0, slash), b = s.substr(slash + 1);
      std::int64_t n = std::stoll(a, &used);
      if (used != a.size()) throw Error(ErrorCode::Parse, "bad rational '" + s + "'");
      std::int64_t d = std::stoll(b, &used);
      if (used != b.size() || d == 0) throw Error(ErrorCode::Parse, "bad rational '" + s + "'");
      return Rational(n, d);
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::Parse, "bad rational '" + s + "'");
    }
  }

  std::string str() const { return std::to_string(num_) + "/" + std::to_string(den_); }

  std::int64_t floor() const {
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --q;
    return q;
  }
  std::int64_t ceil() const { return -Rational(-num_, den_).floor(); }
  Rational frac() const { return *this - Rational(floor()); }
  Rational abs() const { return num_ < 0 ? Rational(-num_, den_) : *this; }
  bool is_integer() const { return den_ == 1; }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return from128(static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
                   static_cast<__int128>(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return from128(static_cast<__int128>(a.num_) * b.den_ - static_cast<__int128>(b.num_) * a.den_,
                   static_cast<__int128>(a.den_) * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return from128(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw Error(ErrorCode::Overflow, "division by zero");
    return from128(static_cast<__int128>(a.num_) * b.den_, static_cast<__int128>(a.den_) * b.num_);
  }
  Rational operator-() const { return Rational(-num_, den_); }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    __int128 l = static_cast<__int128>(a.num_) * b.den_;
    __int128 r = static_cast<__int128>(b.num_) * a.den_;
    if (l < r) return std::strong_ordering::less;
    if (l > r) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;

  void assign(std::int64_t n, std::int64_t d) {
    if (d == 0) throw Error(ErrorCode::Overflow, "zero denominator");
    *this = from128(n, d);
  }

  static __int128 gcd128(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  static Rational from128(__int128 n, __int128 d) {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    __int128 g = gcd128(n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    if (n == 0) d = 1;
    constexpr __int128 lim = static_cast<__int128>(INT64_MAX);
    if (n > lim || n < -lim || d > lim) throw Error(ErrorCode::Overflow, "rational out of range");
    Rational r;
    r.num_ = static_cast<std::int64_t>(n);
    r.den_ = static_cast<std::int64_t>(d);
    return r;
  }
};

inline Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace deltatour

template <>
struct std::hash<deltatour::Rational> {
  std::size_t operator()(const deltatour::Rational& r) const noexcept {
    return std::hash<std::int64_t>()(r.num()) * 1000003u ^ std::hash<std::int64_t>()(r.den());
  }
};
