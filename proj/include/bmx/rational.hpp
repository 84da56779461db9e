#pragma once

#include <cstdint>
#include <string>

#include "bmx/errors.hpp"

namespace bmx {

/// Exact rational over int64 with checked arithmetic.
///
/// All intermediates run through __int128 and results must reduce back into
/// int64, otherwise an Overflow error is thrown. Denominator is always
/// positive and gcd(num, den) == 1.
class Rat {
 public:
  constexpr Rat() = default;
  Rat(std::int64_t n) : num_(n), den_(1) {}
  Rat(std::int64_t n, std::int64_t d) { *this = make(n, d); }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }

  friend Rat operator+(const Rat& a, const Rat& b) {
    return make(i128(a.num_) * b.den_ + i128(b.num_) * a.den_,
                i128(a.den_) * b.den_);
  }
  friend Rat operator-(const Rat& a, const Rat& b) {
    return make(i128(a.num_) * b.den_ - i128(b.num_) * a.den_,
                i128(a.den_) * b.den_);
  }
  friend Rat operator*(const Rat& a, const Rat& b) {
    return make(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
  }
  friend Rat operator/(const Rat& a, const Rat& b) {
    if (b.num_ == 0) fail(ErrorCode::DomainError, "rational division by zero");
    return make(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
  }
  Rat operator-() const {
    Rat r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }
  Rat& operator+=(const Rat& b) { return *this = *this + b; }
  Rat& operator-=(const Rat& b) { return *this = *this - b; }
  Rat& operator*=(const Rat& b) { return *this = *this * b; }
  Rat& operator/=(const Rat& b) { return *this = *this / b; }

  friend bool operator==(const Rat& a, const Rat& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
  friend bool operator<(const Rat& a, const Rat& b) {
    return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
  }
  friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
  friend bool operator<=(const Rat& a, const Rat& b) { return !(b < a); }
  friend bool operator>=(const Rat& a, const Rat& b) { return !(a < b); }

  double to_double() const {
    return static_cast<double>(static_cast<long double>(num_) /
                               static_cast<long double>(den_));
  }

  /// Canonical string: "n" for integers, "n/d" otherwise.
  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  /// Parses "n", "n/d", or an exact decimal like "-1.25".
  static Rat parse(const std::string& text);

 private:
  using i128 = __int128;

  static Rat make(i128 n, i128 d) {
    if (d == 0) fail(ErrorCode::InvalidArgument, "zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    i128 g = gcd128(n < 0 ? -n : n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    Rat r;
    if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
      fail(ErrorCode::Overflow, "rational overflow");
    r.num_ = static_cast<std::int64_t>(n);
    r.den_ = static_cast<std::int64_t>(d);
    return r;
  }

  static i128 gcd128(i128 a, i128 b) {
    while (b != 0) {
      i128 t = a % b;
      a = b;
      b = t;
    }
    return a < 0 ? -a : a;
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

inline Rat Rat::parse(const std::string& text) {
  std::size_t i = 0, n = text.size();
  while (i < n && (text[i] == ' ' || text[i] == '\t')) ++i;
  std::size_t end = n;
  while (end > i && (text[end - 1] == ' ' || text[end - 1] == '\t')) --end;
  if (i >= end) fail(ErrorCode::ParseError, "empty rational");

  bool neg = false;
  if (text[i] == '+' || text[i] == '-') {
    neg = text[i] == '-';
    ++i;
  }
  i128 num = 0, den = 1;
  bool any_digit = false, seen_point = false, seen_slash = false;
  for (; i < end; ++i) {
    char c = text[i];
    if (c >= '0' && c <= '9') {
      num = num * 10 + (c - '0');
      if (seen_point) den *= 10;
      if (num > i128(INT64_MAX) * 1000000 || den > i128(INT64_MAX))
        fail(ErrorCode::Overflow, "rational literal too large: " + text);
      any_digit = true;
    } else if (c == '.' && !seen_point && !seen_slash) {
      seen_point = true;
    } else if (c == '/' && !seen_slash && !seen_point && any_digit) {
      seen_slash = true;
      // parse denominator
      ++i;
      bool dneg = false;
      if (i < end && (text[i] == '+' || text[i] == '-')) {
        dneg = text[i] == '-';
        ++i;
      }
      i128 d = 0;
      bool dd = false;
      for (; i < end; ++i) {
        char c2 = text[i];
        if (c2 < '0' || c2 > '9')
          fail(ErrorCode::ParseError, "bad rational: " + text);
        d = d * 10 + (c2 - '0');
        if (d > i128(INT64_MAX)) fail(ErrorCode::Overflow, "overflow: " + text);
        dd = true;
      }
      if (!dd || d == 0) fail(ErrorCode::ParseError, "bad rational: " + text);
      den = dneg ? -d : d;
      break;
    } else {
      fail(ErrorCode::ParseError, "bad rational: " + text);
    }
  }
  if (!any_digit) fail(ErrorCode::ParseError, "bad rational: " + text);
  return make(neg ? -num : num, den);
}

}  // namespace bmx
