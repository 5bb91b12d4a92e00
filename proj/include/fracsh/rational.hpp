#pragma once

#include <charconv>
#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>
#include <string_view>

#include "fracsh/error.hpp"

namespace fracsh {

// Exact fraction p/q, always stored in lowest terms with q >= 1.
//
// Arithmetic is carried out in 128-bit intermediates and rejected with
// LimitError if the reduced result does not fit back into 64 bits.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t value) : num_(value), den_(1) {}  // NOLINT(google-explicit-constructor)
  Rational(std::int64_t num, std::int64_t den) { assign(num, den); }

  constexpr std::int64_t num() const { return num_; }
  constexpr std::int64_t den() const { return den_; }

  constexpr bool is_integer() const { return den_ == 1; }
  constexpr bool is_zero() const { return num_ == 0; }
  constexpr int sign() const { return (num_ > 0) - (num_ < 0); }
  // True for +-1/k, k >= 1.
  constexpr bool is_unit_fraction() const { return num_ == 1 || num_ == -1; }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  Rational abs() const { return Rational(num_ < 0 ? -num_ : num_, den_); }
  Rational operator-() const { return Rational(-num_, den_); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return from_wide(static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
                     static_cast<__int128>(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return from_wide(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw DomainError("rational division by zero");
    return from_wide(static_cast<__int128>(a.num_) * b.den_, static_cast<__int128>(a.den_) * b.num_);
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num_) * b.den_ <=> static_cast<__int128>(b.num_) * a.den_;
  }

  // "p/q", or just "p" when q == 1.
  std::string to_string() const {
    std::string s = std::to_string(num_);
    if (den_ != 1) s += "/" + std::to_string(den_);
    return s;
  }

  // Accepts "[-]p" or "[-]p/q" with decimal digits only. Decimal points,
  // exponents, whitespace and zero denominators are rejected.
  static Rational parse(std::string_view text) {
    auto fail = [&](const char* why) {
      return ParseError("invalid fraction '" + std::string(text) + "': " + why);
    };
    if (text.empty()) throw fail("empty");
    const auto slash = text.find('/');
    const std::string_view num_text = text.substr(0, slash);
    const std::string_view den_text = slash == std::string_view::npos ? std::string_view{} : text.substr(slash + 1);
    if (slash != std::string_view::npos && den_text.empty()) throw fail("missing denominator");

    auto read = [&](std::string_view part, bool allow_sign) -> std::int64_t {
      if (part.empty()) throw fail("missing digits");
      std::size_t start = 0;
      if (allow_sign && part[0] == '-') start = 1;
      if (start == part.size()) throw fail("missing digits");
      for (std::size_t i = start; i < part.size(); ++i) {
        if (part[i] < '0' || part[i] > '9') throw fail("expected p/q with integer p and q");
      }
      std::int64_t value = 0;
      auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
      if (ec != std::errc{} || ptr != part.data() + part.size()) throw fail("integer out of range");
      return value;
    };

    const std::int64_t num = read(num_text, true);
    const std::int64_t den = den_text.empty() ? 1 : read(den_text, false);
    if (den == 0) throw fail("zero denominator");
    return Rational(num, den);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

 private:
  void assign(std::int64_t num, std::int64_t den) {
    if (den == 0) throw DomainError("zero denominator");
    *this = from_wide(num, den);
  }

  static Rational from_wide(__int128 num, __int128 den) {
    if (den == 0) throw DomainError("zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    __int128 a = num < 0 ? -num : num;
    __int128 b = den;
    while (b != 0) {
      const __int128 t = a % b;
      a = b;
      b = t;
    }
    if (a > 1) {
      num /= a;
      den /= a;
    }
    constexpr __int128 lo = INT64_MIN + 1;  // keep -num representable
    constexpr __int128 hi = INT64_MAX;
    if (num < lo || num > hi || den > hi) throw LimitError("rational overflow");
    Rational r;
    r.num_ = static_cast<std::int64_t>(num);
    r.den_ = static_cast<std::int64_t>(den);
    return r;
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace fracsh
