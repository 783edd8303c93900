// Exact rational numbers over 64-bit integers with checked arithmetic.

#ifndef BSSYM_RATIONAL_HPP_
#define BSSYM_RATIONAL_HPP_

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace bssym {

// Always stored in lowest terms with a positive denominator. Any operation
// whose exact result does not fit in 64 bits throws std::overflow_error.
class Rational {
public:
  constexpr Rational() = default;
  Rational(std::int64_t n);  // NOLINT: integers convert implicitly
  Rational(std::int64_t n, std::int64_t d);

  // Accepts "p", "p/q" and plain decimals such as "-0.05" (converted exactly).
  static Rational parse(std::string_view text);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }
  int sign() const { return (num_ > 0) - (num_ < 0); }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  // "p" when the denominator is 1, "p/q" otherwise.
  std::string to_string() const;

  Rational operator-() const;
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  Rational abs() const { return num_ < 0 ? -*this : *this; }
  Rational inverse() const;
  Rational pow(int e) const;

private:
  static Rational from_wide(__int128 n, __int128 d);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace bssym

#endif  // BSSYM_RATIONAL_HPP_
