#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>

#include <Eigen/Core>

namespace joseph {

/// Exact rational number in canonical form (reduced, positive denominator).
///
/// Values whose numerator and denominator fit in a signed 64-bit word are
/// stored inline and combined with 128-bit intermediates; anything larger is
/// promoted to a GMP rational and demoted again as soon as it fits. No
/// operation ever rounds.
class Rational {
 public:
  Rational() = default;
  Rational(int value) : num_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(long value) : num_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(long long value) : num_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(long long numerator, long long denominator);

  /// Parses "p", "-p", "p/q". Throws std::invalid_argument on malformed input
  /// or a zero denominator.
  static Rational parse(std::string_view text);

  bool is_zero() const { return !big_ && num_ == 0; }
  bool is_integer() const;
  int sign() const;
  bool is_small() const { return !big_; }

  /// Canonical text: "p" for integers, "p/q" otherwise.
  std::string str() const;
  double to_double() const;

  /// Numerator/denominator as decimal strings (arbitrary size).
  std::string numerator_str() const;
  std::string denominator_str() const;

  Rational operator-() const;
  Rational& operator+=(const Rational& other);
  Rational& operator-=(const Rational& other);
  Rational& operator*=(const Rational& other);
  Rational& operator/=(const Rational& other);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b);
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  Rational inverse() const;
  Rational abs() const { return sign() < 0 ? -*this : *this; }

  friend Rational integer_gcd(const Rational& a, const Rational& b);

 private:
  struct Big;
  static Rational from_int128(__int128 num, __int128 den);
  static Rational from_big(Big value);
  Big to_big() const;

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::shared_ptr<const Big> big_;
};

std::ostream& operator<<(std::ostream& os, const Rational& value);

inline Rational abs(const Rational& x) { return x.abs(); }

/// Non-negative gcd of two integers; throws if either is not an integer.
Rational integer_gcd(const Rational& a, const Rational& b);

}  // namespace joseph

namespace Eigen {
template <>
struct NumTraits<joseph::Rational> : GenericNumTraits<joseph::Rational> {
  using Real = joseph::Rational;
  using NonInteger = joseph::Rational;
  using Literal = joseph::Rational;
  using Nested = joseph::Rational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 4,
    AddCost = 16,
    MulCost = 16
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};
}  // namespace Eigen
