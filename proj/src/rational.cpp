#include "joseph/rational.hpp"

#include <gmpxx.h>

#include <limits>
#include <ostream>
#include <stdexcept>

namespace joseph {

struct Rational::Big {
  mpq_class value;
};

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

constexpr std::int64_t kMax = std::numeric_limits<std::int64_t>::max();

bool fits(i128 v) { return v <= kMax && v >= -kMax; }

u128 uabs(i128 v) { return v < 0 ? u128(-v) : u128(v); }

u128 gcd128(u128 a, u128 b) {
  while (b != 0) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::uint64_t gcd64(std::uint64_t a, std::uint64_t b) {
  while (b != 0) {
    std::uint64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

mpz_class to_mpz(i128 v) {
  bool neg = v < 0;
  u128 mag = uabs(v);
  mpz_class hi(static_cast<unsigned long>(static_cast<std::uint64_t>(mag >> 64)));
  mpz_class lo(static_cast<unsigned long>(static_cast<std::uint64_t>(mag)));
  mpz_class out = (hi << 64) + lo;
  return neg ? mpz_class(-out) : out;
}

bool mpz_fits_i64(const mpz_class& z) {
  static const mpz_class max_v(std::to_string(kMax));
  return z <= max_v && z >= -max_v;
}

std::int64_t mpz_to_i64(const mpz_class& z) {
  return std::stoll(z.get_str());
}

}  // namespace

Rational::Rational(long long numerator, long long denominator) {
  if (denominator == 0) throw std::invalid_argument("Rational: zero denominator");
  *this = from_int128(numerator, denominator);
}

Rational Rational::from_int128(i128 num, i128 den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  u128 g = gcd128(uabs(num), u128(den));
  if (g > 1) {
    num /= i128(g);
    den /= i128(g);
  }
  if (fits(num) && fits(den)) {
    Rational r;
    r.num_ = std::int64_t(num);
    r.den_ = std::int64_t(den);
    return r;
  }
  Big b{mpq_class(to_mpz(num), to_mpz(den))};
  b.value.canonicalize();
  return from_big(std::move(b));
}

Rational Rational::from_big(Big value) {
  const mpz_class& n = value.value.get_num();
  const mpz_class& d = value.value.get_den();
  if (mpz_fits_i64(n) && mpz_fits_i64(d)) {
    Rational r;
    r.num_ = mpz_to_i64(n);
    r.den_ = mpz_to_i64(d);
    return r;
  }
  Rational r;
  r.big_ = std::make_shared<const Big>(std::move(value));
  return r;
}

Rational::Big Rational::to_big() const {
  if (big_) return *big_;
  return Big{mpq_class(to_mpz(num_), to_mpz(den_))};
}

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("Rational: empty string");
  mpq_class q;
  auto slash = s.find('/');
  auto valid_int = [](const std::string& part) {
    if (part.empty()) return false;
    std::size_t i = (part[0] == '-' || part[0] == '+') ? 1 : 0;
    if (i == part.size()) return false;
    for (; i < part.size(); ++i)
      if (part[i] < '0' || part[i] > '9') return false;
    return true;
  };
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
    throw std::invalid_argument("Rational: malformed '" + s + "'");
  if (num[0] == '+') num = num.substr(1);
  mpz_class n(num), d(den);
  if (d == 0) throw std::invalid_argument("Rational: zero denominator");
  q = mpq_class(n, d);
  q.canonicalize();
  return from_big(Big{q});
}

bool Rational::is_integer() const { return big_ ? big_->value.get_den() == 1 : den_ == 1; }

int Rational::sign() const {
  if (big_) return sgn(big_->value);
  return (num_ > 0) - (num_ < 0);
}

std::string Rational::str() const {
  if (big_) return big_->value.get_str();
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::string Rational::numerator_str() const {
  return big_ ? big_->value.get_num().get_str() : std::to_string(num_);
}

std::string Rational::denominator_str() const {
  return big_ ? big_->value.get_den().get_str() : std::to_string(den_);
}

double Rational::to_double() const {
  return big_ ? big_->value.get_d() : double(num_) / double(den_);
}

Rational Rational::operator-() const {
  if (big_) return from_big(Big{mpq_class(-big_->value)});
  Rational r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

Rational& Rational::operator+=(const Rational& o) {
  if (!big_ && !o.big_) {
    if (o.num_ == 0) return *this;
    if (num_ == 0) return *this = o;
    if (den_ == 1 && o.den_ == 1) {
      i128 s = i128(num_) + o.num_;
      if (fits(s)) {
        num_ = std::int64_t(s);
        return *this;
      }
      return *this = from_int128(s, 1);
    }
    std::uint64_t g = gcd64(std::uint64_t(den_), std::uint64_t(o.den_));
    i128 n = i128(num_) * (o.den_ / std::int64_t(g)) + i128(o.num_) * (den_ / std::int64_t(g));
    i128 d = i128(den_) * (o.den_ / std::int64_t(g));
    return *this = from_int128(n, d);
  }
  Big a = to_big(), b = o.to_big();
  a.value += b.value;
  return *this = from_big(std::move(a));
}

Rational& Rational::operator-=(const Rational& o) { return *this += -o; }

Rational& Rational::operator*=(const Rational& o) {
  if (!big_ && !o.big_) {
    if (num_ == 0 || o.num_ == 0) {
      num_ = 0;
      den_ = 1;
      return *this;
    }
    if (den_ == 1 && o.den_ == 1) {
      i128 p = i128(num_) * o.num_;
      if (fits(p)) {
        num_ = std::int64_t(p);
        return *this;
      }
      return *this = from_int128(p, 1);
    }
    std::int64_t g1 = std::int64_t(gcd64(std::uint64_t(num_ < 0 ? -num_ : num_), std::uint64_t(o.den_)));
    std::int64_t g2 = std::int64_t(gcd64(std::uint64_t(o.num_ < 0 ? -o.num_ : o.num_), std::uint64_t(den_)));
    i128 n = i128(num_ / g1) * (o.num_ / g2);
    i128 d = i128(den_ / g2) * (o.den_ / g1);
    if (fits(n) && fits(d)) {
      num_ = std::int64_t(n);
      den_ = std::int64_t(d);
      return *this;
    }
    return *this = from_int128(n, d);
  }
  Big a = to_big(), b = o.to_big();
  a.value *= b.value;
  return *this = from_big(std::move(a));
}

Rational Rational::inverse() const {
  if (is_zero()) throw std::domain_error("Rational: division by zero");
  if (big_) return from_big(Big{mpq_class(1 / big_->value)});
  return from_int128(den_, num_);
}

Rational& Rational::operator/=(const Rational& o) { return *this *= o.inverse(); }

bool operator==(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
  if (a.big_ && b.big_) return a.big_->value == b.big_->value;
  return false;  // canonical: a small value never equals a big one
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    i128 l = i128(a.num_) * b.den_;
    i128 r = i128(b.num_) * a.den_;
    return l <=> r;
  }
  int c = cmp(a.to_big().value, b.to_big().value);
  return c <=> 0;
}

Rational integer_gcd(const Rational& a, const Rational& b) {
  if (!a.is_integer() || !b.is_integer()) throw std::invalid_argument("integer_gcd: arguments must be integers");
  if (a.is_small() && b.is_small()) {
    std::uint64_t g = gcd64(std::uint64_t(a.num_ < 0 ? -a.num_ : a.num_), std::uint64_t(b.num_ < 0 ? -b.num_ : b.num_));
    return Rational(static_cast<long long>(g));
  }
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), a.to_big().value.get_num_mpz_t(), b.to_big().value.get_num_mpz_t());
  return Rational::from_big(Rational::Big{mpq_class(g)});
}

std::ostream& operator<<(std::ostream& os, const Rational& value) { return os << value.str(); }

}  // namespace joseph
