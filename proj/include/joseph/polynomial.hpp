#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "joseph/rational.hpp"

namespace joseph {

/// Univariate polynomial with exact rational coefficients, lowest degree first.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coefficients);
  static Polynomial constant(const Rational& c) { return Polynomial({c}); }
  /// x - root
  static Polynomial linear_factor(const Rational& root) { return Polynomial({-root, Rational(1)}); }

  /// -1 for the zero polynomial.
  int degree() const { return int(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Rational>& coefficients() const { return coeffs_; }
  Rational coefficient(int k) const;
  Rational leading() const { return is_zero() ? Rational(0) : coeffs_.back(); }

  Rational operator()(const Rational& x) const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  Polynomial& operator*=(const Rational& c);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

  /// e.g. "2*n^2 - 3*n + 1/2"
  std::string str(const std::string& var = "n") const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

/// Unique polynomial of degree < points through the given points (Newton form).
/// Throws on repeated abscissae.
Polynomial interpolate(const std::vector<std::pair<Rational, Rational>>& points);

struct PolynomialFit {
  Polynomial poly;
  /// Points left over after the degree was determined; > 0 means the fit was
  /// confirmed by data not used to build it.
  int spare_points = 0;
};

/// Lowest-degree polynomial through all points; nullopt if no polynomial of
/// degree <= max_degree fits.
std::optional<PolynomialFit> fit_polynomial(const std::vector<std::pair<Rational, Rational>>& points,
                                            int max_degree);

/// p/q with integer coefficients, content 1, positive leading denominator coefficient.
class RationalFunction {
 public:
  RationalFunction() : num_(), den_(Polynomial::constant(1)) {}
  RationalFunction(Polynomial num, Polynomial den);

  const Polynomial& numerator() const { return num_; }
  const Polynomial& denominator() const { return den_; }
  /// nullopt at a pole.
  std::optional<Rational> operator()(const Rational& x) const;
  friend bool operator==(const RationalFunction& a, const RationalFunction& b);
  std::string str(const std::string& var = "n") const;

 private:
  Polynomial num_, den_;
};

struct RationalFit {
  RationalFunction function;
  int spare_points = 0;
};

/// Rational interpolant of lowest total degree (ties broken by smaller
/// denominator degree) that passes through every point, using at least
/// `min_spare` points purely as confirmation. nullopt if none exists.
std::optional<RationalFit> fit_rational(const std::vector<std::pair<Rational, Rational>>& points, int min_spare = 1);

}  // namespace joseph
