#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <vector>

#include "joseph/dense_tensor.hpp"
#include "joseph/lie_context.hpp"
#include "joseph/linalg.hpp"
#include "joseph/polynomial.hpp"

namespace joseph {

using Exponents = std::vector<int>;

/// Polynomial-coefficient differential operator on C^n, stored normal ordered:
/// sum of c * Z^alpha d^beta with every coordinate left of every derivative.
class WeylElement {
 public:
  using Key = std::pair<Exponents, Exponents>;

  explicit WeylElement(int n = 1) : n_(n) {}
  static WeylElement identity(int n);
  static WeylElement scalar(int n, const Rational& c);
  /// Multiplication by Z^i.
  static WeylElement coordinate(int n, int i);
  /// d/dZ^i
  static WeylElement derivative(int n, int i);
  /// Z^a d/dZ^a
  static WeylElement euler(int n);

  int variables() const { return n_; }
  const std::map<Key, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  void add_term(const Exponents& z, const Exponents& d, const Rational& c);

  WeylElement& operator+=(const WeylElement& o);
  WeylElement& operator-=(const WeylElement& o);
  WeylElement& operator*=(const Rational& c);
  friend WeylElement operator+(WeylElement a, const WeylElement& b) { return a += b; }
  friend WeylElement operator-(WeylElement a, const WeylElement& b) { return a -= b; }
  friend WeylElement operator*(const Rational& c, WeylElement a) { return a *= c; }
  friend bool operator==(const WeylElement& a, const WeylElement& b) { return a.n_ == b.n_ && a.terms_ == b.terms_; }

  /// True if every term has as many coordinates as derivatives.
  bool preserves_degree() const;

 private:
  int n_;
  std::map<Key, Rational> terms_;
};

/// Normal-ordered product P Q. Throws on a variable-count mismatch.
WeylElement compose(const WeylElement& p, const WeylElement& q);

/// Polynomial in Z^1..Z^n: exponent vector -> coefficient.
using WeylPolynomial = std::map<Exponents, Rational>;
WeylPolynomial apply(const WeylElement& op, const WeylPolynomial& f);

/// Exponent vectors of all monomials of total degree d in n variables.
std::vector<Exponents> monomials(int n, int d);
/// Matrix of a degree-preserving operator on degree-d monomials (columns are
/// images of basis monomials). Throws ResourceLimitError above max_monomials.
RationalMatrix action_matrix(const WeylElement& op, int d, int max_monomials = 4000);

/// X^a_b^c_d... with 2s slots alternating upper/lower, symmetric in the upper
/// slots and in the lower slots, totally trace-free.
bool is_cartan_power_element(const Tensor& x);
/// (-1)^s X^a_b^c_d... Z^b Z^d ... d^s/dZ^a dZ^c ...
WeylElement dx(const Tensor& x);

/// D_X D_Y - D_Y D_X = D_[X,Y] on `pairs` random pairs of sl(n) (all basis
/// pairs when pairs <= 0).
bool commutator_check(int n, std::mt19937_64& rng, int pairs);

struct AnticommutatorDecomposition {
  Tensor c;
  Tensor d;
  Rational e;
};
/// X^(a_(b Y^c)_d) = C + D^(a_(b delta^c)_d) + E delta^(a_(b delta^c)_d).
AnticommutatorDecomposition anticommutator_decomposition(int n, const Tensor& x, const Tensor& y);
/// Symmetrization over the upper pair and over the lower pair of a rank-4 mixed tensor.
Tensor mixed_symmetrize(const Tensor& t);

struct CompositionLaw {
  /// Only set when the coefficients are identifiable (n >= 3).
  std::optional<PolynomialFit> c1, c2;
  /// Per-degree samples (w, c1(w)) and (w, c2(w)).
  std::vector<std::pair<Rational, Rational>> c1_samples, c2_samples;
  /// Combined coefficient of <X,Y> in D_X D_Y - D_{X.Y} - 1/2 D_[X,Y] when the
  /// first-order term is pure trace (n = 2).
  std::optional<PolynomialFit> combined;
};

/// Fits the coefficients of
///   D_X D_Y = D_{X.Y} + c1(w) (XY+YX)^a_b Z^b d_a + 1/2 D_[X,Y] - c2(w) <X,Y>
/// on degree-w monomials for each w in `degrees`. Throws std::runtime_error if
/// a residual is not of this form.
CompositionLaw composition_law(int n, const std::vector<int>& degrees, std::mt19937_64& rng);
/// Checks the identity at every listed degree with the given c1, c2.
bool composition_law_holds(int n, const std::vector<int>& degrees, const Polynomial& c1, const Polynomial& c2,
                           std::mt19937_64& rng);
/// n = 2: coefficient of <X,Y> after the first-order term collapses to a multiple of <X,Y>.
PolynomialFit sl2_law(const std::vector<int>& degrees, std::mt19937_64& rng);

struct IndependenceWitness {
  bool injective = false;
  int rank = 0;
  int dimension = 0;
};
/// Whether X -> (action of D_X on degree-d monomials) is injective on the
/// level-s Cartan power of sl(n).
IndependenceWitness independence_witness(int n, int s, int d, int max_monomials = 4000);
/// Basis of the level-s Cartan power of sl(n) as tensors.
std::vector<Tensor> cartan_power_basis(int n, int s);

}  // namespace joseph
