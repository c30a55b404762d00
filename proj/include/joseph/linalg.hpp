#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>

#include "joseph/rational.hpp"

namespace joseph {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using RationalMatrix = Matrix<Rational>;
using RationalVector = Vector<Rational>;

/// Arithmetic in Z/pZ for a prime p < 2^62.
template <std::uint64_t P>
class ModP {
 public:
  ModP() = default;
  ModP(long long v) : v_(reduce(v)) {}  // NOLINT(google-explicit-constructor)
  static ModP from_raw(std::uint64_t v) {
    ModP m;
    m.v_ = v % P;
    return m;
  }
  std::uint64_t value() const { return v_; }

  ModP& operator+=(ModP o) {
    v_ += o.v_;
    if (v_ >= P) v_ -= P;
    return *this;
  }
  ModP& operator-=(ModP o) {
    v_ = v_ >= o.v_ ? v_ - o.v_ : v_ + P - o.v_;
    return *this;
  }
  ModP& operator*=(ModP o) {
    v_ = std::uint64_t((unsigned __int128)v_ * o.v_ % P);
    return *this;
  }
  ModP& operator/=(ModP o) { return *this *= o.inverse(); }
  ModP operator-() const { return ModP() - *this; }
  friend ModP operator+(ModP a, ModP b) { return a += b; }
  friend ModP operator-(ModP a, ModP b) { return a -= b; }
  friend ModP operator*(ModP a, ModP b) { return a *= b; }
  friend ModP operator/(ModP a, ModP b) { return a /= b; }
  friend bool operator==(ModP a, ModP b) { return a.v_ == b.v_; }

  ModP inverse() const {
    if (v_ == 0) throw std::domain_error("ModP: inverse of zero");
    ModP result(1), base = *this;
    std::uint64_t e = P - 2;
    while (e) {
      if (e & 1) result *= base;
      base *= base;
      e >>= 1;
    }
    return result;
  }

 private:
  static std::uint64_t reduce(long long v) {
    long long r = v % static_cast<long long>(P);
    return std::uint64_t(r < 0 ? r + static_cast<long long>(P) : r);
  }
  std::uint64_t v_ = 0;
};

}  // namespace joseph

namespace Eigen {
template <std::uint64_t P>
struct NumTraits<joseph::ModP<P>> : GenericNumTraits<joseph::ModP<P>> {
  using Real = joseph::ModP<P>;
  using NonInteger = joseph::ModP<P>;
  using Literal = joseph::ModP<P>;
  using Nested = joseph::ModP<P>;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 0,
    RequireInitialization = 0,
    ReadCost = 1,
    AddCost = 2,
    MulCost = 4
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};
}  // namespace Eigen

namespace joseph {

inline constexpr std::uint64_t kResiduePrime = 2305843009213693951ULL;  // 2^61 - 1
using Residue = ModP<kResiduePrime>;

/// Image of a rational in Z/pZ; throws if p divides the denominator.
template <std::uint64_t P>
ModP<P> to_residue(const Rational& q) {
  auto mod_of = [](const std::string& digits) {
    ModP<P> acc(0);
    bool neg = !digits.empty() && digits[0] == '-';
    for (std::size_t i = neg ? 1 : 0; i < digits.size(); ++i) acc = acc * ModP<P>(10) + ModP<P>(digits[i] - '0');
    return neg ? -acc : acc;
  };
  ModP<P> den = mod_of(q.denominator_str());
  if (den == ModP<P>(0)) throw std::domain_error("to_residue: denominator divisible by p");
  return mod_of(q.numerator_str()) / den;
}

/// In-place reduced row echelon form by exact Gauss-Jordan elimination.
/// Returns the pivot column of each nonzero row.
template <typename Scalar>
std::vector<int> rref(Matrix<Scalar>& m) {
  std::vector<int> pivots;
  const int rows = int(m.rows()), cols = int(m.cols());
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = -1;
    for (int i = r; i < rows; ++i)
      if (!(m(i, c) == Scalar(0))) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != r) m.row(p).swap(m.row(r));
    Scalar inv = Scalar(1) / m(r, c);
    for (int j = c; j < cols; ++j)
      if (!(m(r, j) == Scalar(0))) m(r, j) *= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || m(i, c) == Scalar(0)) continue;
      Scalar f = m(i, c);
      for (int j = c; j < cols; ++j)
        if (!(m(r, j) == Scalar(0))) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <typename Scalar>
int rank(Matrix<Scalar> m) {
  return int(rref(m).size());
}

/// Columns form a basis of the right null space.
template <typename Scalar>
Matrix<Scalar> nullspace(Matrix<Scalar> m) {
  const int cols = int(m.cols());
  auto pivots = rref(m);
  std::vector<bool> is_pivot(std::size_t(cols), false);
  for (int c : pivots) is_pivot[std::size_t(c)] = true;
  std::vector<int> free_cols;
  for (int c = 0; c < cols; ++c)
    if (!is_pivot[std::size_t(c)]) free_cols.push_back(c);
  Matrix<Scalar> basis = Matrix<Scalar>::Zero(cols, int(free_cols.size()));
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    const int f = free_cols[k];
    basis(f, int(k)) = Scalar(1);
    for (std::size_t r = 0; r < pivots.size(); ++r) basis(pivots[r], int(k)) = -m(int(r), f);
  }
  return basis;
}

/// Some exact solution of a x = b, or nullopt if inconsistent.
template <typename Scalar>
std::optional<Vector<Scalar>> solve(const Matrix<Scalar>& a, const Vector<Scalar>& b) {
  Matrix<Scalar> aug(a.rows(), a.cols() + 1);
  aug << a, b;
  auto pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == int(a.cols())) return std::nullopt;
  Vector<Scalar> x = Vector<Scalar>::Zero(a.cols());
  for (std::size_t r = 0; r < pivots.size(); ++r) x(pivots[r]) = aug(int(r), int(a.cols()));
  return x;
}

template <typename Scalar>
std::optional<Matrix<Scalar>> inverse(const Matrix<Scalar>& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("inverse: matrix not square");
  const int n = int(a.rows());
  Matrix<Scalar> aug(n, 2 * n);
  aug << a, Matrix<Scalar>::Identity(n, n);
  auto pivots = rref(aug);
  if (int(pivots.size()) < n || pivots[std::size_t(n - 1)] >= n) return std::nullopt;
  return Matrix<Scalar>(aug.rightCols(n));
}

/// Rank modulo 2^61-1; a lower bound for the rational rank.
inline int residue_rank(const RationalMatrix& m) {
  Matrix<Residue> r(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r(i, j) = to_residue<kResiduePrime>(m(i, j));
  return rank(std::move(r));
}

}  // namespace joseph
