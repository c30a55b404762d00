#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "joseph/rational.hpp"

namespace joseph {

enum class Variance : std::uint8_t { Upper, Lower };

enum class SymmetryMode { Symmetric, Antisymmetric };

inline constexpr int kMaxTensorDim = 12;
inline constexpr int kMaxTensorRank = 6;

/// Dense multi-index array over one vector space of dimension `dim`, with an
/// upper/lower flag per slot. Storage is row-major in slot order.
template <typename Scalar>
class DenseTensor {
 public:
  using scalar_type = Scalar;
  using Index = std::array<int, kMaxTensorRank>;

  DenseTensor() : dim_(1), data_(1, Scalar(0)) {}

  DenseTensor(int dim, std::vector<Variance> variance) : dim_(dim), variance_(std::move(variance)) {
    if (dim_ < 1 || dim_ > kMaxTensorDim)
      throw std::invalid_argument("DenseTensor: dim must lie in [1, " + std::to_string(kMaxTensorDim) + "]");
    if (rank() > kMaxTensorRank)
      throw std::invalid_argument("DenseTensor: rank exceeds " + std::to_string(kMaxTensorRank));
    std::size_t n = 1;
    for (int i = 0; i < rank(); ++i) n *= std::size_t(dim_);
    data_.assign(n, Scalar(0));
    strides_.fill(0);
    std::size_t s = 1;
    for (int i = rank() - 1; i >= 0; --i) {
      strides_[i] = s;
      s *= std::size_t(dim_);
    }
  }

  static DenseTensor scalar(int dim, Scalar value) {
    DenseTensor t(dim, {});
    t.data_[0] = std::move(value);
    return t;
  }

  int dim() const { return dim_; }
  int rank() const { return int(variance_.size()); }
  std::size_t size() const { return data_.size(); }
  Variance variance(int slot) const { return variance_.at(std::size_t(slot)); }
  const std::vector<Variance>& variances() const { return variance_; }
  std::size_t stride(int slot) const { return strides_[std::size_t(slot)]; }

  std::span<const Scalar> data() const { return data_; }
  std::span<Scalar> data() { return data_; }

  Scalar& operator[](std::size_t flat) { return data_[flat]; }
  const Scalar& operator[](std::size_t flat) const { return data_[flat]; }

  std::size_t flat_index(std::span<const int> idx) const {
    if (int(idx.size()) != rank()) throw std::invalid_argument("DenseTensor: index arity mismatch");
    std::size_t f = 0;
    for (int i = 0; i < rank(); ++i) {
      if (idx[i] < 0 || idx[i] >= dim_) throw std::out_of_range("DenseTensor: index out of range");
      f += std::size_t(idx[i]) * strides_[i];
    }
    return f;
  }

  Index unflatten(std::size_t flat) const {
    Index idx{};
    for (int i = rank() - 1; i >= 0; --i) {
      idx[i] = int(flat % std::size_t(dim_));
      flat /= std::size_t(dim_);
    }
    return idx;
  }

  Scalar& operator()(std::initializer_list<int> idx) { return data_[flat_index({idx.begin(), idx.size()})]; }
  const Scalar& operator()(std::initializer_list<int> idx) const {
    return data_[flat_index({idx.begin(), idx.size()})];
  }
  Scalar& at(std::span<const int> idx) { return data_[flat_index(idx)]; }
  const Scalar& at(std::span<const int> idx) const { return data_[flat_index(idx)]; }

  bool same_shape(const DenseTensor& o) const { return dim_ == o.dim_ && variance_ == o.variance_; }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Scalar& x) { return x == Scalar(0); });
  }

  std::size_t nonzeros() const {
    return std::size_t(std::count_if(data_.begin(), data_.end(), [](const Scalar& x) { return !(x == Scalar(0)); }));
  }

  DenseTensor& operator+=(const DenseTensor& o) {
    require_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i)
      if (!(o.data_[i] == Scalar(0))) data_[i] += o.data_[i];
    return *this;
  }
  DenseTensor& operator-=(const DenseTensor& o) {
    require_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i)
      if (!(o.data_[i] == Scalar(0))) data_[i] -= o.data_[i];
    return *this;
  }
  DenseTensor& operator*=(const Scalar& c) {
    if (c == Scalar(0)) {
      std::fill(data_.begin(), data_.end(), Scalar(0));
      return *this;
    }
    for (auto& x : data_)
      if (!(x == Scalar(0))) x *= c;
    return *this;
  }

  /// this += c * o
  DenseTensor& add_scaled(const Scalar& c, const DenseTensor& o) {
    require_same_shape(o);
    if (c == Scalar(0)) return *this;
    for (std::size_t i = 0; i < data_.size(); ++i)
      if (!(o.data_[i] == Scalar(0))) data_[i] += c * o.data_[i];
    return *this;
  }

  friend DenseTensor operator+(DenseTensor a, const DenseTensor& b) { return a += b; }
  friend DenseTensor operator-(DenseTensor a, const DenseTensor& b) { return a -= b; }
  friend DenseTensor operator*(const Scalar& c, DenseTensor a) { return a *= c; }
  friend DenseTensor operator-(DenseTensor a) { return a *= Scalar(-1); }

  /// Exact entrywise equality including shape and variance.
  friend bool operator==(const DenseTensor& a, const DenseTensor& b) {
    return a.same_shape(b) && a.data_ == b.data_;
  }

 private:
  void require_same_shape(const DenseTensor& o) const {
    if (!same_shape(o)) throw std::invalid_argument("DenseTensor: shape or variance mismatch");
  }

  int dim_;
  std::vector<Variance> variance_;
  std::vector<Scalar> data_;
  std::array<std::size_t, kMaxTensorRank> strides_{};
};

using Tensor = DenseTensor<Rational>;

/// A reordering of slots: result slot k is input slot `map[k]`, optionally
/// with an overall sign.
struct SlotPermutation {
  std::vector<int> map;
  int sign = 1;

  bool is_bijection() const {
    std::vector<int> sorted = map;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i)
      if (sorted[i] != int(i)) return false;
    return true;
  }
};

namespace detail {

/// Calls f(index, flat) for every multi-index of a (dim, rank) array in
/// row-major order.
template <typename F>
void for_each_index(int dim, int rank, F&& f) {
  std::array<int, kMaxTensorRank> idx{};
  std::size_t total = 1;
  for (int i = 0; i < rank; ++i) total *= std::size_t(dim);
  for (std::size_t flat = 0; flat < total; ++flat) {
    f(idx, flat);
    for (int s = rank - 1; s >= 0; --s) {
      if (++idx[s] < dim) break;
      idx[s] = 0;
    }
  }
}

inline std::vector<std::vector<int>> permutations_of(int k) {
  std::vector<int> p(static_cast<std::size_t>(k));
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

inline int permutation_sign(const std::vector<int>& p) {
  int sign = 1;
  std::vector<bool> seen(p.size(), false);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = std::size_t(p[j])) {
      seen[j] = true;
      ++len;
    }
    if (len % 2 == 0) sign = -sign;
  }
  return sign;
}

}  // namespace detail

/// Slot reordering. Result slot k carries input slot perm.map[k].
template <typename Scalar>
DenseTensor<Scalar> permute(const DenseTensor<Scalar>& t, const SlotPermutation& perm) {
  const int r = t.rank();
  if (int(perm.map.size()) != r || !perm.is_bijection())
    throw std::invalid_argument("permute: not a permutation of the tensor's slots");
  std::vector<Variance> var(std::size_t(r), Variance::Upper);
  std::array<std::size_t, kMaxTensorRank> in_stride{};
  for (int k = 0; k < r; ++k) {
    var[std::size_t(k)] = t.variance(perm.map[std::size_t(k)]);
    in_stride[std::size_t(k)] = t.stride(perm.map[std::size_t(k)]);
  }
  DenseTensor<Scalar> out(t.dim(), var);
  const Scalar sign(perm.sign);
  detail::for_each_index(t.dim(), r, [&](const auto& idx, std::size_t flat) {
    std::size_t src = 0;
    for (int k = 0; k < r; ++k) src += std::size_t(idx[k]) * in_stride[k];
    const Scalar& v = t[src];
    if (!(v == Scalar(0))) out[flat] = perm.sign == 1 ? v : sign * v;
  });
  return out;
}

/// Index relabelling in the style of abstract index notation: with slots of
/// `t` named by the letters of `pattern`, returns the tensor whose slots are
/// those letters in alphabetical order. So `shuffle(S, "abefcd")(a,b,c,d,e,f)`
/// equals `S(a,b,e,f,c,d)`.
template <typename Scalar>
DenseTensor<Scalar> shuffle(const DenseTensor<Scalar>& t, std::string_view pattern) {
  if (int(pattern.size()) != t.rank()) throw std::invalid_argument("shuffle: pattern length must equal rank");
  std::string sorted(pattern);
  std::sort(sorted.begin(), sorted.end());
  SlotPermutation perm;
  for (char c : sorted) perm.map.push_back(int(pattern.find(c)));
  if (!perm.is_bijection()) throw std::invalid_argument("shuffle: repeated index letter");
  return permute(t, perm);
}

/// Pairs slot i with slot j (i < j) and sums; surviving slots keep their order.
template <typename Scalar>
DenseTensor<Scalar> contract(const DenseTensor<Scalar>& t, int i, int j) {
  if (!(0 <= i && i < j && j < t.rank())) throw std::invalid_argument("contract: need 0 <= i < j < rank");
  if (t.variance(i) == t.variance(j))
    throw std::invalid_argument("contract: slots have equal variance; raise or lower one first");
  std::vector<Variance> var;
  std::array<std::size_t, kMaxTensorRank> in_stride{};
  for (int s = 0; s < t.rank(); ++s) {
    if (s == i || s == j) continue;
    in_stride[var.size()] = t.stride(s);
    var.push_back(t.variance(s));
  }
  DenseTensor<Scalar> out(t.dim(), var);
  const std::size_t diag = t.stride(i) + t.stride(j);
  const int r = out.rank();
  detail::for_each_index(t.dim(), r, [&](const auto& idx, std::size_t flat) {
    std::size_t base = 0;
    for (int k = 0; k < r; ++k) base += std::size_t(idx[k]) * in_stride[k];
    Scalar acc(0);
    for (int k = 0; k < t.dim(); ++k) {
      const Scalar& v = t[base + std::size_t(k) * diag];
      if (!(v == Scalar(0))) acc += v;
    }
    out[flat] = std::move(acc);
  });
  return out;
}

template <typename Scalar>
DenseTensor<Scalar> tensor_product(const DenseTensor<Scalar>& s, const DenseTensor<Scalar>& t) {
  if (s.dim() != t.dim()) throw std::invalid_argument("tensor_product: dimension mismatch");
  std::vector<Variance> var = s.variances();
  var.insert(var.end(), t.variances().begin(), t.variances().end());
  DenseTensor<Scalar> out(s.dim(), var);
  const std::size_t m = t.size();
  for (std::size_t a = 0; a < s.size(); ++a) {
    if (s[a] == Scalar(0)) continue;
    for (std::size_t b = 0; b < m; ++b)
      if (!(t[b] == Scalar(0))) out[a * m + b] = s[a] * t[b];
  }
  return out;
}

/// Average over all permutations of `slots` (signed for Antisymmetric).
template <typename Scalar>
DenseTensor<Scalar> symmetrize(const DenseTensor<Scalar>& t, std::span<const int> slots, SymmetryMode mode) {
  for (int s : slots) {
    if (s < 0 || s >= t.rank()) throw std::invalid_argument("symmetrize: slot out of range");
    if (t.variance(s) != t.variance(slots[0]))
      throw std::invalid_argument("symmetrize: slots must share variance");
  }
  const int k = int(slots.size());
  DenseTensor<Scalar> acc(t.dim(), t.variances());
  auto perms = detail::permutations_of(k);
  for (const auto& p : perms) {
    SlotPermutation perm;
    perm.map.resize(std::size_t(t.rank()));
    std::iota(perm.map.begin(), perm.map.end(), 0);
    for (int q = 0; q < k; ++q) perm.map[std::size_t(slots[q])] = slots[std::size_t(p[q])];
    if (mode == SymmetryMode::Antisymmetric) perm.sign = detail::permutation_sign(p);
    acc += permute(t, perm);
  }
  acc *= Scalar(1) / Scalar(static_cast<long long>(perms.size()));
  return acc;
}

template <typename Scalar>
DenseTensor<Scalar> symmetrize(const DenseTensor<Scalar>& t, std::initializer_list<int> slots, SymmetryMode mode) {
  return symmetrize(t, std::span<const int>(slots.begin(), slots.size()), mode);
}

/// Flips the variance of `slot` with a rank-2 form of the opposite variance.
/// Lowering contracts with the form's first slot (X_b = X^a F_ab); raising
/// contracts with its second slot (X^a = F^ab X_b).
template <typename Scalar>
DenseTensor<Scalar> raise_lower(const DenseTensor<Scalar>& t, int slot, const DenseTensor<Scalar>& form) {
  if (form.rank() != 2) throw std::invalid_argument("raise_lower: form must have rank 2");
  if (form.dim() != t.dim()) throw std::invalid_argument("raise_lower: dimension mismatch");
  if (form.variance(0) != form.variance(1)) throw std::invalid_argument("raise_lower: form slots must share variance");
  if (slot < 0 || slot >= t.rank()) throw std::invalid_argument("raise_lower: slot out of range");
  if (form.variance(0) == t.variance(slot))
    throw std::invalid_argument("raise_lower: form variance must be opposite to the slot's");
  const bool lowering = t.variance(slot) == Variance::Upper;
  std::vector<Variance> var = t.variances();
  var[std::size_t(slot)] = lowering ? Variance::Lower : Variance::Upper;
  DenseTensor<Scalar> out(t.dim(), var);
  const std::size_t st = t.stride(slot);
  const int n = t.dim();
  detail::for_each_index(n, t.rank(), [&](const auto& idx, std::size_t flat) {
    const std::size_t base = flat - std::size_t(idx[slot]) * st;
    Scalar acc(0);
    for (int k = 0; k < n; ++k) {
      const Scalar& v = t[base + std::size_t(k) * st];
      if (v == Scalar(0)) continue;
      const Scalar& f = lowering ? form[std::size_t(k * n + idx[slot])] : form[std::size_t(idx[slot] * n + k)];
      if (!(f == Scalar(0))) acc += v * f;
    }
    out[flat] = std::move(acc);
  });
  return out;
}

/// Exact coordinates of `target` in span(basis), or nullopt when it is not in
/// the span. Dependent bases are allowed; free coordinates are set to zero.
template <typename Scalar>
std::optional<std::vector<Scalar>> linear_solve_membership(const DenseTensor<Scalar>& target,
                                                           const std::vector<DenseTensor<Scalar>>& basis) {
  const std::size_t k = basis.size();
  for (const auto& b : basis)
    if (!b.same_shape(target)) throw std::invalid_argument("linear_solve_membership: shape mismatch");
  // Streaming row reduction: each pivot row holds k coefficients plus the rhs.
  struct PivotRow {
    std::size_t col;
    std::vector<Scalar> row;
  };
  std::vector<PivotRow> pivots;
  std::vector<Scalar> row(k + 1);
  for (std::size_t e = 0; e < target.size(); ++e) {
    bool any = !(target[e] == Scalar(0));
    for (std::size_t c = 0; c < k && !any; ++c) any = !(basis[c][e] == Scalar(0));
    if (!any) continue;
    for (std::size_t c = 0; c < k; ++c) row[c] = basis[c][e];
    row[k] = target[e];
    for (const auto& p : pivots) {
      if (row[p.col] == Scalar(0)) continue;
      Scalar f = row[p.col];
      for (std::size_t c = 0; c <= k; ++c)
        if (!(p.row[c] == Scalar(0))) row[c] -= f * p.row[c];
    }
    std::size_t lead = k;
    for (std::size_t c = 0; c < k; ++c)
      if (!(row[c] == Scalar(0))) {
        lead = c;
        break;
      }
    if (lead == k) {
      if (!(row[k] == Scalar(0))) return std::nullopt;
      continue;
    }
    Scalar inv = Scalar(1) / row[lead];
    for (auto& x : row) x *= inv;
    for (auto& p : pivots) {
      if (p.row[lead] == Scalar(0)) continue;
      Scalar f = p.row[lead];
      for (std::size_t c = 0; c <= k; ++c) p.row[c] -= f * row[c];
    }
    pivots.push_back({lead, row});
    if (pivots.size() == k) {
      // Full rank reached: remaining rows only need a consistency check.
      std::vector<Scalar> coeff(k, Scalar(0));
      for (const auto& p : pivots) coeff[p.col] = p.row[k];
      for (std::size_t e2 = e + 1; e2 < target.size(); ++e2) {
        Scalar v(0);
        for (std::size_t c = 0; c < k; ++c)
          if (!(basis[c][e2] == Scalar(0)) && !(coeff[c] == Scalar(0))) v += coeff[c] * basis[c][e2];
        if (!(v == target[e2])) return std::nullopt;
      }
      return coeff;
    }
  }
  std::vector<Scalar> coeff(k, Scalar(0));
  for (const auto& p : pivots) coeff[p.col] = p.row[k];
  return coeff;
}

/// Applies a rank-4 map to the four consecutive slots starting at `start`,
/// treating every other slot as a spectator.
template <typename Scalar, typename F>
DenseTensor<Scalar> apply_blockwise(const DenseTensor<Scalar>& t, int start, F&& block_map) {
  const int r = t.rank();
  if (start < 0 || start + 4 > r) throw std::invalid_argument("apply_blockwise: block out of range");
  if (r == 4) return block_map(t);
  SlotPermutation to_front;
  for (int s = start; s < start + 4; ++s) to_front.map.push_back(s);
  for (int s = 0; s < r; ++s)
    if (s < start || s >= start + 4) to_front.map.push_back(s);
  DenseTensor<Scalar> moved = permute(t, to_front);
  std::vector<Variance> block_var(moved.variances().begin(), moved.variances().begin() + 4);
  const std::size_t spectators = moved.stride(3);
  const std::size_t block_size = moved.size() / spectators;
  DenseTensor<Scalar> result(moved.dim(), moved.variances());
  for (std::size_t s = 0; s < spectators; ++s) {
    DenseTensor<Scalar> slice(t.dim(), block_var);
    bool any = false;
    for (std::size_t b = 0; b < block_size; ++b) {
      slice[b] = moved[b * spectators + s];
      any = any || !(slice[b] == Scalar(0));
    }
    if (!any) continue;
    DenseTensor<Scalar> mapped = block_map(slice);
    if (!mapped.same_shape(slice)) throw std::logic_error("apply_blockwise: block map changed shape");
    for (std::size_t b = 0; b < block_size; ++b) result[b * spectators + s] = mapped[b];
  }
  SlotPermutation back;
  back.map.assign(std::size_t(r), 0);
  for (int k = 0; k < r; ++k) back.map[std::size_t(to_front.map[std::size_t(k)])] = k;
  return permute(result, back);
}

/// Kronecker delta with one upper and one lower slot.
template <typename Scalar = Rational>
DenseTensor<Scalar> kronecker(int dim) {
  DenseTensor<Scalar> d(dim, {Variance::Upper, Variance::Lower});
  for (int i = 0; i < dim; ++i) d({i, i}) = Scalar(1);
  return d;
}

}  // namespace joseph
