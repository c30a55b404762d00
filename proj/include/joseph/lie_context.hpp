#pragma once

#include <array>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "joseph/dense_tensor.hpp"
#include "joseph/linalg.hpp"

namespace joseph {

enum class AlgebraKind { SO, SP, SL };

/// Quadratic form used for so(n). Any non-degenerate form gives the same
/// complex algebra; the split (anti-diagonal) one has a diagonal Cartan
/// subalgebra, which the weight computations need.
enum class OrthogonalForm { Euclidean, Split };

struct AlgebraSpec {
  AlgebraKind kind = AlgebraKind::SO;
  /// so(n), sp(2n), sl(n).
  int n = 5;
  /// Admits parameters outside n >= 5 (so), n >= 2 (sp), n >= 3 (sl).
  bool allow_out_of_range = false;
  OrthogonalForm orthogonal_form = OrthogonalForm::Euclidean;
};

std::string kind_name(AlgebraKind kind);
AlgebraKind parse_kind(std::string_view name);
/// Smallest n for which the uniqueness statements hold.
int minimum_parameter(AlgebraKind kind);

/// A classical Lie algebra realized on tensors over its defining
/// representation V: skew X^{ab} for so, symmetric X^{ab} for sp, trace-free
/// X^a_b for sl. Bracket and Killing form come from the matrix realization
/// X^a_b = X^{ac} F_{cb} (F the inverse form), nothing else.
class LieContext {
 public:
  const AlgebraSpec& spec() const { return spec_; }
  AlgebraKind kind() const { return spec_.kind; }
  int n() const { return spec_.n; }
  int vector_dim() const { return vector_dim_; }
  int algebra_dim() const { return int(basis_.size()); }

  /// Upper-index form g^{ab} / omega^{ab}; absent for sl.
  const std::optional<Tensor>& form() const { return form_; }
  /// Lower-index inverse with F^{ac} F_{bc} = delta^a_b.
  const std::optional<Tensor>& inverse_form() const { return inverse_form_; }
  std::vector<Variance> element_variance() const;

  const std::vector<Tensor>& basis() const { return basis_; }
  /// Index pair whose entry is the coordinate along the matching basis element.
  const std::vector<std::array<int, 2>>& basis_positions() const { return positions_; }

  /// ad(e_i) in basis coordinates: column j holds the coordinates of [e_i, e_j].
  const RationalMatrix& ad(int i) const { return ad_.at(std::size_t(i)); }
  const RationalMatrix& killing_matrix() const { return killing_; }
  const RationalMatrix& killing_inverse() const { return killing_inverse_; }
  /// The constant c with <X,Y> = c tr(XY) in the defining representation.
  const Rational& killing_scale() const { return killing_scale_; }
  /// Coefficients of the pure-trace terms removed by the Cartan projector.
  const std::vector<Rational>& cartan_trace_coefficients() const { return trace_coeffs_; }

  /// Weights of the standard basis of V in the orthonormal epsilon basis.
  /// Present whenever the Cartan subalgebra is diagonal (all but Euclidean so).
  const std::optional<std::vector<std::vector<Rational>>>& vector_weights() const { return vector_weights_; }
  /// Weight of basis element i; requires vector_weights().
  std::vector<Rational> basis_weight(int i) const;

 private:
  friend LieContext build_context(const AlgebraSpec& spec);

  AlgebraSpec spec_;
  int vector_dim_ = 0;
  std::optional<Tensor> form_;
  std::optional<Tensor> inverse_form_;
  std::vector<Tensor> basis_;
  std::vector<std::array<int, 2>> positions_;
  std::vector<RationalMatrix> ad_;
  RationalMatrix killing_;
  RationalMatrix killing_inverse_;
  Rational killing_scale_;
  std::vector<Rational> trace_coeffs_;
  std::optional<std::vector<std::vector<Rational>>> vector_weights_;
};

/// Throws std::invalid_argument for parameters outside the admitted range.
LieContext build_context(const AlgebraSpec& spec);

bool in_algebra(const LieContext& ctx, const Tensor& x);
/// X^a_b in the defining representation.
Tensor to_matrix(const LieContext& ctx, const Tensor& x);
Tensor from_matrix(const LieContext& ctx, const Tensor& m);
RationalVector coordinates(const LieContext& ctx, const Tensor& x);
Tensor from_coordinates(const LieContext& ctx, const RationalVector& c);
Tensor random_element(const LieContext& ctx, std::mt19937_64& rng, int magnitude = 3);

Tensor bracket(const LieContext& ctx, const Tensor& x, const Tensor& y);
Rational killing(const LieContext& ctx, const Tensor& x, const Tensor& y);
/// tr(XY) in the defining representation.
Rational trace_pairing(const LieContext& ctx, const Tensor& x, const Tensor& y);

/// Action of z in g on an arbitrary tensor over V (derivation on every slot).
Tensor act(const LieContext& ctx, const Tensor& z, const Tensor& t);

/// The bracket map g (x) g -> g applied to the two algebra slot pairs starting
/// at `start`; the result occupies slots start, start+1.
Tensor pair_bracket(const LieContext& ctx, const Tensor& t, int start);
/// The Killing form applied to the two slot pairs starting at `start`.
Tensor pair_killing(const LieContext& ctx, const Tensor& t, int start);

/// True if the rank-4 tensor has the slot symmetries of an element of g (x) g.
bool in_g_tensor_g(const LieContext& ctx, const Tensor& w);

/// Projection of g (x) g onto the Cartan square (highest weight twice the
/// highest root): Young symmetrization, then removal of all traces.
Tensor cartan_project(const LieContext& ctx, const Tensor& v);
/// cartan_project on the four slots starting at `start`; other slots are spectators.
Tensor cartan_project_block(const LieContext& ctx, const Tensor& t, int start);
/// Removes all traces from a rank-4 tensor carrying the Young symmetry of the
/// Cartan square (fixed by young_part); no g (x) g requirement.
Tensor trace_free_part(const LieContext& ctx, const Tensor& v);
Tensor trace_free_block(const LieContext& ctx, const Tensor& t, int start);
/// Young-symmetrized part before trace removal (exposed for cross-checks).
Tensor young_part(const LieContext& ctx, const Tensor& v);
/// Rank of the Cartan projector, computed as its trace on g (x) g.
int cartan_projector_rank(const LieContext& ctx);

/// W = cartan + embed_bracket(bracket_part) + embed_killing(killing_part) + remainder.
/// bracket_part and killing_part are exactly what the ideal relation
/// substitutes: W ~ cartan + bracket_part + lambda * killing_part.
struct G2Decomposition {
  Tensor cartan;
  Tensor bracket_part;
  Rational killing_part;
  Tensor remainder;
};

G2Decomposition decompose_g2(const LieContext& ctx, const Tensor& w);
/// Equivariant lift g -> Lambda^2 g with (1/2) pair_bracket(embed_bracket(z)) = z.
Tensor embed_bracket(const LieContext& ctx, const Tensor& z);
/// Invariant element of g (x) g with pair_killing equal to k.
Tensor embed_killing(const LieContext& ctx, const Rational& k);

}  // namespace joseph
