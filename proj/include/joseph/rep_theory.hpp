#pragma once

#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "joseph/lie_context.hpp"
#include "joseph/linalg.hpp"

namespace joseph {

enum class RootType { A, B, C, D };

/// Weights are written in Dynkin labels (coefficients over fundamental weights).
using Weight = std::vector<int>;
using WeightMultiplicities = std::map<Weight, long long>;
/// Highest weight -> multiplicity.
using Decomposition = std::map<Weight, long long>;

struct RootSystem {
  RootType type = RootType::A;
  int rank = 0;
  /// Vectors in the orthonormal epsilon basis.
  std::vector<std::vector<Rational>> simple_roots;
  std::vector<std::vector<Rational>> fundamental_weights;
  std::vector<std::vector<Rational>> positive_roots;
  /// Positive roots in Dynkin labels.
  std::vector<Weight> positive_roots_dynkin;
  /// cartan_matrix[i][j] = <alpha_i, alpha_j^vee>.
  std::vector<std::vector<int>> cartan_matrix;
  /// (omega_i, omega_j)
  RationalMatrix weight_gram;

  std::string name() const;
};

/// A_r (r >= 1), B_r (r >= 2), C_r (r >= 2), D_r (r >= 3).
RootSystem make_root_system(RootType type, int rank);
/// so(2m+1) -> B_m, so(2m) -> D_m, sp(2n) -> C_n, sl(n) -> A_{n-1}.
RootSystem root_system_of(AlgebraKind kind, int n);

Weight rho(const RootSystem& rs);
/// Highest weight of the adjoint representation.
Weight highest_root(const RootSystem& rs);
Rational inner(const RootSystem& rs, const Weight& a, const Weight& b);
/// Dynkin labels of an epsilon-basis vector.
Weight to_dynkin(const RootSystem& rs, const std::vector<Rational>& ambient);
bool is_dominant(const Weight& w);
/// Dominant representative of the Weyl orbit of w.
Weight dominant_conjugate(const RootSystem& rs, Weight w);
std::vector<Weight> weyl_orbit(const RootSystem& rs, const Weight& w);

/// Throws std::invalid_argument for a non-dominant weight.
long long weyl_dim(const RootSystem& rs, const Weight& hw);

/// Multiplicities of the dominant weights of V(hw).
WeightMultiplicities dominant_multiplicities(const RootSystem& rs, const Weight& hw);
/// Multiplicities of all weights of V(hw).
WeightMultiplicities freudenthal_multiplicities(const RootSystem& rs, const Weight& hw);

/// V(hw1) (x) V(hw2), using the weights of the smaller factor.
Decomposition klimyk_decompose(const RootSystem& rs, const Weight& hw1, const Weight& hw2);

/// Splits a Weyl-invariant character into irreducibles.
Decomposition decompose_character(const RootSystem& rs, WeightMultiplicities ch);
WeightMultiplicities character_product(const WeightMultiplicities& a, const WeightMultiplicities& b);
/// Character of the second Adams operation: weight mu -> 2 mu.
WeightMultiplicities adams_square(const WeightMultiplicities& ch);
/// Characters of Lambda^2 V and S^2 V.
WeightMultiplicities exterior_square(const WeightMultiplicities& ch);
WeightMultiplicities symmetric_square(const WeightMultiplicities& ch);
long long total_dimension(const RootSystem& rs, const Decomposition& d);

struct HomDims {
  /// dim Hom_g(g, Lambda^2 g (x) g)
  long long exterior;
  /// dim Hom_g(g, g (x) Cartan square of g)
  long long cartan;
  friend bool operator==(const HomDims&, const HomDims&) = default;
};

HomDims hom_dims(const RootSystem& rs);
HomDims hom_dims(AlgebraKind kind, int n);

struct KerPhiResult {
  /// dim Hom_g(g, ker Phi) (intersected with ker Psi when requested).
  int dimension = 0;
  /// Columns: highest weight vectors of weight theta, as coordinates over the
  /// triples listed in `triples` (antisymmetrized in the first two factors).
  RationalMatrix basis;
  std::vector<std::array<int, 3>> triples;
  /// Whether the special tensor built on the highest root vector lies in the span.
  bool special_tensor_in_span = false;
  int unknowns = 0;
  int equations = 0;
};

/// Explicit equivariant maps g -> ker Phi (and ker Psi) via highest weight
/// vectors. Throws ResourceLimitError if the algebra dimension exceeds
/// max_algebra_dim.
KerPhiResult dim_hom_ker_phi(const LieContext& ctx, bool with_psi, int max_algebra_dim = 21);

}  // namespace joseph
