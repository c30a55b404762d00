#include "joseph/lie_context.hpp"

#include <stdexcept>

namespace joseph {

namespace {

constexpr Variance U = Variance::Upper;
constexpr Variance L = Variance::Lower;

Rational scalar_value(const Tensor& t) { return t[0]; }

// t with the matrix m (slots U,L) applied to one slot: upper slots get m^a_c t^c,
// lower slots get t_c m^c_b.
Tensor apply_to_slot(const Tensor& t, int slot, const Tensor& m) {
  const int n = t.dim();
  const bool upper = t.variance(slot) == U;
  Tensor out(n, t.variances());
  const std::size_t st = t.stride(slot);
  detail::for_each_index(n, t.rank(), [&](const auto& idx, std::size_t flat) {
    const std::size_t base = flat - std::size_t(idx[slot]) * st;
    Rational acc;
    for (int k = 0; k < n; ++k) {
      const Rational& v = t[base + std::size_t(k) * st];
      if (v.is_zero()) continue;
      const Rational& f = upper ? m[std::size_t(idx[slot] * n + k)] : m[std::size_t(k * n + idx[slot])];
      if (!f.is_zero()) acc += v * f;
    }
    out[flat] = std::move(acc);
  });
  return out;
}

Tensor matmul(const Tensor& a, const Tensor& b) { return contract(tensor_product(a, b), 1, 2); }

bool is_sym(const Tensor& t, int i, int j, int sign) {
  SlotPermutation p;
  for (int s = 0; s < t.rank(); ++s) p.map.push_back(s);
  std::swap(p.map[std::size_t(i)], p.map[std::size_t(j)]);
  p.sign = sign;
  return permute(t, p) == t;
}

// Metric-trace ansatz for each kind: the traces of R, and the two pure-trace
// tensors built from them.
Tensor trace_of(const LieContext& ctx, const Tensor& r) {
  if (ctx.kind() == AlgebraKind::SL) return contract(r, 2, 3);
  return contract(raise_lower(r, 0, *ctx.inverse_form()), 0, 2);
}

std::vector<Tensor> trace_terms(const LieContext& ctx, const Tensor& r) {
  const int d = ctx.vector_dim();
  if (ctx.kind() == AlgebraKind::SL) {
    Tensor u = contract(r, 2, 3);
    Rational tr = scalar_value(contract(u, 0, 1));
    Tensor delta = kronecker(d);
    auto young = [](const Tensor& t) { return symmetrize(symmetrize(t, {0, 2}, SymmetryMode::Symmetric), {1, 3}, SymmetryMode::Symmetric); };
    return {young(tensor_product(u, delta)), tr * young(tensor_product(delta, delta))};
  }
  const Tensor& g = *ctx.form();
  Tensor ric = trace_of(ctx, r);
  Rational scal = scalar_value(contract(raise_lower(ric, 0, *ctx.inverse_form()), 0, 1));
  Tensor gr = tensor_product(g, ric);
  Tensor kn = shuffle(gr, "acbd") - shuffle(gr, "adbc") - shuffle(gr, "bcad") + shuffle(gr, "bdac");
  Tensor gg = tensor_product(g, g);
  return {kn, scal * (shuffle(gg, "acbd") - shuffle(gg, "adbc"))};
}

Tensor remove_traces(const LieContext& ctx, const Tensor& r) {
  if (ctx.kind() == AlgebraKind::SP) return r;
  auto terms = trace_terms(ctx, r);
  Tensor c = r;
  const auto& coeff = ctx.cartan_trace_coefficients();
  for (std::size_t i = 0; i < terms.size(); ++i) c.add_scaled(-coeff[i], terms[i]);
  return c;
}

Tensor split_orthogonal_form(int n) {
  Tensor g(n, {U, U});
  for (int a = 0; a < n; ++a) g({a, n - 1 - a}) = 1;
  return g;
}

Tensor lower_inverse(const Tensor& form) {
  // F_{ab} with F^{ac} F_{bc} = delta: the transpose of the matrix inverse.
  const int n = form.dim();
  RationalMatrix m(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) m(a, b) = form({a, b});
  auto inv = inverse(m);
  if (!inv) throw std::logic_error("bilinear form is degenerate");
  Tensor out(n, {L, L});
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) out({a, b}) = (*inv)(b, a);
  return out;
}

void check_range(const AlgebraSpec& spec) {
  const int lowest = spec.allow_out_of_range ? (spec.kind == AlgebraKind::SO ? 3 : spec.kind == AlgebraKind::SP ? 1 : 2)
                                             : minimum_parameter(spec.kind);
  const int vdim = spec.kind == AlgebraKind::SP ? 2 * spec.n : spec.n;
  if (spec.n < lowest)
    throw std::invalid_argument(kind_name(spec.kind) + " parameter " + std::to_string(spec.n) + " below admitted minimum " +
                                std::to_string(lowest));
  if (vdim > kMaxTensorDim)
    throw std::invalid_argument("defining representation dimension " + std::to_string(vdim) + " exceeds " +
                                std::to_string(kMaxTensorDim));
}

}  // namespace

std::string kind_name(AlgebraKind kind) {
  switch (kind) {
    case AlgebraKind::SO: return "so";
    case AlgebraKind::SP: return "sp";
    case AlgebraKind::SL: return "sl";
  }
  return "?";
}

AlgebraKind parse_kind(std::string_view name) {
  if (name == "so" || name == "SO") return AlgebraKind::SO;
  if (name == "sp" || name == "SP") return AlgebraKind::SP;
  if (name == "sl" || name == "SL") return AlgebraKind::SL;
  throw std::invalid_argument("unknown algebra kind '" + std::string(name) + "'");
}

int minimum_parameter(AlgebraKind kind) {
  switch (kind) {
    case AlgebraKind::SO: return 5;
    case AlgebraKind::SP: return 2;
    case AlgebraKind::SL: return 3;
  }
  return 0;
}

std::vector<Variance> LieContext::element_variance() const {
  return kind() == AlgebraKind::SL ? std::vector<Variance>{U, L} : std::vector<Variance>{U, U};
}

std::vector<Rational> LieContext::basis_weight(int i) const {
  if (!vector_weights_) throw std::logic_error("basis_weight: Cartan subalgebra is not diagonal in this realization");
  const auto& w = *vector_weights_;
  auto [a, b] = positions_.at(std::size_t(i));
  std::vector<Rational> out = w[std::size_t(a)];
  for (std::size_t k = 0; k < out.size(); ++k) {
    if (kind() == AlgebraKind::SL)
      out[k] -= w[std::size_t(b)][k];
    else
      out[k] += w[std::size_t(b)][k];
  }
  if (kind() == AlgebraKind::SL && a == b)
    for (auto& x : out) x = 0;
  return out;
}

LieContext build_context(const AlgebraSpec& spec) {
  check_range(spec);
  LieContext ctx;
  ctx.spec_ = spec;
  const int n = spec.n;
  const int d = spec.kind == AlgebraKind::SP ? 2 * n : n;
  ctx.vector_dim_ = d;

  switch (spec.kind) {
    case AlgebraKind::SO: {
      ctx.form_ = spec.orthogonal_form == OrthogonalForm::Split ? split_orthogonal_form(d) : [&] {
        Tensor g(d, {U, U});
        for (int a = 0; a < d; ++a) g({a, a}) = 1;
        return g;
      }();
      for (int a = 0; a < d; ++a)
        for (int b = a + 1; b < d; ++b) {
          Tensor e(d, {U, U});
          e({a, b}) = 1;
          e({b, a}) = -1;
          ctx.basis_.push_back(std::move(e));
          ctx.positions_.push_back({a, b});
        }
      if (spec.orthogonal_form == OrthogonalForm::Split) {
        const int m = d / 2;
        std::vector<std::vector<Rational>> w(static_cast<std::size_t>(d), std::vector<Rational>(static_cast<std::size_t>(m)));
        for (int a = 0; a < m; ++a) w[std::size_t(a)][std::size_t(a)] = 1;
        for (int a = d - m; a < d; ++a) w[std::size_t(a)][std::size_t(d - 1 - a)] = -1;
        ctx.vector_weights_ = std::move(w);
      }
      break;
    }
    case AlgebraKind::SP: {
      Tensor omega(d, {U, U});
      for (int a = 0; a < n; ++a) {
        omega({a, a + n}) = 1;
        omega({a + n, a}) = -1;
      }
      ctx.form_ = std::move(omega);
      for (int a = 0; a < d; ++a)
        for (int b = a; b < d; ++b) {
          Tensor e(d, {U, U});
          e({a, b}) = 1;
          e({b, a}) = 1;
          ctx.basis_.push_back(std::move(e));
          ctx.positions_.push_back({a, b});
        }
      std::vector<std::vector<Rational>> w(static_cast<std::size_t>(d), std::vector<Rational>(static_cast<std::size_t>(n)));
      for (int a = 0; a < n; ++a) {
        w[std::size_t(a)][std::size_t(a)] = 1;
        w[std::size_t(a + n)][std::size_t(a)] = -1;
      }
      ctx.vector_weights_ = std::move(w);
      break;
    }
    case AlgebraKind::SL: {
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
          if (a == b) continue;
          Tensor e(d, {U, L});
          e({a, b}) = 1;
          ctx.basis_.push_back(std::move(e));
          ctx.positions_.push_back({a, b});
        }
      for (int k = 0; k + 1 < d; ++k) {
        Tensor h(d, {U, L});
        h({k, k}) = 1;
        h({d - 1, d - 1}) = -1;
        ctx.basis_.push_back(std::move(h));
        ctx.positions_.push_back({k, k});
      }
      std::vector<std::vector<Rational>> w(static_cast<std::size_t>(d), std::vector<Rational>(static_cast<std::size_t>(d)));
      for (int a = 0; a < d; ++a) w[std::size_t(a)][std::size_t(a)] = 1;
      ctx.vector_weights_ = std::move(w);
      break;
    }
  }

  if (ctx.form_) {
    ctx.inverse_form_ = lower_inverse(*ctx.form_);
    Tensor id = contract(tensor_product(*ctx.form_, *ctx.inverse_form_), 1, 3);
    if (!(id == kronecker(d))) throw std::logic_error("form and inverse do not compose to the identity");
    if (spec.kind == AlgebraKind::SP) {
      Tensor full = contract(contract(tensor_product(*ctx.form_, *ctx.inverse_form_), 0, 2), 0, 1);
      if (!(scalar_value(full) == Rational(2 * n))) throw std::logic_error("symplectic form normalization");
    }
  }

  const int dim = ctx.algebra_dim();
  ctx.ad_.assign(std::size_t(dim), RationalMatrix::Zero(dim, dim));
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      Tensor br = bracket(ctx, ctx.basis_[std::size_t(i)], ctx.basis_[std::size_t(j)]);
      ctx.ad_[std::size_t(i)].col(j) = coordinates(ctx, br);
    }

  ctx.killing_ = RationalMatrix::Zero(dim, dim);
  RationalMatrix trace_form(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      Rational acc;
      const auto& A = ctx.ad_[std::size_t(i)];
      const auto& B = ctx.ad_[std::size_t(j)];
      for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c)
          if (!A(r, c).is_zero() && !B(c, r).is_zero()) acc += A(r, c) * B(c, r);
      ctx.killing_(i, j) = acc;
      trace_form(i, j) = trace_pairing(ctx, ctx.basis_[std::size_t(i)], ctx.basis_[std::size_t(j)]);
    }
  for (int i = 0; i < dim && ctx.killing_scale_.is_zero(); ++i)
    for (int j = 0; j < dim; ++j)
      if (!trace_form(i, j).is_zero()) {
        ctx.killing_scale_ = ctx.killing_(i, j) / trace_form(i, j);
        break;
      }
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      if (!(ctx.killing_(i, j) == ctx.killing_scale_ * trace_form(i, j)))
        throw std::logic_error("Killing form is not a multiple of the trace form");
  auto kinv = inverse(ctx.killing_);
  if (!kinv) throw std::logic_error("Killing form is degenerate");
  ctx.killing_inverse_ = std::move(*kinv);

  if (spec.kind != AlgebraKind::SP) {
    std::mt19937_64 rng(0x5eedULL + std::uint64_t(d));
    std::vector<Rational> fallback;
    for (int attempt = 0; attempt < 16 && ctx.trace_coeffs_.empty(); ++attempt) {
      Tensor v(d, {});
      for (int k = 0; k < 3; ++k) {
        Tensor t = tensor_product(random_element(ctx, rng), random_element(ctx, rng));
        v = k == 0 ? t : v + t;
      }
      Tensor r = young_part(ctx, v);
      auto terms = trace_terms(ctx, r);
      auto sol = linear_solve_membership(trace_of(ctx, r), {trace_of(ctx, terms[0]), trace_of(ctx, terms[1])});
      if (!sol) throw std::logic_error("trace ansatz does not span the traces");
      // A unique solution needs independent trace images.
      if (linear_solve_membership(trace_of(ctx, terms[0]), {trace_of(ctx, terms[1])})) {
        // sl(2): the two trace images are always proportional.
        if (!trace_of(ctx, terms[0]).is_zero()) fallback = *sol;
        continue;
      }
      ctx.trace_coeffs_ = *sol;
    }
    if (ctx.trace_coeffs_.empty()) ctx.trace_coeffs_ = fallback;
    if (ctx.trace_coeffs_.empty()) throw std::logic_error("could not fix trace-removal coefficients");
    Tensor probe = young_part(ctx, tensor_product(random_element(ctx, rng), random_element(ctx, rng)));
    if (!trace_of(ctx, remove_traces(ctx, probe)).is_zero()) throw std::logic_error("trace removal incomplete");
  }
  return ctx;
}

bool in_algebra(const LieContext& ctx, const Tensor& x) {
  if (x.dim() != ctx.vector_dim() || x.variances() != ctx.element_variance()) return false;
  switch (ctx.kind()) {
    case AlgebraKind::SO: return is_sym(x, 0, 1, -1);
    case AlgebraKind::SP: return is_sym(x, 0, 1, 1);
    case AlgebraKind::SL: return contract(x, 0, 1)[0].is_zero();
  }
  return false;
}

static void require_element(const LieContext& ctx, const Tensor& x, const char* what) {
  if (!in_algebra(ctx, x)) throw std::invalid_argument(std::string(what) + ": input is not in the algebra");
}

Tensor to_matrix(const LieContext& ctx, const Tensor& x) {
  if (ctx.kind() == AlgebraKind::SL) return x;
  return raise_lower(x, 1, *ctx.inverse_form());
}

Tensor from_matrix(const LieContext& ctx, const Tensor& m) {
  if (ctx.kind() == AlgebraKind::SL) return m;
  return raise_lower(m, 1, *ctx.form());
}

RationalVector coordinates(const LieContext& ctx, const Tensor& x) {
  RationalVector c(ctx.algebra_dim());
  for (int i = 0; i < ctx.algebra_dim(); ++i) {
    auto [a, b] = ctx.basis_positions()[std::size_t(i)];
    c(i) = x({a, b});
  }
  return c;
}

Tensor from_coordinates(const LieContext& ctx, const RationalVector& c) {
  Tensor x(ctx.vector_dim(), ctx.element_variance());
  for (int i = 0; i < ctx.algebra_dim(); ++i)
    if (!c(i).is_zero()) x.add_scaled(c(i), ctx.basis()[std::size_t(i)]);
  return x;
}

Tensor random_element(const LieContext& ctx, std::mt19937_64& rng, int magnitude) {
  std::uniform_int_distribution<int> dist(-magnitude, magnitude);
  RationalVector c(ctx.algebra_dim());
  for (int i = 0; i < ctx.algebra_dim(); ++i) c(i) = dist(rng);
  return from_coordinates(ctx, c);
}

Tensor bracket(const LieContext& ctx, const Tensor& x, const Tensor& y) {
  require_element(ctx, x, "bracket");
  require_element(ctx, y, "bracket");
  Tensor mx = to_matrix(ctx, x), my = to_matrix(ctx, y);
  return from_matrix(ctx, matmul(mx, my) - matmul(my, mx));
}

Rational trace_pairing(const LieContext& ctx, const Tensor& x, const Tensor& y) {
  require_element(ctx, x, "trace_pairing");
  require_element(ctx, y, "trace_pairing");
  return scalar_value(contract(matmul(to_matrix(ctx, x), to_matrix(ctx, y)), 0, 1));
}

Rational killing(const LieContext& ctx, const Tensor& x, const Tensor& y) {
  return ctx.killing_scale() * trace_pairing(ctx, x, y);
}

Tensor act(const LieContext& ctx, const Tensor& z, const Tensor& t) {
  require_element(ctx, z, "act");
  Tensor m = to_matrix(ctx, z);
  Tensor out(t.dim(), t.variances());
  for (int s = 0; s < t.rank(); ++s) {
    Tensor part = apply_to_slot(t, s, m);
    if (t.variance(s) == U)
      out += part;
    else
      out -= part;
  }
  return out;
}

static void require_pairs(const LieContext& ctx, const Tensor& t, int start, const char* what) {
  if (start < 0 || start + 4 > t.rank()) throw std::invalid_argument(std::string(what) + ": slot pair out of range");
  auto ev = ctx.element_variance();
  for (int k = 0; k < 4; ++k)
    if (t.variance(start + k) != ev[std::size_t(k % 2)])
      throw std::invalid_argument(std::string(what) + ": slot variance does not match the algebra");
}

Tensor pair_bracket(const LieContext& ctx, const Tensor& t, int start) {
  require_pairs(ctx, t, start, "pair_bracket");
  Tensor m = t;
  if (ctx.inverse_form()) {
    m = raise_lower(m, start + 1, *ctx.inverse_form());
    m = raise_lower(m, start + 3, *ctx.inverse_form());
  }
  Tensor xy = contract(m, start + 1, start + 2);
  Tensor yx = contract(m, start, start + 3);
  SlotPermutation swap;
  for (int s = 0; s < yx.rank(); ++s) swap.map.push_back(s);
  std::swap(swap.map[std::size_t(start)], swap.map[std::size_t(start + 1)]);
  Tensor b = xy - permute(yx, swap);
  if (ctx.form()) b = raise_lower(b, start + 1, *ctx.form());
  return b;
}

Tensor pair_killing(const LieContext& ctx, const Tensor& t, int start) {
  require_pairs(ctx, t, start, "pair_killing");
  Tensor m = t;
  if (ctx.inverse_form()) {
    m = raise_lower(m, start + 1, *ctx.inverse_form());
    m = raise_lower(m, start + 3, *ctx.inverse_form());
  }
  Tensor k = contract(contract(m, start + 1, start + 2), start, start + 1);
  k *= ctx.killing_scale();
  return k;
}

bool in_g_tensor_g(const LieContext& ctx, const Tensor& w) {
  if (w.rank() != 4 || w.dim() != ctx.vector_dim()) return false;
  auto ev = ctx.element_variance();
  for (int k = 0; k < 4; ++k)
    if (w.variance(k) != ev[std::size_t(k % 2)]) return false;
  switch (ctx.kind()) {
    case AlgebraKind::SO: return is_sym(w, 0, 1, -1) && is_sym(w, 2, 3, -1);
    case AlgebraKind::SP: return is_sym(w, 0, 1, 1) && is_sym(w, 2, 3, 1);
    case AlgebraKind::SL: return contract(w, 0, 1).is_zero() && contract(w, 2, 3).is_zero();
  }
  return false;
}

Tensor young_part(const LieContext& ctx, const Tensor& v) {
  switch (ctx.kind()) {
    case AlgebraKind::SO: {
      Tensor r = v + shuffle(v, "cdab");
      r *= Rational(1, 2);
      return r - symmetrize(r, {0, 1, 2, 3}, SymmetryMode::Antisymmetric);
    }
    case AlgebraKind::SP: return symmetrize(v, {0, 1, 2, 3}, SymmetryMode::Symmetric);
    case AlgebraKind::SL:
      return symmetrize(symmetrize(v, {0, 2}, SymmetryMode::Symmetric), {1, 3}, SymmetryMode::Symmetric);
  }
  return v;
}

Tensor cartan_project(const LieContext& ctx, const Tensor& v) {
  if (!in_g_tensor_g(ctx, v)) throw std::invalid_argument("cartan_project: input is not in g (x) g");
  return remove_traces(ctx, young_part(ctx, v));
}

Tensor cartan_project_block(const LieContext& ctx, const Tensor& t, int start) {
  return apply_blockwise(t, start, [&](const Tensor& block) { return cartan_project(ctx, block); });
}

Tensor trace_free_part(const LieContext& ctx, const Tensor& v) {
  if (!(young_part(ctx, v) == v)) throw std::invalid_argument("trace_free_part: input lacks the Cartan-square symmetry");
  return remove_traces(ctx, v);
}

Tensor trace_free_block(const LieContext& ctx, const Tensor& t, int start) {
  return apply_blockwise(t, start, [&](const Tensor& block) { return trace_free_part(ctx, block); });
}

int cartan_projector_rank(const LieContext& ctx) {
  const auto& basis = ctx.basis();
  const auto& pos = ctx.basis_positions();
  Rational trace;
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j) {
      Tensor c = cartan_project(ctx, tensor_product(basis[i], basis[j]));
      trace += c({pos[i][0], pos[i][1], pos[j][0], pos[j][1]});
    }
  if (!trace.is_integer()) throw std::logic_error("cartan projector trace is not an integer");
  return std::stoi(trace.str());
}

Tensor embed_bracket(const LieContext& ctx, const Tensor& z) {
  require_element(ctx, z, "embed_bracket");
  const auto& basis = ctx.basis();
  const auto& kinv = ctx.killing_inverse();
  Tensor out(ctx.vector_dim(), {});
  bool first = true;
  for (int i = 0; i < ctx.algebra_dim(); ++i) {
    RationalVector dual = kinv.col(i);
    Tensor term = tensor_product(basis[std::size_t(i)], bracket(ctx, from_coordinates(ctx, dual), z));
    if (first) {
      out = term;
      first = false;
    } else {
      out += term;
    }
  }
  out *= Rational(2);
  return out;
}

Tensor embed_killing(const LieContext& ctx, const Rational& k) {
  const auto& basis = ctx.basis();
  const auto& kinv = ctx.killing_inverse();
  Tensor out = tensor_product(basis[0], from_coordinates(ctx, kinv.col(0)));
  for (int i = 1; i < ctx.algebra_dim(); ++i)
    out += tensor_product(basis[std::size_t(i)], from_coordinates(ctx, kinv.col(i)));
  out *= k / Rational(ctx.algebra_dim());
  return out;
}

G2Decomposition decompose_g2(const LieContext& ctx, const Tensor& w) {
  if (!in_g_tensor_g(ctx, w)) throw std::invalid_argument("decompose_g2: input is not in g (x) g");
  G2Decomposition out;
  out.cartan = cartan_project(ctx, w);
  out.bracket_part = pair_bracket(ctx, w, 0);
  out.bracket_part *= Rational(1, 2);
  out.killing_part = pair_killing(ctx, w, 0)[0];
  out.remainder = w - out.cartan - embed_bracket(ctx, out.bracket_part) - embed_killing(ctx, out.killing_part);
  return out;
}

}  // namespace joseph
