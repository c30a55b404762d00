#include "joseph/weyl_ops.hpp"

#include <numeric>
#include <stdexcept>

#include "joseph/errors.hpp"

namespace joseph {

namespace {

void require_same_variables(const WeylElement& a, const WeylElement& b) {
  if (a.variables() != b.variables()) throw std::invalid_argument("WeylElement: variable count mismatch");
}

Exponents unit(int n, int i) {
  Exponents e(static_cast<std::size_t>(n), 0);
  e[std::size_t(i)] = 1;
  return e;
}

Rational falling(int x, int k) {
  long long r = 1;
  for (int i = 0; i < k; ++i) r *= x - i;
  return Rational(r);
}

long long binomial(int n, int k) {
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

LieContext sl_context(int n) {
  AlgebraSpec spec;
  spec.kind = AlgebraKind::SL;
  spec.n = n;
  spec.allow_out_of_range = true;
  return build_context(spec);
}

// Generic pair with <X,Y> != 0 and, when possible, XY + YX not a multiple of delta.
std::pair<Tensor, Tensor> sample_pair(const LieContext& ctx, std::mt19937_64& rng) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    Tensor x = random_element(ctx, rng), y = random_element(ctx, rng);
    if (!killing(ctx, x, y).is_zero()) return {x, y};
  }
  throw std::runtime_error("sample_pair: no pair with nonzero Killing product");
}

Tensor matrix_product(const Tensor& x, const Tensor& y) { return contract(tensor_product(x, y), 1, 2); }

// (XY+YX)^a_b Z^b d_a
WeylElement first_order(const Tensor& m) {
  const int n = m.dim();
  WeylElement op(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (!m({a, b}).is_zero()) op.add_term(unit(n, b), unit(n, a), m({a, b}));
  return op;
}

RationalVector flatten(const RationalMatrix& m) {
  RationalVector v(m.size());
  for (int j = 0; j < m.cols(); ++j)
    for (int i = 0; i < m.rows(); ++i) v(j * m.rows() + i) = m(i, j);
  return v;
}

struct Residual {
  RationalMatrix r, a, k;
};

// D_X D_Y - D_{X.Y} - 1/2 D_[X,Y], first-order part, <X,Y> identity, all on degree d.
Residual residual(const LieContext& ctx, const Tensor& x, const Tensor& y, int d) {
  const int n = ctx.n();
  WeylElement lhs = compose(dx(x), dx(y));
  lhs -= dx(cartan_project(ctx, tensor_product(x, y)));
  lhs -= Rational(1, 2) * dx(bracket(ctx, x, y));
  Tensor sym = matrix_product(x, y) + matrix_product(y, x);
  Residual out;
  out.r = action_matrix(lhs, d);
  out.a = action_matrix(first_order(sym), d);
  out.k = action_matrix(WeylElement::scalar(n, killing(ctx, x, y)), d);
  return out;
}

}  // namespace

WeylElement WeylElement::identity(int n) { return scalar(n, Rational(1)); }

WeylElement WeylElement::scalar(int n, const Rational& c) {
  WeylElement w(n);
  Exponents zero(static_cast<std::size_t>(n), 0);
  w.add_term(zero, zero, c);
  return w;
}

WeylElement WeylElement::coordinate(int n, int i) {
  WeylElement w(n);
  w.add_term(unit(n, i), Exponents(static_cast<std::size_t>(n), 0), Rational(1));
  return w;
}

WeylElement WeylElement::derivative(int n, int i) {
  WeylElement w(n);
  w.add_term(Exponents(static_cast<std::size_t>(n), 0), unit(n, i), Rational(1));
  return w;
}

WeylElement WeylElement::euler(int n) {
  WeylElement w(n);
  for (int i = 0; i < n; ++i) w.add_term(unit(n, i), unit(n, i), Rational(1));
  return w;
}

void WeylElement::add_term(const Exponents& z, const Exponents& d, const Rational& c) {
  if (int(z.size()) != n_ || int(d.size()) != n_) throw std::invalid_argument("WeylElement: exponent length mismatch");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(Key{z, d}, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

WeylElement& WeylElement::operator+=(const WeylElement& o) {
  require_same_variables(*this, o);
  for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, c);
  return *this;
}

WeylElement& WeylElement::operator-=(const WeylElement& o) {
  require_same_variables(*this, o);
  for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, -c);
  return *this;
}

WeylElement& WeylElement::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, v] : terms_) v *= c;
  return *this;
}

bool WeylElement::preserves_degree() const {
  for (const auto& [k, c] : terms_)
    if (std::accumulate(k.first.begin(), k.first.end(), 0) != std::accumulate(k.second.begin(), k.second.end(), 0))
      return false;
  return true;
}

// d^beta Z^gamma = sum_k prod_i C(beta_i, k_i) gamma_i^(k_i falling) Z^(gamma-k) d^(beta-k)
WeylElement compose(const WeylElement& p, const WeylElement& q) {
  require_same_variables(p, q);
  const int n = p.variables();
  WeylElement out(n);
  for (const auto& [pk, pc] : p.terms())
    for (const auto& [qk, qc] : q.terms()) {
      const Exponents& beta = pk.second;
      const Exponents& gamma = qk.first;
      Exponents k(static_cast<std::size_t>(n), 0);
      while (true) {
        Rational coeff = pc * qc;
        Exponents z = pk.first, d = qk.second;
        for (int i = 0; i < n; ++i) {
          const auto s = std::size_t(i);
          coeff *= Rational(binomial(beta[s], k[s])) * falling(gamma[s], k[s]);
          z[s] += gamma[s] - k[s];
          d[s] += beta[s] - k[s];
        }
        out.add_term(z, d, coeff);
        int i = 0;
        for (; i < n; ++i) {
          const auto s = std::size_t(i);
          if (k[s] < std::min(beta[s], gamma[s])) {
            ++k[s];
            break;
          }
          k[s] = 0;
        }
        if (i == n) break;
      }
    }
  return out;
}

WeylPolynomial apply(const WeylElement& op, const WeylPolynomial& f) {
  const int n = op.variables();
  WeylPolynomial out;
  for (const auto& [key, c] : op.terms())
    for (const auto& [mono, fc] : f) {
      if (int(mono.size()) != n) throw std::invalid_argument("apply: monomial length mismatch");
      Rational coeff = c * fc;
      Exponents m(static_cast<std::size_t>(n));
      bool vanishes = false;
      for (int i = 0; i < n && !vanishes; ++i) {
        const auto s = std::size_t(i);
        if (mono[s] < key.second[s]) vanishes = true;
        else {
          coeff *= falling(mono[s], key.second[s]);
          m[s] = mono[s] - key.second[s] + key.first[s];
        }
      }
      if (vanishes) continue;
      Rational& slot = out[m];
      slot += coeff;
      if (slot.is_zero()) out.erase(m);
    }
  return out;
}

std::vector<Exponents> monomials(int n, int d) {
  std::vector<Exponents> out;
  Exponents e(static_cast<std::size_t>(n), 0);
  auto rec = [&](auto&& self, int i, int left) -> void {
    if (i == n - 1) {
      e[std::size_t(i)] = left;
      out.push_back(e);
      return;
    }
    for (int k = left; k >= 0; --k) {
      e[std::size_t(i)] = k;
      self(self, i + 1, left - k);
    }
  };
  if (n > 0 && d >= 0) rec(rec, 0, d);
  return out;
}

RationalMatrix action_matrix(const WeylElement& op, int d, int max_monomials) {
  const int n = op.variables();
  if (binomial(n + d - 1, d) > max_monomials)
    throw ResourceLimitError("action_matrix: " + std::to_string(binomial(n + d - 1, d)) + " monomials exceed the ceiling of " +
                             std::to_string(max_monomials));
  if (!op.preserves_degree()) throw std::invalid_argument("action_matrix: operator does not preserve degree");
  auto basis = monomials(n, d);
  std::map<Exponents, int> index;
  for (std::size_t i = 0; i < basis.size(); ++i) index[basis[i]] = int(i);
  const int m = int(basis.size());
  RationalMatrix out = RationalMatrix::Zero(m, m);
  for (int j = 0; j < m; ++j)
    for (const auto& [mono, c] : joseph::apply(op, WeylPolynomial{{basis[std::size_t(j)], Rational(1)}}))
      out(index.at(mono), j) = c;
  return out;
}

bool is_cartan_power_element(const Tensor& x) {
  const int r = x.rank();
  if (r % 2 != 0) return false;
  std::vector<int> upper, lower;
  for (int i = 0; i < r; ++i) {
    if (x.variance(i) != (i % 2 == 0 ? Variance::Upper : Variance::Lower)) return false;
    (i % 2 == 0 ? upper : lower).push_back(i);
  }
  if (r == 0) return true;
  if (!(symmetrize(x, upper, SymmetryMode::Symmetric) == x)) return false;
  if (!(symmetrize(x, lower, SymmetryMode::Symmetric) == x)) return false;
  return contract(x, 0, 1).is_zero();
}

WeylElement dx(const Tensor& x) {
  if (!is_cartan_power_element(x))
    throw std::invalid_argument("dx: not a symmetric trace-free element of a Cartan power of sl(n)");
  const int n = x.dim(), s = x.rank() / 2;
  const Rational sign(s % 2 == 0 ? 1 : -1);
  WeylElement op(n);
  for (std::size_t f = 0; f < x.size(); ++f) {
    if (x[f].is_zero()) continue;
    auto idx = x.unflatten(f);
    Exponents z(static_cast<std::size_t>(n), 0), d(static_cast<std::size_t>(n), 0);
    for (int k = 0; k < s; ++k) {
      ++d[std::size_t(idx[std::size_t(2 * k)])];
      ++z[std::size_t(idx[std::size_t(2 * k + 1)])];
    }
    op.add_term(z, d, sign * x[f]);
  }
  return op;
}

bool commutator_check(int n, std::mt19937_64& rng, int pairs) {
  LieContext ctx = sl_context(n);
  auto holds = [&](const Tensor& x, const Tensor& y) {
    WeylElement dxv = dx(x), dy = dx(y);
    return compose(dxv, dy) - compose(dy, dxv) == dx(bracket(ctx, x, y));
  };
  if (pairs <= 0) {
    for (const auto& x : ctx.basis())
      for (const auto& y : ctx.basis())
        if (!holds(x, y)) return false;
    return true;
  }
  for (int i = 0; i < pairs; ++i)
    if (!holds(random_element(ctx, rng), random_element(ctx, rng))) return false;
  return true;
}

Tensor mixed_symmetrize(const Tensor& t) {
  return symmetrize(symmetrize(t, {0, 2}, SymmetryMode::Symmetric), {1, 3}, SymmetryMode::Symmetric);
}

AnticommutatorDecomposition anticommutator_decomposition(int n, const Tensor& x, const Tensor& y) {
  if (x.dim() != n || y.dim() != n) throw std::invalid_argument("anticommutator_decomposition: dimension mismatch");
  Tensor delta = kronecker<Rational>(n);
  Tensor sym = matrix_product(x, y) + matrix_product(y, x);
  Rational tr = contract(matrix_product(x, y), 0, 1)[0];
  const Rational nn(n);
  AnticommutatorDecomposition out;
  out.d = Rational(1) / (nn + 2) * sym;
  out.d.add_scaled(Rational(-2) * tr / (nn * (nn + 2)), delta);
  out.e = tr / (nn * (nn + 1));
  out.c = mixed_symmetrize(tensor_product(x, y));
  out.c -= mixed_symmetrize(tensor_product(out.d, delta));
  out.c.add_scaled(-out.e, mixed_symmetrize(tensor_product(delta, delta)));
  return out;
}

CompositionLaw composition_law(int n, const std::vector<int>& degrees, std::mt19937_64& rng) {
  LieContext ctx = sl_context(n);
  auto [x1, y1] = sample_pair(ctx, rng);
  auto [x2, y2] = sample_pair(ctx, rng);
  CompositionLaw law;
  bool identifiable = true;
  std::vector<std::pair<Rational, Rational>> combined;
  for (int w : degrees) {
    Residual p = residual(ctx, x1, y1, w), q = residual(ctx, x2, y2, w);
    const auto rows = p.r.size() + q.r.size();
    RationalMatrix a(rows, 2);
    RationalVector b(rows);
    a << flatten(p.a), flatten(p.k), flatten(q.a), flatten(q.k);
    b << flatten(p.r), flatten(q.r);
    if (rank(a) == 2) {
      auto sol = solve(a, b);
      if (!sol) throw std::runtime_error("composition_law: residual is not a first-order plus scalar term");
      law.c1_samples.emplace_back(Rational(w), (*sol)(0));
      law.c2_samples.emplace_back(Rational(w), -(*sol)(1));
    } else {
      // First-order term is itself a multiple of <X,Y>: only the combination is visible.
      identifiable = false;
      RationalMatrix k(rows, 1);
      k << flatten(p.k), flatten(q.k);
      auto sol = solve(k, b);
      if (!sol) throw std::runtime_error("composition_law: residual is not a multiple of <X,Y>");
      combined.emplace_back(Rational(w), (*sol)(0));
    }
  }
  const int pts = int(degrees.size());
  if (identifiable) {
    law.c1 = fit_polynomial(law.c1_samples, pts - 1);
    law.c2 = fit_polynomial(law.c2_samples, pts - 1);
  } else {
    law.c1_samples.clear();
    law.c2_samples.clear();
    law.combined = fit_polynomial(combined, pts - 1);
  }
  return law;
}

bool composition_law_holds(int n, const std::vector<int>& degrees, const Polynomial& c1, const Polynomial& c2,
                           std::mt19937_64& rng) {
  LieContext ctx = sl_context(n);
  auto [x, y] = sample_pair(ctx, rng);
  for (int w : degrees) {
    Residual p = residual(ctx, x, y, w);
    const Rational v(w);
    if (!(p.r == c1(v) * p.a - c2(v) * p.k)) return false;
  }
  return true;
}

PolynomialFit sl2_law(const std::vector<int>& degrees, std::mt19937_64& rng) {
  CompositionLaw law = composition_law(2, degrees, rng);
  if (!law.combined) throw std::runtime_error("sl2_law: combined coefficient not polynomial in the listed degrees");
  return *law.combined;
}

namespace {

// Multisets of size k over [0, n) as sorted index vectors.
std::vector<std::vector<int>> multisets(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int start) -> void {
    if (int(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int i = start; i < n; ++i) {
      cur.push_back(i);
      self(self, i);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

std::vector<int> with(std::vector<int> m, int a) {
  m.insert(std::upper_bound(m.begin(), m.end(), a), a);
  return m;
}

}  // namespace

std::vector<Tensor> cartan_power_basis(int n, int s) {
  if (s < 1) throw std::invalid_argument("cartan_power_basis: level must be positive");
  if (2 * s > kMaxTensorRank) throw ResourceLimitError("cartan_power_basis: level exceeds the tensor rank ceiling");
  auto top = multisets(n, s), below = multisets(n, s - 1);
  std::map<std::pair<std::vector<int>, std::vector<int>>, int> column;
  std::vector<std::pair<std::vector<int>, std::vector<int>>> cols;
  for (const auto& u : top)
    for (const auto& l : top) {
      column[{u, l}] = int(cols.size());
      cols.emplace_back(u, l);
    }
  RationalMatrix trace = RationalMatrix::Zero(Eigen::Index(below.size() * below.size()), Eigen::Index(cols.size()));
  int row = 0;
  for (const auto& u : below)
    for (const auto& l : below) {
      for (int a = 0; a < n; ++a) trace(row, column.at({with(u, a), with(l, a)})) += Rational(1);
      ++row;
    }
  RationalMatrix kernel = nullspace(trace);
  std::vector<Variance> var;
  for (int k = 0; k < s; ++k) {
    var.push_back(Variance::Upper);
    var.push_back(Variance::Lower);
  }
  std::vector<Tensor> out;
  for (int j = 0; j < kernel.cols(); ++j) {
    Tensor t(n, var);
    for (std::size_t f = 0; f < t.size(); ++f) {
      auto idx = t.unflatten(f);
      std::vector<int> u, l;
      for (int k = 0; k < s; ++k) {
        u.push_back(idx[std::size_t(2 * k)]);
        l.push_back(idx[std::size_t(2 * k + 1)]);
      }
      std::sort(u.begin(), u.end());
      std::sort(l.begin(), l.end());
      t[f] = kernel(column.at({u, l}), j);
    }
    out.push_back(std::move(t));
  }
  return out;
}

IndependenceWitness independence_witness(int n, int s, int d, int max_monomials) {
  auto basis = cartan_power_basis(n, s);
  IndependenceWitness w;
  w.dimension = int(basis.size());
  const auto m = binomial(n + d - 1, d);
  if (m > max_monomials)
    throw ResourceLimitError("independence_witness: " + std::to_string(m) + " monomials exceed the ceiling");
  RationalMatrix stacked(m * m, Eigen::Index(basis.size()));
  for (std::size_t j = 0; j < basis.size(); ++j) stacked.col(Eigen::Index(j)) = flatten(action_matrix(dx(basis[j]), d, max_monomials));
  w.rank = rank(stacked);
  w.injective = w.rank == w.dimension;
  return w;
}

}  // namespace joseph
