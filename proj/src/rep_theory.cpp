#include "joseph/rep_theory.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

#include "joseph/errors.hpp"
#include "joseph/joseph_ideal.hpp"

namespace joseph {

namespace {

using Vec = std::vector<Rational>;

Vec unit(int dim, int i, Rational c = 1) {
  Vec v(static_cast<std::size_t>(dim));
  v[std::size_t(i)] = c;
  return v;
}

Vec add(Vec a, const Vec& b, Rational c = 1) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += c * b[i];
  return a;
}

Rational dot(const Vec& a, const Vec& b) {
  Rational s;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Weight plus(Weight a, const Weight& b, int c = 1) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += c * b[i];
  return a;
}

void reflect(const RootSystem& rs, Weight& w, int i) {
  const int c = w[std::size_t(i)];
  for (int j = 0; j < rs.rank; ++j) w[std::size_t(j)] -= c * rs.cartan_matrix[std::size_t(i)][std::size_t(j)];
}

long long to_ll(const Rational& q, const char* what) {
  if (!q.is_integer()) throw std::logic_error(std::string(what) + ": non-integral value " + q.str());
  return std::stoll(q.str());
}

}  // namespace

std::string RootSystem::name() const {
  const char* letters = "ABCD";
  return std::string(1, letters[int(type)]) + std::to_string(rank);
}

RootSystem make_root_system(RootType type, int r) {
  const int minimum = type == RootType::A ? 1 : type == RootType::D ? 3 : 2;
  if (r < minimum) throw std::invalid_argument("make_root_system: rank too small for this type");
  RootSystem rs;
  rs.type = type;
  rs.rank = r;
  const int amb = type == RootType::A ? r + 1 : r;
  auto e = [&](int i) { return unit(amb, i); };
  for (int i = 0; i + 1 < amb && i < r; ++i) {
    if (type != RootType::A && i == r - 1) break;
    rs.simple_roots.push_back(add(e(i), e(i + 1), -1));
  }
  if (type == RootType::B) rs.simple_roots.push_back(e(r - 1));
  if (type == RootType::C) rs.simple_roots.push_back(unit(amb, r - 1, 2));
  if (type == RootType::D) rs.simple_roots.push_back(add(e(r - 2), e(r - 1)));

  for (int i = 0; i < amb; ++i)
    for (int j = i + 1; j < amb; ++j) {
      rs.positive_roots.push_back(add(e(i), e(j), -1));
      if (type != RootType::A) rs.positive_roots.push_back(add(e(i), e(j)));
    }
  if (type == RootType::B)
    for (int i = 0; i < amb; ++i) rs.positive_roots.push_back(e(i));
  if (type == RootType::C)
    for (int i = 0; i < amb; ++i) rs.positive_roots.push_back(unit(amb, i, 2));

  auto prefix = [&](int k, Rational c = 1) {
    Vec v(static_cast<std::size_t>(amb));
    for (int i = 0; i <= k; ++i) v[std::size_t(i)] = c;
    return v;
  };
  for (int i = 0; i < r; ++i) {
    Vec w;
    switch (type) {
      case RootType::A: w = add(prefix(i), prefix(amb - 1, Rational(-(i + 1), amb))); break;
      case RootType::B: w = i < r - 1 ? prefix(i) : prefix(r - 1, Rational(1, 2)); break;
      case RootType::C: w = prefix(i); break;
      case RootType::D:
        if (i < r - 2) {
          w = prefix(i);
        } else if (i == r - 2) {
          w = prefix(r - 1, Rational(1, 2));
          w[std::size_t(r - 1)] = Rational(-1, 2);
        } else {
          w = prefix(r - 1, Rational(1, 2));
        }
        break;
    }
    rs.fundamental_weights.push_back(std::move(w));
  }

  for (int i = 0; i < r; ++i) {
    std::vector<int> row;
    for (int j = 0; j < r; ++j) {
      const Vec& ai = rs.simple_roots[std::size_t(i)];
      const Vec& aj = rs.simple_roots[std::size_t(j)];
      row.push_back(int(to_ll(Rational(2) * dot(ai, aj) / dot(aj, aj), "cartan matrix")));
      Rational pairing = Rational(2) * dot(rs.fundamental_weights[std::size_t(i)], aj) / dot(aj, aj);
      if (!(pairing == Rational(i == j ? 1 : 0))) throw std::logic_error("fundamental weights are not dual to the coroots");
    }
    rs.cartan_matrix.push_back(std::move(row));
  }
  rs.weight_gram = RationalMatrix(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) rs.weight_gram(i, j) = dot(rs.fundamental_weights[std::size_t(i)], rs.fundamental_weights[std::size_t(j)]);
  for (const auto& a : rs.positive_roots) rs.positive_roots_dynkin.push_back(to_dynkin(rs, a));
  return rs;
}

RootSystem root_system_of(AlgebraKind kind, int n) {
  switch (kind) {
    case AlgebraKind::SO: return make_root_system(n % 2 ? RootType::B : RootType::D, n / 2);
    case AlgebraKind::SP: return make_root_system(RootType::C, n);
    case AlgebraKind::SL: return make_root_system(RootType::A, n - 1);
  }
  throw std::invalid_argument("root_system_of: unknown kind");
}

Weight rho(const RootSystem& rs) { return Weight(static_cast<std::size_t>(rs.rank), 1); }

Rational inner(const RootSystem& rs, const Weight& a, const Weight& b) {
  Rational s;
  for (int i = 0; i < rs.rank; ++i) {
    if (a[std::size_t(i)] == 0) continue;
    for (int j = 0; j < rs.rank; ++j)
      if (b[std::size_t(j)] != 0) s += Rational(a[std::size_t(i)] * b[std::size_t(j)]) * rs.weight_gram(i, j);
  }
  return s;
}

Weight to_dynkin(const RootSystem& rs, const std::vector<Rational>& ambient) {
  Weight w;
  for (const auto& a : rs.simple_roots) {
    // Pad so that sl(n) weights given in the n-dimensional ambient space work.
    Vec v = ambient;
    v.resize(a.size());
    w.push_back(int(to_ll(Rational(2) * dot(v, a) / dot(a, a), "to_dynkin")));
  }
  return w;
}

bool is_dominant(const Weight& w) {
  return std::all_of(w.begin(), w.end(), [](int x) { return x >= 0; });
}

Weight dominant_conjugate(const RootSystem& rs, Weight w) {
  for (;;) {
    int i = 0;
    while (i < rs.rank && w[std::size_t(i)] >= 0) ++i;
    if (i == rs.rank) return w;
    reflect(rs, w, i);
  }
}

std::vector<Weight> weyl_orbit(const RootSystem& rs, const Weight& w) {
  std::set<Weight> seen{w};
  std::deque<Weight> queue{w};
  while (!queue.empty()) {
    Weight cur = queue.front();
    queue.pop_front();
    for (int i = 0; i < rs.rank; ++i) {
      if (cur[std::size_t(i)] == 0) continue;
      Weight next = cur;
      reflect(rs, next, i);
      if (seen.insert(next).second) queue.push_back(next);
    }
  }
  return {seen.begin(), seen.end()};
}

Weight highest_root(const RootSystem& rs) {
  const Weight r = rho(rs);
  const Weight* best = nullptr;
  Rational best_height;
  for (const auto& a : rs.positive_roots_dynkin) {
    Rational h = inner(rs, a, r);
    if (!best || h > best_height) {
      best = &a;
      best_height = h;
    }
  }
  return *best;
}

long long weyl_dim(const RootSystem& rs, const Weight& hw) {
  if (int(hw.size()) != rs.rank || !is_dominant(hw)) throw std::invalid_argument("weyl_dim: weight is not dominant");
  const Weight r = rho(rs);
  const Weight shifted = plus(hw, r);
  Rational d(1);
  for (const auto& a : rs.positive_roots_dynkin) d *= inner(rs, shifted, a) / inner(rs, r, a);
  return to_ll(d, "weyl_dim");
}

WeightMultiplicities dominant_multiplicities(const RootSystem& rs, const Weight& hw) {
  if (int(hw.size()) != rs.rank || !is_dominant(hw)) throw std::invalid_argument("freudenthal: weight is not dominant");
  const Weight r = rho(rs);
  std::set<Weight> seen{hw};
  std::deque<Weight> queue{hw};
  while (!queue.empty()) {
    Weight cur = queue.front();
    queue.pop_front();
    for (const auto& a : rs.positive_roots_dynkin) {
      Weight next = plus(cur, a, -1);
      if (is_dominant(next) && seen.insert(next).second) queue.push_back(next);
    }
  }
  std::vector<std::pair<Rational, Weight>> order;
  for (const auto& w : seen) order.emplace_back(inner(rs, w, r), w);
  std::sort(order.begin(), order.end(), [](const auto& x, const auto& y) { return x.first > y.first; });

  const Weight top = plus(hw, r);
  const Rational top_norm = inner(rs, top, top);
  WeightMultiplicities mult;
  for (const auto& [height, mu] : order) {
    if (mu == hw) {
      mult[mu] = 1;
      continue;
    }
    Rational num;
    for (const auto& a : rs.positive_roots_dynkin) {
      Weight nu = mu;
      for (;;) {
        nu = plus(nu, a);
        auto it = mult.find(dominant_conjugate(rs, nu));
        if (it == mult.end()) break;
        num += Rational(2 * it->second) * inner(rs, nu, a);
      }
    }
    const Weight shifted = plus(mu, r);
    const Rational den = top_norm - inner(rs, shifted, shifted);
    long long m = to_ll(num / den, "freudenthal");
    if (m > 0) mult[mu] = m;
  }
  return mult;
}

WeightMultiplicities freudenthal_multiplicities(const RootSystem& rs, const Weight& hw) {
  WeightMultiplicities all;
  for (const auto& [mu, m] : dominant_multiplicities(rs, hw))
    for (const auto& w : weyl_orbit(rs, mu)) all[w] = m;
  return all;
}

Decomposition klimyk_decompose(const RootSystem& rs, const Weight& hw1, const Weight& hw2) {
  const bool swap = weyl_dim(rs, hw2) > weyl_dim(rs, hw1);
  const Weight& big = swap ? hw2 : hw1;
  const Weight& small = swap ? hw1 : hw2;
  const Weight r = rho(rs);
  Decomposition out;
  for (const auto& [nu, m] : freudenthal_multiplicities(rs, small)) {
    Weight v = plus(plus(big, nu), r);
    int sign = 1;
    bool wall = false;
    for (;;) {
      int i = 0;
      while (i < rs.rank && v[std::size_t(i)] > 0) ++i;
      if (i == rs.rank) break;
      if (v[std::size_t(i)] == 0) {
        wall = true;
        break;
      }
      reflect(rs, v, i);
      sign = -sign;
    }
    if (wall) continue;
    out[plus(v, r, -1)] += sign * m;
  }
  for (auto it = out.begin(); it != out.end();) {
    if (it->second < 0) throw std::logic_error("klimyk: negative multiplicity");
    it = it->second == 0 ? out.erase(it) : std::next(it);
  }
  return out;
}

WeightMultiplicities character_product(const WeightMultiplicities& a, const WeightMultiplicities& b) {
  WeightMultiplicities out;
  for (const auto& [wa, ma] : a)
    for (const auto& [wb, mb] : b) out[plus(wa, wb)] += ma * mb;
  return out;
}

WeightMultiplicities adams_square(const WeightMultiplicities& ch) {
  WeightMultiplicities out;
  for (const auto& [w, m] : ch) out[plus(w, w)] += m;
  return out;
}

namespace {

WeightMultiplicities half_combination(const WeightMultiplicities& ch, int sign) {
  WeightMultiplicities sq = character_product(ch, ch);
  for (const auto& [w, m] : adams_square(ch)) sq[w] += sign * m;
  WeightMultiplicities out;
  for (const auto& [w, m] : sq) {
    if (m % 2 != 0) throw std::logic_error("square character is not halvable");
    if (m != 0) out[w] = m / 2;
  }
  return out;
}

}  // namespace

WeightMultiplicities exterior_square(const WeightMultiplicities& ch) { return half_combination(ch, -1); }
WeightMultiplicities symmetric_square(const WeightMultiplicities& ch) { return half_combination(ch, 1); }

Decomposition decompose_character(const RootSystem& rs, WeightMultiplicities ch) {
  const Weight r = rho(rs);
  Decomposition out;
  for (;;) {
    for (auto it = ch.begin(); it != ch.end();) it = it->second == 0 ? ch.erase(it) : std::next(it);
    if (ch.empty()) return out;
    const Weight* top = nullptr;
    Rational best;
    for (const auto& [w, m] : ch) {
      Rational h = inner(rs, w, r);
      if (!top || h > best) {
        top = &w;
        best = h;
      }
    }
    const Weight hw = *top;
    const long long m = ch[hw];
    if (m < 0 || !is_dominant(hw)) throw std::logic_error("decompose_character: not a genuine character");
    out[hw] += m;
    for (const auto& [w, k] : freudenthal_multiplicities(rs, hw)) ch[w] -= m * k;
  }
}

long long total_dimension(const RootSystem& rs, const Decomposition& d) {
  long long s = 0;
  for (const auto& [w, m] : d) s += m * weyl_dim(rs, w);
  return s;
}

HomDims hom_dims(const RootSystem& rs) {
  const Weight theta = highest_root(rs);
  const Decomposition ext = decompose_character(rs, exterior_square(freudenthal_multiplicities(rs, theta)));
  HomDims h{0, 0};
  for (const auto& [mu, m] : ext) {
    auto prod = klimyk_decompose(rs, mu, theta);
    auto it = prod.find(theta);
    if (it != prod.end()) h.exterior += m * it->second;
  }
  auto cartan = klimyk_decompose(rs, plus(theta, theta), theta);
  auto it = cartan.find(theta);
  h.cartan = it == cartan.end() ? 0 : it->second;
  return h;
}

HomDims hom_dims(AlgebraKind kind, int n) { return hom_dims(root_system_of(kind, n)); }

KerPhiResult dim_hom_ker_phi(const LieContext& given, bool with_psi, int max_algebra_dim) {
  if (given.algebra_dim() > max_algebra_dim)
    throw ResourceLimitError("dim_hom_ker_phi: algebra dimension " + std::to_string(given.algebra_dim()) + " exceeds " +
                             std::to_string(max_algebra_dim));
  AlgebraSpec spec = given.spec();
  spec.allow_out_of_range = true;
  spec.orthogonal_form = OrthogonalForm::Split;
  const LieContext ctx = given.vector_weights() ? given : build_context(spec);
  const RootSystem rs = root_system_of(ctx.kind(), ctx.n());
  const int dim = ctx.algebra_dim();
  const Weight theta = highest_root(rs);

  std::vector<Weight> wt;
  for (int i = 0; i < dim; ++i) wt.push_back(to_dynkin(rs, ctx.basis_weight(i)));
  auto basis_with_weight = [&](const Weight& w) {
    for (int i = 0; i < dim; ++i)
      if (wt[std::size_t(i)] == w) return i;
    throw std::logic_error("dim_hom_ker_phi: no basis element of the requested weight");
  };
  std::vector<int> raising;
  for (int j = 0; j < rs.rank; ++j) raising.push_back(basis_with_weight(rs.cartan_matrix[std::size_t(j)]));

  KerPhiResult result;
  std::map<std::array<int, 3>, int> column;
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j)
      for (int k = 0; k < dim; ++k)
        if (plus(plus(wt[std::size_t(i)], wt[std::size_t(j)]), wt[std::size_t(k)]) == theta) {
          column[{i, j, k}] = int(result.triples.size());
          result.triples.push_back({i, j, k});
        }
  const int cols = int(result.triples.size());
  result.unknowns = cols;

  // Each unknown is e_i (x) e_j (x) e_k - e_j (x) e_i (x) e_k.
  auto expand = [&](const std::array<int, 3>& t) {
    return std::array<std::pair<int, std::array<int, 3>>, 2>{{{1, t}, {-1, {t[1], t[0], t[2]}}}};
  };

  std::map<std::array<int, 4>, std::map<int, Rational>> rows;
  for (int s = 0; s < rs.rank; ++s) {
    const RationalMatrix& ad = ctx.ad(raising[std::size_t(s)]);
    for (int c = 0; c < cols; ++c)
      for (const auto& [sign, t] : expand(result.triples[std::size_t(c)]))
        for (int f = 0; f < 3; ++f)
          for (int l = 0; l < dim; ++l) {
            const Rational& a = ad(l, t[std::size_t(f)]);
            if (a.is_zero()) continue;
            std::array<int, 4> key{s, t[0], t[1], t[2]};
            key[std::size_t(f + 1)] = l;
            rows[key][c] += Rational(sign) * a;
          }
  }

  const auto& pos = ctx.basis_positions();
  std::map<std::pair<int, int>, std::vector<std::tuple<int, int, Rational>>> cartan_cache;
  auto cartan_of = [&](int q, int r) -> const std::vector<std::tuple<int, int, Rational>>& {
    auto it = cartan_cache.find({q, r});
    if (it != cartan_cache.end()) return it->second;
    Tensor c = cartan_project(ctx, tensor_product(ctx.basis()[std::size_t(q)], ctx.basis()[std::size_t(r)]));
    std::vector<std::tuple<int, int, Rational>> entries;
    for (int a = 0; a < dim; ++a)
      for (int b = 0; b < dim; ++b) {
        const Rational& v = c({pos[std::size_t(a)][0], pos[std::size_t(a)][1], pos[std::size_t(b)][0], pos[std::size_t(b)][1]});
        if (!v.is_zero()) entries.emplace_back(a, b, v);
      }
    return cartan_cache.emplace(std::make_pair(q, r), std::move(entries)).first->second;
  };
  for (int c = 0; c < cols; ++c)
    for (const auto& [sign, t] : expand(result.triples[std::size_t(c)])) {
      for (const auto& [a, b, v] : cartan_of(t[1], t[2])) rows[{-1, t[0], a, b}][c] += Rational(sign) * v;
      if (with_psi) {
        const Rational& k = ctx.killing_matrix()(t[1], t[2]);
        if (!k.is_zero()) rows[{-2, t[0], 0, 0}][c] += Rational(sign) * k;
      }
    }

  RationalMatrix system = RationalMatrix::Zero(int(rows.size()), cols);
  int r = 0;
  for (const auto& [key, entries] : rows) {
    for (const auto& [c, v] : entries) system(r, c) = v;
    ++r;
  }
  result.equations = int(rows.size());
  result.basis = nullspace(system);
  result.dimension = int(result.basis.cols());

  const int top = basis_with_weight(theta);
  Tensor s = special_tensor(ctx, ctx.basis()[std::size_t(top)]);
  RationalVector coords(cols);
  Tensor rebuilt(s.dim(), s.variances());
  for (int c = 0; c < cols; ++c) {
    const auto& t = result.triples[std::size_t(c)];
    coords(c) = s({pos[std::size_t(t[0])][0], pos[std::size_t(t[0])][1], pos[std::size_t(t[1])][0], pos[std::size_t(t[1])][1],
                   pos[std::size_t(t[2])][0], pos[std::size_t(t[2])][1]});
    if (coords(c).is_zero()) continue;
    for (const auto& [sign, u] : expand(t)) {
      Tensor piece = tensor_product(tensor_product(ctx.basis()[std::size_t(u[0])], ctx.basis()[std::size_t(u[1])]),
                                    ctx.basis()[std::size_t(u[2])]);
      rebuilt.add_scaled(Rational(sign) * coords(c), piece);
    }
  }
  result.special_tensor_in_span = rebuilt == s && solve(result.basis, coords).has_value();
  return result;
}

}  // namespace joseph
