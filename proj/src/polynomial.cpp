#include "joseph/polynomial.hpp"

#include <stdexcept>

#include "joseph/linalg.hpp"

namespace joseph {

Polynomial::Polynomial(std::vector<Rational> coefficients) : coeffs_(std::move(coefficients)) { trim(); }

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Rational Polynomial::coefficient(int k) const {
  return k >= 0 && k < int(coeffs_.size()) ? coeffs_[std::size_t(k)] : Rational(0);
}

Rational Polynomial::operator()(const Rational& x) const {
  Rational acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) {
  if (is_zero() || o.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  std::vector<Rational> out(coeffs_.size() + o.coeffs_.size() - 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * o.coeffs_[j];
  coeffs_ = std::move(out);
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  for (auto& x : coeffs_) x *= c;
  trim();
  return *this;
}

std::string Polynomial::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::string out;
  for (int k = degree(); k >= 0; --k) {
    const Rational& c = coeffs_[std::size_t(k)];
    if (c.is_zero()) continue;
    Rational mag = c.abs();
    if (out.empty())
      out += c.sign() < 0 ? "-" : "";
    else
      out += c.sign() < 0 ? " - " : " + ";
    std::string mono = k == 0 ? "" : (k == 1 ? var : var + "^" + std::to_string(k));
    if (mono.empty())
      out += mag.str();
    else if (mag == Rational(1))
      out += mono;
    else
      out += mag.str() + "*" + mono;
  }
  return out;
}

Polynomial interpolate(const std::vector<std::pair<Rational, Rational>>& points) {
  const std::size_t m = points.size();
  std::vector<Rational> div(m);
  for (std::size_t i = 0; i < m; ++i) div[i] = points[i].second;
  for (std::size_t level = 1; level < m; ++level)
    for (std::size_t i = m - 1; i >= level; --i) {
      Rational dx = points[i].first - points[i - level].first;
      if (dx.is_zero()) throw std::invalid_argument("interpolate: repeated abscissa");
      div[i] = (div[i] - div[i - 1]) / dx;
    }
  Polynomial result;
  for (std::size_t i = m; i-- > 0;) {
    result *= Polynomial::linear_factor(points[i].first);
    result += Polynomial::constant(div[i]);
  }
  return result;
}

std::optional<PolynomialFit> fit_polynomial(const std::vector<std::pair<Rational, Rational>>& points, int max_degree) {
  if (points.empty()) return std::nullopt;
  Polynomial p = interpolate(points);
  if (p.degree() > max_degree) return std::nullopt;
  return PolynomialFit{p, int(points.size()) - (p.degree() + 1)};
}

namespace {

// Scales p and q by a common rational so all coefficients are coprime integers
// and q has a positive leading coefficient.
void normalize(Polynomial& p, Polynomial& q) {
  if (q.is_zero()) throw std::domain_error("RationalFunction: zero denominator");
  Rational scale(1);
  for (const auto* poly : {&p, &q})
    for (const auto& c : poly->coefficients()) {
      Rational t = c * scale;
      if (!t.is_integer()) scale *= Rational::parse(t.denominator_str());
    }
  p *= scale;
  q *= scale;
  Rational g(0);
  for (const auto* poly : {&p, &q})
    for (const auto& c : poly->coefficients()) g = integer_gcd(g, c);
  Rational f = Rational(q.leading().sign()) / g;
  p *= f;
  q *= f;
}

}  // namespace

RationalFunction::RationalFunction(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
  normalize(num_, den_);
}

std::optional<Rational> RationalFunction::operator()(const Rational& x) const {
  Rational d = den_(x);
  if (d.is_zero()) return std::nullopt;
  return num_(x) / d;
}

bool operator==(const RationalFunction& a, const RationalFunction& b) {
  return a.num_ * b.den_ == b.num_ * a.den_;
}

std::string RationalFunction::str(const std::string& var) const {
  if (den_.degree() == 0 && den_.leading() == Rational(1)) return num_.str(var);
  auto wrap = [&](const Polynomial& p) {
    std::string s = p.str(var);
    return p.degree() <= 0 ? s : "(" + s + ")";
  };
  return wrap(num_) + "/" + wrap(den_);
}

std::optional<RationalFit> fit_rational(const std::vector<std::pair<Rational, Rational>>& points, int min_spare) {
  const int m = int(points.size());
  for (int total = 0; total + 1 + min_spare <= m; ++total)
    for (int dq = 0; dq <= total; ++dq) {
      const int dp = total - dq;
      // Unknowns: p_0..p_dp, q_0..q_dq; equation p(x) - y q(x) = 0 per point.
      RationalMatrix sys(m, dp + dq + 2);
      for (int i = 0; i < m; ++i) {
        const auto& [x, y] = points[std::size_t(i)];
        Rational pw(1);
        for (int k = 0; k <= std::max(dp, dq); ++k) {
          if (k <= dp) sys(i, k) = pw;
          if (k <= dq) sys(i, dp + 1 + k) = -y * pw;
          pw *= x;
        }
      }
      RationalMatrix ns = nullspace(sys);
      if (ns.cols() != 1) continue;
      std::vector<Rational> pc, qc;
      for (int k = 0; k <= dp; ++k) pc.push_back(ns(k, 0));
      for (int k = 0; k <= dq; ++k) qc.push_back(ns(dp + 1 + k, 0));
      Polynomial p(pc), q(qc);
      if (q.is_zero()) continue;
      bool pole = false;
      for (const auto& pt : points) pole = pole || q(pt.first).is_zero();
      if (pole) continue;
      return RationalFit{RationalFunction(p, q), m - (total + 1)};
    }
  return std::nullopt;
}

}  // namespace joseph
