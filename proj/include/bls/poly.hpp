#pragma once

// Polynomials the solvers need: quadratics in the pencil parameters (2 x 2
// minors of K(z)) and univariate polynomials with exact root finding.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bls/error.hpp"
#include "bls/field.hpp"
#include "bls/matrix.hpp"

namespace bls {

/// c + sum_i a_i z_i
struct AffineForm {
  Scalar constant;
  Vector coeffs;
};

/// Polynomial of total degree <= 2 in z_1..z_r:
/// c + sum_i l_i z_i + sum_{i <= j} Q_ij z_i z_j.
class QuadPoly {
 public:
  QuadPoly() = default;
  QuadPoly(std::size_t r, const FieldSpec& f)
      : r_(r), field_(f), constant_(Scalar::zero(f)), linear_(zero_vector(r, f)), quadratic_(r, r, f) {}

  /// a * b for two affine forms over the same parameters.
  static QuadPoly product(const AffineForm& a, const AffineForm& b) {
    const FieldSpec f = a.constant.field();
    const std::size_t r = a.coeffs.size();
    QuadPoly out(r, f);
    out.constant_ = a.constant * b.constant;
    for (std::size_t i = 0; i < r; ++i) out.linear_[i] = a.constant * b.coeffs[i] + b.constant * a.coeffs[i];
    for (std::size_t i = 0; i < r; ++i) {
      if (a.coeffs[i].is_zero()) continue;
      for (std::size_t j = 0; j < r; ++j) {
        if (b.coeffs[j].is_zero()) continue;
        const std::size_t lo = std::min(i, j);
        const std::size_t hi = std::max(i, j);
        out.quadratic_(lo, hi) += a.coeffs[i] * b.coeffs[j];
      }
    }
    return out;
  }

  std::size_t r() const { return r_; }
  const FieldSpec& field() const { return field_; }
  const Scalar& constant_term() const { return constant_; }
  const Scalar& linear(std::size_t i) const { return linear_.at(i); }
  /// Coefficient of z_i z_j; order of i and j does not matter.
  const Scalar& quadratic(std::size_t i, std::size_t j) const {
    return quadratic_.at(std::min(i, j), std::max(i, j));
  }

  void set_constant(Scalar c) { constant_ = std::move(c); }
  void set_linear(std::size_t i, Scalar c) { linear_.at(i) = std::move(c); }
  void set_quadratic(std::size_t i, std::size_t j, Scalar c) {
    quadratic_.at(std::min(i, j), std::max(i, j)) = std::move(c);
  }

  friend QuadPoly operator-(const QuadPoly& a, const QuadPoly& b) {
    if (a.r_ != b.r_) throw Error(Errc::DimensionMismatch, "polynomials in different variable counts");
    QuadPoly out = a;
    out.constant_ -= b.constant_;
    out.linear_ = out.linear_ - b.linear_;
    out.quadratic_ = out.quadratic_ - b.quadratic_;
    return out;
  }

  friend QuadPoly operator+(const QuadPoly& a, const QuadPoly& b) {
    if (a.r_ != b.r_) throw Error(Errc::DimensionMismatch, "polynomials in different variable counts");
    QuadPoly out = a;
    out.constant_ += b.constant_;
    out.linear_ = out.linear_ + b.linear_;
    out.quadratic_ = out.quadratic_ + b.quadratic_;
    return out;
  }

  friend bool operator==(const QuadPoly& a, const QuadPoly& b) {
    return a.r_ == b.r_ && a.field_ == b.field_ && a.constant_ == b.constant_ && a.linear_ == b.linear_ &&
           a.quadratic_ == b.quadratic_;
  }

  Scalar evaluate(const Vector& z) const {
    if (z.size() != r_) throw Error(Errc::DimensionMismatch, "QuadPoly::evaluate arity");
    Scalar v = constant_;
    for (std::size_t i = 0; i < r_; ++i) {
      if (z[i].is_zero()) continue;
      v += linear_[i] * z[i];
      for (std::size_t j = i; j < r_; ++j) {
        if (!quadratic_(i, j).is_zero()) v += quadratic_(i, j) * z[i] * z[j];
      }
    }
    return v;
  }

  /// Total degree; -1 for the zero polynomial.
  int degree() const {
    if (!quadratic_.is_zero()) return 2;
    if (!bls::is_zero(linear_)) return 1;
    return constant_.is_zero() ? -1 : 0;
  }

  bool is_zero() const { return degree() < 0; }
  bool is_constant() const { return degree() <= 0; }

  std::string to_string(const std::vector<std::string>& names = {}) const {
    auto name = [&](std::size_t i) { return i < names.size() ? names[i] : "z" + std::to_string(i + 1); };
    std::string out;
    auto append = [&](const Scalar& c, const std::string& mono) {
      if (c.is_zero()) return;
      std::string coef = c.to_string();
      const bool unit = c.is_one();
      const bool neg_unit = (-c).is_one();
      std::string term;
      if (mono.empty()) {
        term = coef;
      } else if (unit) {
        term = mono;
      } else if (neg_unit) {
        term = "-" + mono;
      } else {
        if (coef.find_first_of("+-", 1) != std::string::npos) coef = "(" + coef + ")";
        term = coef + "*" + mono;
      }
      if (out.empty()) {
        out = term;
      } else if (term.front() == '-') {
        out += " - " + term.substr(1);
      } else {
        out += " + " + term;
      }
    };
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = i; j < r_; ++j) append(quadratic_(i, j), i == j ? name(i) + "^2" : name(i) + "*" + name(j));
    for (std::size_t i = 0; i < r_; ++i) append(linear_[i], name(i));
    append(constant_, "");
    return out.empty() ? "0" : out;
  }

 private:
  std::size_t r_ = 0;
  FieldSpec field_{};
  Scalar constant_;
  Vector linear_;
  Matrix quadratic_;  // upper triangle used
};

/// Dense univariate polynomial, coefficients from degree 0 upwards.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(Vector coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  /// The r = 1 specialization of a QuadPoly.
  static UniPoly from_quad(const QuadPoly& q) {
    if (q.r() != 1) throw Error(Errc::DimensionMismatch, "from_quad needs a single variable");
    return UniPoly({q.constant_term(), q.linear(0), q.quadratic(0, 0)});
  }

  /// Lagrange interpolation through distinct nodes.
  static UniPoly interpolate(const Vector& nodes, const Vector& values) {
    if (nodes.size() != values.size() || nodes.empty()) throw Error(Errc::DimensionMismatch, "interpolation data");
    const FieldSpec f = nodes.front().field();
    Vector acc = zero_vector(nodes.size(), f);
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      if (values[k].is_zero()) continue;
      Vector basis{Scalar::one(f)};
      Scalar denom = Scalar::one(f);
      for (std::size_t l = 0; l < nodes.size(); ++l) {
        if (l == k) continue;
        Vector next = zero_vector(basis.size() + 1, f);
        for (std::size_t d = 0; d < basis.size(); ++d) {
          next[d + 1] += basis[d];
          next[d] -= nodes[l] * basis[d];
        }
        basis = std::move(next);
        denom *= nodes[k] - nodes[l];
      }
      const Scalar scale = values[k] / denom;
      for (std::size_t d = 0; d < basis.size(); ++d) acc[d] += scale * basis[d];
    }
    return UniPoly(std::move(acc));
  }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const Vector& coeffs() const { return coeffs_; }
  const Scalar& coeff(std::size_t d) const { return coeffs_.at(d); }

  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.coeffs_ == b.coeffs_; }

  Scalar evaluate(const Scalar& t) const {
    Scalar v = Scalar::zero(t.field());
    for (std::size_t d = coeffs_.size(); d-- > 0;) v = v * t + coeffs_[d];
    return v;
  }

  /// Discriminant b^2 - 4ac of a polynomial of degree exactly 2.
  std::optional<Scalar> discriminant() const {
    if (degree() != 2) return std::nullopt;
    const FieldSpec f = coeffs_[0].field();
    return coeffs_[1] * coeffs_[1] - Scalar::from_int(f, 4) * coeffs_[2] * coeffs_[0];
  }

  std::string to_string(const std::string& var = "z") const {
    if (coeffs_.empty()) return "0";
    std::string out;
    for (std::size_t d = coeffs_.size(); d-- > 0;) {
      if (coeffs_[d].is_zero()) continue;
      std::string c = coeffs_[d].to_string();
      if (c.find_first_of("+-", 1) != std::string::npos) c = "(" + c + ")";
      const std::string mono = d == 0 ? "" : (d == 1 ? var : var + "^" + std::to_string(d));
      std::string term = mono.empty() ? c : (coeffs_[d].is_one() ? mono : ((-coeffs_[d]).is_one() ? "-" + mono : c + "*" + mono));
      if (out.empty()) {
        out = term;
      } else if (term.front() == '-') {
        out += " - " + term.substr(1);
      } else {
        out += " + " + term;
      }
    }
    return out;
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
  }

  Vector coeffs_;
};

namespace detail {

// Positive divisors of |n| (n != 0); nullopt when |n| cannot be factored
// within the trial-division budget or the divisor list would be too long.
inline std::optional<std::vector<mpz_class>> divisors(mpz_class n) {
  n = abs(n);
  std::vector<std::pair<mpz_class, unsigned>> factors;
  constexpr unsigned long kTrialLimit = 1000000;
  for (unsigned long d = 2; d <= kTrialLimit && d * d <= n; d += (d == 2 ? 1 : 2)) {
    unsigned e = 0;
    while (mpz_divisible_ui_p(n.get_mpz_t(), d) != 0) {
      n /= d;
      ++e;
    }
    if (e > 0) factors.emplace_back(mpz_class(d), e);
  }
  if (n > 1) {
    const bool fully_trialed = mpz_class(kTrialLimit) * kTrialLimit >= n;
    if (!fully_trialed && mpz_probab_prime_p(n.get_mpz_t(), 30) == 0) return std::nullopt;
    factors.emplace_back(n, 1);
  }
  std::vector<mpz_class> out{mpz_class(1)};
  for (const auto& [prime, exp] : factors) {
    const std::size_t base = out.size();
    mpz_class power = 1;
    for (unsigned e = 1; e <= exp; ++e) {
      power *= prime;
      for (std::size_t k = 0; k < base; ++k) out.push_back(out[k] * power);
    }
    if (out.size() > 20000) return std::nullopt;
  }
  return out;
}

// Rational roots of a polynomial with rational coefficients.
inline std::optional<std::vector<mpq_class>> rational_roots(std::vector<mpq_class> c) {
  while (!c.empty() && sgn(c.back()) == 0) c.pop_back();
  std::vector<mpq_class> roots;
  if (c.size() <= 1) return roots;
  std::size_t low = 0;
  while (sgn(c[low]) == 0) ++low;
  if (low > 0) roots.emplace_back(0);
  c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(low));
  if (c.size() <= 1) return roots;
  mpz_class lcm = 1;
  for (const auto& q : c) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den().get_mpz_t());
  std::vector<mpz_class> a;
  for (const auto& q : c) a.push_back(mpz_class(q * lcm));
  if (a.size() == 2) {
    mpq_class root(-a[0], a[1]);
    root.canonicalize();
    roots.push_back(root);
    return roots;
  }
  const auto num_divs = divisors(a.front());
  const auto den_divs = divisors(a.back());
  if (!num_divs || !den_divs || num_divs->size() * den_divs->size() > 400000) return std::nullopt;
  auto eval = [&](const mpq_class& t) {
    mpq_class v = 0;
    for (std::size_t d = a.size(); d-- > 0;) v = v * t + a[d];
    return v;
  };
  for (const auto& n : *num_divs) {
    for (const auto& d : *den_divs) {
      if (gcd(n, d) != 1) continue;
      for (int sign : {1, -1}) {
        mpq_class t(sign * n, d);
        t.canonicalize();
        if (sgn(eval(t)) == 0) roots.push_back(t);
      }
    }
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

}  // namespace detail

/// Roots of a nonzero polynomial of degree <= 2 via the quadratic formula
/// (enumeration in characteristic 2). The discriminant decides existence:
/// when it has no square root in the field the result is empty.
inline std::vector<Scalar> quadratic_roots(const UniPoly& poly) {
  if (poly.is_zero()) throw Error(Errc::DimensionMismatch, "roots of the zero polynomial");
  if (poly.degree() > 2) throw Error(Errc::DimensionMismatch, "quadratic_roots needs degree <= 2");
  std::vector<Scalar> roots;
  if (poly.degree() == 0) return roots;
  const FieldSpec f = poly.coeff(0).field();
  if (f.is_finite() && f.modulus() == 2) {
    for (const Scalar& t : enumerate_field(f)) {
      if (poly.evaluate(t).is_zero()) roots.push_back(t);
    }
    return roots;
  }
  if (poly.degree() == 1) {
    roots.push_back(-poly.coeff(0) / poly.coeff(1));
    return roots;
  }
  const auto s = sqrt(*poly.discriminant());
  if (!s) return roots;
  const Scalar two_a = Scalar::from_int(f, 2) * poly.coeff(2);
  roots.push_back((-poly.coeff(1) + *s) / two_a);
  roots.push_back((-poly.coeff(1) - *s) / two_a);
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

/// Roots in the coefficient field, or nullopt when the search could not be
/// completed (factoring budget over Q, field too large to enumerate). Over
/// Q(i) degrees above 2 only report the roots that lie in Q.
inline std::optional<std::vector<Scalar>> field_roots(const UniPoly& poly, std::uint64_t enumeration_limit = 1000000) {
  if (poly.is_zero()) throw Error(Errc::DimensionMismatch, "roots of the zero polynomial");
  if (poly.degree() <= 2) return quadratic_roots(poly);
  const FieldSpec f = poly.coeff(0).field();
  std::vector<Scalar> roots;
  switch (f.kind()) {
    case FieldKind::PrimeField: {
      if (f.modulus() > enumeration_limit) return std::nullopt;
      for (const Scalar& t : enumerate_field(f)) {
        if (poly.evaluate(t).is_zero()) roots.push_back(t);
      }
      return roots;
    }
    case FieldKind::Rationals: {
      std::vector<mpq_class> c;
      for (const auto& s : poly.coeffs()) c.push_back(s.real());
      auto q_roots = detail::rational_roots(std::move(c));
      if (!q_roots) return std::nullopt;
      for (const auto& t : *q_roots) roots.push_back(Scalar::from_rational(f, t));
      return roots;
    }
    case FieldKind::GaussianRationals: {
      // Rational roots are common roots of the real and imaginary parts.
      std::vector<mpq_class> re;
      std::vector<mpq_class> im;
      for (const auto& s : poly.coeffs()) {
        re.push_back(s.real());
        im.push_back(s.imag());
      }
      const bool re_zero = std::all_of(re.begin(), re.end(), [](const mpq_class& v) { return sgn(v) == 0; });
      auto candidates = detail::rational_roots(re_zero ? im : re);
      if (!candidates) return std::nullopt;
      for (const auto& t : *candidates) {
        const Scalar st = Scalar::from_rational(f, t);
        if (poly.evaluate(st).is_zero()) roots.push_back(st);
      }
      return roots;
    }
  }
  return roots;
}

}  // namespace bls
