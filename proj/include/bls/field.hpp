#pragma once

// Exact scalars over Q, Q(i) and GF(p).
//
// A Scalar carries its FieldSpec; arithmetic between scalars of different
// fields is a usage error (Errc::FieldMismatch), never a coercion.

#include <gmpxx.h>

#include <algorithm>
#include <compare>
#include <cstdint>
#include <iterator>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <variant>

#include "bls/error.hpp"

namespace bls {

enum class FieldKind { Rationals, GaussianRationals, PrimeField };

namespace detail {

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1U) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1U;
  }
  return result;
}

// Deterministic Miller-Rabin for all 64-bit integers.
inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t small : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % small == 0) return n == small;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

// Nonnegative rational square root, if the argument is a square in Q.
inline std::optional<mpq_class> rational_sqrt(const mpq_class& a) {
  if (sgn(a) < 0) return std::nullopt;
  const mpz_class& num = a.get_num();
  const mpz_class& den = a.get_den();
  if (mpz_perfect_square_p(num.get_mpz_t()) == 0 || mpz_perfect_square_p(den.get_mpz_t()) == 0) {
    return std::nullopt;
  }
  mpz_class n_root;
  mpz_class d_root;
  mpz_sqrt(n_root.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(d_root.get_mpz_t(), den.get_mpz_t());
  mpq_class root(n_root, d_root);
  root.canonicalize();
  return root;
}

}  // namespace detail

class FieldSpec {
 public:
  constexpr FieldSpec() = default;

  static constexpr FieldSpec rationals() { return FieldSpec(FieldKind::Rationals, 0); }
  static constexpr FieldSpec gaussian_rationals() { return FieldSpec(FieldKind::GaussianRationals, 0); }

  /// Throws InvalidModulus unless the modulus is prime.
  static FieldSpec prime(std::uint64_t modulus) {
    if (!detail::is_prime_u64(modulus)) {
      throw Error(Errc::InvalidModulus, "GF(p) requires a prime modulus, got " + std::to_string(modulus));
    }
    if (modulus >= (1ULL << 62)) {
      throw Error(Errc::InvalidModulus, "modulus too large: " + std::to_string(modulus));
    }
    return FieldSpec(FieldKind::PrimeField, modulus);
  }

  constexpr FieldKind kind() const { return kind_; }
  constexpr std::uint64_t modulus() const { return modulus_; }
  constexpr bool is_finite() const { return kind_ == FieldKind::PrimeField; }

  std::string to_string() const {
    switch (kind_) {
      case FieldKind::Rationals: return "Q";
      case FieldKind::GaussianRationals: return "Q(i)";
      case FieldKind::PrimeField: return "GF(" + std::to_string(modulus_) + ")";
    }
    return "?";
  }

  friend constexpr bool operator==(const FieldSpec&, const FieldSpec&) = default;

 private:
  constexpr FieldSpec(FieldKind kind, std::uint64_t modulus) : kind_(kind), modulus_(modulus) {}

  FieldKind kind_ = FieldKind::Rationals;
  std::uint64_t modulus_ = 0;
};

inline std::ostream& operator<<(std::ostream& os, const FieldSpec& f) { return os << f.to_string(); }

class Scalar {
  struct Gaussian {
    mpq_class re;
    mpq_class im;
  };

 public:
  /// Zero of Q.
  Scalar() : value_(mpq_class(0)) {}

  static Scalar zero(const FieldSpec& f) { return from_int(f, 0); }
  static Scalar one(const FieldSpec& f) { return from_int(f, 1); }

  static Scalar from_int(const FieldSpec& f, long long v) { return from_rational(f, mpq_class(static_cast<long>(v))); }

  static Scalar from_rational(const FieldSpec& f, mpq_class v) {
    v.canonicalize();
    switch (f.kind()) {
      case FieldKind::Rationals: return Scalar(f, std::move(v));
      case FieldKind::GaussianRationals: return Scalar(f, Gaussian{std::move(v), mpq_class(0)});
      case FieldKind::PrimeField: {
        const std::uint64_t num = reduce(v.get_num(), f.modulus());
        const std::uint64_t den = reduce(v.get_den(), f.modulus());
        if (den == 0) {
          throw Error(Errc::DivisionByZero, "denominator vanishes in " + f.to_string());
        }
        return Scalar(f, detail::mul_mod(num, inverse_mod(den, f.modulus()), f.modulus()));
      }
    }
    return Scalar();
  }

  static Scalar gaussian(mpq_class re, mpq_class im) {
    re.canonicalize();
    im.canonicalize();
    return Scalar(FieldSpec::gaussian_rationals(), Gaussian{std::move(re), std::move(im)});
  }

  static Scalar imaginary_unit() { return gaussian(mpq_class(0), mpq_class(1)); }

  static Scalar residue(const FieldSpec& f, std::uint64_t r) {
    if (!f.is_finite()) throw Error(Errc::FieldMismatch, "residue() needs a prime field");
    return Scalar(f, r % f.modulus());
  }

  const FieldSpec& field() const { return field_; }

  bool is_zero() const {
    switch (field_.kind()) {
      case FieldKind::Rationals: return sgn(std::get<mpq_class>(value_)) == 0;
      case FieldKind::GaussianRationals: {
        const auto& g = std::get<Gaussian>(value_);
        return sgn(g.re) == 0 && sgn(g.im) == 0;
      }
      case FieldKind::PrimeField: return std::get<std::uint64_t>(value_) == 0;
    }
    return false;
  }

  bool is_one() const { return *this == one(field_); }

  /// Real part over Q and Q(i); throws FieldMismatch over GF(p).
  mpq_class real() const {
    switch (field_.kind()) {
      case FieldKind::Rationals: return std::get<mpq_class>(value_);
      case FieldKind::GaussianRationals: return std::get<Gaussian>(value_).re;
      case FieldKind::PrimeField: break;
    }
    throw Error(Errc::FieldMismatch, "real() is undefined over " + field_.to_string());
  }

  mpq_class imag() const {
    switch (field_.kind()) {
      case FieldKind::Rationals: return mpq_class(0);
      case FieldKind::GaussianRationals: return std::get<Gaussian>(value_).im;
      case FieldKind::PrimeField: break;
    }
    throw Error(Errc::FieldMismatch, "imag() is undefined over " + field_.to_string());
  }

  std::uint64_t residue() const {
    if (!field_.is_finite()) throw Error(Errc::FieldMismatch, "residue() is undefined over " + field_.to_string());
    return std::get<std::uint64_t>(value_);
  }

  Scalar operator-() const {
    switch (field_.kind()) {
      case FieldKind::Rationals: return Scalar(field_, mpq_class(-std::get<mpq_class>(value_)));
      case FieldKind::GaussianRationals: {
        const auto& g = std::get<Gaussian>(value_);
        return Scalar(field_, Gaussian{-g.re, -g.im});
      }
      case FieldKind::PrimeField: {
        const auto r = std::get<std::uint64_t>(value_);
        return Scalar(field_, r == 0 ? 0 : field_.modulus() - r);
      }
    }
    return *this;
  }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    check_same(a, b);
    switch (a.field_.kind()) {
      case FieldKind::Rationals:
        return Scalar(a.field_, mpq_class(std::get<mpq_class>(a.value_) + std::get<mpq_class>(b.value_)));
      case FieldKind::GaussianRationals: {
        const auto& x = std::get<Gaussian>(a.value_);
        const auto& y = std::get<Gaussian>(b.value_);
        return Scalar(a.field_, Gaussian{x.re + y.re, x.im + y.im});
      }
      case FieldKind::PrimeField: {
        const std::uint64_t m = a.field_.modulus();
        std::uint64_t s = std::get<std::uint64_t>(a.value_) + std::get<std::uint64_t>(b.value_);
        if (s >= m) s -= m;
        return Scalar(a.field_, s);
      }
    }
    return a;
  }

  friend Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    check_same(a, b);
    switch (a.field_.kind()) {
      case FieldKind::Rationals:
        return Scalar(a.field_, mpq_class(std::get<mpq_class>(a.value_) * std::get<mpq_class>(b.value_)));
      case FieldKind::GaussianRationals: {
        const auto& x = std::get<Gaussian>(a.value_);
        const auto& y = std::get<Gaussian>(b.value_);
        return Scalar(a.field_, Gaussian{x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re});
      }
      case FieldKind::PrimeField:
        return Scalar(a.field_, detail::mul_mod(std::get<std::uint64_t>(a.value_), std::get<std::uint64_t>(b.value_),
                                                a.field_.modulus()));
    }
    return a;
  }

  Scalar inverse() const {
    if (is_zero()) throw Error(Errc::DivisionByZero, "inverse of zero");
    switch (field_.kind()) {
      case FieldKind::Rationals: return Scalar(field_, mpq_class(1 / std::get<mpq_class>(value_)));
      case FieldKind::GaussianRationals: {
        const auto& g = std::get<Gaussian>(value_);
        const mpq_class norm = g.re * g.re + g.im * g.im;
        return Scalar(field_, Gaussian{g.re / norm, -g.im / norm});
      }
      case FieldKind::PrimeField:
        return Scalar(field_, inverse_mod(std::get<std::uint64_t>(value_), field_.modulus()));
    }
    return *this;
  }

  friend Scalar operator/(const Scalar& a, const Scalar& b) {
    check_same(a, b);
    return a * b.inverse();
  }

  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    if (a.field_ != b.field_) return false;
    switch (a.field_.kind()) {
      case FieldKind::Rationals: return std::get<mpq_class>(a.value_) == std::get<mpq_class>(b.value_);
      case FieldKind::GaussianRationals: {
        const auto& x = std::get<Gaussian>(a.value_);
        const auto& y = std::get<Gaussian>(b.value_);
        return x.re == y.re && x.im == y.im;
      }
      case FieldKind::PrimeField: return std::get<std::uint64_t>(a.value_) == std::get<std::uint64_t>(b.value_);
    }
    return false;
  }

  /// Total order used for canonical sorting: residue order over GF(p),
  /// (real, imaginary) lexicographic over Q(i).
  friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
    check_same(a, b);
    switch (a.field_.kind()) {
      case FieldKind::Rationals: return cmp(std::get<mpq_class>(a.value_), std::get<mpq_class>(b.value_)) <=> 0;
      case FieldKind::GaussianRationals: {
        const auto& x = std::get<Gaussian>(a.value_);
        const auto& y = std::get<Gaussian>(b.value_);
        if (const int c = cmp(x.re, y.re); c != 0) return c <=> 0;
        return cmp(x.im, y.im) <=> 0;
      }
      case FieldKind::PrimeField: return std::get<std::uint64_t>(a.value_) <=> std::get<std::uint64_t>(b.value_);
    }
    return std::strong_ordering::equal;
  }

  std::string to_string() const;

 private:
  Scalar(const FieldSpec& f, mpq_class v) : field_(f), value_(std::move(v)) {}
  Scalar(const FieldSpec& f, Gaussian g) : field_(f), value_(std::move(g)) {}
  Scalar(const FieldSpec& f, std::uint64_t r) : field_(f), value_(r) {}

  static void check_same(const Scalar& a, const Scalar& b) {
    if (a.field_ != b.field_) {
      throw Error(Errc::FieldMismatch, a.field_.to_string() + " vs " + b.field_.to_string());
    }
  }

  static std::uint64_t reduce(const mpz_class& v, std::uint64_t m) {
    mpz_class r;
    mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), m);
    return r.get_ui();
  }

  static std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t m) {
    if (a % m == 0) throw Error(Errc::DivisionByZero, "no inverse of 0 mod " + std::to_string(m));
    return detail::pow_mod(a, m - 2, m);
  }

  FieldSpec field_{};
  std::variant<std::uint64_t, mpq_class, Gaussian> value_;
};

inline std::string rational_to_string(const mpq_class& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline std::string Scalar::to_string() const {
  switch (field_.kind()) {
    case FieldKind::Rationals: return rational_to_string(std::get<mpq_class>(value_));
    case FieldKind::GaussianRationals: {
      const auto& g = std::get<Gaussian>(value_);
      if (sgn(g.im) == 0) return rational_to_string(g.re);
      std::string imag;
      if (g.im == 1) {
        imag = "i";
      } else if (g.im == -1) {
        imag = "-i";
      } else {
        imag = rational_to_string(g.im) + "i";
      }
      if (sgn(g.re) == 0) return imag;
      if (imag.front() != '-') imag = "+" + imag;
      return rational_to_string(g.re) + imag;
    }
    case FieldKind::PrimeField: return std::to_string(std::get<std::uint64_t>(value_));
  }
  return "?";
}

inline std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

/// Square root in the scalar's own field, if one exists.
///
/// Deterministic choice of root: over Q the nonnegative one; over Q(i) the one
/// with positive real part (positive imaginary part when the real part is 0);
/// over GF(p) the smaller residue.
inline std::optional<Scalar> sqrt(const Scalar& a) {
  const FieldSpec& f = a.field();
  if (a.is_zero()) return a;
  switch (f.kind()) {
    case FieldKind::Rationals: {
      auto root = detail::rational_sqrt(a.real());
      if (!root) return std::nullopt;
      return Scalar::from_rational(f, *root);
    }
    case FieldKind::GaussianRationals: {
      const mpq_class u = a.real();
      const mpq_class v = a.imag();
      // (x + yi)^2 = u + vi  <=>  x^2 - y^2 = u, 2xy = v
      const auto modulus = detail::rational_sqrt(u * u + v * v);
      if (!modulus) return std::nullopt;
      const auto x = detail::rational_sqrt(mpq_class((u + *modulus) / 2));
      const auto y = detail::rational_sqrt(mpq_class((*modulus - u) / 2));
      if (!x || !y) return std::nullopt;
      mpq_class im = *y;
      if (sgn(v) < 0) im = -im;
      Scalar root = Scalar::gaussian(*x, im);
      if (sgn(*x) == 0 && sgn(im) < 0) root = -root;
      return root;
    }
    case FieldKind::PrimeField: {
      const std::uint64_t p = f.modulus();
      const std::uint64_t n = a.residue();
      if (p == 2) return a;
      if (detail::pow_mod(n, (p - 1) / 2, p) != 1) return std::nullopt;
      // Tonelli-Shanks
      std::uint64_t q = p - 1;
      int s = 0;
      while ((q & 1U) == 0) {
        q >>= 1U;
        ++s;
      }
      std::uint64_t z = 2;
      while (detail::pow_mod(z, (p - 1) / 2, p) != p - 1) ++z;
      std::uint64_t c = detail::pow_mod(z, q, p);
      std::uint64_t r = detail::pow_mod(n, (q + 1) / 2, p);
      std::uint64_t t = detail::pow_mod(n, q, p);
      int m = s;
      while (t != 1) {
        int i = 0;
        std::uint64_t t2 = t;
        while (t2 != 1) {
          t2 = detail::mul_mod(t2, t2, p);
          ++i;
        }
        std::uint64_t b = c;
        for (int k = 0; k < m - i - 1; ++k) b = detail::mul_mod(b, b, p);
        r = detail::mul_mod(r, b, p);
        c = detail::mul_mod(b, b, p);
        t = detail::mul_mod(t, c, p);
        m = i;
      }
      return Scalar::residue(f, std::min(r, p - r));
    }
  }
  return std::nullopt;
}

/// Forward range over the elements 0, 1, ..., p-1 of a prime field.
class FieldElements {
 public:
  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = Scalar;
    using difference_type = std::ptrdiff_t;
    using pointer = void;
    using reference = Scalar;

    iterator() = default;
    iterator(FieldSpec f, std::uint64_t pos) : field_(f), pos_(pos) {}

    Scalar operator*() const { return Scalar::residue(field_, pos_); }
    iterator& operator++() {
      ++pos_;
      return *this;
    }
    iterator operator++(int) {
      auto copy = *this;
      ++pos_;
      return copy;
    }
    friend bool operator==(const iterator& a, const iterator& b) { return a.pos_ == b.pos_; }

   private:
    FieldSpec field_{};
    std::uint64_t pos_ = 0;
  };

  explicit FieldElements(FieldSpec f) : field_(f) {}

  iterator begin() const { return {field_, 0}; }
  iterator end() const { return {field_, field_.modulus()}; }
  std::uint64_t size() const { return field_.modulus(); }

 private:
  FieldSpec field_;
};

/// Throws InfiniteField for Q and Q(i).
inline FieldElements enumerate_field(const FieldSpec& f) {
  if (!f.is_finite()) throw Error(Errc::InfiniteField, "cannot enumerate " + f.to_string());
  return FieldElements(f);
}

// --- text encoding --------------------------------------------------------

namespace detail {

inline bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

// "[+-]digits" or "[+-]digits/digits"
inline std::optional<mpq_class> parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '+' || body.front() == '-')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  const std::string_view num = body.substr(0, slash);
  if (!all_digits(num)) return std::nullopt;
  mpz_class n(std::string(num), 10);
  mpz_class d(1);
  if (slash != std::string_view::npos) {
    const std::string_view den = body.substr(slash + 1);
    if (!all_digits(den)) return std::nullopt;
    d = mpz_class(std::string(den), 10);
    if (d == 0) return std::nullopt;
  }
  if (negative) n = -n;
  mpq_class q(n, d);
  q.canonicalize();
  return q;
}

}  // namespace detail

/// Parses the exact text encoding of a scalar: "a" or "a/b" over Q, GF(p)
/// integers (reduced mod p), and "a/b+c/di" over Q(i) with either part
/// omittable. Floating-point literals are rejected.
inline Scalar parse_scalar(std::string_view text, const FieldSpec& f) {
  auto fail = [&]() -> Scalar {
    throw Error(Errc::ParseError, "invalid " + f.to_string() + " scalar '" + std::string(text) + "'");
  };
  if (text.empty()) return fail();
  if (f.kind() != FieldKind::GaussianRationals) {
    auto q = detail::parse_rational(text);
    if (!q) return fail();
    return Scalar::from_rational(f, *q);
  }
  if (text.back() != 'i') {
    auto q = detail::parse_rational(text);
    if (!q) return fail();
    return Scalar::gaussian(*q, mpq_class(0));
  }
  const std::string_view body = text.substr(0, text.size() - 1);
  std::size_t split = std::string_view::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if (body[k] == '+' || body[k] == '-') {
      split = k;
      break;
    }
  }
  const std::string_view real_text = split == std::string_view::npos ? std::string_view{} : body.substr(0, split);
  std::string_view imag_text = split == std::string_view::npos ? body : body.substr(split);
  mpq_class re(0);
  if (!real_text.empty()) {
    auto q = detail::parse_rational(real_text);
    if (!q) return fail();
    re = *q;
  }
  mpq_class im;
  if (imag_text.empty() || imag_text == "+") {
    im = 1;
  } else if (imag_text == "-") {
    im = -1;
  } else {
    auto q = detail::parse_rational(imag_text);
    if (!q) return fail();
    im = *q;
  }
  return Scalar::gaussian(re, im);
}

/// "Q", "Q(i)" or "GF(p)".
inline FieldSpec parse_field(std::string_view text) {
  if (text == "Q") return FieldSpec::rationals();
  if (text == "Q(i)") return FieldSpec::gaussian_rationals();
  if (text.size() > 4 && text.substr(0, 3) == "GF(" && text.back() == ')') {
    const std::string_view digits = text.substr(3, text.size() - 4);
    if (detail::all_digits(digits) && digits.size() < 20) {
      return FieldSpec::prime(std::stoull(std::string(digits)));
    }
  }
  throw Error(Errc::ParseError, "unknown field '" + std::string(text) + "'");
}

}  // namespace bls
