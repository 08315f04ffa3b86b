#pragma once

// Exact coefficient arithmetic.
//
// The base variable is s = q^{1/2}; q itself is s^2. Scalars live in
// Q(i)(s)[t] / (t^2 - s - 1/s): a numerator with t-degree at most one over a
// t-free Laurent denominator. Every value is kept in a unique canonical form
// so equality is structural.

#include "qortho/error.hpp"

#include <gmpxx.h>

#include <compare>
#include <ostream>
#include <string>
#include <vector>

namespace qortho {

using Rational = mpq_class;

/// Gaussian rational re + im*i.
struct GaussRat {
  Rational re;
  Rational im;

  GaussRat() = default;
  GaussRat(long v) : re(v), im(0) {}
  GaussRat(Rational r, Rational i = 0) : re(std::move(r)), im(std::move(i)) {}

  static GaussRat i() { return {0, 1}; }

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  bool is_real() const { return sgn(im) == 0; }
  GaussRat conj() const { return {re, -im}; }
  Rational norm() const { return re * re + im * im; }

  GaussRat operator-() const { return {-re, -im}; }
  GaussRat& operator+=(const GaussRat& o);
  GaussRat& operator-=(const GaussRat& o);
  GaussRat& operator*=(const GaussRat& o);
  GaussRat& operator/=(const GaussRat& o);

  friend GaussRat operator+(GaussRat a, const GaussRat& b) { return a += b; }
  friend GaussRat operator-(GaussRat a, const GaussRat& b) { return a -= b; }
  friend GaussRat operator*(GaussRat a, const GaussRat& b) { return a *= b; }
  friend GaussRat operator/(GaussRat a, const GaussRat& b) { return a /= b; }
  friend bool operator==(const GaussRat& a, const GaussRat& b) { return a.re == b.re && a.im == b.im; }

  /// `a/b` or `a/b+c/d*i`.
  std::string str() const;
};

std::ostream& operator<<(std::ostream& os, const GaussRat& g);

/// Laurent polynomial in s with Gaussian-rational coefficients, stored
/// densely from the lowest nonzero exponent. Zero has no coefficients.
class Laurent {
public:
  Laurent() = default;
  explicit Laurent(GaussRat c, int exponent = 0);

  static Laurent monomial(GaussRat c, int exponent) { return Laurent(std::move(c), exponent); }

  bool is_zero() const { return coeffs_.empty(); }
  bool is_one() const;
  int low() const { return low_; }
  int high() const { return low_ + static_cast<int>(coeffs_.size()) - 1; }
  const GaussRat& coeff(int exponent) const;
  const GaussRat& leading() const { return coeffs_.back(); }
  std::size_t term_count() const;

  Laurent operator-() const;
  Laurent& operator+=(const Laurent& o);
  Laurent& operator-=(const Laurent& o);
  friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
  friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }
  friend Laurent operator*(const Laurent& a, const Laurent& b);
  friend bool operator==(const Laurent& a, const Laurent& b) = default;

  Laurent scaled(const GaussRat& c) const;
  Laurent shifted(int k) const;
  Laurent conj() const;
  /// p(s) -> p(1/s).
  Laurent reflected() const;
  GaussRat value_at_one() const;

  /// Exact polynomial quotient and remainder. Both operands must have
  /// low() >= 0 (ordinary polynomials); divisor nonzero.
  static void divmod(const Laurent& a, const Laurent& b, Laurent& quot, Laurent& rem);
  /// Monic gcd of two ordinary polynomials (low() >= 0). gcd(0, 0) = 0.
  static Laurent gcd(const Laurent& a, const Laurent& b);

private:
  void trim();

  int low_ = 0;
  std::vector<GaussRat> coeffs_;
};

enum class Regime { RealQ, UnitModulusQ };

constexpr const char* to_string(Regime r) { return r == Regime::RealQ ? "real" : "unit"; }

/// Element of the coefficient ring: (p0 + t*p1) / den with t^2 = s + 1/s.
///
/// Canonical form: den has lowest exponent 0, is monic, and shares no
/// polynomial factor with p0 and p1. Zero is 0/1.
class Scalar {
public:
  Scalar() : den_(GaussRat(1)) {}
  Scalar(long v) : Scalar(GaussRat(v)) {}
  Scalar(const GaussRat& c);
  Scalar(const Rational& c) : Scalar(GaussRat(c)) {}

  static Scalar s_pow(int k);
  /// q^e with 2e integral.
  static Scalar q_pow(const Rational& e);
  static Scalar q_pow(int e) { return s_pow(2 * e); }
  static Scalar i() { return Scalar(GaussRat::i()); }
  static Scalar t();
  static Scalar fraction(Laurent p0, Laurent p1, Laurent den);

  bool is_zero() const { return p0_.is_zero() && p1_.is_zero(); }
  bool is_one() const;
  bool has_t() const { return !p1_.is_zero(); }
  bool is_polynomial() const { return den_.is_one(); }
  /// True when the value is a Gaussian-rational constant.
  bool is_constant() const;
  /// Valid only when is_constant().
  GaussRat constant() const;
  std::size_t term_count() const { return p0_.term_count() + p1_.term_count(); }

  const Laurent& num() const { return p0_; }
  const Laurent& num_t() const { return p1_; }
  const Laurent& den() const { return den_; }

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b) = default;

  /// Throws DivisionByZero on zero.
  Scalar inverse() const;

  /// Canonical text: `c*s^k` / `c*t*s^k` terms, k ascending, joined by
  /// ` + `; `0` when empty; `(num)/(den)` when den != 1.
  std::string str() const;

private:
  void normalize();

  Laurent p0_;
  Laurent p1_;
  Laurent den_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& a);

/// Complex conjugation of coefficients; UnitModulusQ also maps s -> 1/s.
/// t is fixed in both regimes.
Scalar bar(const Scalar& a, Regime regime);

/// Evaluation at s = 1. Throws ResidualT or PoleAtOne.
GaussRat classical_limit(const Scalar& a);

}  // namespace qortho
