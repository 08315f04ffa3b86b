#include "qortho/scalar.hpp"

#include <algorithm>
#include <cassert>

namespace qortho {

namespace {

const GaussRat& zero_coeff() {
  static const GaussRat z;
  return z;
}

std::string rat_str(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

}  // namespace

// ---- GaussRat --------------------------------------------------------------

GaussRat& GaussRat::operator+=(const GaussRat& o) {
  re += o.re;
  im += o.im;
  return *this;
}

GaussRat& GaussRat::operator-=(const GaussRat& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

GaussRat& GaussRat::operator*=(const GaussRat& o) {
  if (sgn(im) == 0 && sgn(o.im) == 0) {
    re *= o.re;
    return *this;
  }
  Rational r = re * o.re - im * o.im;
  Rational i = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

GaussRat& GaussRat::operator/=(const GaussRat& o) {
  if (o.is_zero()) throw Error(Errc::DivisionByZero);
  if (sgn(o.im) == 0) {
    re /= o.re;
    im /= o.re;
    return *this;
  }
  Rational n = o.norm();
  *this *= o.conj();
  re /= n;
  im /= n;
  return *this;
}

std::string GaussRat::str() const {
  if (sgn(im) == 0) return rat_str(re);
  return rat_str(re) + "+" + rat_str(im) + "*i";
}

std::ostream& operator<<(std::ostream& os, const GaussRat& g) { return os << g.str(); }

// ---- Laurent ---------------------------------------------------------------

Laurent::Laurent(GaussRat c, int exponent) {
  if (!c.is_zero()) {
    low_ = exponent;
    coeffs_.push_back(std::move(c));
  }
}

void Laurent::trim() {
  auto first = std::find_if(coeffs_.begin(), coeffs_.end(), [](const GaussRat& c) { return !c.is_zero(); });
  if (first == coeffs_.end()) {
    coeffs_.clear();
    low_ = 0;
    return;
  }
  low_ += static_cast<int>(first - coeffs_.begin());
  coeffs_.erase(coeffs_.begin(), first);
  while (coeffs_.back().is_zero()) coeffs_.pop_back();
}

bool Laurent::is_one() const {
  return coeffs_.size() == 1 && low_ == 0 && coeffs_[0] == GaussRat(1);
}

const GaussRat& Laurent::coeff(int exponent) const {
  if (coeffs_.empty() || exponent < low_ || exponent > high()) return zero_coeff();
  return coeffs_[static_cast<std::size_t>(exponent - low_)];
}

std::size_t Laurent::term_count() const {
  return static_cast<std::size_t>(
      std::count_if(coeffs_.begin(), coeffs_.end(), [](const GaussRat& c) { return !c.is_zero(); }));
}

Laurent Laurent::operator-() const {
  Laurent r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

Laurent& Laurent::operator+=(const Laurent& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  int lo = std::min(low_, o.low_);
  int hi = std::max(high(), o.high());
  if (lo < low_) {
    coeffs_.insert(coeffs_.begin(), static_cast<std::size_t>(low_ - lo), GaussRat());
    low_ = lo;
  }
  coeffs_.resize(static_cast<std::size_t>(hi - lo + 1));
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k)
    coeffs_[static_cast<std::size_t>(o.low_ - low_) + k] += o.coeffs_[k];
  trim();
  return *this;
}

Laurent& Laurent::operator-=(const Laurent& o) { return *this += -o; }

Laurent operator*(const Laurent& a, const Laurent& b) {
  Laurent r;
  if (a.is_zero() || b.is_zero()) return r;
  r.low_ = a.low_ + b.low_;
  r.coeffs_.assign(a.coeffs_.size() + b.coeffs_.size() - 1, GaussRat());
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
      if (b.coeffs_[j].is_zero()) continue;
      r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
  }
  r.trim();
  return r;
}

Laurent Laurent::scaled(const GaussRat& c) const {
  if (c.is_zero()) return {};
  Laurent r = *this;
  for (auto& x : r.coeffs_) x *= c;
  return r;
}

Laurent Laurent::shifted(int k) const {
  Laurent r = *this;
  if (!r.is_zero()) r.low_ += k;
  return r;
}

Laurent Laurent::conj() const {
  Laurent r = *this;
  for (auto& x : r.coeffs_) x = x.conj();
  return r;
}

Laurent Laurent::reflected() const {
  Laurent r;
  if (is_zero()) return r;
  r.low_ = -high();
  r.coeffs_.assign(coeffs_.rbegin(), coeffs_.rend());
  return r;
}

GaussRat Laurent::value_at_one() const {
  GaussRat v;
  for (const auto& c : coeffs_) v += c;
  return v;
}

void Laurent::divmod(const Laurent& a, const Laurent& b, Laurent& quot, Laurent& rem) {
  if (b.is_zero()) throw Error(Errc::DivisionByZero, "polynomial division");
  assert(a.is_zero() || a.low() >= 0);
  assert(b.low() >= 0);
  quot = Laurent();
  rem = a;
  const int db = b.high();
  const GaussRat& lb = b.leading();
  while (!rem.is_zero() && rem.high() >= db) {
    int k = rem.high() - db;
    GaussRat c = rem.leading() / lb;
    quot += Laurent(c, k);
    rem -= b.scaled(c).shifted(k);
  }
}

Laurent Laurent::gcd(const Laurent& a, const Laurent& b) {
  Laurent x = a, y = b;
  while (!y.is_zero()) {
    Laurent q, r;
    divmod(x, y, q, r);
    x = std::move(y);
    y = std::move(r);
  }
  if (x.is_zero()) return x;
  return x.scaled(GaussRat(1) / x.leading());
}

// ---- Scalar ----------------------------------------------------------------

Scalar::Scalar(const GaussRat& c) : p0_(c), den_(GaussRat(1)) {}

Scalar Scalar::s_pow(int k) {
  Scalar r;
  r.p0_ = Laurent(GaussRat(1), k);
  return r;
}

Scalar Scalar::q_pow(const Rational& e) {
  Rational twice = 2 * e;
  if (twice.get_den() != 1) throw Error(Errc::InvalidSpec, "q exponent must be a half-integer");
  return s_pow(static_cast<int>(twice.get_num().get_si()));
}

Scalar Scalar::t() {
  Scalar r;
  r.p1_ = Laurent(GaussRat(1));
  return r;
}

Scalar Scalar::fraction(Laurent p0, Laurent p1, Laurent den) {
  Scalar r;
  r.p0_ = std::move(p0);
  r.p1_ = std::move(p1);
  r.den_ = std::move(den);
  r.normalize();
  return r;
}

bool Scalar::is_one() const { return p1_.is_zero() && den_.is_one() && p0_.is_one(); }

bool Scalar::is_constant() const {
  return p1_.is_zero() && den_.is_one() && (p0_.is_zero() || (p0_.low() == 0 && p0_.high() == 0));
}

GaussRat Scalar::constant() const { return p0_.coeff(0); }

void Scalar::normalize() {
  if (den_.is_zero()) throw Error(Errc::DivisionByZero);
  if (p0_.is_zero() && p1_.is_zero()) {
    den_ = Laurent(GaussRat(1));
    return;
  }
  if (den_.is_one()) return;
  if (int sh = den_.low(); sh != 0) {
    den_ = den_.shifted(-sh);
    p0_ = p0_.shifted(-sh);
    p1_ = p1_.shifted(-sh);
  }
  if (den_.high() > 0) {
    auto as_poly = [](const Laurent& p) { return p.is_zero() ? p : p.shifted(-p.low()); };
    Laurent g = Laurent::gcd(den_, as_poly(p0_));
    if (!p1_.is_zero() && g.high() > 0) g = Laurent::gcd(g, as_poly(p1_));
    if (g.high() > 0) {
      auto exact = [&g](const Laurent& p) {
        if (p.is_zero()) return p;
        Laurent q, r;
        Laurent::divmod(p.shifted(-p.low()), g, q, r);
        assert(r.is_zero());
        return q.shifted(p.low());
      };
      den_ = exact(den_);
      p0_ = exact(p0_);
      p1_ = exact(p1_);
    }
  }
  GaussRat lc = den_.leading();
  if (!(lc == GaussRat(1))) {
    GaussRat inv = GaussRat(1) / lc;
    den_ = den_.scaled(inv);
    p0_ = p0_.scaled(inv);
    p1_ = p1_.scaled(inv);
  }
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  r.p0_ = -r.p0_;
  r.p1_ = -r.p1_;
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_ == o.den_) {
    p0_ += o.p0_;
    p1_ += o.p1_;
  } else {
    p0_ = p0_ * o.den_ + o.p0_ * den_;
    p1_ = p1_ * o.den_ + o.p1_ * den_;
    den_ = den_ * o.den_;
  }
  normalize();
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
  if (is_zero() || o.is_zero()) return *this = Scalar();
  // (a0 + t a1)(b0 + t b1) with t^2 = s + 1/s
  Laurent n0 = p0_ * o.p0_;
  Laurent n1;
  if (!p1_.is_zero() || !o.p1_.is_zero()) {
    if (!p1_.is_zero() && !o.p1_.is_zero()) {
      Laurent tt = Laurent(GaussRat(1), 1) + Laurent(GaussRat(1), -1);
      n0 += tt * (p1_ * o.p1_);
    }
    n1 = p0_ * o.p1_ + p1_ * o.p0_;
  }
  p0_ = std::move(n0);
  p1_ = std::move(n1);
  if (!o.den_.is_one()) den_ = den_ * o.den_;
  normalize();
  return *this;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw Error(Errc::DivisionByZero);
  // 1/(p0 + t p1) = (p0 - t p1) / (p0^2 - (s + 1/s) p1^2)
  if (p1_.is_zero()) return fraction(den_, Laurent(), p0_);
  Laurent tt = Laurent(GaussRat(1), 1) + Laurent(GaussRat(1), -1);
  Laurent norm = p0_ * p0_ - tt * (p1_ * p1_);
  return fraction(den_ * p0_, -(den_ * p1_), norm);
}

Scalar& Scalar::operator/=(const Scalar& o) { return *this *= o.inverse(); }

std::string Scalar::str() const {
  auto poly_str = [](const Laurent& p0, const Laurent& p1) {
    std::string out;
    if (p0.is_zero() && p1.is_zero()) return std::string("0");
    int lo = p0.is_zero() ? p1.low() : (p1.is_zero() ? p0.low() : std::min(p0.low(), p1.low()));
    int hi = p0.is_zero() ? p1.high() : (p1.is_zero() ? p0.high() : std::max(p0.high(), p1.high()));
    for (int k = lo; k <= hi; ++k) {
      for (int tdeg = 0; tdeg < 2; ++tdeg) {
        const GaussRat& c = (tdeg == 0 ? p0 : p1).coeff(k);
        if (c.is_zero()) continue;
        if (!out.empty()) out += " + ";
        out += c.str();
        if (tdeg == 1) out += "*t";
        out += "*s^" + std::to_string(k);
      }
    }
    return out;
  };
  std::string n = poly_str(p0_, p1_);
  if (den_.is_one()) return n;
  return "(" + n + ")/(" + poly_str(den_, Laurent()) + ")";
}

std::ostream& operator<<(std::ostream& os, const Scalar& a) { return os << a.str(); }

Scalar bar(const Scalar& a, Regime regime) {
  if (regime == Regime::RealQ) return Scalar::fraction(a.num().conj(), a.num_t().conj(), a.den().conj());
  return Scalar::fraction(a.num().conj().reflected(), a.num_t().conj().reflected(), a.den().conj().reflected());
}

GaussRat classical_limit(const Scalar& a) {
  if (a.has_t()) throw Error(Errc::ResidualT, a.str());
  GaussRat d = a.den().value_at_one();
  if (d.is_zero()) throw Error(Errc::PoleAtOne, a.str());
  return a.num().value_at_one() / d;
}

}  // namespace qortho
