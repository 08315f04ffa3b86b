#pragma once

// The quantum orthogonal plane as a rewriting system on words in x^1..x^N.
//
// Monomial order: longer words are larger; words of equal length compare
// lexicographically with x^1 > x^2 > ... > x^N. Normal words of the plane are
// weakly decreasing in the index.

#include "qortho/check.hpp"
#include "qortho/linalg.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qortho {

using Word = std::vector<int>;

/// Strict "greater than" in the monomial order, so maps list the leading word first.
struct MonomialGreater {
  bool operator()(const Word& a, const Word& b) const;
};

std::string word_str(const Word& w);

class NCPoly {
public:
  using Terms = std::map<Word, Scalar, MonomialGreater>;

  NCPoly() = default;
  static NCPoly monomial(Word w, Scalar c = Scalar(1));
  static NCPoly generator(int a) { return monomial({a}); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Leading word and coefficient; throws DimMismatch on zero.
  const Word& leading_word() const;
  const Scalar& leading_coeff() const;
  Scalar coeff(const Word& w) const;

  void add_term(const Word& w, const Scalar& c);

  NCPoly scaled(const Scalar& c) const;
  NCPoly operator-() const { return scaled(Scalar(-1)); }
  friend NCPoly operator+(const NCPoly& a, const NCPoly& b);
  friend NCPoly operator-(const NCPoly& a, const NCPoly& b);
  friend NCPoly operator*(const NCPoly& a, const NCPoly& b);
  friend bool operator==(const NCPoly& a, const NCPoly& b) { return a.terms_ == b.terms_; }

  /// `0`, or terms `(c)*x1x2` in monomial order joined by " + ".
  std::string str() const;

private:
  Terms terms_;
};

struct RewriteSystem {
  int N = 0;
  /// lhs word -> right-hand side (lower terms).
  std::map<Word, NCPoly, MonomialGreater> rules;
  std::optional<CheckResult> confluent;  ///< unset until checked
};

/// Row-reduces homogeneous quadratic relations over the two-letter words,
/// eliminating words in decreasing monomial order; each row becomes
/// pivot -> -(remaining terms). Throws InvalidSpec for non-quadratic input.
RewriteSystem quadratic_system(int N, const std::vector<NCPoly>& relations);

/// Relations Pa^{ab}_{cd} x^c x^d = 0. Throws BadN, and RankMismatch unless
/// the leading words are exactly x^a x^b for a < b.
RewriteSystem plane_relations(int N);

/// Repeatedly rewrites the largest reducible term at its leftmost match.
NCPoly normal_form(const NCPoly& p, const RewriteSystem& rs);

/// Diamond lemma over all overlap and inclusion ambiguities of the rules.
/// The witness names the first ambiguous word whose resolutions differ.
CheckResult check_confluence(const RewriteSystem& rs);

/// Antilinear anti-multiplicative extension of x^a -> K_ab x^b.
NCPoly conj_poly(const NCPoly& p, const SqMat& k, Regime regime);

/// Every relation lhs - rhs conjugates into the ideal, and the conjugation
/// squares to the identity on generators.
CheckResult check_star_consistency(const RewriteSystem& rs, const SqMat& k, Regime regime);

/// The N = 4 plane with the extra rule x^3 -> sign x^2, completed with at
/// most `cap` passes. Throws IdentityFailed if completion does not settle.
RewriteSystem quotient_system(int sign, int cap = 10);

/// Confluence of quotient_system(sign), then each N = 3 plane relation under
/// y1 -> x1, y2 -> u t x2 (u = 1 or i for sign -1), y3 -> x4 reduces to 0.
/// `with_t = false` drops the factor t.
CheckResult quotient_check(int sign, bool with_t = true);

}  // namespace qortho
