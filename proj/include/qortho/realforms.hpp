#pragma once

// Involutive automorphisms T -> D T D^{-1} of SO_q(N), the conjugations they
// generate together with the two base conjugations, and the classification
// of the resulting real forms.

#include "qortho/check.hpp"
#include "qortho/linalg.hpp"
#include "qortho/rmatrix.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qortho {

enum class AutoFamily { CanonicalSharp, DPrime, DSecond };

struct AutoMatrix {
  AutoFamily family = AutoFamily::CanonicalSharp;
  std::vector<int> eps;  ///< sign vector (length N) for DPrime/DSecond, empty otherwise
  SqMat mat;
  int square_sign = 1;

  /// `canonical`, `dprime:<signs>` or `dsecond:<signs>`.
  std::string tag() const;
};

/// Signs as a string of '+'/'-'.
std::string sign_string(const std::vector<int>& eps);
std::vector<int> parse_signs(std::string_view s);

/// N even: swap of n and n+1. N odd: -1 at the middle index.
AutoMatrix canonical_D(int N);

/// diag(eps) with eps_{j'} = eps_j and the middle entries forced to +1.
/// Throws BadFamily when the constraints are violated.
AutoMatrix dprime(int N, const std::vector<int>& eps);

/// i diag(eps), N even, eps_{j'} = -eps_j, eps_n = -eps_{n+1} = 1.
AutoMatrix dsecond(int N, const std::vector<int>& eps);

/// i diag(1, ..., 1, -1, ..., -1).
AutoMatrix dsecond_reference(int N);

/// Whole family, ordered lexicographically on the sign string ('+' < '-').
/// CanonicalSharp yields the single canonical matrix.
std::vector<AutoMatrix> enumerate_autos(int N, AutoFamily family);

struct AutoCertificate {
  int square_sign = 0;              ///< +1 or -1 when D^2 = +-1, else 0
  std::vector<CheckResult> checks;  ///< DCD, RDD, square in that order
  bool pass() const;
};

/// D^t C D = C and D C D^t = C; R12 D1 D2 = D2 D1 R12; D^2 = +-1.
AutoCertificate audit_auto_conditions(const SqMat& d, int N);
/// Same checks; throws ConditionFailed naming the first failing condition.
AutoCertificate check_auto_conditions(const SqMat& d, int N);
AutoCertificate check_auto_conditions(const AutoMatrix& d, int N);

enum class Base { Cross, Star };

constexpr const char* to_string(Base b) { return b == Base::Cross ? "cross" : "star"; }

/// Cross: bar(D) = D with D^2 = 1, or bar(D) = -D with D^2 = -1.
/// Star: bar(D) = C^t D C^t.
CheckResult check_reality(const SqMat& d, Base base, int N);

struct ConjugationSpec {
  Base base = Base::Star;
  std::vector<AutoMatrix> autos;
  Regime regime = Regime::RealQ;

  /// Throws InvalidSpec unless Cross pairs with UnitModulusQ and Star with RealQ.
  static ConjugationSpec make(Base base, std::vector<AutoMatrix> autos, Regime regime);
  /// `base:star|cross;autos:canonical,dprime:<signs>,dsecond:<signs>;regime:real|unit`.
  /// The autos and regime clauses are optional.
  static ConjugationSpec parse(std::string_view text, int N);

  /// Product of the automorphism matrices in list order; identity if none.
  SqMat composed(int N) const;
  std::string str() const;
};

/// K with x* = K x: C^t G for Star, G for Cross. Throws NoPlaneConjugation
/// when G^2 = -1 and NotInvolution when G^2 is not +-1.
SqMat plane_conjugation_matrix(const ConjugationSpec& spec, int N);

struct RealFormLabel {
  enum class Kind { SO, SOStar };
  Kind kind = Kind::SO;
  int l = 0;  ///< SO(l, m) with l >= m; SOStar(l) with m = 0
  int m = 0;
  Regime regime = Regime::RealQ;

  std::string str() const;
  friend bool operator==(const RealFormLabel&, const RealFormLabel&) = default;
};

struct Classification {
  RealFormLabel label;
  std::optional<Signature> signature;  ///< raw inertia of the real-basis metric
  std::optional<SqMat> basis;          ///< real basis M (classical limit)
  bool plane_conjugation = false;      ///< composed G squares to +1
  bool symbolic_involution = false;    ///< K bar(K) = 1 with q symbolic
};

Classification classify(const ConjugationSpec& spec, int N);

/// Real basis of the SO*(2n) form: rows (e_j + e_{j'})/sqrt2 for j <= n,
/// then i (e_k - e_{k'})/sqrt2. sqrt2 is represented by t, which equals
/// sqrt2 at s = 1.
SqMat sostar_basis(int N);

/// Standard symplectic block [[0, 1_n], [-1_n, 0]].
SqMat symplectic_J(int N);

/// At q = 1: (M^{-1})^t C M^{-1} = 1 and bar(M) C^t D''_ref M^{-1} equals J
/// up to one global unit (+-1, +-i).
CheckResult check_sostar_basis(const SqMat& m, const SqMat& j, int N);

/// check_sostar_basis for the standard M'' and J, plus the classical-limit
/// witness reducing `dsec` to the reference D''.
CheckResult check_sostar(int N, const AutoMatrix& dsec);

enum class Evaluation { Exact, ClassicalLimit };

/// A defines T -> A T A^{-1} mapping spec1 onto spec2:
/// Cross: G1 A = +-bar(A) G2; Star: C^t G1 A = bar(A) C^t G2.
/// Throws WitnessNotAutomorphism when A is singular or violates the RTT
/// relation or A^t C A = +-C; returns a failed check when the identity
/// does not hold.
CheckResult check_equivalence_witness(const SqMat& a, const ConjugationSpec& spec1, const ConjugationSpec& spec2, int N,
                                      Evaluation eval = Evaluation::Exact);

// Witness matrices.
/// diag(i, ..., i, 1, -i, ..., -i), N odd: D A = -bar(A).
SqMat sharp_cross_witness(int N);
/// diag(sigma(eps_j)): 1, i (j < j') or -i (j > j') where eps_j = -1.
SqMat sign_cross_witness(const std::vector<int>& eps);
/// diag(c_j (1 - i eps_j)), c_j = 1/2 for j <= n and 1 otherwise.
SqMat dsecond_cross_witness(const std::vector<int>& eps);
/// diag(-1, ..., -1, 1, ..., 1), N even.
SqMat dprime_pair_witness(int N);
/// Permutation swapping j and j' wherever eps_j = -1 (j < n); valid at q = 1.
SqMat dsecond_reduction_witness(const std::vector<int>& eps);

struct EquivalenceWitness {
  std::string rule;
  ConjugationSpec from;
  ConjugationSpec to;
  SqMat a;
  Evaluation eval = Evaluation::Exact;
};

/// Built-in identifications proved by explicit A matrices.
std::vector<EquivalenceWitness> equivalence_witnesses(int N, Regime regime);

struct RealFormRow {
  ConjugationSpec spec;  ///< class representative
  RealFormLabel label;
  std::optional<Signature> signature;
  int members = 1;
};

struct RealFormCount {
  int count = 0;
  std::vector<RealFormRow> rows;
  bool triality_caveat = false;  ///< N = 8
};

RealFormCount count_real_forms(int N, Regime regime);

}  // namespace qortho
