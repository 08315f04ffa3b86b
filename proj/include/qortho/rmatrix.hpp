#pragma once

// R-matrix data of SO_q(N): the rho vector, the antidiagonal metric, the
// N^2 x N^2 R-matrix, its braided form Rhat = P R and the three spectral
// projectors.

#include "qortho/check.hpp"
#include "qortho/linalg.hpp"

#include <vector>

namespace qortho {

struct GroupShape {
  int N = 0;
  int n = 0;           ///< floor(N/2)
  bool odd = false;
  int middle = 0;      ///< (N+1)/2 for odd N, 0 otherwise

  /// Throws BadN for N < 3.
  static GroupShape make(int N);
  int prime(int a) const { return N + 1 - a; }
};

std::vector<Rational> build_rho(int N);

/// C_{a a'} = q^{-rho_a}.
SqMat build_metric(int N);

/// Nonzero entries exactly as listed for the SO_q(N) R-matrix; row (a,b),
/// column (c,d) holds R^{ab}_{cd}.
SqMat build_R(int N);

struct RData {
  GroupShape shape;
  std::vector<Rational> rho;
  SqMat C;
  SqMat R;

  static RData build(int N);
};

/// R12 R13 R23 == R23 R13 R12 in the N^3-dimensional space.
CheckResult check_ybe(const SqMat& R, int N);

struct Projectors {
  SqMat P0;
  SqMat PA;
  SqMat PS;
  SqMat Rhat;
};

/// Rhat^{ab}_{cd} = R^{ba}_{cd};
/// P0^{ab}_{cd} = C^{ab} C_{cd} / (C_{ef} C^{ef});
/// PA = (q + 1/q)^{-1} [-Rhat + q 1 - (q - q^{1-N}) P0];
/// PS = 1 - PA - P0.
Projectors build_projectors(int N);

/// (Rhat - q)(Rhat + 1/q)(Rhat - q^{1-N}) == 0.
CheckResult check_char_eq(const SqMat& rhat, int N);
CheckResult check_char_eq(int N);

/// UnitModulusQ: bar(R) == R^{-1}. RealQ: bar(R^{ab}_{cd}) == R^{dc}_{ba}.
CheckResult check_r_reality(const SqMat& R, Regime regime, int N);

}  // namespace qortho
