#include "qortho/rmatrix.hpp"

namespace qortho {

namespace {

int pair_index(int a, int b, int N) { return CompositeIndex{{a, b}, N}.flat(); }

Witness entry_witness(const EntryWitness& w, int width, int arity) {
  return {CompositeIndex::from_flat(w.row, width, arity).str() + "," + CompositeIndex::from_flat(w.col, width, arity).str(),
          w.lhs, w.rhs};
}

CheckResult compare(std::string name, const SqMat& lhs, const SqMat& rhs, int width, int arity) {
  if (auto d = first_difference(lhs, rhs)) return CheckResult::fail(std::move(name), entry_witness(*d, width, arity));
  return CheckResult::ok(std::move(name));
}

}  // namespace

GroupShape GroupShape::make(int N) {
  if (N < 3) throw Error(Errc::BadN, "N must be at least 3, got " + std::to_string(N));
  GroupShape g;
  g.N = N;
  g.n = N / 2;
  g.odd = N % 2 == 1;
  g.middle = g.odd ? (N + 1) / 2 : 0;
  return g;
}

std::vector<Rational> build_rho(int N) {
  GroupShape::make(N);
  // Odd: N/2 - 1, ..., 1/2, 0, -1/2, ..., 1 - N/2
  // Even: N/2 - 1, ..., 1, 0, 0, -1, ..., 1 - N/2
  std::vector<Rational> rho(static_cast<std::size_t>(N));
  const int n = N / 2;
  for (int a = 1; a <= N; ++a) {
    Rational v;
    if (N % 2 == 1) {
      if (a <= n)
        v = Rational(N, 2) - a;
      else if (a > n + 1)
        v = Rational(N, 2) + 1 - a;
    } else
      v = a <= n ? Rational(n - a) : Rational(n + 1 - a);
    v.canonicalize();
    rho[static_cast<std::size_t>(a - 1)] = v;
  }
  return rho;
}

SqMat build_metric(int N) {
  auto g = GroupShape::make(N);
  auto rho = build_rho(N);
  SqMat c(N);
  for (int a = 1; a <= N; ++a) c.set(a, g.prime(a), Scalar::q_pow(-rho[static_cast<std::size_t>(a - 1)]));
  return c;
}

SqMat build_R(int N) {
  auto g = GroupShape::make(N);
  auto rho = build_rho(N);
  auto r = [&](int a) -> const Rational& { return rho[static_cast<std::size_t>(a - 1)]; };
  const Scalar q = Scalar::q_pow(1);
  const Scalar qi = Scalar::q_pow(-1);
  const Scalar lambda = q - qi;

  SqMat R(N * N);
  auto put = [&](int a, int b, int c, int d, Scalar v) { R.set(pair_index(a, b, N), pair_index(c, d, N), std::move(v)); };

  for (int a = 1; a <= N; ++a) {
    const int ap = g.prime(a);
    if (a != g.middle) {
      put(a, a, a, a, q);
      put(a, ap, a, ap, qi);
    } else {
      put(a, a, a, a, Scalar(1));
    }
    for (int b = 1; b <= N; ++b) {
      if (a != b && ap != b) put(a, b, a, b, Scalar(1));
      if (a > b && ap != b) {
        put(a, b, b, a, lambda);
        put(a, ap, b, g.prime(b), -lambda * Scalar::q_pow(r(a) - r(b)));
      }
    }
    if (a > ap) put(a, ap, ap, a, lambda * (Scalar(1) - Scalar::q_pow(r(a) - r(ap))));
  }
  return R;
}

RData RData::build(int N) {
  return RData{GroupShape::make(N), build_rho(N), build_metric(N), build_R(N)};
}

CheckResult check_ybe(const SqMat& R, int N) {
  if (R.dim() != N * N) throw Error(Errc::DimMismatch, "R must have dimension N^2");
  SqMat r12 = embed(R, {1, 2}, N, 3);
  SqMat r13 = embed(R, {1, 3}, N, 3);
  SqMat r23 = embed(R, {2, 3}, N, 3);
  return compare("yang_baxter", r12 * r13 * r23, r23 * r13 * r12, N, 3);
}

Projectors build_projectors(int N) {
  GroupShape::make(N);
  const int dim = N * N;
  SqMat C = build_metric(N);
  SqMat R = build_R(N);
  SqMat id = SqMat::identity(dim);
  SqMat rhat = flip(N) * R;

  // C_{ef} C^{ef}; the inverse metric has the same entries as C.
  Scalar norm;
  C.for_each([&](int, int, const Scalar& v) { norm += v * v; });
  SqMat p0(dim);
  C.for_each([&](int a, int b, const Scalar& cab) {
    C.for_each([&](int c, int d, const Scalar& ccd) { p0.set(pair_index(a, b, N), pair_index(c, d, N), cab * ccd / norm); });
  });

  const Scalar q = Scalar::q_pow(1);
  const Scalar r = q;  // fixed by PA^2 = PA and PA P0 = 0
  SqMat inner = -rhat + id.scaled(r) - p0.scaled(q - Scalar::q_pow(1 - N));
  SqMat pa = inner.scaled((q + Scalar::q_pow(-1)).inverse());
  SqMat ps = id - pa - p0;
  return Projectors{std::move(p0), std::move(pa), std::move(ps), std::move(rhat)};
}

CheckResult check_char_eq(const SqMat& rhat, int N) {
  if (rhat.dim() != N * N) throw Error(Errc::DimMismatch, "Rhat must have dimension N^2");
  SqMat id = SqMat::identity(N * N);
  SqMat prod = (rhat - id.scaled(Scalar::q_pow(1))) * (rhat + id.scaled(Scalar::q_pow(-1))) *
               (rhat - id.scaled(Scalar::q_pow(1 - N)));
  return compare("characteristic_equation", prod, SqMat(N * N), N, 2);
}

CheckResult check_char_eq(int N) { return check_char_eq(build_projectors(N).Rhat, N); }

CheckResult check_r_reality(const SqMat& R, Regime regime, int N) {
  if (R.dim() != N * N) throw Error(Errc::DimMismatch, "R must have dimension N^2");
  SqMat barred = bar(R, regime);
  if (regime == Regime::UnitModulusQ) {
    SqMat inv;
    try {
      inv = inverse(R);
    } catch (const Error& e) {
      return CheckResult::fail("r_reality_unit", {"R", "singular", e.what()});
    }
    return compare("r_reality_unit", barred, inv, N, 2);
  }
  // bar(R)^{ab}_{cd} == R^{dc}_{ba}
  SqMat P = flip(N);
  return compare("r_reality_real", barred, P * R.transpose() * P, N, 2);
}

}  // namespace qortho
