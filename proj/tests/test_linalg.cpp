#include "oracle.hpp"

#include "qortho/realforms.hpp"
#include "qortho/rmatrix.hpp"

#include <Eigen/Dense>
#include <functional>
#include <doctest.h>

using namespace qortho;

namespace {

SqMat random_matrix(oracle::Gen& gen, int dim, int fill, bool with_s = true) {
  SqMat m(dim);
  for (int k = 0; k < fill; ++k) {
    Scalar v = with_s ? gen.scalar(false, false) : Scalar(gen.gauss(false));
    m.set(gen.uniform(1, dim), gen.uniform(1, dim), v);
  }
  return m;
}

SqMat antidiag_ones(int N) {
  SqMat m(N);
  for (int a = 1; a <= N; ++a) m.set(a, N + 1 - a, Scalar(1));
  return m;
}

Errc error_code(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::InvalidSpec;
}

Signature eigen_signature(const SqMat& s) {
  const int n = s.dim();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  s.for_each([&](int r, int c, const Scalar& v) { m(r - 1, c - 1) = v.constant().re.get_d(); });
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  Signature sig;
  for (int k = 0; k < n; ++k) (es.eigenvalues()(k) > 0 ? sig.positive : sig.negative)++;
  return sig;
}

}  // namespace

TEST_CASE("composite indices are row-major and 1-based") {
  CHECK(CompositeIndex{{1, 1}, 4}.flat() == 1);
  CHECK(CompositeIndex{{2, 3}, 4}.flat() == 7);
  CHECK(CompositeIndex{{2, 1, 3}, 3}.flat() == 12);
  for (int k = 1; k <= 27; ++k) CHECK(CompositeIndex::from_flat(k, 3, 3).flat() == k);
  CHECK(CompositeIndex::from_flat(7, 4, 2).str() == "(2,3)");
}

TEST_CASE("matmul examples") {
  SqMat c3 = build_metric(3);
  CHECK(c3 * c3 == SqMat::identity(3));
  SqMat d4 = canonical_D(4).mat;
  CHECK(d4 * d4 == SqMat::identity(4));
  oracle::Gen gen(1);
  SqMat a = random_matrix(gen, 5, 12);
  CHECK(a * SqMat::identity(5) == a);
  CHECK(matmul(a, SqMat::identity(5)) == a);
  CHECK(error_code([] { (void)(SqMat::identity(2) * SqMat::identity(3)); }) == Errc::DimMismatch);
}

TEST_CASE("kron_embed examples") {
  CHECK(kron_embed(SqMat::identity(3), 2, 3, 3) == SqMat::identity(27));
  CHECK(kron_embed(SqMat::identity(4), 1, 4, 2) == SqMat::identity(16));
  SqMat r12 = kron_embed(build_R(3), 1, 3, 3);
  CHECK(r12.dim() == 27);
  CHECK(r12.at(CompositeIndex{{1, 1, 1}, 3}.flat(), CompositeIndex{{1, 1, 1}, 3}.flat()) == Scalar::q_pow(1));
  SqMat d1 = kron_embed(canonical_D(4).mat, 1, 4, 2);
  CHECK(d1.at(CompositeIndex{{2, 1}, 4}.flat(), CompositeIndex{{3, 1}, 4}.flat()) == Scalar(1));
  CHECK(error_code([] { (void)kron_embed(SqMat::identity(5), 1, 4, 2); }) == Errc::DimMismatch);
}

TEST_CASE("kron_embed agrees with a direct Kronecker product") {
  oracle::Gen gen(2);
  const int N = 3;
  SqMat a = random_matrix(gen, N, 6);
  SqMat a1 = kron_embed(a, 1, N, 2);
  SqMat a2 = kron_embed(a, 2, N, 2);
  for (int i = 1; i <= N; ++i)
    for (int j = 1; j <= N; ++j)
      for (int k = 1; k <= N; ++k)
        for (int l = 1; l <= N; ++l) {
          const int row = CompositeIndex{{i, j}, N}.flat();
          const int col = CompositeIndex{{k, l}, N}.flat();
          CHECK(a1.at(row, col) == (j == l ? a.at(i, k) : Scalar()));
          CHECK(a2.at(row, col) == (i == k ? a.at(j, l) : Scalar()));
        }
  SqMat d = canonical_D(4).mat;
  CHECK(kron_embed(d, 1, 4, 2) * kron_embed(d, 2, 4, 2) == kron_embed(d, 2, 4, 2) * kron_embed(d, 1, 4, 2));
}

TEST_CASE("matmul is associative on random sparse triples") {
  oracle::Gen gen(4);
  for (int k = 0; k < 30; ++k) {
    SqMat a = random_matrix(gen, 4, 6);
    SqMat b = random_matrix(gen, 4, 6);
    SqMat c = random_matrix(gen, 4, 6);
    CHECK((a * b) * c == a * (b * c));
  }
}

TEST_CASE("inverse examples") {
  SqMat c4 = build_metric(4);
  CHECK(inverse(c4) == c4);
  SqMat k = classical_limit(build_metric(4).transpose());
  SqMat m = antilinear_fixed_basis(k, Regime::RealQ);
  SqMat mi = inverse(m);
  CHECK(m * mi == SqMat::identity(4));
  CHECK(mi * m == SqMat::identity(4));
  SqMat zero_row = SqMat::identity(3);
  zero_row.set(2, 2, Scalar());
  CHECK(error_code([&] { (void)inverse(zero_row); }) == Errc::Singular);
}

TEST_CASE("inverse is two-sided on random matrices") {
  oracle::Gen gen(6);
  int inverted = 0;
  for (int k = 0; k < 20; ++k) {
    SqMat a = random_matrix(gen, 4, 9) + SqMat::identity(4);
    try {
      SqMat ai = inverse(a);
      CHECK(a * ai == SqMat::identity(4));
      CHECK(ai * a == SqMat::identity(4));
      ++inverted;
    } catch (const Error& e) {
      CHECK(e.code() == Errc::Singular);
      CHECK(oracle::dense_rank(oracle::eval(a, GaussRat(Rational(5, 7)))) < 4);
    }
  }
  CHECK(inverted > 10);
}

TEST_CASE("rank agrees with dense elimination at a rational point") {
  oracle::Gen gen(8);
  for (int k = 0; k < 20; ++k) {
    SqMat a = random_matrix(gen, 5, gen.uniform(2, 9));
    SqMat b = random_matrix(gen, 5, 3);
    SqMat prod = a * b;  // often rank deficient
    for (const SqMat* m : {&a, &prod}) {
      int oracle_rank = std::max(oracle::dense_rank(oracle::eval(*m, GaussRat(Rational(2, 3)))),
                                 oracle::dense_rank(oracle::eval(*m, GaussRat(Rational(-11, 5)))));
      CHECK(rank(*m) == oracle_rank);
    }
  }
}

TEST_CASE("signature examples") {
  auto diag = [](std::vector<long> d) {
    std::vector<Scalar> v(d.begin(), d.end());
    return SqMat::diag(v);
  };
  CHECK(signature(diag({1, 1, 1, 1})) == Signature{4, 0});
  CHECK(signature(diag({1, 1, -1, 1})) == Signature{3, 1});
  CHECK(signature(antidiag_ones(4)) == Signature{2, 2});
  CHECK(signature(antidiag_ones(5)) == Signature{3, 2});

  SqMat asym = SqMat::identity(2);
  asym.set(1, 2, Scalar(1));
  CHECK(error_code([&] { (void)signature(asym); }) == Errc::NotSymmetric);
  CHECK(error_code([&] { (void)signature(diag({1, 0})); }) == Errc::Degenerate);
  CHECK(error_code([&] { (void)signature(SqMat::identity(2).scaled(Scalar::i())); }) == Errc::NotReal);
}

TEST_CASE("signature agrees with numeric eigenvalues and is congruence invariant") {
  oracle::Gen gen(9);
  int tested = 0;
  for (int k = 0; k < 60; ++k) {
    const int n = gen.uniform(2, 6);
    SqMat a = random_matrix(gen, n, 2 * n, false);
    SqMat s = a + a.transpose();
    if (rank(s) < n) continue;
    Signature sig = signature(s);
    CHECK(sig == eigen_signature(s));
    SqMat p = random_matrix(gen, n, n, false) + SqMat::identity(n).scaled(Scalar(3));
    if (rank(p) == n) CHECK(signature(p.transpose() * s * p) == sig);
    ++tested;
  }
  CHECK(tested > 20);
}

TEST_CASE("antilinear fixed basis examples") {
  CHECK(antilinear_fixed_basis(SqMat::identity(4), Regime::RealQ) == SqMat::identity(4).scaled(Scalar(2)));

  SqMat c4 = classical_limit(build_metric(4));
  SqMat k = c4.transpose() * canonical_D(4).mat;
  SqMat m = antilinear_fixed_basis(k, Regime::RealQ);
  CHECK(bar(m, Regime::RealQ) * k == m);
  SqMat mi = inverse(m);
  CHECK(signature(mi.transpose() * c4 * mi) == Signature{3, 1});

  SqMat c3 = classical_limit(build_metric(3));
  SqMat m3 = antilinear_fixed_basis(c3.transpose(), Regime::RealQ);
  SqMat m3i = inverse(m3);
  CHECK(signature(m3i.transpose() * c3 * m3i) == Signature{3, 0});

  SqMat not_inv = SqMat::identity(2).scaled(Scalar(2));
  CHECK(error_code([&] { (void)antilinear_fixed_basis(not_inv, Regime::RealQ); }) == Errc::NotInvolution);
}

TEST_CASE("antilinear fixed basis is invertible and fixed on the conjugation corpus") {
  for (int N = 3; N <= 6; ++N) {
    for (Regime r : {Regime::RealQ, Regime::UnitModulusQ}) {
      for (const auto& row : count_real_forms(N, r).rows) {
        SqMat g = row.spec.composed(N);
        SqMat c = classical_limit(build_metric(N));
        SqMat k = row.spec.base == Base::Star ? c.transpose() * g : g;
        if (!(k * bar(k, r) == SqMat::identity(N))) continue;
        SqMat m = antilinear_fixed_basis(k, r);
        CHECK(bar(m, r) * k == m);
        CHECK(rank(m) == N);
      }
    }
  }
}

TEST_CASE("any fixed basis yields the same signature") {
  // Rows of a fixed basis can be recombined with real coefficients.
  oracle::Gen gen(10);
  SqMat c4 = classical_limit(build_metric(4));
  SqMat k = c4.transpose() * canonical_D(4).mat;
  SqMat m = antilinear_fixed_basis(k, Regime::RealQ);
  for (int trial = 0; trial < 10; ++trial) {
    SqMat p = random_matrix(gen, 4, 6, false) + SqMat::identity(4).scaled(Scalar(4));
    if (rank(p) < 4) continue;
    SqMat m2 = p * m;
    CHECK(bar(m2, Regime::RealQ) * k == m2);
    SqMat m2i = inverse(m2);
    CHECK(signature(m2i.transpose() * c4 * m2i) == Signature{3, 1});
  }
}
