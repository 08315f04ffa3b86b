#include "qortho/realforms.hpp"

#include <doctest.h>

#include <functional>
#include <set>

using namespace qortho;

namespace {

const Scalar q = Scalar::q_pow(1);
const Scalar I = Scalar::i();

Errc error_code(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::InvalidSpec;
}

SqMat diag_of(const std::vector<Scalar>& d) { return SqMat::diag(d); }

ConjugationSpec spec(const char* text, int N) { return ConjugationSpec::parse(text, N); }

std::vector<std::vector<int>> all_sign_vectors(int N) {
  std::vector<std::vector<int>> out;
  for (int mask = 0; mask < (1 << N); ++mask) {
    std::vector<int> e(static_cast<std::size_t>(N));
    for (int j = 0; j < N; ++j) e[static_cast<std::size_t>(j)] = (mask >> j) & 1 ? -1 : 1;
    out.push_back(e);
  }
  return out;
}

// Real basis matrices of the displayed form: 1/sqrt2 is written t/2, which is
// 1/sqrt2 at s = 1. `sharp` selects the variant for the composed D.
SqMat displayed_M(int N, bool sharp) {
  const int n = N / 2;
  const Scalar h = Scalar::t() * Scalar(Rational(1, 2));
  SqMat m(N);
  for (int j = 1; j <= n; ++j) {
    const int jp = N + 1 - j;
    m.set(j, j, h);
    m.set(j, jp, h);
    m.set(jp, j, I * h);
    m.set(jp, jp, -I * h);
  }
  if (N % 2 == 1) {
    m.set(n + 1, n + 1, sharp ? I : Scalar(1));
  } else if (sharp) {
    m.set(n + 1, n, -h);
    m.set(n + 1, n + 1, h);
  }
  return m;
}

std::vector<long> expected_diag(int N, bool sharp) {
  std::vector<long> d(static_cast<std::size_t>(N), 1);
  if (sharp) d[static_cast<std::size_t>(N / 2)] = -1;
  return d;
}

}  // namespace

TEST_CASE("canonical D") {
  SqMat d4 = canonical_D(4).mat;
  CHECK(d4.at(3, 2) == Scalar(1));
  CHECK(d4.at(2, 3) == Scalar(1));
  CHECK(d4.at(1, 1) == Scalar(1));
  CHECK(d4.at(4, 4) == Scalar(1));
  CHECK(d4.nnz() == 4);
  CHECK(canonical_D(5).mat == diag_of({1, 1, -1, 1, 1}));
  for (int N = 3; N <= 8; ++N) CHECK(canonical_D(N).mat * canonical_D(N).mat == SqMat::identity(N));
  CHECK(error_code([] { canonical_D(2); }) == Errc::BadN);
}

TEST_CASE("family enumeration") {
  CHECK(enumerate_autos(5, AutoFamily::DPrime).size() == 4);
  CHECK(enumerate_autos(6, AutoFamily::DSecond).size() == 4);
  auto dp4 = enumerate_autos(4, AutoFamily::DPrime);
  REQUIRE(dp4.size() == 2);
  CHECK(dp4[0].mat == SqMat::identity(4));
  CHECK(dp4[1].mat == diag_of({-1, 1, 1, -1}));
  CHECK(error_code([] { enumerate_autos(5, AutoFamily::DSecond); }) == Errc::BadFamily);
  for (int N = 3; N <= 10; ++N) {
    const int n = N / 2;
    auto dp = enumerate_autos(N, AutoFamily::DPrime);
    CHECK(dp.size() == static_cast<std::size_t>(N % 2 ? 1 << n : 1 << (n - 1)));
    for (std::size_t k = 1; k < dp.size(); ++k) CHECK(sign_string(dp[k - 1].eps) < sign_string(dp[k].eps));
    if (N % 2 == 0) {
      auto ds = enumerate_autos(N, AutoFamily::DSecond);
      CHECK(ds.size() == static_cast<std::size_t>(1 << (n - 1)));
      for (std::size_t k = 1; k < ds.size(); ++k) CHECK(sign_string(ds[k - 1].eps) < sign_string(ds[k].eps));
    }
  }
  CHECK(dsecond_reference(4).mat == diag_of({I, I, -I, -I}));
}

TEST_CASE("family constructors reject bad sign vectors") {
  CHECK(error_code([] { dprime(4, {1, -1, 1, 1}); }) == Errc::BadFamily);
  CHECK(error_code([] { dprime(4, {1, -1, -1, 1}); }) == Errc::BadFamily);
  CHECK(error_code([] { dprime(5, {1, 1, -1, 1, 1}); }) == Errc::BadFamily);
  CHECK(error_code([] { dsecond(4, {1, 1, 1, 1}); }) == Errc::BadFamily);
  CHECK(error_code([] { dsecond(4, {1, -1, 1, -1}); }) == Errc::BadFamily);
  CHECK(error_code([] { dsecond(5, {1, 1, 1, -1, -1}); }) == Errc::BadFamily);
  CHECK(error_code([] { (void)parse_signs("+x"); }) == Errc::InvalidSpec);
}

TEST_CASE("sign families agree with brute-force search up to overall sign") {
  for (int N = 3; N <= 6; ++N) {
    std::set<std::string> real_ok, imag_ok;
    for (const auto& e : all_sign_vectors(N)) {
      std::vector<Scalar> re, im;
      for (int x : e) {
        re.emplace_back(x);
        im.push_back(I * Scalar(x));
      }
      if (audit_auto_conditions(SqMat::diag(re), N).pass()) real_ok.insert(sign_string(e));
      if (audit_auto_conditions(SqMat::diag(im), N).pass()) imag_ok.insert(sign_string(e));
    }
    auto with_negatives = [](const std::vector<AutoMatrix>& family) {
      std::set<std::string> out;
      for (const auto& d : family) {
        out.insert(sign_string(d.eps));
        std::vector<int> neg;
        for (int x : d.eps) neg.push_back(-x);
        out.insert(sign_string(neg));
      }
      return out;
    };
    CHECK(real_ok == with_negatives(enumerate_autos(N, AutoFamily::DPrime)));
    if (N % 2 == 0)
      CHECK(imag_ok == with_negatives(enumerate_autos(N, AutoFamily::DSecond)));
    else
      CHECK(imag_ok.empty());
  }
}

TEST_CASE("automorphism conditions examples") {
  auto cert = check_auto_conditions(canonical_D(4), 4);
  CHECK(cert.square_sign == 1);
  CHECK(cert.pass());
  auto cs = check_auto_conditions(dsecond(4, {1, 1, -1, -1}), 4);
  CHECK(cs.square_sign == -1);
  try {
    check_auto_conditions(diag_of({1, 1, 1, 2}), 4);
    FAIL("expected ConditionFailed");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ConditionFailed);
    CHECK(e.detail().rfind("DCD", 0) == 0);
  }
  auto audit = audit_auto_conditions(diag_of({1, 1, 1, 2}), 4);
  REQUIRE(audit.checks.size() == 3);
  CHECK(audit.checks[0].name == "DCD");
  CHECK_FALSE(audit.checks[0].pass);
}

TEST_CASE("every family member satisfies the automorphism and reality conditions") {
  for (int N = 3; N <= 8; ++N) {
    std::vector<AutoMatrix> all = enumerate_autos(N, AutoFamily::CanonicalSharp);
    for (auto f : {AutoFamily::DPrime, AutoFamily::DSecond}) {
      if (f == AutoFamily::DSecond && N % 2) continue;
      auto fam = enumerate_autos(N, f);
      all.insert(all.end(), fam.begin(), fam.end());
    }
    for (const auto& d : all) {
      CAPTURE(d.tag());
      CHECK(check_auto_conditions(d, N).pass());
      CHECK(check_reality(d.mat, Base::Star, N).pass);
      CHECK(check_reality(d.mat, Base::Cross, N).pass);
    }
    for (const auto& dp : enumerate_autos(N, AutoFamily::DPrime)) {
      SqMat g = canonical_D(N).mat * dp.mat;
      CHECK(g * g == SqMat::identity(N));
    }
  }
}

TEST_CASE("corrupted family members fail with a witness") {
  const int N = 6;
  SqMat d = canonical_D(N).mat;
  d.set(1, 1, Scalar(2));
  SqMat dp = dprime(N, {-1, 1, 1, 1, 1, -1}).mat;
  dp.set(1, 1, Scalar(1));
  SqMat ds = dsecond_reference(N).mat;
  ds.set(1, 1, Scalar(1));
  for (const SqMat* m : {&d, &dp, &ds}) {
    auto cert = audit_auto_conditions(*m, N);
    CHECK_FALSE(cert.pass());
    bool witnessed = false;
    for (const auto& c : cert.checks) witnessed = witnessed || (!c.pass && c.witness.has_value());
    CHECK(witnessed);
  }
  // reality negative controls
  CHECK_FALSE(check_reality(canonical_D(N).mat.scaled(Scalar(1) + I), Base::Cross, N).pass);
  CHECK_FALSE(check_reality(dsecond_reference(N).mat.scaled(I), Base::Star, N).pass);
}

TEST_CASE("conjugation spec grammar") {
  auto s = spec("base:star;autos:canonical,dprime:-++-;regime:real", 4);
  CHECK(s.base == Base::Star);
  CHECK(s.autos.size() == 2);
  CHECK(s.str() == "base:star;autos:canonical,dprime:-++-;regime:real");
  CHECK(ConjugationSpec::parse(s.str(), 4).str() == s.str());
  CHECK(spec("base:cross", 5).regime == Regime::UnitModulusQ);
  CHECK(error_code([] { spec("base:cross;regime:real", 4); }) == Errc::InvalidSpec);
  CHECK(error_code([] { spec("autos:canonical", 4); }) == Errc::InvalidSpec);
  CHECK(error_code([] { spec("base:star;autos:foo", 4); }) == Errc::InvalidSpec);
  CHECK(error_code([] { spec("base:star;autos:dprime:+-+", 4); }) == Errc::BadFamily);
}

TEST_CASE("plane conjugation matrices") {
  SqMat ks = plane_conjugation_matrix(spec("base:star;autos:canonical", 4), 4);
  CHECK(ks.row(2) == SparseRow{{2, Scalar(1)}});
  CHECK(ks.row(1) == SparseRow{{4, q}});
  SqMat kc = plane_conjugation_matrix(spec("base:cross;autos:canonical", 4), 4);
  CHECK(kc.row(1) == SparseRow{{1, Scalar(1)}});
  CHECK(kc.row(2) == SparseRow{{3, Scalar(1)}});
  CHECK(error_code([] { plane_conjugation_matrix(spec("base:star;autos:dsecond:++--", 4), 4); }) ==
        Errc::NoPlaneConjugation);
}

TEST_CASE("classification fixtures") {
  auto label = [](const char* text, int N) { return classify(spec(text, N), N).label.str(); };
  CHECK(label("base:star", 4) == "SO(4,0)");
  CHECK(label("base:star;autos:canonical", 4) == "SO(3,1)");
  CHECK(label("base:cross;autos:canonical", 4) == "SO(3,1)");
  CHECK(label("base:cross", 5) == "SO(3,2)");
  CHECK(label("base:cross", 4) == "SO(2,2)");
  CHECK(label("base:star;autos:dsecond:++--", 4) == "SO*(4)");
  CHECK(label("base:star", 3) == "SO(3,0)");
  CHECK(label("base:star;autos:canonical", 3) == "SO(2,1)");
  for (int n = 2; n <= 4; ++n) {
    CHECK(label("base:star;autos:canonical", 2 * n) == "SO(" + std::to_string(2 * n - 1) + ",1)");
    CHECK(label("base:cross;autos:canonical", 2 * n) == "SO(" + std::to_string(n + 1) + "," + std::to_string(n - 1) + ")");
    CHECK(label("base:cross", 2 * n + 1) == "SO(" + std::to_string(n + 1) + "," + std::to_string(n) + ")");
  }
  auto raw = classify(spec("base:cross", 5), 5);
  REQUIRE(raw.signature);
  CHECK(raw.signature->positive + raw.signature->negative == 5);
  CHECK(raw.plane_conjugation);
  CHECK(raw.symbolic_involution);
  auto so_star = classify(spec("base:star;autos:dsecond:++--", 4), 4);
  CHECK_FALSE(so_star.plane_conjugation);
  CHECK(so_star.label.kind == RealFormLabel::Kind::SOStar);
}

TEST_CASE("displayed real bases reproduce the diagonal metrics") {
  for (int N = 4; N <= 7; ++N) {
    for (bool sharp : {false, true}) {
      CAPTURE(N);
      CAPTURE(sharp);
      SqMat c1 = classical_limit(build_metric(N));
      SqMat k = c1.transpose() * (sharp ? canonical_D(N).mat : SqMat::identity(N));
      SqMat m = displayed_M(N, sharp);
      CHECK(bar(m, Regime::RealQ) * k == m);
      SqMat mi = inverse(m);
      SqMat cp = classical_limit(mi.transpose() * c1 * mi);
      std::vector<Scalar> d;
      for (long x : expected_diag(N, sharp)) d.emplace_back(x);
      CHECK(cp == SqMat::diag(d));
      Signature sig = signature(cp);
      auto cls = classify(ConjugationSpec::make(Base::Star, sharp ? std::vector<AutoMatrix>{canonical_D(N)} : std::vector<AutoMatrix>{},
                                                Regime::RealQ),
                          N);
      CHECK(cls.label.l == std::max(sig.positive, sig.negative));
      CHECK(cls.label.m == std::min(sig.positive, sig.negative));
    }
  }
}

TEST_CASE("displayed sharp basis with a real entry in row n+2 is not fixed") {
  const int N = 8, n = 4;
  SqMat m = displayed_M(N, true);
  m.set(n + 2, n + 2, -Scalar::t() * Scalar(Rational(1, 2)));
  SqMat k = classical_limit(build_metric(N)).transpose() * canonical_D(N).mat;
  CHECK_FALSE(bar(m, Regime::RealQ) * k == m);
}

TEST_CASE("SO* structure") {
  for (int N = 4; N <= 8; N += 2) CHECK(check_sostar(N, dsecond_reference(N)).pass);
  for (const auto& ds : enumerate_autos(6, AutoFamily::DSecond)) CHECK(check_sostar(6, ds).pass);
  CHECK(check_sostar_basis(sostar_basis(4), symplectic_J(4).scaled(Scalar(-1)), 4).pass);
  SqMat bad = sostar_basis(4);
  bad.set(3, 4, -bad.at(3, 4));
  CHECK_FALSE(check_sostar_basis(bad, symplectic_J(4), 4).pass);
  SqMat swapped = sostar_basis(4);
  swapped.set(1, 4, -swapped.at(1, 4));
  CHECK_FALSE(check_sostar_basis(swapped, symplectic_J(4), 4).pass);
  CHECK(error_code([] { check_sostar(5, dsecond_reference(4)); }) == Errc::BadN);
  CHECK(error_code([] { check_sostar(4, canonical_D(4)); }) == Errc::BadFamily);
}

TEST_CASE("equivalence witness examples") {
  CHECK(check_equivalence_witness(diag_of({I, I, 1, -I, -I}), spec("base:cross;autos:canonical", 5), spec("base:cross", 5), 5).pass);
  CHECK(sharp_cross_witness(5) == diag_of({I, I, 1, -I, -I}));
  CHECK(check_equivalence_witness(diag_of({-1, -1, -1, 1, 1, 1}), spec("base:star;autos:canonical,dprime:+-++-+", 6),
                                  spec("base:star;autos:canonical,dprime:-++++-", 6), 6)
            .pass);
  CHECK_FALSE(check_equivalence_witness(SqMat::identity(5), spec("base:cross;autos:canonical", 5), spec("base:cross", 5), 5).pass);
  CHECK(error_code([] {
          check_equivalence_witness(diag_of({1, 2, 1, 1, 1}), spec("base:cross", 5), spec("base:cross", 5), 5);
        }) == Errc::WitnessNotAutomorphism);
  CHECK(error_code([] {
          check_equivalence_witness(SqMat::identity(4), spec("base:star", 4), spec("base:cross", 4), 4);
        }) == Errc::InvalidSpec);
}

TEST_CASE("reduction of D'' holds only in the classical limit") {
  auto from = spec("base:star;autos:dsecond:-+-+", 4);
  auto to = spec("base:star;autos:dsecond:++--", 4);
  SqMat a = dsecond_reduction_witness({-1, 1, -1, 1});
  CHECK(check_equivalence_witness(a, from, to, 4, Evaluation::ClassicalLimit).pass);
  CHECK(error_code([&] { check_equivalence_witness(a, from, to, 4, Evaluation::Exact); }) == Errc::WitnessNotAutomorphism);
}

TEST_CASE("built-in witnesses verify and preserve the label") {
  for (int N = 3; N <= 8; ++N) {
    for (Regime r : {Regime::RealQ, Regime::UnitModulusQ}) {
      for (const auto& w : equivalence_witnesses(N, r)) {
        CAPTURE(w.rule);
        CAPTURE(w.from.str());
        CHECK(check_equivalence_witness(w.a, w.from, w.to, N, w.eval).pass);
        CHECK(classify(w.from, N).label == classify(w.to, N).label);
      }
    }
  }
}

TEST_CASE("real form counts") {
  CHECK(count_real_forms(5, Regime::RealQ).count == 4);
  CHECK(count_real_forms(6, Regime::RealQ).count == 10);
  CHECK(count_real_forms(6, Regime::UnitModulusQ).count == 2);
  CHECK(count_real_forms(5, Regime::UnitModulusQ).count == 1);
  for (int n = 2; n <= 5; ++n) {
    CHECK(count_real_forms(2 * n + 1, Regime::RealQ).count == 1 << n);
    CHECK(count_real_forms(2 * n, Regime::RealQ).count == (1 << n) + (1 << (n - 2)));
    CHECK(count_real_forms(2 * n + 1, Regime::UnitModulusQ).count == 1);
    CHECK(count_real_forms(2 * n, Regime::UnitModulusQ).count == 2);
  }
  CHECK(count_real_forms(8, Regime::RealQ).triality_caveat);
  CHECK_FALSE(count_real_forms(6, Regime::RealQ).triality_caveat);
  CHECK(error_code([] { count_real_forms(2, Regime::RealQ); }) == Errc::BadN);
}

TEST_CASE("real form table contents") {
  auto t = count_real_forms(6, Regime::RealQ);
  std::multiset<std::string> labels;
  for (const auto& row : t.rows) labels.insert(row.label.str());
  CHECK(labels.count("SO(6,0)") == 1);
  CHECK(labels.count("SO(4,2)") == 3);
  CHECK(labels.count("SO(5,1)") == 1);
  CHECK(labels.count("SO(3,3)") == 1);
  CHECK(labels.count("SO*(6)") == 4);
  CHECK(t.rows.front().spec.str() == "base:star;autos:;regime:real");
  auto u = count_real_forms(6, Regime::UnitModulusQ);
  CHECK(u.rows[0].label.str() == "SO(3,3)");
  CHECK(u.rows[1].label.str() == "SO(4,2)");
  auto u5 = count_real_forms(5, Regime::UnitModulusQ);
  CHECK(u5.rows[0].label.str() == "SO(3,2)");
}
