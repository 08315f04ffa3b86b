#include "qortho/realforms.hpp"

#include <algorithm>
#include <numeric>

namespace qortho {

namespace {

Witness witness_of(const EntryWitness& w) {
  return {"(" + std::to_string(w.row) + "," + std::to_string(w.col) + ")", w.lhs, w.rhs};
}

CheckResult compare(std::string name, const SqMat& lhs, const SqMat& rhs) {
  if (auto d = first_difference(lhs, rhs)) return CheckResult::fail(std::move(name), witness_of(*d));
  return CheckResult::ok(std::move(name));
}

int square_sign_of(const SqMat& d) {
  SqMat sq = d * d;
  SqMat id = SqMat::identity(d.dim());
  if (sq == id) return 1;
  if (sq == -id) return -1;
  return 0;
}

// Free positions of the sign vector: j < j' outside the forced middle block.
int free_count(const GroupShape& g) { return g.odd ? g.n : g.n - 1; }

std::vector<std::vector<int>> free_sign_patterns(int count) {
  // '+' sorts before '-', so pattern k lists bit (count-1-j) of k as the sign at j
  std::vector<std::vector<int>> out;
  for (int k = 0; k < (1 << count); ++k) {
    std::vector<int> signs(static_cast<std::size_t>(count));
    for (int j = 0; j < count; ++j) signs[static_cast<std::size_t>(j)] = (k >> (count - 1 - j)) & 1 ? -1 : 1;
    out.push_back(std::move(signs));
  }
  return out;
}

Scalar diag_phase(int sign, bool imaginary) { return imaginary ? Scalar::i() * Scalar(sign) : Scalar(sign); }

struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

// ---- automorphism matrices -------------------------------------------------

std::string sign_string(const std::vector<int>& eps) {
  std::string s;
  for (int e : eps) s += e > 0 ? '+' : '-';
  return s;
}

std::vector<int> parse_signs(std::string_view s) {
  std::vector<int> eps;
  for (char ch : s) {
    if (ch == '+')
      eps.push_back(1);
    else if (ch == '-')
      eps.push_back(-1);
    else
      throw Error(Errc::InvalidSpec, "sign strings use only '+' and '-'");
  }
  return eps;
}

std::string AutoMatrix::tag() const {
  switch (family) {
  case AutoFamily::CanonicalSharp: return "canonical";
  case AutoFamily::DPrime: return "dprime:" + sign_string(eps);
  case AutoFamily::DSecond: return "dsecond:" + sign_string(eps);
  }
  return {};
}

AutoMatrix canonical_D(int N) {
  auto g = GroupShape::make(N);
  SqMat d = SqMat::identity(N);
  if (g.odd) {
    d.set(g.middle, g.middle, Scalar(-1));
  } else {
    d.set(g.n, g.n, Scalar());
    d.set(g.n + 1, g.n + 1, Scalar());
    d.set(g.n, g.n + 1, Scalar(1));
    d.set(g.n + 1, g.n, Scalar(1));
  }
  return AutoMatrix{AutoFamily::CanonicalSharp, {}, std::move(d), 1};
}

AutoMatrix dprime(int N, const std::vector<int>& eps) {
  auto g = GroupShape::make(N);
  if (static_cast<int>(eps.size()) != N) throw Error(Errc::BadFamily, "D' needs N signs");
  for (int j = 1; j <= N; ++j) {
    int e = eps[static_cast<std::size_t>(j - 1)];
    if (e != 1 && e != -1) throw Error(Errc::BadFamily, "signs must be +-1");
    if (e != eps[static_cast<std::size_t>(g.prime(j) - 1)]) throw Error(Errc::BadFamily, "D' needs eps_j' = eps_j");
  }
  bool middle_ok = g.odd ? eps[static_cast<std::size_t>(g.middle - 1)] == 1
                         : eps[static_cast<std::size_t>(g.n - 1)] == 1 && eps[static_cast<std::size_t>(g.n)] == 1;
  if (!middle_ok) throw Error(Errc::BadFamily, "D' middle entries must be +1");
  std::vector<Scalar> d;
  for (int e : eps) d.emplace_back(e);
  return AutoMatrix{AutoFamily::DPrime, eps, SqMat::diag(d), 1};
}

AutoMatrix dsecond(int N, const std::vector<int>& eps) {
  auto g = GroupShape::make(N);
  if (g.odd) throw Error(Errc::BadFamily, "D'' exists only for even N");
  if (static_cast<int>(eps.size()) != N) throw Error(Errc::BadFamily, "D'' needs N signs");
  for (int j = 1; j <= N; ++j) {
    int e = eps[static_cast<std::size_t>(j - 1)];
    if (e != 1 && e != -1) throw Error(Errc::BadFamily, "signs must be +-1");
    if (e != -eps[static_cast<std::size_t>(g.prime(j) - 1)]) throw Error(Errc::BadFamily, "D'' needs eps_j' = -eps_j");
  }
  if (eps[static_cast<std::size_t>(g.n - 1)] != 1) throw Error(Errc::BadFamily, "D'' needs eps_n = 1");
  std::vector<Scalar> d;
  for (int e : eps) d.push_back(diag_phase(e, true));
  return AutoMatrix{AutoFamily::DSecond, eps, SqMat::diag(d), -1};
}

AutoMatrix dsecond_reference(int N) {
  std::vector<int> eps(static_cast<std::size_t>(N), 1);
  for (int j = N / 2; j < N; ++j) eps[static_cast<std::size_t>(j)] = -1;
  return dsecond(N, eps);
}

std::vector<AutoMatrix> enumerate_autos(int N, AutoFamily family) {
  auto g = GroupShape::make(N);
  std::vector<AutoMatrix> out;
  switch (family) {
  case AutoFamily::CanonicalSharp: out.push_back(canonical_D(N)); break;
  case AutoFamily::DPrime:
    for (const auto& free : free_sign_patterns(free_count(g))) {
      std::vector<int> eps(static_cast<std::size_t>(N), 1);
      for (std::size_t j = 0; j < free.size(); ++j) {
        eps[j] = free[j];
        eps[static_cast<std::size_t>(N) - 1 - j] = free[j];
      }
      out.push_back(dprime(N, eps));
    }
    break;
  case AutoFamily::DSecond:
    if (g.odd) throw Error(Errc::BadFamily, "D'' exists only for even N");
    for (const auto& free : free_sign_patterns(g.n - 1)) {
      std::vector<int> eps(static_cast<std::size_t>(N));
      for (std::size_t j = 0; j < free.size(); ++j) {
        eps[j] = free[j];
        eps[static_cast<std::size_t>(N) - 1 - j] = -free[j];
      }
      eps[static_cast<std::size_t>(g.n - 1)] = 1;
      eps[static_cast<std::size_t>(g.n)] = -1;
      out.push_back(dsecond(N, eps));
    }
    break;
  }
  return out;
}

// ---- automorphism conditions -----------------------------------------------

bool AutoCertificate::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

AutoCertificate audit_auto_conditions(const SqMat& d, int N) {
  if (d.dim() != N) throw Error(Errc::DimMismatch, "automorphism matrix must be N x N");
  SqMat C = build_metric(N);
  SqMat R = build_R(N);
  AutoCertificate cert;

  CheckResult dcd = compare("DCD", d.transpose() * C * d, C);
  if (dcd.pass) dcd = compare("DCD", d * C * d.transpose(), C);
  cert.checks.push_back(std::move(dcd));

  SqMat d1 = kron_embed(d, 1, N, 2);
  SqMat d2 = kron_embed(d, 2, N, 2);
  if (auto diff = first_difference(R * d1 * d2, d2 * d1 * R))
    cert.checks.push_back(CheckResult::fail(
        "RDD", {CompositeIndex::from_flat(diff->row, N, 2).str() + "," + CompositeIndex::from_flat(diff->col, N, 2).str(),
                diff->lhs, diff->rhs}));
  else
    cert.checks.push_back(CheckResult::ok("RDD"));

  cert.square_sign = square_sign_of(d);
  if (cert.square_sign == 0)
    cert.checks.push_back(CheckResult::fail("square", {"D^2", (d * d).at(1, 1).str(), "+-1"}));
  else
    cert.checks.push_back(CheckResult::ok("square"));
  return cert;
}

AutoCertificate check_auto_conditions(const SqMat& d, int N) {
  AutoCertificate cert = audit_auto_conditions(d, N);
  for (const auto& c : cert.checks)
    if (!c.pass) throw Error(Errc::ConditionFailed, c.name + " at " + c.witness->where + ": " + c.witness->lhs + " vs " + c.witness->rhs);
  return cert;
}

AutoCertificate check_auto_conditions(const AutoMatrix& d, int N) {
  AutoCertificate cert = check_auto_conditions(d.mat, N);
  if (cert.square_sign != d.square_sign) throw Error(Errc::ConditionFailed, "square sign differs from the family tag");
  return cert;
}

CheckResult check_reality(const SqMat& d, Base base, int N) {
  if (d.dim() != N) throw Error(Errc::DimMismatch, "automorphism matrix must be N x N");
  // D has constant entries, so conjugation is regime-independent.
  SqMat barred = bar(d, Regime::RealQ);
  if (base == Base::Star) {
    SqMat ct = build_metric(N).transpose();
    return compare("reality_star", barred, ct * d * ct);
  }
  switch (square_sign_of(d)) {
  case 1: return compare("reality_cross", barred, d);
  case -1: return compare("reality_cross", barred, -d);
  default: return CheckResult::fail("reality_cross", {"D^2", "not +-1", "+-1"});
  }
}

// ---- conjugation specs -----------------------------------------------------

ConjugationSpec ConjugationSpec::make(Base base, std::vector<AutoMatrix> autos, Regime regime) {
  if ((base == Base::Cross) != (regime == Regime::UnitModulusQ))
    throw Error(Errc::InvalidSpec, "cross requires |q| = 1 and star requires real q");
  return ConjugationSpec{base, std::move(autos), regime};
}

ConjugationSpec ConjugationSpec::parse(std::string_view text, int N) {
  std::optional<Base> base;
  std::optional<Regime> regime;
  std::vector<AutoMatrix> autos;
  auto split = [](std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (start <= s.size()) {
      std::size_t pos = s.find(sep, start);
      if (pos == std::string_view::npos) pos = s.size();
      parts.push_back(s.substr(start, pos - start));
      start = pos + 1;
    }
    return parts;
  };
  for (auto clause : split(text, ';')) {
    if (clause.empty()) continue;
    auto colon = clause.find(':');
    if (colon == std::string_view::npos) throw Error(Errc::InvalidSpec, "expected key:value in '" + std::string(clause) + "'");
    auto key = clause.substr(0, colon);
    auto value = clause.substr(colon + 1);
    if (key == "base") {
      if (value == "star")
        base = Base::Star;
      else if (value == "cross")
        base = Base::Cross;
      else
        throw Error(Errc::InvalidSpec, "base must be star or cross");
    } else if (key == "regime") {
      if (value == "real")
        regime = Regime::RealQ;
      else if (value == "unit")
        regime = Regime::UnitModulusQ;
      else
        throw Error(Errc::InvalidSpec, "regime must be real or unit");
    } else if (key == "autos") {
      for (auto item : split(value, ',')) {
        if (item.empty()) continue;
        if (item == "canonical")
          autos.push_back(canonical_D(N));
        else if (item.starts_with("dprime:"))
          autos.push_back(dprime(N, parse_signs(item.substr(7))));
        else if (item.starts_with("dsecond:"))
          autos.push_back(dsecond(N, parse_signs(item.substr(8))));
        else
          throw Error(Errc::InvalidSpec, "unknown automorphism '" + std::string(item) + "'");
      }
    } else {
      throw Error(Errc::InvalidSpec, "unknown clause '" + std::string(key) + "'");
    }
  }
  if (!base) throw Error(Errc::InvalidSpec, "missing base clause");
  if (!regime) regime = *base == Base::Star ? Regime::RealQ : Regime::UnitModulusQ;
  return make(*base, std::move(autos), *regime);
}

SqMat ConjugationSpec::composed(int N) const {
  SqMat g = SqMat::identity(N);
  for (const auto& a : autos) g = g * a.mat;
  return g;
}

std::string ConjugationSpec::str() const {
  std::string s = std::string("base:") + to_string(base) + ";autos:";
  for (std::size_t k = 0; k < autos.size(); ++k) s += (k ? "," : "") + autos[k].tag();
  return s + ";regime:" + to_string(regime);
}

SqMat plane_conjugation_matrix(const ConjugationSpec& spec, int N) {
  SqMat g = spec.composed(N);
  switch (square_sign_of(g)) {
  case 1: break;
  case -1: throw Error(Errc::NoPlaneConjugation, "composed automorphism squares to -1");
  default: throw Error(Errc::NotInvolution, "composed automorphism does not square to +-1");
  }
  if (spec.base == Base::Cross) return g;
  return build_metric(N).transpose() * g;
}

// ---- classification --------------------------------------------------------

std::string RealFormLabel::str() const {
  if (kind == Kind::SOStar) return "SO*(" + std::to_string(l) + ")";
  return "SO(" + std::to_string(l) + "," + std::to_string(m) + ")";
}

Classification classify(const ConjugationSpec& spec, int N) {
  GroupShape::make(N);
  SqMat g = spec.composed(N);
  int sq = square_sign_of(g);
  if (sq == 0) throw Error(Errc::NotInvolution, "composed automorphism does not square to +-1");

  SqMat C = build_metric(N);
  SqMat k = spec.base == Base::Star ? C.transpose() * g : g;
  SqMat id = SqMat::identity(N);

  Classification out;
  out.plane_conjugation = sq == 1;
  out.symbolic_involution = k * bar(k, spec.regime) == id;

  SqMat k1 = classical_limit(k);
  SqMat kk = k1 * bar(k1, spec.regime);
  if (kk == id) {
    SqMat m = antilinear_fixed_basis(k1, spec.regime);
    SqMat minv = inverse(m);
    SqMat metric = minv.transpose() * classical_limit(C) * minv;
    Signature sig = signature(metric);
    out.signature = sig;
    out.basis = std::move(m);
    out.label = RealFormLabel{RealFormLabel::Kind::SO, std::max(sig.positive, sig.negative),
                              std::min(sig.positive, sig.negative), spec.regime};
    return out;
  }
  if (kk != -id) throw Error(Errc::NotInvolution, "classical-limit conjugation is not an involution");
  if (spec.base != Base::Star || N % 2 != 0 || spec.autos.size() != 1 || spec.autos[0].family != AutoFamily::DSecond)
    throw Error(Errc::Unclassifiable, spec.str());
  CheckResult so = check_sostar(N, spec.autos[0]);
  if (!so.pass) throw Error(Errc::Unclassifiable, "SO* structure check failed: " + so.name);
  out.label = RealFormLabel{RealFormLabel::Kind::SOStar, N, 0, spec.regime};
  return out;
}

SqMat sostar_basis(int N) {
  auto g = GroupShape::make(N);
  if (g.odd) throw Error(Errc::BadN, "SO* needs even N");
  const Scalar half_root2 = Scalar::t() * Scalar(Rational(1, 2));
  const Scalar i_half_root2 = Scalar::i() * half_root2;
  SqMat m(N);
  for (int j = 1; j <= g.n; ++j) {
    m.set(j, j, half_root2);
    m.set(j, g.prime(j), half_root2);
    m.set(g.n + j, j, i_half_root2);
    m.set(g.n + j, g.prime(j), -i_half_root2);
  }
  return m;
}

SqMat symplectic_J(int N) {
  const int n = N / 2;
  SqMat j(N);
  for (int k = 1; k <= n; ++k) {
    j.set(k, n + k, Scalar(1));
    j.set(n + k, k, Scalar(-1));
  }
  return j;
}

CheckResult check_sostar_basis(const SqMat& m, const SqMat& j, int N) {
  if (N % 2 != 0) throw Error(Errc::BadN, "SO* needs even N");
  SqMat c1 = classical_limit(build_metric(N));
  SqMat minv;
  try {
    minv = inverse(m);
  } catch (const Error& e) {
    return CheckResult::fail("sostar_metric", {"M''", "singular", "invertible"});
  }
  SqMat id = SqMat::identity(N);
  try {
    SqMat metric = classical_limit(minv.transpose() * c1 * minv);
    if (auto d = first_difference(metric, id)) return CheckResult::fail("sostar_metric", witness_of(*d));

    SqMat dref = dsecond_reference(N).mat;
    SqMat transported = classical_limit(bar(m, Regime::RealQ) * c1.transpose() * dref * minv);
    for (const Scalar& unit : {Scalar(1), Scalar(-1), Scalar::i(), -Scalar::i()})
      if (transported == j.scaled(unit)) return CheckResult::ok("sostar_structure");
    auto d = first_difference(transported, j);
    return CheckResult::fail("sostar_symplectic", d ? witness_of(*d) : Witness{"J", "?", "?"});
  } catch (const Error& e) {
    return CheckResult::fail("sostar_metric", {"classical limit", e.what(), "finite, t-free"});
  }
}

CheckResult check_sostar(int N, const AutoMatrix& dsec) {
  if (N % 2 != 0) throw Error(Errc::BadN, "SO* needs even N");
  if (dsec.family != AutoFamily::DSecond) throw Error(Errc::BadFamily, "check_sostar expects a D'' matrix");
  CheckResult basis = check_sostar_basis(sostar_basis(N), symplectic_J(N), N);
  if (!basis.pass) return basis;
  auto from = ConjugationSpec::make(Base::Star, {dsec}, Regime::RealQ);
  auto to = ConjugationSpec::make(Base::Star, {dsecond_reference(N)}, Regime::RealQ);
  try {
    CheckResult red = check_equivalence_witness(dsecond_reduction_witness(dsec.eps), from, to, N, Evaluation::ClassicalLimit);
    if (!red.pass) return red;
  } catch (const Error& e) {
    return CheckResult::fail("sostar_reduction", {"A", e.what(), "automorphism"});
  }
  return CheckResult::ok("sostar");
}

// ---- equivalence witnesses -------------------------------------------------

CheckResult check_equivalence_witness(const SqMat& a, const ConjugationSpec& spec1, const ConjugationSpec& spec2, int N,
                                      Evaluation eval) {
  if (spec1.base != spec2.base || spec1.regime != spec2.regime)
    throw Error(Errc::InvalidSpec, "witness specs must share base and regime");
  if (a.dim() != N) throw Error(Errc::DimMismatch, "witness must be N x N");
  const bool classical = eval == Evaluation::ClassicalLimit;
  SqMat C = classical ? classical_limit(build_metric(N)) : build_metric(N);
  SqMat R = classical ? classical_limit(build_R(N)) : build_R(N);

  try {
    inverse(a);
  } catch (const Error&) {
    throw Error(Errc::WitnessNotAutomorphism, "singular");
  }
  SqMat a1 = kron_embed(a, 1, N, 2);
  SqMat a2 = kron_embed(a, 2, N, 2);
  if (R * a1 * a2 != a2 * a1 * R) throw Error(Errc::WitnessNotAutomorphism, "RDD");
  SqMat form = a.transpose() * C * a;
  if (form != C && form != -C) throw Error(Errc::WitnessNotAutomorphism, "DCD");

  SqMat g1 = spec1.composed(N);
  SqMat g2 = spec2.composed(N);
  SqMat abar = bar(a, spec1.regime);
  if (spec1.base == Base::Cross) {
    SqMat lhs = g1 * a;
    SqMat rhs = abar * g2;
    if (lhs == rhs || lhs == -rhs) return CheckResult::ok("equivalence");
    return compare("equivalence", lhs, rhs);
  }
  SqMat ct = C.transpose();
  return compare("equivalence", ct * g1 * a, abar * ct * g2);
}

SqMat sharp_cross_witness(int N) {
  auto g = GroupShape::make(N);
  if (!g.odd) throw Error(Errc::BadN, "odd N only");
  std::vector<Scalar> d;
  for (int j = 1; j <= N; ++j) d.push_back(j < g.middle ? Scalar::i() : (j == g.middle ? Scalar(1) : -Scalar::i()));
  return SqMat::diag(d);
}

SqMat sign_cross_witness(const std::vector<int>& eps) {
  const int N = static_cast<int>(eps.size());
  std::vector<Scalar> d;
  for (int j = 1; j <= N; ++j) {
    const int jp = N + 1 - j;
    if (eps[static_cast<std::size_t>(j - 1)] == 1 || j == jp)
      d.emplace_back(1);
    else
      d.push_back(j < jp ? Scalar::i() : -Scalar::i());
  }
  return SqMat::diag(d);
}

SqMat dsecond_cross_witness(const std::vector<int>& eps) {
  const int N = static_cast<int>(eps.size());
  std::vector<Scalar> d;
  for (int j = 1; j <= N; ++j) {
    Scalar v = Scalar(1) - Scalar::i() * Scalar(eps[static_cast<std::size_t>(j - 1)]);
    d.push_back(j <= N / 2 ? v * Scalar(Rational(1, 2)) : v);
  }
  return SqMat::diag(d);
}

SqMat dprime_pair_witness(int N) {
  std::vector<Scalar> d;
  for (int j = 1; j <= N; ++j) d.emplace_back(j <= N / 2 ? -1 : 1);
  return SqMat::diag(d);
}

SqMat dsecond_reduction_witness(const std::vector<int>& eps) {
  const int N = static_cast<int>(eps.size());
  const int n = N / 2;
  SqMat a = SqMat::identity(N);
  for (int j = 1; j < n; ++j) {
    if (eps[static_cast<std::size_t>(j - 1)] == 1) continue;
    const int jp = N + 1 - j;
    a.set(j, j, Scalar());
    a.set(jp, jp, Scalar());
    a.set(j, jp, Scalar(1));
    a.set(jp, j, Scalar(1));
  }
  return a;
}

std::vector<EquivalenceWitness> equivalence_witnesses(int N, Regime regime) {
  auto g = GroupShape::make(N);
  std::vector<EquivalenceWitness> out;
  const AutoMatrix sharp = canonical_D(N);
  if (regime == Regime::RealQ) {
    if (!g.odd) {
      for (const auto& dp : enumerate_autos(N, AutoFamily::DPrime)) {
        if (dp.eps[0] != 1) continue;
        std::vector<int> neg = dp.eps;
        for (int j = 1; j <= N; ++j)
          if (j != g.n && j != g.n + 1) neg[static_cast<std::size_t>(j - 1)] = -neg[static_cast<std::size_t>(j - 1)];
        out.push_back({"dprime_pair", ConjugationSpec::make(Base::Star, {sharp, dp}, regime),
                       ConjugationSpec::make(Base::Star, {sharp, dprime(N, neg)}, regime), dprime_pair_witness(N),
                       Evaluation::Exact});
      }
      const AutoMatrix ref = dsecond_reference(N);
      for (const auto& ds : enumerate_autos(N, AutoFamily::DSecond)) {
        if (ds.eps == ref.eps) continue;
        out.push_back({"dsecond_reduction", ConjugationSpec::make(Base::Star, {ds}, regime),
                       ConjugationSpec::make(Base::Star, {ref}, regime), dsecond_reduction_witness(ds.eps),
                       Evaluation::ClassicalLimit});
      }
    }
    return out;
  }

  const auto cross = [&](std::vector<AutoMatrix> autos) { return ConjugationSpec::make(Base::Cross, std::move(autos), regime); };
  if (g.odd) out.push_back({"sharp_cross", cross({sharp}), cross({}), sharp_cross_witness(N), Evaluation::Exact});
  for (const auto& dp : enumerate_autos(N, AutoFamily::DPrime)) {
    if (std::all_of(dp.eps.begin(), dp.eps.end(), [](int e) { return e == 1; })) continue;
    SqMat a = sign_cross_witness(dp.eps);
    out.push_back({"dprime_sign", cross({dp}), cross({}), a, Evaluation::Exact});
    out.push_back({"dprime_sign", cross({sharp, dp}), cross({sharp}), a, Evaluation::Exact});
  }
  if (!g.odd)
    for (const auto& ds : enumerate_autos(N, AutoFamily::DSecond))
      out.push_back({"dsecond_cross", cross({ds}), cross({}), dsecond_cross_witness(ds.eps), Evaluation::Exact});
  return out;
}

// ---- counting --------------------------------------------------------------

RealFormCount count_real_forms(int N, Regime regime) {
  auto g = GroupShape::make(N);
  const Base base = regime == Regime::RealQ ? Base::Star : Base::Cross;
  const AutoMatrix sharp = canonical_D(N);

  // Candidate conjugations; specs whose composed matrix fails the
  // automorphism or reality conditions are not conjugations and are dropped.
  std::vector<ConjugationSpec> candidates;
  auto consider = [&](std::vector<AutoMatrix> autos) {
    auto spec = ConjugationSpec::make(base, std::move(autos), regime);
    SqMat gm = spec.composed(N);
    if (audit_auto_conditions(gm, N).pass() && check_reality(gm, base, N).pass) candidates.push_back(std::move(spec));
  };
  // The identity member of D' stands for the bare base conjugation.
  auto simplified = [](AutoMatrix a, std::vector<AutoMatrix> prefix) {
    if (a.family == AutoFamily::DPrime && std::all_of(a.eps.begin(), a.eps.end(), [](int e) { return e == 1; }))
      return prefix;
    prefix.push_back(std::move(a));
    return prefix;
  };
  auto dprimes = enumerate_autos(N, AutoFamily::DPrime);
  for (const auto& dp : dprimes) consider(simplified(dp, {}));
  for (const auto& dp : dprimes) consider(simplified(dp, {sharp}));
  if (!g.odd) {
    auto dseconds = enumerate_autos(N, AutoFamily::DSecond);
    for (const auto& ds : dseconds) consider({ds});
    for (const auto& ds : dseconds) consider({sharp, ds});
  }

  std::vector<SqMat> composed;
  for (const auto& c : candidates) composed.push_back(c.composed(N));
  DisjointSets sets(candidates.size());
  const SqMat id = SqMat::identity(N);
  const SqMat i_id = id.scaled(Scalar::i());
  for (std::size_t a = 0; a < candidates.size(); ++a) {
    for (std::size_t b = a + 1; b < candidates.size(); ++b) {
      // G and -G induce the same automorphism; A = i 1 certifies it.
      const SqMat* w = nullptr;
      if (composed[a] == composed[b])
        w = &id;
      else if (composed[a] == -composed[b])
        w = &i_id;
      if (w && check_equivalence_witness(*w, candidates[a], candidates[b], N).pass) sets.unite(a, b);
    }
  }
  auto locate = [&](const ConjugationSpec& s) -> std::optional<std::size_t> {
    SqMat gm = s.composed(N);
    for (std::size_t k = 0; k < candidates.size(); ++k)
      if (composed[k] == gm) return k;
    return std::nullopt;
  };
  for (const auto& w : equivalence_witnesses(N, regime)) {
    if (w.eval != Evaluation::Exact) continue;
    auto from = locate(w.from);
    auto to = locate(w.to);
    if (from && to && check_equivalence_witness(w.a, w.from, w.to, N).pass) sets.unite(*from, *to);
  }

  RealFormCount out;
  out.triality_caveat = N == 8;
  std::vector<int> members(candidates.size(), 0);
  for (std::size_t k = 0; k < candidates.size(); ++k) ++members[sets.find(k)];
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    if (sets.find(k) != k) continue;
    Classification cls = classify(candidates[k], N);
    out.rows.push_back(RealFormRow{candidates[k], cls.label, cls.signature, members[k]});
  }
  out.count = static_cast<int>(out.rows.size());
  return out;
}

}  // namespace qortho
