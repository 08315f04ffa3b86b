#include "qortho/cli.hpp"

#include "qortho/qplane.hpp"
#include "qortho/realforms.hpp"
#include "qortho/rmatrix.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <ostream>

#ifndef QORTHO_VERSION
#define QORTHO_VERSION "0.0.0"
#endif

namespace qortho {

namespace {

using json = nlohmann::ordered_json;

constexpr int ybe_cap = 12;

struct Entry {
  CheckResult result;
  std::optional<json> data;
  std::vector<std::string> text;
};

struct Report {
  std::string command;
  int n = 0;
  std::optional<std::string> regime;
  std::vector<Entry> checks;

  bool pass() const {
    return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const Entry& e) { return e.result.pass; });
  }
  Entry& add(CheckResult r, std::optional<json> data = std::nullopt) {
    checks.push_back({std::move(r), std::move(data), {}});
    return checks.back();
  }
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json matrix_json(const SqMat& m) {
  json entries = json::array();
  m.for_each([&](int r, int c, const Scalar& v) { entries.push_back(json::array({r, c, v.str()})); });
  return json{{"dim", m.dim()}, {"entries", std::move(entries)}};
}

json poly_json(const NCPoly& p) {
  json terms = json::array();
  for (const auto& [w, c] : p.terms()) terms.push_back(json{{"word", w}, {"coeff", c.str()}});
  return terms;
}

json rules_json(const RewriteSystem& rs) {
  json rules = json::array();
  for (const auto& [lhs, rhs] : rs.rules) rules.push_back(json{{"lhs", lhs}, {"rhs", poly_json(rhs)}});
  return rules;
}

std::vector<std::string> rules_text(const RewriteSystem& rs) {
  std::vector<std::string> lines;
  for (const auto& [lhs, rhs] : rs.rules) lines.push_back(word_str(lhs) + " = " + rhs.str());
  return lines;
}

json report_json(const Report& r) {
  json j;
  j["command"] = r.command;
  j["n"] = r.n;
  if (r.regime) j["regime"] = *r.regime;
  j["pass"] = r.pass();
  j["version"] = QORTHO_VERSION;
  json checks = json::array();
  for (const auto& e : r.checks) {
    json c;
    c["name"] = e.result.name;
    c["pass"] = e.result.pass;
    if (e.result.witness)
      c["witness"] = json{{"where", e.result.witness->where}, {"lhs", e.result.witness->lhs}, {"rhs", e.result.witness->rhs}};
    else
      c["witness"] = nullptr;
    if (e.data) c["data"] = *e.data;
    checks.push_back(std::move(c));
  }
  j["checks"] = std::move(checks);
  return j;
}

void print_text(const Report& r, std::ostream& out) {
  out << "qortho " << r.command << " n=" << r.n;
  if (r.regime) out << " regime=" << *r.regime;
  out << ": " << (r.pass() ? "PASS" : "FAIL") << "\n";
  for (const auto& e : r.checks) {
    out << "  " << (e.result.pass ? "PASS " : "FAIL ") << e.result.name;
    if (e.result.witness) out << " at " << e.result.witness->where << ": " << e.result.witness->lhs << " vs " << e.result.witness->rhs;
    out << "\n";
    for (const auto& line : e.text) out << "    " << line << "\n";
  }
}

CheckResult error_check(std::string name, const Error& e) {
  return CheckResult::fail(std::move(name), {to_string(e.code()), e.detail(), ""});
}

CheckResult compare(std::string name, const SqMat& lhs, const SqMat& rhs) {
  if (auto d = first_difference(lhs, rhs))
    return CheckResult::fail(std::move(name), {"(" + std::to_string(d->row) + "," + std::to_string(d->col) + ")", d->lhs, d->rhs});
  return CheckResult::ok(std::move(name));
}

CheckResult equals(std::string name, const std::string& where, const std::string& got, const std::string& want) {
  if (got == want) return CheckResult::ok(std::move(name));
  return CheckResult::fail(std::move(name), {where, got, want});
}

Regime parse_regime(const std::string& s) { return s == "unit" ? Regime::UnitModulusQ : Regime::RealQ; }

json spec_json(const ConjugationSpec& spec) {
  json autos = json::array();
  for (const auto& d : spec.autos) autos.push_back(d.tag());
  return json{{"base", to_string(spec.base)}, {"autos", std::move(autos)}, {"regime", to_string(spec.regime)}, {"text", spec.str()}};
}

// ---- command bodies ---------------------------------------------------------

void metric_checks(Report& rep, int N) {
  auto g = GroupShape::make(N);
  SqMat C = build_metric(N);
  json rho = json::array();
  for (const auto& v : build_rho(N)) rho.push_back(v.get_str());
  rep.add(compare("metric_involution", C * C, SqMat::identity(N)), json{{"rho", rho}, {"metric", matrix_json(C)}});

  CheckResult anti = CheckResult::ok("metric_antidiagonal");
  C.for_each([&](int a, int b, const Scalar& v) {
    if (anti.pass && (b != g.prime(a) || v.is_zero()))
      anti = CheckResult::fail("metric_antidiagonal", {"(" + std::to_string(a) + "," + std::to_string(b) + ")", v.str(), "0"});
  });
  if (anti.pass && static_cast<int>(C.nnz()) != N)
    anti = CheckResult::fail("metric_antidiagonal", {"nnz", std::to_string(C.nnz()), std::to_string(N)});
  rep.add(anti);

  SqMat perm(N);
  for (int a = 1; a <= N; ++a) perm.set(a, g.prime(a), Scalar(1));
  rep.add(compare("metric_classical", classical_limit(C), perm));
}

void reality_checks(Report& rep, int N) {
  SqMat R = build_R(N);
  rep.add(check_r_reality(R, Regime::RealQ, N), json{{"R", matrix_json(R)}});
  rep.add(check_r_reality(R, Regime::UnitModulusQ, N));
}

void projector_checks(Report& rep, int N) {
  Projectors p = build_projectors(N);
  const int dim = N * N;
  SqMat id = SqMat::identity(dim);
  rep.add(compare("pa_idempotent", p.PA * p.PA, p.PA));
  rep.add(compare("p0_idempotent", p.P0 * p.P0, p.P0));
  rep.add(compare("pa_p0_orthogonal", p.PA * p.P0, SqMat(dim)));
  rep.add(compare("resolution_of_identity", p.P0 + p.PA + p.PS, id));
  rep.add(equals("trace_p0", "trace", trace(p.P0).str(), Scalar(1).str()));
  const int r = rank(p.PA);
  rep.add(equals("rank_pa", "rank", std::to_string(r), std::to_string(N * (N - 1) / 2)), json{{"rank", r}});
  rep.add(check_char_eq(p.Rhat, N));
}

void ybe_check(Report& rep, int N, bool force) {
  if (N > ybe_cap && !force) throw UsageError("ybe is capped at N = " + std::to_string(ybe_cap) + "; pass --force to override");
  rep.add(check_ybe(build_R(N), N), json{{"dim", N * N * N}});
}

CheckResult family_check(const std::string& name, const std::vector<AutoMatrix>& autos, int N) {
  for (const auto& d : autos) {
    AutoCertificate cert = audit_auto_conditions(d.mat, N);
    for (const auto& c : cert.checks)
      if (!c.pass) return CheckResult::fail(name, {d.tag() + " " + c.name + " " + c.witness->where, c.witness->lhs, c.witness->rhs});
    if (cert.square_sign != d.square_sign)
      return CheckResult::fail(name, {d.tag() + " square", std::to_string(cert.square_sign), std::to_string(d.square_sign)});
    for (Base b : {Base::Star, Base::Cross}) {
      CheckResult r = check_reality(d.mat, b, N);
      if (!r.pass) return CheckResult::fail(name, {d.tag() + " " + r.name + " " + r.witness->where, r.witness->lhs, r.witness->rhs});
    }
  }
  return CheckResult::ok(name);
}

void auto_checks(Report& rep, int N) {
  rep.add(family_check("auto_canonical", enumerate_autos(N, AutoFamily::CanonicalSharp), N));
  auto dp = enumerate_autos(N, AutoFamily::DPrime);
  rep.add(family_check("auto_dprime", dp, N), json{{"members", dp.size()}});
  if (N % 2 == 0) {
    auto ds = enumerate_autos(N, AutoFamily::DSecond);
    rep.add(family_check("auto_dsecond", ds, N), json{{"members", ds.size()}});
  }
}

int expected_count(int N, Regime regime) {
  const int n = N / 2;
  if (regime == Regime::UnitModulusQ) return N % 2 ? 1 : 2;
  return N % 2 ? (1 << n) : (1 << n) + (1 << (n - 2));
}

void table_checks(Report& rep, int N, Regime regime) {
  RealFormCount count = count_real_forms(N, regime);
  json table = json::array();
  std::vector<std::string> lines;
  for (const auto& row : count.rows) {
    json r{{"spec", spec_json(row.spec)}, {"label", row.label.str()}};
    r["signature"] = row.signature ? json::array({row.signature->positive, row.signature->negative}) : json(nullptr);
    r["members"] = row.members;
    table.push_back(std::move(r));
    lines.push_back(row.label.str() + "  " + row.spec.str() + "  (" + std::to_string(row.members) + " specs)");
  }
  if (count.triality_caveat) lines.push_back("N = 8: triality may identify further forms");
  const int want = expected_count(N, regime);
  Entry& e = rep.add(equals(std::string("count_") + to_string(regime), "count", std::to_string(count.count), std::to_string(want)),
                     json{{"regime", to_string(regime)},
                          {"count", count.count},
                          {"expected", want},
                          {"triality_caveat", count.triality_caveat},
                          {"table", std::move(table)}});
  e.text = std::move(lines);

  CheckResult wit = CheckResult::ok(std::string("witnesses_") + to_string(regime));
  auto witnesses = equivalence_witnesses(N, regime);
  for (const auto& w : witnesses) {
    CheckResult r = CheckResult::fail(wit.name, {w.rule, "", ""});
    try {
      r = check_equivalence_witness(w.a, w.from, w.to, N, w.eval);
    } catch (const Error& err) {
      r = error_check(wit.name, err);
    }
    if (!r.pass) {
      wit = CheckResult::fail(wit.name, {w.rule + " " + w.from.str() + " -> " + w.to.str(), r.witness->lhs, r.witness->rhs});
      break;
    }
  }
  rep.add(wit, json{{"witnesses", witnesses.size()}});
}

void plane_checks(Report& rep, int N, bool relations, bool confluence) {
  RewriteSystem rs = plane_relations(N);
  if (relations) {
    const int want = N * (N - 1) / 2;
    Entry& e = rep.add(equals("plane_relations", "rules", std::to_string(rs.rules.size()), std::to_string(want)),
                       json{{"rules", rules_json(rs)}});
    e.text = rules_text(rs);
  }
  if (confluence) rep.add(check_confluence(rs));
}

void plane_conj_checks(Report& rep, int N, const ConjugationSpec& spec, bool check) {
  SqMat k;
  try {
    k = plane_conjugation_matrix(spec, N);
  } catch (const Error& e) {
    rep.add(error_check("plane_conjugation", e));
    return;
  }
  json images = json::array();
  std::vector<std::string> lines;
  for (int a = 1; a <= N; ++a) {
    NCPoly img = conj_poly(NCPoly::generator(a), k, spec.regime);
    images.push_back(img.str());
    lines.push_back("(" + word_str({a}) + ")* = " + img.str());
  }
  Entry& e = rep.add(CheckResult::ok("plane_conjugation"), json{{"spec", spec_json(spec)}, {"K", matrix_json(k)}, {"images", images}});
  e.text = std::move(lines);
  if (check) rep.add(check_star_consistency(plane_relations(N), k, spec.regime));
}

void classify_checks(Report& rep, int N, const ConjugationSpec& spec) {
  for (const auto& d : spec.autos) {
    AutoCertificate cert = audit_auto_conditions(d.mat, N);
    CheckResult r = CheckResult::ok("auto_conditions " + d.tag());
    for (const auto& c : cert.checks)
      if (!c.pass) {
        r = CheckResult::fail(r.name, {c.name + " " + c.witness->where, c.witness->lhs, c.witness->rhs});
        break;
      }
    rep.add(r);
  }
  try {
    Classification cls = classify(spec, N);
    json data{{"spec", spec_json(spec)}, {"label", cls.label.str()}};
    data["signature"] = cls.signature ? json::array({cls.signature->positive, cls.signature->negative}) : json(nullptr);
    data["plane_conjugation"] = cls.plane_conjugation;
    data["symbolic_involution"] = cls.symbolic_involution;
    Entry& e = rep.add(CheckResult::ok("classify"), std::move(data));
    e.text.push_back(cls.label.str());
  } catch (const Error& e) {
    rep.add(error_check("classify", e));
  }
}

void verify_all(Report& rep, int N, bool force) {
  metric_checks(rep, N);
  reality_checks(rep, N);
  ybe_check(rep, N, force);
  projector_checks(rep, N);
  auto_checks(rep, N);
  for (Regime r : {Regime::RealQ, Regime::UnitModulusQ}) table_checks(rep, N, r);
  if (N % 2 == 0) {
    CheckResult so = check_sostar(N, dsecond_reference(N));
    so.name = "sostar";
    rep.add(so);
  }
  plane_checks(rep, N, true, true);
  for (const char* text : {"base:star", "base:star;autos:canonical", "base:cross", "base:cross;autos:canonical"}) {
    auto spec = ConjugationSpec::parse(text, N);
    SqMat k;
    try {
      k = plane_conjugation_matrix(spec, N);
    } catch (const Error& e) {
      rep.add(error_check(std::string("star_consistency ") + text, e));
      continue;
    }
    CheckResult r = check_star_consistency(plane_relations(N), k, spec.regime);
    r.name += std::string(" ") + text;
    rep.add(r);
  }
  if (N == 4)
    for (int sign : {1, -1}) rep.add(quotient_check(sign));
}

const char* spec_help =
    "conjugation spec: base:star|cross;autos:canonical[,dprime:<signs>][,dsecond:<signs>];regime:real|unit\n"
    "  <signs> is a string of N '+'/'-' characters; regime defaults to real for star and unit for cross";

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact checks for the quantum orthogonal groups SO_q(N), their real forms and quantum planes", "qortho"};
  app.require_subcommand(1);
  std::string format = "text";
  if (const char* env = std::getenv("QORTHO_FORMAT")) format = env;
  app.add_option("--format", format, "output format (overrides QORTHO_FORMAT)")->check(CLI::IsMember({"json", "text"}));
  app.set_version_flag("--version", QORTHO_VERSION);

  int n = 0;
  bool force = false;
  bool relations = false;
  bool confluence = false;
  bool check = false;
  bool without_t = false;
  std::string spec_text;
  std::string regime_text = "real";
  std::string base_text;
  std::string autos_text;
  std::string sign_text;

  auto need_n = [&](CLI::App* sub) { sub->add_option("--n", n, "dimension N (at least 3)")->required(); };
  auto* rmat = app.add_subcommand("rmat", "metric, R-matrix and R reality conditions");
  need_n(rmat);
  auto* ybe = app.add_subcommand("ybe", "Yang-Baxter equation R12 R13 R23 = R23 R13 R12");
  need_n(ybe);
  ybe->add_flag("--force", force, "allow N above 12");
  auto* proj = app.add_subcommand("projectors", "projector identities and the characteristic equation");
  need_n(proj);
  auto* cls = app.add_subcommand("classify", "classify the real form of a conjugation");
  need_n(cls);
  auto* cls_spec = cls->add_option("--spec", spec_text, spec_help);
  auto* cls_base = cls->add_option("--base", base_text, "star or cross (default: star for real, cross for unit)")
                       ->check(CLI::IsMember({"star", "cross"}));
  auto* cls_autos = cls->add_option("--autos", autos_text, "comma-separated automorphisms, e.g. canonical,dprime:-++-");
  auto* cls_regime = cls->add_option("--regime", regime_text, "real or unit")->check(CLI::IsMember({"real", "unit"}));
  cls_spec->excludes(cls_base)->excludes(cls_autos)->excludes(cls_regime);
  auto* table = app.add_subcommand("table", "real forms up to equivalence");
  need_n(table);
  table->add_option("--regime", regime_text, "real or unit")->check(CLI::IsMember({"real", "unit"}));
  auto* plane = app.add_subcommand("plane", "quantum plane relations and confluence");
  need_n(plane);
  plane->add_flag("--relations", relations, "print the rewrite rules");
  plane->add_flag("--confluence", confluence, "run the overlap check");
  auto* pconj = app.add_subcommand("plane-conj", "conjugation of the quantum plane");
  need_n(pconj);
  pconj->add_option("--spec", spec_text, spec_help)->required();
  pconj->add_flag("--check", check, "check compatibility with the plane relations");
  auto* quot = app.add_subcommand("quotient", "SO_q(3) planes inside the N = 4 plane");
  quot->add_option("--sign", sign_text, "plus (x3 = x2) or minus (x3 = -x2)")->required()->check(CLI::IsMember({"plus", "minus"}));
  quot->add_flag("--without-t", without_t, "drop the sqrt(q^1/2 + q^-1/2) scaling");
  auto* all = app.add_subcommand("verify-all", "every identity check for one N");
  need_n(all);
  all->add_flag("--force", force, "allow N above 12 for the Yang-Baxter check");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion& e) {
    out << QORTHO_VERSION << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "qortho: " << e.what() << "\n";
    return 2;
  }
  if (format != "json" && format != "text") {
    err << "qortho: QORTHO_FORMAT must be json or text\n";
    return 2;
  }

  Report rep;
  try {
    CLI::App* sub = app.get_subcommands().front();
    rep.command = sub->get_name();
    if (sub == quot) {
      rep.n = 4;
      const int sign = sign_text == "plus" ? 1 : -1;
      Entry& e = rep.add(quotient_check(sign, !without_t));
      try {
        RewriteSystem rs = quotient_system(sign);
        e.data = json{{"rules", rules_json(rs)}};
        e.text = rules_text(rs);
      } catch (const Error&) {
      }
    } else {
      rep.n = n;
      GroupShape::make(n);
      if (sub == rmat) {
        metric_checks(rep, n);
        reality_checks(rep, n);
      } else if (sub == ybe) {
        ybe_check(rep, n, force);
      } else if (sub == proj) {
        projector_checks(rep, n);
      } else if (sub == cls) {
        if (spec_text.empty()) {
          if (base_text.empty()) base_text = cls_regime->count() && regime_text == "unit" ? "cross" : "star";
          spec_text = "base:" + base_text;
          if (!autos_text.empty()) spec_text += ";autos:" + autos_text;
          if (cls_regime->count()) spec_text += ";regime:" + regime_text;
        }
        auto spec = ConjugationSpec::parse(spec_text, n);
        rep.regime = to_string(spec.regime);
        classify_checks(rep, n, spec);
      } else if (sub == table) {
        rep.regime = regime_text;
        table_checks(rep, n, parse_regime(regime_text));
      } else if (sub == plane) {
        if (!relations && !confluence) relations = confluence = true;
        plane_checks(rep, n, relations, confluence);
      } else if (sub == pconj) {
        auto spec = ConjugationSpec::parse(spec_text, n);
        rep.regime = to_string(spec.regime);
        plane_conj_checks(rep, n, spec, check);
      } else if (sub == all) {
        verify_all(rep, n, force);
      }
    }
  } catch (const UsageError& e) {
    err << "qortho: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    switch (e.code()) {
    case Errc::BadN:
    case Errc::InvalidSpec:
    case Errc::BadFamily:
      err << "qortho: " << e.what() << "\n";
      return 2;
    default:
      rep.add(error_check("internal", e));
    }
  }

  if (format == "json")
    out << report_json(rep).dump(2) << "\n";
  else
    print_text(rep, out);
  return rep.pass() ? 0 : 1;
}

}  // namespace qortho
