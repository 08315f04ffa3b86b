#include "qortho/qplane.hpp"

#include "qortho/rmatrix.hpp"

#include <algorithm>
#include <set>

namespace qortho {

bool MonomialGreater::operator()(const Word& a, const Word& b) const {
  if (a.size() != b.size()) return a.size() > b.size();
  return a < b;
}

std::string word_str(const Word& w) {
  if (w.empty()) return "1";
  std::string s;
  for (int a : w) s += "x" + std::to_string(a);
  return s;
}

// ---- NCPoly ----------------------------------------------------------------

NCPoly NCPoly::monomial(Word w, Scalar c) {
  NCPoly p;
  p.add_term(w, c);
  return p;
}

const Word& NCPoly::leading_word() const {
  if (terms_.empty()) throw Error(Errc::DimMismatch, "zero polynomial has no leading word");
  return terms_.begin()->first;
}

const Scalar& NCPoly::leading_coeff() const {
  if (terms_.empty()) throw Error(Errc::DimMismatch, "zero polynomial has no leading coefficient");
  return terms_.begin()->second;
}

Scalar NCPoly::coeff(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Scalar() : it->second;
}

void NCPoly::add_term(const Word& w, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

NCPoly NCPoly::scaled(const Scalar& c) const {
  NCPoly out;
  if (c.is_zero()) return out;
  for (const auto& [w, v] : terms_) out.terms_.emplace(w, v * c);
  return out;
}

NCPoly operator+(const NCPoly& a, const NCPoly& b) {
  NCPoly out = a;
  for (const auto& [w, v] : b.terms_) out.add_term(w, v);
  return out;
}

NCPoly operator-(const NCPoly& a, const NCPoly& b) { return a + (-b); }

NCPoly operator*(const NCPoly& a, const NCPoly& b) {
  NCPoly out;
  for (const auto& [wa, va] : a.terms_)
    for (const auto& [wb, vb] : b.terms_) {
      Word w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      out.add_term(w, va * vb);
    }
  return out;
}

std::string NCPoly::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [w, v] : terms_) {
    if (!s.empty()) s += " + ";
    s += "(" + v.str() + ")*" + word_str(w);
  }
  return s;
}

// ---- rewriting -------------------------------------------------------------

namespace {

struct Match {
  std::size_t pos = 0;
  const Word* lhs = nullptr;
  const NCPoly* rhs = nullptr;
};

std::optional<Match> leftmost_match(const Word& w, const RewriteSystem& rs) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (std::size_t len : {std::size_t{2}, std::size_t{1}}) {
      if (i + len > w.size()) continue;
      auto it = rs.rules.find(Word(w.begin() + static_cast<long>(i), w.begin() + static_cast<long>(i + len)));
      if (it != rs.rules.end()) return Match{i, &it->first, &it->second};
    }
  }
  return std::nullopt;
}

NCPoly splice(const Word& w, std::size_t pos, std::size_t len, const NCPoly& middle) {
  NCPoly left = NCPoly::monomial(Word(w.begin(), w.begin() + static_cast<long>(pos)));
  NCPoly right = NCPoly::monomial(Word(w.begin() + static_cast<long>(pos + len), w.end()));
  return left * middle * right;
}

NCPoly rule_relation(const Word& lhs, const NCPoly& rhs) { return NCPoly::monomial(lhs) - rhs; }

// Rule from a nonzero relation: leading word -> minus the rest, made monic.
std::pair<Word, NCPoly> orient(const NCPoly& r) {
  Word lead = r.leading_word();
  Scalar inv = r.leading_coeff().inverse();
  NCPoly rest = r.scaled(-inv);
  rest.add_term(lead, Scalar(1));
  return {lead, rest};
}

struct Ambiguity {
  Word word;
  NCPoly first;
  NCPoly second;
};

std::vector<Ambiguity> ambiguities(const RewriteSystem& rs) {
  std::vector<Ambiguity> out;
  for (const auto& [u, ru] : rs.rules) {
    for (const auto& [v, rv] : rs.rules) {
      for (std::size_t k = 1; k < std::min(u.size(), v.size()); ++k) {
        if (!std::equal(u.end() - static_cast<long>(k), u.end(), v.begin())) continue;
        Word w = u;
        w.insert(w.end(), v.begin() + static_cast<long>(k), v.end());
        NCPoly tail = NCPoly::monomial(Word(v.begin() + static_cast<long>(k), v.end()));
        NCPoly head = NCPoly::monomial(Word(u.begin(), u.end() - static_cast<long>(k)));
        out.push_back({w, ru * tail, head * rv});
      }
      if (v.size() < u.size()) {
        for (std::size_t p = 0; p + v.size() <= u.size(); ++p) {
          if (!std::equal(v.begin(), v.end(), u.begin() + static_cast<long>(p))) continue;
          out.push_back({u, ru, splice(u, p, v.size(), rv)});
        }
      }
    }
  }
  return out;
}

}  // namespace

NCPoly normal_form(const NCPoly& p, const RewriteSystem& rs) {
  NCPoly cur = p;
  for (long step = 0;; ++step) {
    if (step > 10'000'000) throw Error(Errc::IdentityFailed, "normal form did not terminate");
    bool rewrote = false;
    for (const auto& [w, c] : cur.terms()) {
      auto m = leftmost_match(w, rs);
      if (!m) continue;
      Word word = w;
      Scalar coeff = c;
      cur.add_term(word, -coeff);
      cur = cur + splice(word, m->pos, m->lhs->size(), *m->rhs).scaled(coeff);
      rewrote = true;
      break;
    }
    if (!rewrote) return cur;
  }
}

CheckResult check_confluence(const RewriteSystem& rs) {
  for (const auto& amb : ambiguities(rs)) {
    NCPoly a = normal_form(amb.first, rs);
    NCPoly b = normal_form(amb.second, rs);
    if (!(a == b)) return CheckResult::fail("confluence", {word_str(amb.word), a.str(), b.str()});
  }
  return CheckResult::ok("confluence");
}

RewriteSystem quadratic_system(int N, const std::vector<NCPoly>& relations) {
  auto column = [N](const Word& w) {
    if (w.size() != 2 || w[0] < 1 || w[0] > N || w[1] < 1 || w[1] > N)
      throw Error(Errc::InvalidSpec, "relation term " + word_str(w) + " is not a quadratic word");
    return (w[0] - 1) * N + w[1];
  };
  std::vector<SparseRow> rows;
  for (const auto& r : relations) {
    SparseRow row;
    for (const auto& [w, c] : r.terms()) row[column(w)] = c;
    if (!row.empty()) rows.push_back(std::move(row));
  }
  std::vector<int> order(static_cast<std::size_t>(N * N));
  for (int k = 0; k < N * N; ++k) order[static_cast<std::size_t>(k)] = k + 1;
  RowEchelon ech = row_reduce(std::move(rows), order);

  RewriteSystem rs;
  rs.N = N;
  for (std::size_t k = 0; k < ech.rows.size(); ++k) {
    const int piv = ech.pivots[k];
    NCPoly rhs;
    for (const auto& [col, c] : ech.rows[k]) {
      if (col == piv) continue;
      rhs.add_term({(col - 1) / N + 1, (col - 1) % N + 1}, -c);
    }
    rs.rules.emplace(Word{(piv - 1) / N + 1, (piv - 1) % N + 1}, std::move(rhs));
  }
  return rs;
}

RewriteSystem plane_relations(int N) {
  GroupShape::make(N);
  const SqMat pa = build_projectors(N).PA;
  std::vector<NCPoly> relations;
  for (int r = 1; r <= N * N; ++r) {
    NCPoly p;
    for (const auto& [col, c] : pa.row(r)) p.add_term({(col - 1) / N + 1, (col - 1) % N + 1}, c);
    relations.push_back(std::move(p));
  }
  RewriteSystem rs = quadratic_system(N, relations);
  std::set<Word> expected;
  for (int a = 1; a <= N; ++a)
    for (int b = a + 1; b <= N; ++b) expected.insert({a, b});
  std::set<Word> got;
  for (const auto& [lhs, rhs] : rs.rules) got.insert(lhs);
  if (got != expected)
    throw Error(Errc::RankMismatch, "plane relations have " + std::to_string(got.size()) + " leading words, expected " +
                                        std::to_string(expected.size()) + " of the form x^a x^b, a < b");
  return rs;
}

// ---- conjugation -----------------------------------------------------------

NCPoly conj_poly(const NCPoly& p, const SqMat& k, Regime regime) {
  std::vector<NCPoly> image(static_cast<std::size_t>(k.dim() + 1));
  for (int a = 1; a <= k.dim(); ++a)
    for (const auto& [b, c] : k.row(a)) image[static_cast<std::size_t>(a)].add_term({b}, c);
  NCPoly out;
  for (const auto& [w, c] : p.terms()) {
    NCPoly term = NCPoly::monomial({}, bar(c, regime));
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
      if (*it < 1 || *it > k.dim()) throw Error(Errc::DimMismatch, "generator index outside the conjugation matrix");
      term = term * image[static_cast<std::size_t>(*it)];
    }
    out = out + term;
  }
  return out;
}

CheckResult check_star_consistency(const RewriteSystem& rs, const SqMat& k, Regime regime) {
  if (k.dim() != rs.N) throw Error(Errc::DimMismatch, "conjugation matrix must be N x N");
  for (int a = 1; a <= rs.N; ++a) {
    NCPoly x = NCPoly::generator(a);
    NCPoly back = conj_poly(conj_poly(x, k, regime), k, regime);
    if (!(back == x)) return CheckResult::fail("star_involution", {word_str({a}), back.str(), x.str()});
  }
  for (const auto& [lhs, rhs] : rs.rules) {
    NCPoly image = normal_form(conj_poly(rule_relation(lhs, rhs), k, regime), rs);
    if (!image.is_zero()) return CheckResult::fail("star_relations", {"relation " + word_str(lhs), image.str(), "0"});
  }
  return CheckResult::ok("star_consistency");
}

// ---- quotients -------------------------------------------------------------

RewriteSystem quotient_system(int sign, int cap) {
  if (sign != 1 && sign != -1) throw Error(Errc::InvalidSpec, "quotient sign must be +-1");
  RewriteSystem rs = plane_relations(4);
  rs.rules.emplace(Word{3}, NCPoly::monomial({2}, Scalar(sign)));

  for (int pass = 0; pass < cap; ++pass) {
    bool changed = false;

    // Drop rules whose left side another rule already reduces.
    for (bool again = true; again;) {
      again = false;
      for (auto it = rs.rules.begin(); it != rs.rules.end(); ++it) {
        const Word& u = it->first;
        bool covered = false;
        for (const auto& [v, rv] : rs.rules) {
          if (v.size() >= u.size()) continue;
          for (std::size_t p = 0; p + v.size() <= u.size(); ++p)
            covered = covered || std::equal(v.begin(), v.end(), u.begin() + static_cast<long>(p));
        }
        if (!covered) continue;
        NCPoly relation = rule_relation(u, it->second);
        rs.rules.erase(it);
        NCPoly r = normal_form(relation, rs);
        if (!r.is_zero()) rs.rules.insert(orient(r));
        changed = again = true;
        break;
      }
    }
    for (auto& [lhs, rhs] : rs.rules) rhs = normal_form(rhs, rs);

    for (const auto& amb : ambiguities(rs)) {
      NCPoly d = normal_form(amb.first, rs) - normal_form(amb.second, rs);
      if (d.is_zero()) continue;
      rs.rules.insert(orient(d));
      changed = true;
      break;
    }
    if (!changed) return rs;
  }
  throw Error(Errc::IdentityFailed, "quotient completion did not settle within " + std::to_string(cap) + " passes");
}

CheckResult quotient_check(int sign, bool with_t) {
  const std::string name = sign > 0 ? "quotient_plus" : "quotient_minus";
  RewriteSystem rs;
  try {
    rs = quotient_system(sign);
  } catch (const Error& e) {
    return CheckResult::fail(name, {"completion", e.what(), "settled"});
  }
  CheckResult conf = check_confluence(rs);
  if (!conf.pass) return CheckResult::fail(name, *conf.witness);

  Scalar scale = sign > 0 ? Scalar(1) : Scalar::i();
  if (with_t) scale = scale * Scalar::t();
  const std::vector<NCPoly> image = {NCPoly(), NCPoly::generator(1), NCPoly::monomial({2}, scale), NCPoly::generator(4)};

  const RewriteSystem target = plane_relations(3);
  for (const auto& [lhs, rhs] : target.rules) {
    const NCPoly relation = rule_relation(lhs, rhs);
    NCPoly mapped;
    for (const auto& [w, c] : relation.terms()) {
      NCPoly term = NCPoly::monomial({}, c);
      for (int y : w) term = term * image[static_cast<std::size_t>(y)];
      mapped = mapped + term;
    }
    NCPoly r = normal_form(mapped, rs);
    if (!r.is_zero()) return CheckResult::fail(name, {"y relation " + word_str(lhs), r.str(), "0"});
  }
  return CheckResult::ok(name);
}

}  // namespace qortho
