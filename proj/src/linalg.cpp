#include "qortho/linalg.hpp"

#include <algorithm>
#include <cassert>
#include <limits>

namespace qortho {

namespace {

const Scalar& zero_scalar() {
  static const Scalar z;
  return z;
}

void require_same_dim(const SqMat& a, const SqMat& b) {
  if (a.dim() != b.dim())
    throw Error(Errc::DimMismatch, std::to_string(a.dim()) + " vs " + std::to_string(b.dim()));
}

int ipow(int base, int e) {
  int r = 1;
  while (e-- > 0) r *= base;
  return r;
}

// Rough cost used to pick cheap pivots during elimination.
std::size_t cost(const Scalar& v) {
  return v.term_count() + 2 * v.den().term_count() + (v.has_t() ? 4 : 0);
}

void axpy(SparseRow& target, const Scalar& factor, const SparseRow& source) {
  for (const auto& [c, v] : source) {
    auto it = target.find(c);
    Scalar add = factor * v;
    if (it == target.end()) {
      if (!add.is_zero()) target.emplace(c, std::move(add));
    } else {
      it->second += add;
      if (it->second.is_zero()) target.erase(it);
    }
  }
}

}  // namespace

// ---- CompositeIndex --------------------------------------------------------

int CompositeIndex::flat() const {
  int idx = 0;
  for (int p : parts) idx = idx * width + (p - 1);
  return idx + 1;
}

CompositeIndex CompositeIndex::from_flat(int index, int width, int arity) {
  CompositeIndex ci{std::vector<int>(static_cast<std::size_t>(arity)), width};
  int rem = index - 1;
  for (int k = arity - 1; k >= 0; --k) {
    ci.parts[static_cast<std::size_t>(k)] = rem % width + 1;
    rem /= width;
  }
  return ci;
}

std::string CompositeIndex::str() const {
  std::string s = "(";
  for (std::size_t k = 0; k < parts.size(); ++k) s += (k ? "," : "") + std::to_string(parts[k]);
  return s + ")";
}

// ---- SqMat -----------------------------------------------------------------

SqMat::SqMat(int dim) : rows_(static_cast<std::size_t>(dim)) {
  if (dim <= 0) throw Error(Errc::DimMismatch, "dimension must be positive");
}

SqMat SqMat::identity(int dim) {
  SqMat m(dim);
  for (int k = 1; k <= dim; ++k) m.set(k, k, Scalar(1));
  return m;
}

SqMat SqMat::diag(const std::vector<Scalar>& d) {
  SqMat m(static_cast<int>(d.size()));
  for (std::size_t k = 0; k < d.size(); ++k) m.set(static_cast<int>(k) + 1, static_cast<int>(k) + 1, d[k]);
  return m;
}

SqMat SqMat::from_rows(const std::vector<std::vector<Scalar>>& rows) {
  SqMat m(static_cast<int>(rows.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != rows.size()) throw Error(Errc::DimMismatch, "ragged rows");
    for (std::size_t c = 0; c < rows[r].size(); ++c)
      m.set(static_cast<int>(r) + 1, static_cast<int>(c) + 1, rows[r][c]);
  }
  return m;
}

const Scalar& SqMat::at(int row, int col) const {
  const auto& r = rows_.at(static_cast<std::size_t>(row - 1));
  auto it = r.find(col);
  return it == r.end() ? zero_scalar() : it->second;
}

void SqMat::set(int row, int col, Scalar value) {
  if (row < 1 || row > dim() || col < 1 || col > dim())
    throw Error(Errc::DimMismatch, "index out of range");
  auto& r = rows_[static_cast<std::size_t>(row - 1)];
  if (value.is_zero())
    r.erase(col);
  else
    r[col] = std::move(value);
}

void SqMat::add_to(int row, int col, const Scalar& value) {
  if (value.is_zero()) return;
  set(row, col, at(row, col) + value);
}

std::size_t SqMat::nnz() const {
  std::size_t n = 0;
  for (const auto& r : rows_) n += r.size();
  return n;
}

SqMat SqMat::transpose() const {
  SqMat t(dim());
  for_each([&](int r, int c, const Scalar& v) { t.rows_[static_cast<std::size_t>(c - 1)].emplace(r, v); });
  return t;
}

SqMat SqMat::scaled(const Scalar& c) const {
  SqMat m(dim());
  if (c.is_zero()) return m;
  for_each([&](int r, int col, const Scalar& v) { m.rows_[static_cast<std::size_t>(r - 1)].emplace(col, c * v); });
  return m;
}

SqMat operator+(const SqMat& a, const SqMat& b) {
  require_same_dim(a, b);
  SqMat m = a;
  for (std::size_t r = 0; r < b.rows_.size(); ++r) axpy(m.rows_[r], Scalar(1), b.rows_[r]);
  return m;
}

SqMat operator-(const SqMat& a, const SqMat& b) {
  require_same_dim(a, b);
  SqMat m = a;
  for (std::size_t r = 0; r < b.rows_.size(); ++r) axpy(m.rows_[r], Scalar(-1), b.rows_[r]);
  return m;
}

SqMat operator*(const SqMat& a, const SqMat& b) {
  require_same_dim(a, b);
  SqMat m(a.dim());
  for (std::size_t r = 0; r < a.rows_.size(); ++r) {
    SparseRow acc;
    for (const auto& [k, av] : a.rows_[r]) axpy(acc, av, b.rows_[static_cast<std::size_t>(k - 1)]);
    m.rows_[r] = std::move(acc);
  }
  return m;
}

SqMat matmul(const SqMat& a, const SqMat& b) { return a * b; }

std::optional<EntryWitness> first_difference(const SqMat& a, const SqMat& b) {
  require_same_dim(a, b);
  for (int r = 1; r <= a.dim(); ++r) {
    const auto& ra = a.row(r);
    const auto& rb = b.row(r);
    if (ra == rb) continue;
    auto ia = ra.begin();
    auto ib = rb.begin();
    while (ia != ra.end() || ib != rb.end()) {
      int ca = ia == ra.end() ? std::numeric_limits<int>::max() : ia->first;
      int cb = ib == rb.end() ? std::numeric_limits<int>::max() : ib->first;
      int c = std::min(ca, cb);
      const Scalar& va = ca == c ? ia->second : zero_scalar();
      const Scalar& vb = cb == c ? ib->second : zero_scalar();
      if (!(va == vb)) return EntryWitness{r, c, va.str(), vb.str()};
      if (ca == c) ++ia;
      if (cb == c) ++ib;
    }
  }
  return std::nullopt;
}

Scalar trace(const SqMat& a) {
  Scalar t;
  for (int k = 1; k <= a.dim(); ++k) t += a.at(k, k);
  return t;
}

SqMat bar(const SqMat& a, Regime regime) {
  SqMat m(a.dim());
  a.for_each([&](int r, int c, const Scalar& v) { m.set(r, c, bar(v, regime)); });
  return m;
}

SqMat classical_limit(const SqMat& a) {
  SqMat m(a.dim());
  a.for_each([&](int r, int c, const Scalar& v) { m.set(r, c, Scalar(classical_limit(v))); });
  return m;
}

SqMat embed(const SqMat& a, const std::vector<int>& slots, int width, int arity) {
  const int k = static_cast<int>(slots.size());
  if (k == 0 || k > arity || ipow(width, k) != a.dim())
    throw Error(Errc::DimMismatch, "operator does not match the selected slots");
  for (std::size_t j = 0; j < slots.size(); ++j)
    if (slots[j] < 1 || slots[j] > arity || (j > 0 && slots[j] <= slots[j - 1]))
      throw Error(Errc::DimMismatch, "slots must be ascending within the arity");

  const int dim = ipow(width, arity);
  SqMat m(dim);
  for (int row = 1; row <= dim; ++row) {
    CompositeIndex ri = CompositeIndex::from_flat(row, width, arity);
    CompositeIndex sub{{}, width};
    for (int s : slots) sub.parts.push_back(ri.parts[static_cast<std::size_t>(s - 1)]);
    for (const auto& [acol, v] : a.row(sub.flat())) {
      CompositeIndex ci = ri;
      CompositeIndex target = CompositeIndex::from_flat(acol, width, k);
      for (int j = 0; j < k; ++j)
        ci.parts[static_cast<std::size_t>(slots[static_cast<std::size_t>(j)] - 1)] =
            target.parts[static_cast<std::size_t>(j)];
      m.set(row, ci.flat(), v);
    }
  }
  return m;
}

SqMat kron_embed(const SqMat& a, int slot, int width, int arity) {
  if (a.dim() == width) return embed(a, {slot}, width, arity);
  if (a.dim() == width * width) return embed(a, {slot, slot + 1}, width, arity);
  throw Error(Errc::DimMismatch, "kron_embed expects dim N or N^2");
}

SqMat flip(int width) {
  SqMat p(width * width);
  for (int a = 1; a <= width; ++a)
    for (int b = 1; b <= width; ++b)
      p.set(CompositeIndex{{a, b}, width}.flat(), CompositeIndex{{b, a}, width}.flat(), Scalar(1));
  return p;
}

RowEchelon row_reduce(std::vector<SparseRow> rows, const std::vector<int>& column_order) {
  rows.erase(std::remove_if(rows.begin(), rows.end(), [](const SparseRow& r) { return r.empty(); }), rows.end());
  RowEchelon out;
  std::size_t next = 0;
  for (int col : column_order) {
    if (next == rows.size()) break;
    std::size_t best = rows.size();
    std::size_t best_cost = std::numeric_limits<std::size_t>::max();
    for (std::size_t i = next; i < rows.size(); ++i) {
      auto it = rows[i].find(col);
      if (it == rows[i].end()) continue;
      std::size_t c = cost(it->second) * 64 + rows[i].size();
      if (c < best_cost) {
        best_cost = c;
        best = i;
      }
    }
    if (best == rows.size()) continue;
    std::swap(rows[next], rows[best]);
    SparseRow& piv = rows[next];
    Scalar inv = piv.at(col).inverse();
    for (auto& [c, v] : piv) v *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == next) continue;
      auto it = rows[i].find(col);
      if (it == rows[i].end()) continue;
      Scalar factor = -it->second;
      axpy(rows[i], factor, piv);
    }
    out.pivots.push_back(col);
    ++next;
  }
  rows.resize(next);
  out.rows = std::move(rows);
  return out;
}

int rank(const SqMat& a) {
  std::vector<SparseRow> rows;
  for (int r = 1; r <= a.dim(); ++r) rows.push_back(a.row(r));
  std::vector<int> order;
  for (int c = 1; c <= a.dim(); ++c) order.push_back(c);
  return static_cast<int>(row_reduce(std::move(rows), order).pivots.size());
}

SqMat inverse(const SqMat& a) {
  const int n = a.dim();
  std::vector<SparseRow> rows;
  for (int r = 1; r <= n; ++r) {
    SparseRow row = a.row(r);
    row.emplace(n + r, Scalar(1));
    rows.push_back(std::move(row));
  }
  std::vector<int> order;
  for (int c = 1; c <= n; ++c) order.push_back(c);
  RowEchelon e = row_reduce(std::move(rows), order);
  if (static_cast<int>(e.pivots.size()) != n) throw Error(Errc::Singular);
  SqMat inv(n);
  for (std::size_t k = 0; k < e.rows.size(); ++k) {
    int r = e.pivots[k];
    for (const auto& [c, v] : e.rows[k])
      if (c > n) inv.set(r, c - n, v);
  }
  return inv;
}

Signature signature(const SqMat& s) {
  const int n = s.dim();
  std::vector<std::vector<Rational>> m(static_cast<std::size_t>(n), std::vector<Rational>(static_cast<std::size_t>(n)));
  s.for_each([&](int r, int c, const Scalar& v) {
    if (!v.is_constant() || !v.constant().is_real()) throw Error(Errc::NotReal, "entry (" + std::to_string(r) + "," + std::to_string(c) + ")");
    m[static_cast<std::size_t>(r - 1)][static_cast<std::size_t>(c - 1)] = v.constant().re;
  });
  for (int r = 0; r < n; ++r)
    for (int c = r + 1; c < n; ++c)
      if (m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] != m[static_cast<std::size_t>(c)][static_cast<std::size_t>(r)])
        throw Error(Errc::NotSymmetric, "entry (" + std::to_string(r + 1) + "," + std::to_string(c + 1) + ")");

  Signature sig;
  std::vector<bool> alive(static_cast<std::size_t>(n), true);
  auto at = [&](int r, int c) -> Rational& { return m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]; };
  for (int step = 0; step < n; ++step) {
    int k = -1;
    for (int d = 0; d < n && k < 0; ++d)
      if (alive[static_cast<std::size_t>(d)] && sgn(at(d, d)) != 0) k = d;
    if (k < 0) {
      // All remaining diagonal entries vanish: fold the first off-diagonal pair.
      int kk = -1, ll = -1;
      for (int r = 0; r < n && kk < 0; ++r)
        for (int c = r + 1; c < n; ++c)
          if (alive[static_cast<std::size_t>(r)] && alive[static_cast<std::size_t>(c)] && sgn(at(r, c)) != 0) {
            kk = r;
            ll = c;
            break;
          }
      if (kk < 0) throw Error(Errc::Degenerate);
      // e_k <- e_k + e_l
      for (int j = 0; j < n; ++j) at(kk, j) += at(ll, j);
      for (int j = 0; j < n; ++j) at(j, kk) += at(j, ll);
      k = kk;
    }
    Rational d = at(k, k);
    if (sgn(d) > 0)
      ++sig.positive;
    else
      ++sig.negative;
    alive[static_cast<std::size_t>(k)] = false;
    for (int i = 0; i < n; ++i) {
      if (!alive[static_cast<std::size_t>(i)] || sgn(at(i, k)) == 0) continue;
      Rational f = at(i, k) / d;
      for (int j = 0; j < n; ++j)
        if (alive[static_cast<std::size_t>(j)]) at(i, j) -= f * at(k, j);
    }
    for (int j = 0; j < n; ++j) at(k, j) = at(j, k) = 0;
  }
  return sig;
}

SqMat antilinear_fixed_basis(const SqMat& k, Regime regime) {
  const int n = k.dim();
  k.for_each([](int r, int c, const Scalar& v) {
    if (!v.is_constant())
      throw Error(Errc::NotReal, "antilinear_fixed_basis needs constant entries, got (" + std::to_string(r) + "," +
                                     std::to_string(c) + ")");
  });
  if (k * bar(k, regime) != SqMat::identity(n)) throw Error(Errc::NotInvolution);

  // tau(e_j) = bar(e_j) K = row j of K
  std::vector<SparseRow> candidates;
  for (int j = 1; j <= n; ++j) {
    SparseRow v = k.row(j);
    v[j] += Scalar(1);
    std::erase_if(v, [](const auto& kv) { return kv.second.is_zero(); });
    candidates.push_back(std::move(v));
  }
  for (int j = 1; j <= n; ++j) {
    SparseRow v;
    v[j] = Scalar::i();
    for (const auto& [c, x] : k.row(j)) v[c] -= Scalar::i() * x;
    std::erase_if(v, [](const auto& kv) { return kv.second.is_zero(); });
    candidates.push_back(std::move(v));
  }

  std::vector<int> order;
  for (int c = 1; c <= n; ++c) order.push_back(c);
  std::vector<SparseRow> basis;
  for (const auto& cand : candidates) {
    if (cand.empty()) continue;
    std::vector<SparseRow> trial = basis;
    trial.push_back(cand);
    if (row_reduce(trial, order).pivots.size() == trial.size()) basis = std::move(trial);
    if (static_cast<int>(basis.size()) == n) break;
  }
  if (static_cast<int>(basis.size()) != n) throw Error(Errc::RankDeficient);

  SqMat m(n);
  for (int r = 1; r <= n; ++r)
    for (const auto& [c, v] : basis[static_cast<std::size_t>(r - 1)]) m.set(r, c, v);
  return m;
}

}  // namespace qortho
