#pragma once

// Exact sparse square matrices over Scalar.
//
// Logical indices are 1-based throughout the public API. Composite indices
// of tensor-product spaces are row-major: (a, b) -> (a-1)*N + b, and
// (a, b, c) -> ((a-1)*N + (b-1))*N + c.

#include "qortho/scalar.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qortho {

struct CompositeIndex {
  std::vector<int> parts;
  int width = 0;

  int flat() const;
  static CompositeIndex from_flat(int index, int width, int arity);
  std::string str() const;
};

using SparseRow = std::map<int, Scalar>;

class SqMat {
public:
  SqMat() = default;
  explicit SqMat(int dim);

  static SqMat identity(int dim);
  static SqMat diag(const std::vector<Scalar>& d);
  static SqMat from_rows(const std::vector<std::vector<Scalar>>& rows);

  int dim() const { return static_cast<int>(rows_.size()); }
  const Scalar& at(int row, int col) const;
  void set(int row, int col, Scalar value);
  void add_to(int row, int col, const Scalar& value);
  /// Stored entries of a row, keyed by 1-based column.
  const SparseRow& row(int row) const { return rows_.at(static_cast<std::size_t>(row - 1)); }
  std::size_t nnz() const;
  bool is_zero() const { return nnz() == 0; }

  /// Calls f(row, col, value) for each stored entry in (row, col) order.
  template <typename F> void for_each(F&& f) const {
    for (int r = 1; r <= dim(); ++r)
      for (const auto& [c, v] : row(r)) f(r, c, v);
  }

  SqMat transpose() const;
  SqMat scaled(const Scalar& c) const;
  SqMat operator-() const { return scaled(Scalar(-1)); }

  friend SqMat operator+(const SqMat& a, const SqMat& b);
  friend SqMat operator-(const SqMat& a, const SqMat& b);
  friend SqMat operator*(const SqMat& a, const SqMat& b);
  friend bool operator==(const SqMat& a, const SqMat& b) { return a.rows_ == b.rows_; }

private:
  std::vector<SparseRow> rows_;
};

struct EntryWitness {
  int row = 0;
  int col = 0;
  std::string lhs;
  std::string rhs;
};

/// First (row, col) where the matrices differ, or nullopt when equal.
std::optional<EntryWitness> first_difference(const SqMat& a, const SqMat& b);

SqMat matmul(const SqMat& a, const SqMat& b);
Scalar trace(const SqMat& a);
SqMat bar(const SqMat& a, Regime regime);
/// Entrywise evaluation at s = 1; entries of the result are constants.
SqMat classical_limit(const SqMat& a);

/// `a` acting on tensor slots `slots` (1-based, ascending, as many as the
/// arity of `a`) of the `arity`-fold tensor power of C^width; identity
/// elsewhere.
SqMat embed(const SqMat& a, const std::vector<int>& slots, int width, int arity);

/// `a` of dim N acts on `slot`; `a` of dim N^2 acts on slots (slot, slot+1).
SqMat kron_embed(const SqMat& a, int slot, int width, int arity);

/// Flip of the tensor factors of C^N (x) C^N.
SqMat flip(int width);

/// Exact inverse via Gauss-Jordan over the fraction field. Throws Singular.
SqMat inverse(const SqMat& a);

struct RowEchelon {
  std::vector<SparseRow> rows;  ///< pivot coefficient 1; zero in other pivot columns
  std::vector<int> pivots;      ///< pivot column of each row
};

/// Reduced row echelon form. Columns are eliminated in `column_order`;
/// columns absent from the order are never pivots.
RowEchelon row_reduce(std::vector<SparseRow> rows, const std::vector<int>& column_order);

int rank(const SqMat& a);

struct Signature {
  int positive = 0;
  int negative = 0;
  friend bool operator==(const Signature&, const Signature&) = default;
};

/// Inertia of a real symmetric constant matrix by Lagrange congruence.
/// Pivot rule: first nonzero diagonal entry; otherwise the first nonzero
/// off-diagonal (k, l) is folded into e_k + e_l.
/// Throws NotReal, NotSymmetric, Degenerate.
Signature signature(const SqMat& s);

/// Invertible M whose rows r satisfy bar(r) K = r, i.e. bar(M) K = M, for a
/// constant K with K bar(K) = 1. Candidate rows e_j + tau(e_j) for all j,
/// then i (e_j - tau(e_j)) for all j, kept greedily when independent.
/// Throws NotInvolution, RankDeficient, NotReal (non-constant K).
SqMat antilinear_fixed_basis(const SqMat& k, Regime regime);

}  // namespace qortho
