#pragma once

#include <vector>

#include "hilbchow/rational.hpp"

namespace hilbchow {

using QVec = std::vector<Rational>;
using QMat = std::vector<QVec>;  // row-major

// Row space in reduced echelon form. Columns are scanned left to right, so
// pivots land on the earliest nonzero coordinate of each row.
class Echelon {
  public:
    Echelon() = default;
    explicit Echelon(int ncols) : ncols_(ncols) {}

    int ncols() const { return ncols_; }
    int rank() const { return static_cast<int>(rows_.size()); }
    const QMat& rows() const { return rows_; }
    const std::vector<int>& pivots() const { return pivots_; }

    // Reduce v against the current rows (v is modified in place); returns
    // the residual. A zero residual means membership.
    QVec reduce(QVec v) const;
    bool contains(const QVec& v) const;

    // Insert a vector; returns true if the rank grew.
    bool insert(QVec v);

    bool operator==(const Echelon& o) const;

  private:
    void back_substitute(int row);
    int ncols_ = 0;
    QMat rows_;                // pivot entry 1, fully reduced
    std::vector<int> pivots_;  // ascending
};

Echelon echelon_from_rows(int ncols, const QMat& rows);

// Null space of the matrix whose rows are `rows` acting on column vectors of
// length ncols... here: kernel of the linear map x -> M*x where M has the
// given rows. Returns a basis of kernel vectors.
QMat kernel_basis(const QMat& m, int ncols);

// Solve M*x = b (M given by rows); returns empty if inconsistent. The
// solution picks the echelon back-substitution value: free variables zero,
// preferring the earliest pivot columns.
struct SolveResult {
    bool ok = false;
    QVec x;
};
SolveResult solve(const QMat& m, int ncols, const QVec& b);

QVec mat_apply(const QMat& m, const QVec& x);
QMat mat_mul(const QMat& a, const QMat& b);
bool mat_eq(const QMat& a, const QMat& b);
QMat mat_scale(const QMat& a, const Rational& c);

}  // namespace hilbchow
