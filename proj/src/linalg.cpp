#include "hilbchow/linalg.hpp"

#include <algorithm>

#include "hilbchow/errors.hpp"

namespace hilbchow {

QVec Echelon::reduce(QVec v) const {
    for (size_t r = 0; r < rows_.size(); ++r) {
        const Rational& c = v[pivots_[r]];
        if (c == 0) continue;
        Rational f = c;  // pivot entries are 1
        for (int j = 0; j < ncols_; ++j)
            if (rows_[r][j] != 0) v[j] -= f * rows_[r][j];
    }
    return v;
}

bool Echelon::contains(const QVec& v) const {
    QVec r = reduce(v);
    return std::all_of(r.begin(), r.end(), [](const Rational& c) { return c == 0; });
}

bool Echelon::insert(QVec v) {
    v = reduce(std::move(v));
    int p = -1;
    for (int j = 0; j < ncols_; ++j)
        if (v[j] != 0) { p = j; break; }
    if (p < 0) return false;
    Rational inv = 1 / v[p];
    for (auto& c : v) c *= inv;
    // keep rows sorted by pivot column
    size_t pos = 0;
    while (pos < pivots_.size() && pivots_[pos] < p) ++pos;
    rows_.insert(rows_.begin() + pos, std::move(v));
    pivots_.insert(pivots_.begin() + pos, p);
    back_substitute(static_cast<int>(pos));
    return true;
}

void Echelon::back_substitute(int row) {
    // clear the new pivot column from the other rows
    int p = pivots_[row];
    for (size_t r = 0; r < rows_.size(); ++r) {
        if (static_cast<int>(r) == row) continue;
        Rational c = rows_[r][p];
        if (c == 0) continue;
        for (int j = 0; j < ncols_; ++j)
            if (rows_[row][j] != 0) rows_[r][j] -= c * rows_[row][j];
    }
}

bool Echelon::operator==(const Echelon& o) const {
    return ncols_ == o.ncols_ && pivots_ == o.pivots_ && rows_ == o.rows_;
}

Echelon echelon_from_rows(int ncols, const QMat& rows) {
    Echelon e(ncols);
    for (const auto& r : rows) e.insert(r);
    return e;
}

QMat kernel_basis(const QMat& m, int ncols) {
    Echelon e = echelon_from_rows(ncols, m);
    std::vector<bool> is_pivot(ncols, false);
    for (int p : e.pivots()) is_pivot[p] = true;
    QMat out;
    for (int j = 0; j < ncols; ++j) {
        if (is_pivot[j]) continue;
        QVec v(ncols, Rational(0));
        v[j] = 1;
        // pivot rows express pivot columns; x_pivot = -row[j] * x_free
        for (int r = 0; r < e.rank(); ++r)
            v[e.pivots()[r]] = -e.rows()[r][j];
        out.push_back(std::move(v));
    }
    return out;
}

SolveResult solve(const QMat& m, int ncols, const QVec& b) {
    // echelonize [M^T | b]? No: we need x with M*x = b, M rows are equations?
    // Here M*x with M (r x c): treat columns of M as images of unit vectors.
    // Build augmented system in column space: echelonize rows of [M | I]?
    // Simplest exact approach: Gaussian elimination on the augmented matrix
    // of the linear system (equations = rows of M).
    int nrows = static_cast<int>(m.size());
    QMat a(nrows, QVec(ncols + 1, Rational(0)));
    for (int i = 0; i < nrows; ++i) {
        for (int j = 0; j < ncols; ++j) a[i][j] = m[i][j];
        a[i][ncols] = b[i];
    }
    std::vector<int> pivot_col;
    int row = 0;
    for (int col = 0; col < ncols && row < nrows; ++col) {
        int sel = -1;
        for (int i = row; i < nrows; ++i)
            if (a[i][col] != 0) { sel = i; break; }
        if (sel < 0) continue;
        std::swap(a[row], a[sel]);
        Rational inv = 1 / a[row][col];
        for (int j = col; j <= ncols; ++j) a[row][j] *= inv;
        for (int i = 0; i < nrows; ++i) {
            if (i == row) continue;
            Rational c = a[i][col];
            if (c == 0) continue;
            for (int j = col; j <= ncols; ++j) a[i][j] -= c * a[row][j];
        }
        pivot_col.push_back(col);
        ++row;
    }
    for (int i = row; i < nrows; ++i)
        if (a[i][ncols] != 0) return {};  // inconsistent
    SolveResult res;
    res.ok = true;
    res.x.assign(ncols, Rational(0));
    for (int r = 0; r < static_cast<int>(pivot_col.size()); ++r)
        res.x[pivot_col[r]] = a[r][ncols];
    return res;
}

QVec mat_apply(const QMat& m, const QVec& x) {
    QVec y(m.size(), Rational(0));
    for (size_t i = 0; i < m.size(); ++i) {
        if (m[i].size() != x.size()) throw StructureError("mat_apply: size mismatch");
        for (size_t j = 0; j < x.size(); ++j)
            if (m[i][j] != 0 && x[j] != 0) y[i] += m[i][j] * x[j];
    }
    return y;
}

QMat mat_mul(const QMat& a, const QMat& b) {
    size_t n = a.size(), k = b.size(), mcols = k ? b[0].size() : 0;
    QMat c(n, QVec(mcols, Rational(0)));
    for (size_t i = 0; i < n; ++i)
        for (size_t t = 0; t < k; ++t) {
            if (a[i][t] == 0) continue;
            for (size_t j = 0; j < mcols; ++j)
                if (b[t][j] != 0) c[i][j] += a[i][t] * b[t][j];
        }
    return c;
}

bool mat_eq(const QMat& a, const QMat& b) { return a == b; }

QMat mat_scale(const QMat& a, const Rational& c) {
    QMat r = a;
    for (auto& row : r)
        for (auto& v : row) v *= c;
    return r;
}

}  // namespace hilbchow
