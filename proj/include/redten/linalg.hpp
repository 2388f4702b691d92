#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <utility>
#include <vector>

#include "redten/error.hpp"

namespace redten {

template <class S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;

template <class S>
Mat<S> id_mat(Eigen::Index n) {
  Mat<S> m = Mat<S>::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = S(1);
  return m;
}

template <class S>
Mat<S> zero_mat(Eigen::Index r, Eigen::Index c) {
  return Mat<S>::Zero(r, c);
}

// Kronecker product with the usual row-major index convention:
// (A (x) B)(i1*rB+i2, j1*cB+j2) = A(i1,j1) B(i2,j2).
template <class S>
Mat<S> kron(const Mat<S>& a, const Mat<S>& b) {
  Mat<S> r = Mat<S>::Zero(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (a(i, j) == S(0)) continue;
      for (Eigen::Index k = 0; k < b.rows(); ++k)
        for (Eigen::Index l = 0; l < b.cols(); ++l) {
          if (b(k, l) == S(0)) continue;
          r(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
        }
    }
  return r;
}

template <class S>
Mat<S> direct_sum(const Mat<S>& a, const Mat<S>& b) {
  Mat<S> r = Mat<S>::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  r.topLeftCorner(a.rows(), a.cols()) = a;
  r.bottomRightCorner(b.rows(), b.cols()) = b;
  return r;
}

// Row-reduce in place; returns pivot columns. Exact field arithmetic with
// first-nonzero pivoting.
template <class S>
std::vector<Eigen::Index> row_reduce(Mat<S>& m) {
  std::vector<Eigen::Index> pivots;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Eigen::Index sel = -1;
    for (Eigen::Index r = row; r < m.rows(); ++r)
      if (!(m(r, col) == S(0))) {
        sel = r;
        break;
      }
    if (sel < 0) continue;
    if (sel != row) m.row(sel).swap(m.row(row));
    S inv = S(1) / m(row, col);
    for (Eigen::Index c = col; c < m.cols(); ++c) m(row, c) = m(row, c) * inv;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (r == row) continue;
      S f = m(r, col);
      if (f == S(0)) continue;
      for (Eigen::Index c = col; c < m.cols(); ++c) m(r, c) = m(r, c) - f * m(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <class S>
Eigen::Index rank_of(Mat<S> m) {
  return Eigen::Index(row_reduce(m).size());
}

// Columns span {x : m x = 0}.
template <class S>
Mat<S> nullspace_basis(Mat<S> m) {
  Eigen::Index n = m.cols();
  std::vector<Eigen::Index> pivots = row_reduce(m);
  std::vector<bool> is_pivot(size_t(n), false);
  for (auto p : pivots) is_pivot[size_t(p)] = true;
  Eigen::Index k = n - Eigen::Index(pivots.size());
  Mat<S> basis = Mat<S>::Zero(n, k);
  Eigen::Index bi = 0;
  for (Eigen::Index free_col = 0; free_col < n; ++free_col) {
    if (is_pivot[size_t(free_col)]) continue;
    basis(free_col, bi) = S(1);
    for (size_t pr = 0; pr < pivots.size(); ++pr)
      basis(pivots[pr], bi) = -m(Eigen::Index(pr), free_col);
    ++bi;
  }
  return basis;
}

// Exact inverse of a square matrix; throws on singular input.
template <class S>
Mat<S> invert(const Mat<S>& a) {
  if (a.rows() != a.cols()) throw Error(Error::Kind::ShapeMismatch, "invert: not square");
  Eigen::Index n = a.rows();
  if (n == 0) return a;
  Mat<S> aug(n, 2 * n);
  aug.leftCols(n) = a;
  aug.rightCols(n) = id_mat<S>(n);
  auto pivots = row_reduce(aug);
  if (Eigen::Index(pivots.size()) != n || pivots.back() >= n)
    throw Error(Error::Kind::DegeneratePairing, "invert: singular matrix");
  return aug.rightCols(n);
}

// Least structured exact solve: a x = b with a square invertible.
template <class S>
Mat<S> solve_exact(const Mat<S>& a, const Mat<S>& b) {
  return invert(a) * b;
}

// Basis of the column space: the pivot columns of the original matrix.
template <class S>
Mat<S> column_space_basis(const Mat<S>& a) {
  Mat<S> copy = a;
  std::vector<Eigen::Index> pivots = row_reduce(copy);
  Mat<S> out(a.rows(), Eigen::Index(pivots.size()));
  for (size_t i = 0; i < pivots.size(); ++i) out.col(Eigen::Index(i)) = a.col(pivots[i]);
  return out;
}

// L with L a = I for a of full column rank; throws otherwise.
template <class S>
Mat<S> left_inverse(const Mat<S>& a) {
  Eigen::Index m = a.rows(), k = a.cols();
  Mat<S> aug(m, k + m);
  aug.leftCols(k) = a;
  aug.rightCols(m) = id_mat<S>(m);
  row_reduce(aug);
  if (!(Mat<S>(aug.topLeftCorner(k, k)) == id_mat<S>(k)))
    throw Error(Error::Kind::ShapeMismatch, "left_inverse: columns not independent");
  return aug.block(0, k, k, m);
}

// Zero-skipping product for block-sparse exact matrices.
template <class S>
Mat<S> spmul(const Mat<S>& a, const Mat<S>& b) {
  if (a.cols() != b.rows()) throw Error(Error::Kind::ShapeMismatch, "spmul: shape mismatch");
  Mat<S> r = Mat<S>::Zero(a.rows(), b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index k = 0; k < a.cols(); ++k) {
      const S& aik = a(i, k);
      if (aik == S(0)) continue;
      for (Eigen::Index j = 0; j < b.cols(); ++j) {
        const S& bkj = b(k, j);
        if (bkj == S(0)) continue;
        r(i, j) += aik * bkj;
      }
    }
  return r;
}

// Is columnspace(v) contained in columnspace(w)?
template <class S>
bool in_span(const Mat<S>& w, const Mat<S>& v) {
  if (v.cols() == 0) return true;
  Mat<S> both(w.rows(), w.cols() + v.cols());
  both.leftCols(w.cols()) = w;
  both.rightCols(v.cols()) = v;
  return rank_of<S>(both) == rank_of<S>(Mat<S>(w));
}

template <class S>
bool same_span(const Mat<S>& a, const Mat<S>& b) {
  return in_span<S>(a, b) && in_span<S>(b, a);
}

// Incremental sparse echelon over a field; used for commutant/center
// computations where constraint rows are plentiful but sparse.
template <class S>
class SparseEchelon {
 public:
  using Entry = std::pair<int, S>;  // (column, value), sorted by column
  using Row = std::vector<Entry>;

  explicit SparseEchelon(int cols) : cols_(cols) {}

  // Reduces `row` against the pivot rows and inserts it if nonzero.
  void insert(Row row) {
    normalize(row);
    while (!row.empty()) {
      int lead = row.front().first;
      auto it = pivot_.find_or_end(lead);
      if (it == pivot_.end_index()) {
        S inv = S(1) / row.front().second;
        for (auto& e : row) e.second = e.second * inv;
        pivot_.set(lead, int(rows_.size()));
        rows_.push_back(std::move(row));
        return;
      }
      const Row& p = rows_[size_t(pivot_.get(lead))];
      S f = row.front().second;
      row = axpy(row, p, -f);
    }
  }

  int rank() const { return int(rows_.size()); }
  int nullity() const { return cols_ - rank(); }

 private:
  struct PivotMap {
    std::vector<int> map;
    void ensure(int n) {
      if (int(map.size()) < n) map.resize(size_t(n), -1);
    }
    int find_or_end(int c) {
      ensure(c + 1);
      return map[size_t(c)];
    }
    int end_index() const { return -1; }
    int get(int c) const { return map[size_t(c)]; }
    void set(int c, int v) {
      ensure(c + 1);
      map[size_t(c)] = v;
    }
  };

  static void normalize(Row& r) {
    std::sort(r.begin(), r.end(), [](const Entry& a, const Entry& b) { return a.first < b.first; });
    Row out;
    for (auto& e : r) {
      if (!out.empty() && out.back().first == e.first)
        out.back().second += e.second;
      else
        out.push_back(e);
    }
    r.clear();
    for (auto& e : out)
      if (!(e.second == S(0))) r.push_back(e);
  }

  static Row axpy(const Row& a, const Row& b, S f) {
    Row out;
    out.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
      if (j >= b.size() || (i < a.size() && a[i].first < b[j].first)) {
        out.push_back(a[i++]);
      } else if (i >= a.size() || b[j].first < a[i].first) {
        S v = f * b[j].second;
        if (!(v == S(0))) out.emplace_back(b[j].first, v);
        ++j;
      } else {
        S v = a[i].second + f * b[j].second;
        if (!(v == S(0))) out.emplace_back(a[i].first, v);
        ++i;
        ++j;
      }
    }
    return out;
  }

  int cols_;
  std::vector<Row> rows_;
  PivotMap pivot_;
};

}  // namespace redten
