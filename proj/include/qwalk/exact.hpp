#pragma once

#include <optional>
#include <vector>

#include <Eigen/Core>

namespace qwalk::exact {

// Exact dense linear algebra over a field scalar (no pivot magnitudes, no
// thresholds). Meant for qwalk::Rational but works for any exact field type
// with operator==.

template <class Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Gauss-Jordan reduction to reduced row echelon form.
/// Returns the rank; pivot column indices go to *pivots if given.
template <class Scalar>
int rref_in_place(Mat<Scalar>& m, std::vector<int>* pivots = nullptr) {
  const Eigen::Index rows = m.rows(), cols = m.cols();
  int r = 0;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    Eigen::Index p = -1;
    for (Eigen::Index i = r; i < rows; ++i)
      if (!(m(i, c) == Scalar(0))) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != r) m.row(p).swap(m.row(r));
    Scalar inv = Scalar(1) / m(r, c);
    for (Eigen::Index j = c; j < cols; ++j) m(r, j) *= inv;
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (i == r || m(i, c) == Scalar(0)) continue;
      Scalar f = m(i, c);
      for (Eigen::Index j = c; j < cols; ++j) m(i, j) -= f * m(r, j);
    }
    if (pivots) pivots->push_back(static_cast<int>(c));
    ++r;
  }
  return r;
}

template <class Scalar>
int rank(Mat<Scalar> m) {
  return rref_in_place(m);
}

/// Columns spanning the null space of m (n x (n - rank)).
template <class Scalar>
Mat<Scalar> kernel_basis(const Mat<Scalar>& m) {
  Mat<Scalar> r = m;
  std::vector<int> pivots;
  int rk = rref_in_place(r, &pivots);
  const Eigen::Index n = m.cols();
  std::vector<char> is_pivot(n, 0);
  for (int p : pivots) is_pivot[p] = 1;
  Mat<Scalar> basis = Mat<Scalar>::Zero(n, n - rk);
  Eigen::Index out = 0;
  for (Eigen::Index f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    basis(f, out) = Scalar(1);
    for (int i = 0; i < rk; ++i) basis(pivots[i], out) = -r(i, f);
    ++out;
  }
  return basis;
}

/// Exact inverse via Gauss-Jordan; nullopt when singular.
template <class Scalar>
std::optional<Mat<Scalar>> inverse(const Mat<Scalar>& m) {
  const Eigen::Index n = m.rows();
  Mat<Scalar> aug(n, 2 * n);
  aug.leftCols(n) = m;
  aug.rightCols(n) = Mat<Scalar>::Identity(n, n);
  std::vector<int> pivots;
  rref_in_place(aug, &pivots);
  // Invertible iff every pivot lands in the left block.
  if (static_cast<Eigen::Index>(pivots.size()) < n || pivots[n - 1] >= n) return std::nullopt;
  return Mat<Scalar>(aug.rightCols(n));
}

template <class Scalar>
bool in_span(const Mat<Scalar>& basis_cols, const Vec<Scalar>& v) {
  Mat<Scalar> ext(basis_cols.rows(), basis_cols.cols() + 1);
  ext.leftCols(basis_cols.cols()) = basis_cols;
  ext.col(basis_cols.cols()) = v;
  return rank<Scalar>(basis_cols) == rank<Scalar>(ext);
}

/// True iff the column spans of a and b coincide.
template <class Scalar>
bool same_span(const Mat<Scalar>& a, const Mat<Scalar>& b) {
  if (a.rows() != b.rows()) return false;
  Mat<Scalar> joint(a.rows(), a.cols() + b.cols());
  joint.leftCols(a.cols()) = a;
  joint.rightCols(b.cols()) = b;
  int rj = rank<Scalar>(joint);
  return rank<Scalar>(a) == rj && rank<Scalar>(b) == rj;
}

}  // namespace qwalk::exact
