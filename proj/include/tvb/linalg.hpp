// Exact Gauss-Jordan elimination over any field scalar (Rational, RationalFunction).
#pragma once

#include "tvb/rational.hpp"

#include <optional>
#include <vector>

namespace tvb {

template <typename Scalar>
bool is_zero(const Scalar& x) {
  return x == Scalar(0);
}

template <typename Scalar>
struct EchelonForm {
  Mat<Scalar> reduced;       ///< reduced row echelon form
  std::vector<int> pivots;   ///< pivot column of each nonzero row
};

template <typename Scalar>
EchelonForm<Scalar> rref(Mat<Scalar> a) {
  EchelonForm<Scalar> out;
  const Eigen::Index rows = a.rows();
  const Eigen::Index cols = a.cols();
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    Eigen::Index p = r;
    while (p < rows && is_zero(a(p, c))) ++p;
    if (p == rows) continue;
    if (p != r) a.row(p).swap(a.row(r));
    const Scalar inv = Scalar(1) / a(r, c);
    for (Eigen::Index j = c; j < cols; ++j) a(r, j) = a(r, j) * inv;
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (i == r || is_zero(a(i, c))) continue;
      const Scalar f = a(i, c);
      for (Eigen::Index j = c; j < cols; ++j) a(i, j) = a(i, j) - f * a(r, j);
    }
    out.pivots.push_back(static_cast<int>(c));
    ++r;
  }
  out.reduced = std::move(a);
  return out;
}

template <typename Scalar>
int rank(const Mat<Scalar>& a) {
  return static_cast<int>(rref(a).pivots.size());
}

/// Columns form a basis of {x : a x = 0}.
template <typename Scalar>
Mat<Scalar> nullspace(const Mat<Scalar>& a) {
  const auto ech = rref(a);
  const Eigen::Index cols = a.cols();
  std::vector<bool> is_pivot(static_cast<size_t>(cols), false);
  for (int p : ech.pivots) is_pivot[static_cast<size_t>(p)] = true;
  const Eigen::Index nfree = cols - static_cast<Eigen::Index>(ech.pivots.size());
  Mat<Scalar> basis = Mat<Scalar>::Zero(cols, nfree);
  Eigen::Index k = 0;
  for (Eigen::Index f = 0; f < cols; ++f) {
    if (is_pivot[static_cast<size_t>(f)]) continue;
    basis(f, k) = Scalar(1);
    for (size_t r = 0; r < ech.pivots.size(); ++r)
      basis(ech.pivots[r], k) = Scalar(0) - ech.reduced(static_cast<Eigen::Index>(r), f);
    ++k;
  }
  return basis;
}

template <typename Scalar>
std::optional<Mat<Scalar>> inverse(const Mat<Scalar>& a) {
  const Eigen::Index n = a.rows();
  if (a.cols() != n) return std::nullopt;
  Mat<Scalar> aug(n, 2 * n);
  aug.leftCols(n) = a;
  aug.rightCols(n) = Mat<Scalar>::Identity(n, n);
  auto ech = rref(aug);
  if (static_cast<Eigen::Index>(ech.pivots.size()) < n || ech.pivots[static_cast<size_t>(n - 1)] != n - 1)
    return std::nullopt;
  return Mat<Scalar>(ech.reduced.rightCols(n));
}

/// Some solution of a x = b, if one exists.
template <typename Scalar>
std::optional<Vec<Scalar>> solve(const Mat<Scalar>& a, const Vec<Scalar>& b) {
  const Eigen::Index cols = a.cols();
  Mat<Scalar> aug(a.rows(), cols + 1);
  aug.leftCols(cols) = a;
  aug.col(cols) = b;
  const auto ech = rref(aug);
  Vec<Scalar> x = Vec<Scalar>::Zero(cols);
  for (size_t r = 0; r < ech.pivots.size(); ++r) {
    const int p = ech.pivots[r];
    if (p == cols) return std::nullopt;
    x(p) = ech.reduced(static_cast<Eigen::Index>(r), cols);
  }
  return x;
}

template <typename Scalar>
Scalar determinant(Mat<Scalar> a) {
  const Eigen::Index n = a.rows();
  Scalar det(1);
  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::Index p = c;
    while (p < n && is_zero(a(p, c))) ++p;
    if (p == n) return Scalar(0);
    if (p != c) {
      a.row(p).swap(a.row(c));
      det = Scalar(0) - det;
    }
    det = det * a(c, c);
    const Scalar inv = Scalar(1) / a(c, c);
    for (Eigen::Index i = c + 1; i < n; ++i) {
      if (is_zero(a(i, c))) continue;
      const Scalar f = a(i, c) * inv;
      for (Eigen::Index j = c; j < n; ++j) a(i, j) = a(i, j) - f * a(c, j);
    }
  }
  return det;
}

/// Exact matrix product; avoids Eigen's blocked kernels for non-POD scalars.
template <typename Scalar>
Mat<Scalar> multiply(const Mat<Scalar>& a, const Mat<Scalar>& b) {
  Mat<Scalar> out = Mat<Scalar>::Zero(a.rows(), b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index k = 0; k < a.cols(); ++k) {
      if (is_zero(a(i, k))) continue;
      for (Eigen::Index j = 0; j < b.cols(); ++j) out(i, j) = out(i, j) + a(i, k) * b(k, j);
    }
  return out;
}

template <typename Scalar>
Vec<Scalar> multiply(const Mat<Scalar>& a, const Vec<Scalar>& x) {
  Vec<Scalar> out = Vec<Scalar>::Zero(a.rows());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index k = 0; k < a.cols(); ++k)
      if (!is_zero(x(k))) out(i) = out(i) + a(i, k) * x(k);
  return out;
}

}  // namespace tvb
