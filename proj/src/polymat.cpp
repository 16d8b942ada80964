#include "frobsplit/polymat.hpp"

namespace frobsplit {

PolyMat PolyMat::from_constant(const FpMat& m, int nvars) {
  PolyMat out(m.field(), nvars, m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (m.at(i, j)) out.at(i, j) = Poly::constant(m.field(), nvars, m.at(i, j));
  return out;
}

void PolyMat::set_col(int c, const std::vector<Poly>& col) {
  if (static_cast<int>(col.size()) != rows_) throw Error("ShapeMismatch", "column length mismatch");
  for (int i = 0; i < rows_; ++i) at(i, c) = col[static_cast<std::size_t>(i)];
}

std::vector<Poly> PolyMat::col(int c) const {
  std::vector<Poly> v;
  v.reserve(static_cast<std::size_t>(rows_));
  for (int i = 0; i < rows_; ++i) v.push_back(at(i, c));
  return v;
}

PolyMat PolyMat::mul(const PolyMat& o) const {
  if (cols_ != o.rows_) throw Error("ShapeMismatch", "matrix product shape mismatch");
  PolyMat out(f_, nvars_, rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      if (at(i, k).is_zero()) continue;
      for (int j = 0; j < o.cols_; ++j)
        out.at(i, j) = out.at(i, j) + at(i, k) * o.at(k, j);
    }
  return out;
}

FpMat PolyMat::eval(const std::vector<fp_t>& point) const {
  FpMat out(f_, rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out.at(i, j) = at(i, j).eval(point);
  return out;
}

PolyMat PolyMat::hstack(const PolyMat& o) const {
  if (rows_ != o.rows_) throw Error("ShapeMismatch", "hstack row mismatch");
  PolyMat out(f_, nvars_, rows_, cols_ + o.cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) out.at(i, j) = at(i, j);
    for (int j = 0; j < o.cols_; ++j) out.at(i, cols_ + j) = o.at(i, j);
  }
  return out;
}

Poly PolyMat::det() const {
  if (rows_ != cols_) throw Error("ShapeMismatch", "determinant of non-square matrix");
  const int n = rows_;
  if (n == 0) return Poly::constant(f_, nvars_, 1);
  PolyMat m = *this;
  bool flip = false;
  Poly prev = Poly::constant(f_, nvars_, 1);
  for (int k = 0; k + 1 < n; ++k) {
    if (m.at(k, k).is_zero()) {
      int piv = -1;
      for (int i = k + 1; i < n; ++i)
        if (!m.at(i, k).is_zero()) {
          piv = i;
          break;
        }
      if (piv < 0) return Poly(f_, nvars_);  // singular
      for (int j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(piv, j));
      flip = !flip;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        Poly num = m.at(k, k) * m.at(i, j) - m.at(i, k) * m.at(k, j);
        auto q = exact_divide(num, prev);
        if (!q) throw Error("InternalError", "Bareiss division was not exact");
        m.at(i, j) = *q;
      }
    prev = m.at(k, k);
  }
  Poly d = m.at(n - 1, n - 1);
  return flip ? -d : d;
}

PolyMat PolyMat::adjugate() const {
  if (rows_ != cols_) throw Error("ShapeMismatch", "adjugate of non-square matrix");
  const int n = rows_;
  PolyMat adj(f_, nvars_, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      PolyMat minor(f_, nvars_, n - 1, n - 1);
      for (int a = 0, ai = 0; a < n; ++a) {
        if (a == i) continue;
        for (int b = 0, bj = 0; b < n; ++b) {
          if (b == j) continue;
          minor.at(ai, bj) = at(a, b);
          ++bj;
        }
        ++ai;
      }
      Poly c = minor.det();
      adj.at(j, i) = ((i + j) % 2 == 0) ? c : -c;
    }
  return adj;
}

}  // namespace frobsplit
