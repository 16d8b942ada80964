#include "frobsplit/fplinalg.hpp"

#include <algorithm>

namespace frobsplit {

FpMat FpMat::identity(const PrimeField& f, int n) {
  FpMat m(f, n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

FpMat FpMat::from_rows(const PrimeField& f, const std::vector<FpVec>& rows) {
  int rc = static_cast<int>(rows.size());
  int cc = rc == 0 ? 0 : static_cast<int>(rows.front().size());
  FpMat m(f, rc, cc);
  for (int i = 0; i < rc; ++i) {
    if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != cc)
      throw Error("ShapeMismatch", "ragged rows");
    for (int j = 0; j < cc; ++j) m.at(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] % f.p();
  }
  return m;
}

FpMat FpMat::from_cols(const PrimeField& f, const std::vector<FpVec>& cols) {
  return from_rows(f, cols).transpose();
}

FpVec FpMat::row(int r) const {
  FpVec v(static_cast<std::size_t>(cols_));
  for (int j = 0; j < cols_; ++j) v[static_cast<std::size_t>(j)] = at(r, j);
  return v;
}

FpVec FpMat::col(int c) const {
  FpVec v(static_cast<std::size_t>(rows_));
  for (int i = 0; i < rows_; ++i) v[static_cast<std::size_t>(i)] = at(i, c);
  return v;
}

FpMat FpMat::mul(const FpMat& o) const {
  if (cols_ != o.rows_) throw Error("ShapeMismatch", "matrix product shape mismatch");
  FpMat out(f_, rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      fp_t aik = at(i, k);
      if (!aik) continue;
      for (int j = 0; j < o.cols_; ++j)
        out.at(i, j) = f_.add(out.at(i, j), f_.mul(aik, o.at(k, j)));
    }
  return out;
}

FpVec FpMat::apply(const FpVec& v) const {
  if (static_cast<int>(v.size()) != cols_) throw Error("ShapeMismatch", "vector length mismatch");
  FpVec out(static_cast<std::size_t>(rows_), 0);
  for (int i = 0; i < rows_; ++i) {
    fp_t acc = 0;
    for (int j = 0; j < cols_; ++j) acc = f_.add(acc, f_.mul(at(i, j), v[static_cast<std::size_t>(j)]));
    out[static_cast<std::size_t>(i)] = acc;
  }
  return out;
}

FpMat FpMat::transpose() const {
  FpMat out(f_, cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
  return out;
}

FpMat FpMat::hstack(const FpMat& o) const {
  if (rows_ != o.rows_) throw Error("ShapeMismatch", "hstack row mismatch");
  FpMat out(f_, rows_, cols_ + o.cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) out.at(i, j) = at(i, j);
    for (int j = 0; j < o.cols_; ++j) out.at(i, cols_ + j) = o.at(i, j);
  }
  return out;
}

std::vector<int> FpMat::rref() {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < cols_ && r < rows_; ++c) {
    int piv = -1;
    for (int i = r; i < rows_; ++i)
      if (at(i, c) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != r)
      for (int j = 0; j < cols_; ++j) std::swap(at(piv, j), at(r, j));
    fp_t inv = f_.inv(at(r, c));
    for (int j = 0; j < cols_; ++j) at(r, j) = f_.mul(at(r, j), inv);
    for (int i = 0; i < rows_; ++i) {
      if (i == r || at(i, c) == 0) continue;
      fp_t factor = at(i, c);
      for (int j = 0; j < cols_; ++j) at(i, j) = f_.sub(at(i, j), f_.mul(factor, at(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

int FpMat::rank() const {
  FpMat tmp = *this;
  return static_cast<int>(tmp.rref().size());
}

fp_t FpMat::det() const {
  if (rows_ != cols_) throw Error("ShapeMismatch", "determinant of non-square matrix");
  FpMat tmp = *this;
  fp_t d = 1;
  for (int c = 0; c < cols_; ++c) {
    int piv = -1;
    for (int i = c; i < rows_; ++i)
      if (tmp.at(i, c) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) return 0;
    if (piv != c) {
      for (int j = 0; j < cols_; ++j) std::swap(tmp.at(piv, j), tmp.at(c, j));
      d = f_.neg(d);
    }
    d = f_.mul(d, tmp.at(c, c));
    fp_t inv = f_.inv(tmp.at(c, c));
    for (int i = c + 1; i < rows_; ++i) {
      fp_t factor = f_.mul(tmp.at(i, c), inv);
      if (!factor) continue;
      for (int j = c; j < cols_; ++j)
        tmp.at(i, j) = f_.sub(tmp.at(i, j), f_.mul(factor, tmp.at(c, j)));
    }
  }
  return d;
}

std::optional<FpMat> FpMat::inverse() const {
  if (rows_ != cols_) throw Error("ShapeMismatch", "inverse of non-square matrix");
  FpMat aug = hstack(identity(f_, rows_));
  auto piv = aug.rref();
  for (int i = 0; i < rows_; ++i)
    if (i >= static_cast<int>(piv.size()) || piv[static_cast<std::size_t>(i)] != i)
      return std::nullopt;
  FpMat inv(f_, rows_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < rows_; ++j) inv.at(i, j) = aug.at(i, rows_ + j);
  return inv;
}

std::vector<FpVec> FpMat::nullspace() const {
  FpMat tmp = *this;
  auto pivots = tmp.rref();
  std::vector<bool> is_pivot(static_cast<std::size_t>(cols_), false);
  for (int c : pivots) is_pivot[static_cast<std::size_t>(c)] = true;
  std::vector<FpVec> basis;
  for (int c = 0; c < cols_; ++c) {
    if (is_pivot[static_cast<std::size_t>(c)]) continue;
    FpVec v(static_cast<std::size_t>(cols_), 0);
    v[static_cast<std::size_t>(c)] = 1;
    for (std::size_t pi = 0; pi < pivots.size(); ++pi)
      v[static_cast<std::size_t>(pivots[pi])] = f_.neg(tmp.at(static_cast<int>(pi), c));
    basis.push_back(v);
  }
  return basis;
}

std::optional<FpVec> FpMat::solve(const FpVec& b) const {
  if (static_cast<int>(b.size()) != rows_) throw Error("ShapeMismatch", "rhs length mismatch");
  FpMat aug(f_, rows_, cols_ + 1);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
    aug.at(i, cols_) = b[static_cast<std::size_t>(i)];
  }
  auto pivots = aug.rref();
  if (!pivots.empty() && pivots.back() == cols_) return std::nullopt;  // inconsistent
  FpVec x(static_cast<std::size_t>(cols_), 0);
  for (std::size_t pi = 0; pi < pivots.size(); ++pi)
    x[static_cast<std::size_t>(pivots[pi])] = aug.at(static_cast<int>(pi), cols_);
  return x;
}

Subspace Subspace::span_rows(const PrimeField& f, const std::vector<FpVec>& gens) {
  if (gens.empty()) throw Error("ShapeMismatch", "span_rows needs the ambient dimension");
  FpMat m = FpMat::from_rows(f, gens);
  m.rref();
  std::vector<FpVec> rows;
  for (int i = 0; i < m.rows(); ++i) {
    FpVec r = m.row(i);
    if (std::any_of(r.begin(), r.end(), [](fp_t x) { return x != 0; })) rows.push_back(r);
  }
  Subspace s(f, m.cols());
  if (!rows.empty()) s.basis_ = FpMat::from_rows(f, rows);
  return s;
}

Subspace Subspace::span_cols(const FpMat& cols) {
  std::vector<FpVec> gens;
  for (int c = 0; c < cols.cols(); ++c) gens.push_back(cols.col(c));
  if (gens.empty()) return Subspace(cols.field(), cols.rows());
  return span_rows(cols.field(), gens);
}

Subspace Subspace::full(const PrimeField& f, int n) {
  Subspace s(f, n);
  s.basis_ = FpMat::identity(f, n);
  return s;
}

bool Subspace::contains(const FpVec& v) const {
  // reduce v against the RREF basis
  FpVec w = v;
  const PrimeField& f = basis_.field();
  for (int i = 0; i < basis_.rows(); ++i) {
    int lead = -1;
    for (int j = 0; j < basis_.cols(); ++j)
      if (basis_.at(i, j) != 0) {
        lead = j;
        break;
      }
    if (lead < 0) continue;
    fp_t c = w[static_cast<std::size_t>(lead)];
    if (c == 0) continue;
    for (int j = 0; j < basis_.cols(); ++j)
      w[static_cast<std::size_t>(j)] = f.sub(w[static_cast<std::size_t>(j)], f.mul(c, basis_.at(i, j)));
  }
  return std::all_of(w.begin(), w.end(), [](fp_t x) { return x == 0; });
}

bool Subspace::contains(const Subspace& o) const {
  for (int i = 0; i < o.dim(); ++i)
    if (!contains(o.basis_vector(i))) return false;
  return true;
}

Subspace Subspace::sum(const Subspace& o) const {
  if (ambient() != o.ambient()) throw Error("ShapeMismatch", "subspace ambient mismatch");
  std::vector<FpVec> gens;
  for (int i = 0; i < dim(); ++i) gens.push_back(basis_vector(i));
  for (int i = 0; i < o.dim(); ++i) gens.push_back(o.basis_vector(i));
  if (gens.empty()) return Subspace(basis_.field(), ambient());
  return span_rows(basis_.field(), gens);
}

Subspace Subspace::intersect(const Subspace& o) const {
  if (ambient() != o.ambient()) throw Error("ShapeMismatch", "subspace ambient mismatch");
  if (dim() == 0 || o.dim() == 0) return Subspace(basis_.field(), ambient());
  const PrimeField& f = basis_.field();
  // columns of [A^T | B^T]; kernel vectors (x, y) give A^T x = -B^T y in the
  // intersection
  FpMat at = basis_.transpose();          // n x d1
  FpMat bt = o.basis_.transpose();        // n x d2
  FpMat stacked = at.hstack(bt);          // n x (d1 + d2)
  auto kernel = stacked.nullspace();
  std::vector<FpVec> gens;
  for (const auto& k : kernel) {
    FpVec x(static_cast<std::size_t>(dim()));
    for (int i = 0; i < dim(); ++i) x[static_cast<std::size_t>(i)] = k[static_cast<std::size_t>(i)];
    FpVec v = at.apply(x);
    gens.push_back(v);
  }
  if (gens.empty()) return Subspace(f, ambient());
  return span_rows(f, gens);
}

std::uint64_t Rng::next() {
  // splitmix64
  std::uint64_t z = (s_ += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

std::uint64_t Rng::below(std::uint64_t n) { return n ? next() % n : 0; }

FpMat random_invertible(const PrimeField& f, int n, Rng& rng) {
  for (;;) {
    FpMat m(f, n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m.at(i, j) = rng.field_element(f);
    if (m.det() != 0) return m;
  }
}

}  // namespace frobsplit
