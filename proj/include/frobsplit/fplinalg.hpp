#ifndef FROBSPLIT_FPLINALG_HPP
#define FROBSPLIT_FPLINALG_HPP

#include <optional>
#include <vector>

#include "frobsplit/field.hpp"

namespace frobsplit {

using FpVec = std::vector<fp_t>;

// dense row-major matrix over F_p
class FpMat {
 public:
  FpMat(const PrimeField& f, int rows, int cols)
      : f_(f), rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, 0) {}

  static FpMat identity(const PrimeField& f, int n);
  static FpMat from_rows(const PrimeField& f, const std::vector<FpVec>& rows);
  static FpMat from_cols(const PrimeField& f, const std::vector<FpVec>& cols);

  const PrimeField& field() const { return f_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

  fp_t& at(int r, int c) { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
  fp_t at(int r, int c) const { return a_[static_cast<std::size_t>(r) * cols_ + c]; }

  FpVec row(int r) const;
  FpVec col(int c) const;

  FpMat mul(const FpMat& o) const;
  FpVec apply(const FpVec& v) const;  // matrix * column vector
  FpMat transpose() const;
  FpMat hstack(const FpMat& o) const;

  int rank() const;
  fp_t det() const;
  std::optional<FpMat> inverse() const;
  // reduced row echelon form; returns pivot columns
  std::vector<int> rref();
  // basis of the right kernel, as columns
  std::vector<FpVec> nullspace() const;
  // one solution of A x = b, if any
  std::optional<FpVec> solve(const FpVec& b) const;

  bool operator==(const FpMat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }

 private:
  PrimeField f_;
  int rows_, cols_;
  std::vector<fp_t> a_;
};

// Subspace of F_p^n represented by a canonical RREF row basis, so equality of
// subspaces is equality of representations.
class Subspace {
 public:
  Subspace(const PrimeField& f, int ambient) : basis_(f, 0, ambient) {}
  static Subspace span_rows(const PrimeField& f, const std::vector<FpVec>& gens);
  static Subspace span_cols(const FpMat& cols);
  static Subspace full(const PrimeField& f, int n);

  int ambient() const { return basis_.cols(); }
  int dim() const { return basis_.rows(); }
  const FpMat& basis() const { return basis_; }
  FpVec basis_vector(int i) const { return basis_.row(i); }

  bool contains(const FpVec& v) const;
  bool contains(const Subspace& o) const;
  Subspace sum(const Subspace& o) const;
  Subspace intersect(const Subspace& o) const;

  bool operator==(const Subspace& o) const { return basis_ == o.basis_; }
  bool operator!=(const Subspace& o) const { return !(*this == o); }

 private:
  FpMat basis_;  // RREF, no zero rows
};

// deterministic xorshift-style generator for seeded randomized tests
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : s_(seed ? seed : 0x9e3779b97f4a7c15ull) {}
  std::uint64_t next();
  // uniform in [0, n)
  std::uint64_t below(std::uint64_t n);
  fp_t field_element(const PrimeField& f) { return below(f.p()); }
  fp_t nonzero_field_element(const PrimeField& f) { return 1 + below(f.p() - 1); }

 private:
  std::uint64_t s_;
};

FpMat random_invertible(const PrimeField& f, int n, Rng& rng);

}  // namespace frobsplit

#endif
