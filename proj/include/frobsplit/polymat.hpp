#ifndef FROBSPLIT_POLYMAT_HPP
#define FROBSPLIT_POLYMAT_HPP

#include <vector>

#include "frobsplit/fplinalg.hpp"
#include "frobsplit/poly.hpp"

namespace frobsplit {

// matrix with entries in F_p[x_1..x_n]
class PolyMat {
 public:
  PolyMat(const PrimeField& f, int nvars, int rows, int cols)
      : f_(f), nvars_(nvars), rows_(rows), cols_(cols),
        a_(static_cast<std::size_t>(rows) * cols, Poly(f, nvars)) {}

  static PolyMat from_constant(const FpMat& m, int nvars);

  const PrimeField& field() const { return f_; }
  int nvars() const { return nvars_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Poly& at(int r, int c) { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
  const Poly& at(int r, int c) const { return a_[static_cast<std::size_t>(r) * cols_ + c]; }

  void set_col(int c, const std::vector<Poly>& col);
  std::vector<Poly> col(int c) const;

  PolyMat mul(const PolyMat& o) const;
  FpMat eval(const std::vector<fp_t>& point) const;
  PolyMat hstack(const PolyMat& o) const;

  // fraction-free (Bareiss) determinant; all interior divisions are exact
  Poly det() const;

  // adjugate via minors: adj * M = det(M) * I
  PolyMat adjugate() const;

 private:
  PrimeField f_;
  int nvars_, rows_, cols_;
  std::vector<Poly> a_;
};

}  // namespace frobsplit

#endif
