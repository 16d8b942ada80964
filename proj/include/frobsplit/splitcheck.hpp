#ifndef FROBSPLIT_SPLITCHECK_HPP
#define FROBSPLIT_SPLITCHECK_HPP

#include <vector>

#include "frobsplit/poly.hpp"

namespace frobsplit {

// Chart expansion of a candidate splitting section of the anticanonical
// bundle, taken at the chart origin.
struct SplitCandidate {
  Poly sigma;
  int nvars;

  SplitCandidate(Poly s, int n) : sigma(std::move(s)), nvars(n) {
    if (sigma.nvars() != nvars) throw Error("ShapeMismatch", "sigma.nvars != nvars");
  }
};

struct SplitReport {
  fp_t coefficient = 0;
  bool splits = false;      // coefficient != 0
  bool normalized = false;  // coefficient == 1
};

// coefficient of prod_i x_i^(p-1) in sigma^(p-1), computed with per-variable
// cap p-1
fp_t split_coefficient(const SplitCandidate& c);

// same coefficient for sigma given in factored form, multiplying the capped
// accumulator by one factor at a time
fp_t split_coefficient_factored(const std::vector<Poly>& factors, int nvars);
SplitReport splits_by_p_minus_1_factored(const std::vector<Poly>& factors, int nvars);

// A nonzero coefficient certifies splitting after scaling sigma by a
// (p-1)-th root over the algebraic closure; `normalized` records whether the
// raw coefficient is already 1.
SplitReport splits_by_p_minus_1(const SplitCandidate& c);

// Checks the divisor-compatibility identity for coordinate hyperplanes
// {x_j = 0 : j in divisor_vars}: the split coefficient of
// sigma * prod_j x_j equals the split coefficient of sigma restricted to the
// hyperplanes, in the remaining variables. Holds identically for every
// input; a false return indicates a bug.
bool divisor_propagation_check(const Poly& sigma_lift, const std::vector<int>& divisor_vars);

}  // namespace frobsplit

#endif
