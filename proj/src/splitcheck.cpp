#include "frobsplit/splitcheck.hpp"

#include <algorithm>

namespace frobsplit {

fp_t split_coefficient(const SplitCandidate& c) {
  const PrimeField& f = c.sigma.field();
  const auto pm1 = static_cast<std::uint32_t>(f.p() - 1);
  const int n = c.nvars;
  if (n == 0) {
    // dimension-zero chart: sigma is a scalar and splits iff nonzero
    return f.pow(c.sigma.constant_value(), f.p() - 1);
  }
  ExpCap cap = ExpCap::uniform(n, pm1);
  Monomial target(static_cast<std::size_t>(n), pm1);
  // degree guard: too little total degree cannot reach the target monomial
  if (c.sigma.total_degree() * static_cast<std::int64_t>(pm1) <
      static_cast<std::int64_t>(n) * static_cast<std::int64_t>(pm1))
    return 0;
  return poly_pow_truncated_coeff(c.sigma, f.p() - 1, cap, target);
}

SplitReport splits_by_p_minus_1(const SplitCandidate& c) {
  SplitReport r;
  r.coefficient = split_coefficient(c);
  r.splits = r.coefficient != 0;
  r.normalized = r.coefficient == 1;
  return r;
}

fp_t split_coefficient_factored(const std::vector<Poly>& factors, int nvars) {
  if (factors.empty()) throw Error("ShapeMismatch", "empty factor list");
  const PrimeField& f = factors.front().field();
  const auto pm1 = static_cast<std::uint32_t>(f.p() - 1);
  if (nvars == 0) {
    fp_t v = 1;
    for (const auto& g : factors) v = f.mul(v, g.constant_value());
    return f.pow(v, f.p() - 1);
  }
  ExpCap cap = ExpCap::uniform(nvars, pm1);
  Monomial target(static_cast<std::size_t>(nvars), pm1);
  return poly_product_pow_truncated_coeff(factors, f.p() - 1, cap, target);
}

SplitReport splits_by_p_minus_1_factored(const std::vector<Poly>& factors, int nvars) {
  SplitReport r;
  r.coefficient = split_coefficient_factored(factors, nvars);
  r.splits = r.coefficient != 0;
  r.normalized = r.coefficient == 1;
  return r;
}

bool divisor_propagation_check(const Poly& sigma_lift, const std::vector<int>& divisor_vars) {
  const PrimeField& f = sigma_lift.field();
  const int n = sigma_lift.nvars();
  // left side: full split coefficient of sigma * prod_j x_j
  Poly full = sigma_lift;
  for (int v : divisor_vars) full = full * Poly::variable(f, n, v);
  fp_t lhs = split_coefficient(SplitCandidate(full, n));
  // right side: restrict to the divisors and check in the remaining variables
  Poly restr = drop_vars(restrict_to_zero(sigma_lift, divisor_vars), divisor_vars);
  fp_t rhs = split_coefficient(SplitCandidate(restr, restr.nvars()));
  return lhs == rhs;
}

}  // namespace frobsplit
