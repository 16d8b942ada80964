#ifndef FROBSPLIT_GRTOWER_HPP
#define FROBSPLIT_GRTOWER_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "frobsplit/polymat.hpp"
#include "frobsplit/splitcheck.hpp"

namespace frobsplit {

// One stage of the Grassmannian tower over a point base (E_1 = E_2 = k^r).
//
// Chart conventions (the construction leaves them free; reports carry the
// fingerprint):
//  - kind "grass" (j = 0): Grass_r(k^r + k^r) on the cell of subspaces
//    transverse to the antidiagonal, K = {(u + Bu, u - Bu)}; the divisor
//    sections are s_1 = det(I - B), s_2 = det(I + B).
//  - kind "middle" (0 < j < r/2): two partial flags of type
//    (1..1, r-2j, 1..1) as block-unipotent frames plus the same graph cell
//    for the rank r-2j fiber Grassmannian.
//  - kind "top_even" (j = r/2): two full flag frames; the tower ends here.
//  - kind "top_odd" (j = (r-1)/2, r odd): two full flag frames plus the
//    fiber coordinate t of the P^1-bundle; s_1 = t and s_2 is a chart unit.
struct TowerLevel {
  int j = 0;
  int r = 0;
  std::string kind;
  int dim = 0;    // variety dimension
  int nvars = 0;  // chart dimension (= dim)
  std::vector<int> flag_dims;  // subspace dimensions of the partial flag
  std::string convention;
};

std::vector<TowerLevel> build_tower(int r, const PrimeField& f);

// s_i^{[j]} in the level's chart; i = 1 or 2
Poly divisor_section(const TowerLevel& level, const PrimeField& f, int i);

// block-unipotent frame of one flag factor, in the level's chart variables
PolyMat flag_frame(const TowerLevel& level, const PrimeField& f, int factor);

// rational chart map phi_j between charts of Gr_j and Gr_{j-1}; implemented
// for j = 1 (target Gr_0), which covers every case the desk-scale runs use
struct ChartMap {
  int src_nvars = 0;
  int dst_nvars = 0;
  std::vector<Poly> num;  // one numerator per target variable
  Poly den;
};

ChartMap phi_chart_map(const std::vector<TowerLevel>& tower, const PrimeField& f, int j);

// kernel generators of the Gr_0 quotient parametrized by the level-1 chart:
// 2r-dimensional polynomial vectors over the source chart ring
std::vector<std::vector<Poly>> phi1_kernel_generators(const std::vector<TowerLevel>& tower,
                                                      const PrimeField& f);

// inverse of phi_1 at a chart point where both q_i have corank exactly one
std::optional<std::vector<fp_t>> phi1_inverse_point(const std::vector<TowerLevel>& tower,
                                                    const PrimeField& f,
                                                    const FpMat& B);

// spanning set of H^0(O(m)) on Gr_0, as products of m maximal minors of the
// chart matrix [I-B | I+B]
struct SectionSpace {
  int m = 0;
  std::vector<Poly> basis;
  int rank = 0;
};

SectionSpace section_space(const TowerLevel& grass0, const PrimeField& f, int m);

struct LiftResult {
  Poly lifted;        // section of O(2r-2) on Gr_0, as a chart polynomial
  int twist = 0;      // denominator twist of the matched trivialization
  bool solved = false;
};

// solves <minor products restricted along phi_1> . c = target over F_p;
// target lives in the level-1 chart
LiftResult lift_section(const std::vector<TowerLevel>& tower, const PrimeField& f,
                        const Poly& target_on_gr1);

struct PipelineLevelReport {
  int level = 0;
  bool vanishes_D1 = false;
  bool vanishes_D2 = false;
  fp_t split_coefficient = 0;
  bool splits = false;
  bool split_checked = true;  // false when skipped by the cell budget
};

struct PipelineReport {
  bool sigma_Y_splits = false;
  fp_t sigma_Y_coefficient = 0;
  bool lift_solved = false;
  int lift_twist = 0;
  std::vector<PipelineLevelReport> levels;
  Poly sigma0;
  bool ok = false;
  std::string note;
};

// the default splitting section on Y (a product of per-factor anticanonical
// sections with distinct zeros)
Poly default_sigma_Y(const std::vector<TowerLevel>& tower, const PrimeField& f);

// Corollary 4.5 over a point base: verifies sigma_Y splits Y, lifts it, forms
// sigma_{j-1} = lift * s_1 * s_2, and certifies divisor vanishing plus the
// (p-1)-power splitting at each level. max_cells caps the dense box of the
// final split check; a larger box is reported as skipped, not as a failure.
PipelineReport corollary45_pipeline(int r, const PrimeField& f,
                                    const std::optional<Poly>& sigma_Y_opt,
                                    std::uint64_t max_cells = 1ull << 23);

}  // namespace frobsplit

#endif
