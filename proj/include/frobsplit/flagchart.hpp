#ifndef FROBSPLIT_FLAGCHART_HPP
#define FROBSPLIT_FLAGCHART_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "frobsplit/fplinalg.hpp"
#include "frobsplit/polymat.hpp"
#include "frobsplit/splitcheck.hpp"

namespace frobsplit {

// Big cell of the full flag variety Flag(k^r): V_i is spanned by the first i
// columns of center * U(x) with U unipotent lower triangular. The center is
// a fixed general-position translation keeping all divisor sections nonzero
// at the chart origin.
class FlagChart {
 public:
  FlagChart(int r, const PrimeField& f, FpMat center);

  int r() const { return r_; }
  const PrimeField& field() const { return f_; }
  int nvars() const { return nvars_; }
  const FpMat& center() const { return center_; }

  // chart variable index of the frame entry (row i, col j), 0-based, i > j
  int var_index(int i, int j) const;

  PolyMat unipotent_frame() const;   // U(x)
  PolyMat translated_frame() const;  // center * U(x)

 private:
  int r_;
  PrimeField f_;
  int nvars_;
  FpMat center_;
};

// The fixed subspace configuration of the section construction: lines L_i, a
// generic line L, hyperplanes H and H_i, and the nested W_i / S_i families.
struct SubspaceConfig {
  int r = 0;
  PrimeField f;
  std::vector<FpVec> L;        // L[i] spans L_{i+1}, 0-based
  FpVec Lgen;                  // the generic line L
  Subspace H;                  // hyperplane with L, L_1, L_r outside
  FpVec H_normal;              // covector cutting H
  std::vector<Subspace> Hi;    // H_1..H_{r-1}
  std::vector<FpVec> Hi_normal;
  std::vector<Subspace> W;     // W_1..W_r, nested, dim W_i = i
  std::vector<Subspace> S;     // S_1..S_{r-1}, dim S_i = i

  explicit SubspaceConfig(const PrimeField& field) : f(field), H(field, 0) {}
};

SubspaceConfig standard_config(int r, const PrimeField& f);

// chart with a deterministically chosen general-position center for the
// given configuration
FlagChart big_cell_chart(int r, const PrimeField& f);
FlagChart big_cell_chart_for(int r, const PrimeField& f, const SubspaceConfig& cfg);

struct DivisorSection {
  Poly poly;
  std::string label;        // d1..d_{r-1}, e1..e_{r-1}
  int flag_index = 0;       // the V_{r-i} it pairs with
  std::vector<int> column_support;  // frame columns the section involves
};

std::vector<DivisorSection> divisor_sections(const FlagChart& chart, const SubspaceConfig& cfg);

struct SigmaFactorReport {
  std::string label;
  int det_class = 0;  // the c with [section] = det(V_c)^{-1}
  std::int64_t total_degree = 0;
  std::vector<int> column_support;
};

struct SigmaReport {
  Poly sigma;
  std::vector<DivisorSection> sections;
  std::vector<SigmaFactorReport> factors;
  bool anticanonical_multidegree_ok = false;  // two factors per det(V_c)^{-1}
};

SigmaReport sigma_lemma59(const FlagChart& chart, const SubspaceConfig& cfg);

struct OrderResult {
  bool in_chart = false;
  std::int64_t order = 0;  // meaningful when in_chart
};

// vanishing orders of sigma at the loci X_i = {V_1 = L_i} and
// Y_i = {V_{r-1} = H_i} (Y_r uses H), via adapted affine coordinates
std::map<std::string, OrderResult> vanishing_orders_at_special_loci(const Poly& sigma,
                                                                    const FlagChart& chart,
                                                                    const SubspaceConfig& cfg);

struct DeltaLevel {
  int k = 0;
  fp_t coefficient = 0;
  bool splits = false;
  bool propagation_ok = true;  // divisor-compatibility identity at this level
};

struct DeltaChainReport {
  std::vector<DeltaLevel> levels;  // k = 1..r
  bool base_nonzero = false;       // delta_1 != 0
  bool all_split = false;
  bool consistent_with_sigma = false;  // level-r verdict matches sigma's
  std::vector<fp_t> constant_e_values; // e_i(w) for the constant factors
};

DeltaChainReport delta_chain(int r, const PrimeField& f);

}  // namespace frobsplit

#endif
