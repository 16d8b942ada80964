#ifndef FROBSPLIT_PARWEIGHTS_HPP
#define FROBSPLIT_PARWEIGHTS_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "frobsplit/error.hpp"
#include "frobsplit/rat.hpp"

namespace frobsplit {

// flag type (n_1, ..., n_{l+1}) at one marked point; entries sum to the rank
struct QuasiParType {
  std::vector<int> n;

  int parts() const { return static_cast<int>(n.size()); }
  int sum() const;
};

// weight vector 0 = a_1 < a_2 < ... < a_{l+1} < k paired with a type
struct ParWeight {
  std::vector<long> a;
};

struct PointDatum {
  QuasiParType type;
  ParWeight weight;
};

// omega = (k, {n(x), a(x)}_{x in I}) together with rank/degree/genus context
struct ParData {
  int r = 0;
  long d = 0;
  int g = 0;
  long k = 1;
  std::map<std::string, PointDatum> points;  // ordered by label

  long chi() const { return d + static_cast<long>(r) * (1 - g); }
  void validate() const;
};

// intersection profile of a subsheaf: 0 <= m_i(x) <= n_i(x), sum_i m_i = r1
struct SubsheafProfile {
  int r1 = 0;
  long deg = 0;
  std::map<std::string, std::vector<int>> m;
};

ParData canonical_weight(const std::map<std::string, QuasiParType>& types, int r, long d, int g);

Rat par_chi(const ParData& w);                                  // full E
Rat par_chi(const ParData& w, const SubsheafProfile& profile);  // subsheaf

// (k*chi - sum_x sum_i d_i(x) r_i(x)) / r
Rat ell(const ParData& w);

// Eq (2.1) contribution at one point for one m-vector, generic over the
// scalar ring (Rat for concrete weights, EpsRat for infinitesimal ones)
template <class S>
S sigma_value_generic(const std::vector<int>& n, const std::vector<int>& m, int r, int r1,
                      const std::vector<S>& a_over_k) {
  S total = S(0);
  int partial = 0;
  for (std::size_t j = 0; j < n.size(); ++j) {
    partial += m[j];
    long c1 = static_cast<long>(r1 - partial) * (n[j] - m[j]);
    long c2 = static_cast<long>(r1) * n[j] - static_cast<long>(r) * m[j];
    total = total + S(Rat(c1)) + S(Rat(c2)) * a_over_k[j];
  }
  return total;
}

Rat sigma_value(const ParData& w, const std::string& x, const SubsheafProfile& profile);

// enumerate all valid m-vectors at x (0 <= m_i <= n_i, sum = r1)
std::vector<std::vector<int>> enumerate_m_vectors(const QuasiParType& type, int r1);

Rat sigma_min(const ParData& w, const std::string& x, int r1);

struct CodimBounds {
  Rat coarse;  // min r1(r-r1)(g-1) + |I|/k, the Prop 2.7 shape
  Rat sharp;   // min over r1 of r1(r-r1)(g-1) + sum_x Sigma_min
};
CodimBounds codim_bounds(const ParData& w);

// degree d -> d-1; weight at the full-flag point z transformed per the Hecke
// rule a'_1 = 0, a'_i = a_{i+1} - a_2, a'_r = k - a_2
ParData hecke_transform(const ParData& w, const std::string& z);

// the omega^t family: canonical three-point part {y1, z1, z2} plus I' of
// full-flag points with fractional weights (i-1)/(|I'|(r-1)r), the
// distinguished z carrying a_r/k = 1/(|I'|r) + t
ParData omega_t_family(int r, const std::vector<std::string>& Iprime, const std::string& z,
                       const Rat& t);

// weight fractions a_i/k at the distinguished z of omega^t with t symbolic
std::vector<EpsRat> omega_t_weights_at_z(int r, int nIprime, const EpsRat& t);

enum class Verdict { Stable, StrictlySemistable, Unstable };

std::string verdict_str(Verdict v);

// GPS alpha-semistability comparison (Def 3.5 / Def 3.13 (2)): the verdict of
// par chi(F) - dim Q^F * alpha  vs  r(F)/r(E) * (par chi(E) - dim Q * alpha).
// A Stable verdict means strict inequality holds for this profile (it does
// not by itself certify stability of E, which quantifies over all F).
struct GPSProfile {
  Rat parchi_F;
  Rat r_F;  // rank of F; rational (c-weighted) for two-component data
  int dimQ_F = 0;
  Rat alpha;
  int dimQ = 0;
  // two-component data (Def 3.13): when set, par chi_m is used on both sides
  struct TwoComponent {
    int r1 = 0, r2 = 0;           // component ranks of F
    Rat sum_top_weights_I1;        // sum over x in I_j of a_{l_x+1}(x)
    Rat sum_top_weights_I2;
    long k = 1;
  };
  std::optional<TwoComponent> two_component;
};

Verdict gps_alpha_semistable(const GPSProfile& p, const Rat& parchi_E, const Rat& r_E);

// Eq (3.8) for a two-component curve: I partitioned by `I1` (rest is I2)
std::pair<Rat, Rat> n_j_omega(const ParData& w, const std::set<std::string>& I1, long c1, long c2);

struct ChiRangeReport {
  bool coarse_ok = false;  // n_j <= chi_j <= n_j + r
  bool sharp_ok = false;   // Remark 3.15 bounds with alpha and dim Q^{E_i}
};
ChiRangeReport chi_range_check(const Rat& n1, const Rat& n2, const Rat& chi1, const Rat& chi2,
                               int r, const Rat& alpha, int dimQ_E1, int dimQ_E2);

}  // namespace frobsplit

#endif
