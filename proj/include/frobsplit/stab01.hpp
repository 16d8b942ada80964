#ifndef FROBSPLIT_STAB01_HPP
#define FROBSPLIT_STAB01_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "frobsplit/fplinalg.hpp"
#include "frobsplit/parweights.hpp"

namespace frobsplit {

struct P1Point {
  bool at_infinity = false;
  fp_t t = 0;
};

// Explicit configuration of flags on the trivial bundle O^r over P^1. All
// flag data lives in W = H^0(E) = k^r coordinates (the evaluation maps are
// identities on coefficient vectors). Full flags are r x r invertible
// matrices whose first r-j columns span E_{x,j}; the leading column spans the
// deepest subspace. The type (r-1,1) datum at y1 is the flag line
// ker(E_{y1} -> Q_1), the direction carrying the top parabolic weight.
struct FlagConfig {
  int r = 0;
  PrimeField f;
  std::map<std::string, P1Point> at;        // y1, z1, z2 [, z]
  Subspace ell_y1;                          // the flag line at y1
  std::map<std::string, FpMat> full_flags;  // z1, z2 [, z]

  explicit FlagConfig(const PrimeField& field) : f(field), ell_y1(field, 0) {}

  // E_{label, j}, the flag subspace of dimension r - j (j = 0 gives E itself)
  Subspace flag_subspace(const std::string& label, int j) const;
  void validate() const;
};

struct GenericityReport {
  bool ok = false;
  std::string witness;  // description of the first failing condition
};

// condition (5.12): the y1-line avoids every E^{(1)}_{r-i+1} + E^{(2)}_i and
// the opposite flags intersect trivially in complementary dimensions
GenericityReport genericity_check_512(const FlagConfig& cfg);

struct SpecialLoci {
  std::vector<Subspace> L;  // r lines, pairwise distinct, spanning W
  std::vector<Subspace> H;  // H_1..H_{r-1}, dimension r-1
  Subspace Hz;              // dimension r-1
  bool hz_unique = false;   // the interpolation pinned u up to trivial moves

  SpecialLoci(const PrimeField& f, int r) : Hz(f, r) {}
};

SpecialLoci special_loci(const FlagConfig& cfg);

struct DestabWitness {
  std::vector<FpVec> basis;  // generators of the witness subsheaf
  long degree = 0;
  int rank = 0;
  Rat par_chi_F;
  Rat bound;  // r(F)/r(E) * par chi(E)
};

struct StabilityReport {
  Verdict verdict = Verdict::Stable;
  std::optional<DestabWitness> witness;  // maximizing subsheaf when not stable
};

// Degree-zero subbundle search: treats every subspace U of W as U (x) O and
// compares par chi. Exhaustive over all subspaces when their number is small,
// otherwise restricted to flag-adapted subspaces (intersections and sums of
// the flag subspaces), which realize every intersection profile.
StabilityReport subspace_destabilizer_search(const FlagConfig& cfg, const ParData& w);

// Rank-2 oracle: enumerates line subbundles O(-d) -> O^2 as coprime
// polynomial pairs up to degree d_max and maximizes the parabolic slope.
StabilityReport rank2_bruteforce(const FlagConfig& cfg, const ParData& w,
                                 std::optional<long> d_max = std::nullopt);

// canonical weight on the configuration's labels with the matching types
ParData omega_c0(const FlagConfig& cfg, long d = 0);

// Prop 5.4 normal form: z1-flag to the coordinate flag, z2-flag to the
// opposite flag, residual torus fixed by the y1-line; nullopt when (5.12)
// fails. Two generic configurations agree iff their forms agree.
std::optional<FpVec> orbit_canonical_form(const FlagConfig& cfg);

// deterministic random configuration (flags invertible, points distinct)
FlagConfig random_config(int r, const PrimeField& f, Rng& rng, bool with_z = false);

// the image configuration under g in GL(W)
FlagConfig transformed(const FlagConfig& cfg, const FpMat& g);

}  // namespace frobsplit

#endif
