#include "frobsplit/parweights.hpp"

#include <algorithm>
#include <numeric>

namespace frobsplit {

// --- EpsRat -----------------------------------------------------------------

EpsRat EpsRat::operator+(const EpsRat& o) const {
  EpsRat r;
  r.c_.resize(std::max(c_.size(), o.c_.size()), Rat(0));
  for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = coeff(i) + o.coeff(i);
  r.trim();
  return r;
}

EpsRat EpsRat::operator-(const EpsRat& o) const { return *this + (-o); }

EpsRat EpsRat::operator-() const {
  EpsRat r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

EpsRat EpsRat::operator*(const EpsRat& o) const {
  EpsRat r;
  if (c_.empty() || o.c_.empty()) return r;
  r.c_.assign(c_.size() + o.c_.size() - 1, Rat(0));
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) r.c_[i + j] += c_[i] * o.c_[j];
  r.trim();
  return r;
}

int EpsRat::sign() const {
  for (const auto& c : c_) {
    if (c > 0) return 1;
    if (c < 0) return -1;
  }
  return 0;
}

std::string EpsRat::str() const {
  if (c_.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    if (!s.empty()) s += " + ";
    s += rat_str(c_[i]);
    if (i == 1) s += "*eps";
    if (i > 1) s += "*eps^" + std::to_string(i);
  }
  return s.empty() ? "0" : s;
}

// --- basic data -------------------------------------------------------------

int QuasiParType::sum() const { return std::accumulate(n.begin(), n.end(), 0); }

void ParData::validate() const {
  if (r < 1) throw Error("BadType", "rank must be positive");
  if (k < 1) throw Error("BadType", "k must be positive");
  for (const auto& [label, pd] : points) {
    if (pd.type.sum() != r)
      throw Error("BadType", "type at " + label + " sums to " + std::to_string(pd.type.sum()) +
                                 ", expected " + std::to_string(r));
    for (int ni : pd.type.n)
      if (ni <= 0) throw Error("BadType", "type entries must be positive at " + label);
    const auto& a = pd.weight.a;
    if (a.size() != pd.type.n.size())
      throw Error("BadType", "weight length mismatch at " + label);
    if (a.empty() || a.front() != 0) throw Error("BadType", "a_1 must be 0 at " + label);
    for (std::size_t i = 1; i < a.size(); ++i)
      if (a[i] <= a[i - 1]) throw Error("BadType", "weights must strictly increase at " + label);
    if (a.back() >= k) throw Error("WeightOverflow", "a_{l+1} >= k at " + label);
  }
}

ParData canonical_weight(const std::map<std::string, QuasiParType>& types, int r, long d, int g) {
  ParData w;
  w.r = r;
  w.d = d;
  w.g = g;
  w.k = 2L * r;
  for (const auto& [label, t] : types) {
    if (t.sum() != r)
      throw Error("BadType", "type at " + label + " sums to " + std::to_string(t.sum()));
    ParWeight a;
    a.a.push_back(0);
    for (std::size_t i = 0; i + 1 < t.n.size(); ++i)
      a.a.push_back(a.a.back() + t.n[i] + t.n[i + 1]);
    w.points[label] = PointDatum{t, a};
  }
  w.validate();  // a_{l+1} = 2r - n_1 - n_{l+1} < k, so overflow cannot occur
  return w;
}

static void check_profile(const ParData& w, const SubsheafProfile& p) {
  if (p.r1 < 0 || p.r1 > w.r) throw Error("BadProfile", "subsheaf rank out of range");
  for (const auto& [label, pd] : w.points) {
    auto it = p.m.find(label);
    if (it == p.m.end()) throw Error("BadProfile", "profile missing point " + label);
    const auto& m = it->second;
    if (m.size() != pd.type.n.size()) throw Error("BadProfile", "m length mismatch at " + label);
    int s = 0;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] < 0 || m[i] > pd.type.n[i])
        throw Error("BadProfile", "m_i out of [0, n_i] at " + label);
      s += m[i];
    }
    if (s != p.r1) throw Error("BadProfile", "profile at " + label + " sums to " +
                                                 std::to_string(s) + ", expected r1");
  }
}

Rat par_chi(const ParData& w) {
  Rat acc(0);
  for (const auto& [label, pd] : w.points)
    for (std::size_t i = 0; i < pd.type.n.size(); ++i)
      acc += Rat(pd.weight.a[i]) * pd.type.n[i];
  return Rat(w.chi()) + acc / w.k;
}

Rat par_chi(const ParData& w, const SubsheafProfile& profile) {
  check_profile(w, profile);
  Rat acc(0);
  for (const auto& [label, pd] : w.points) {
    const auto& m = profile.m.at(label);
    for (std::size_t i = 0; i < m.size(); ++i) acc += Rat(pd.weight.a[i]) * m[i];
  }
  Rat chiF = Rat(profile.deg) + Rat(profile.r1) * (1 - w.g);
  return chiF + acc / w.k;
}

Rat ell(const ParData& w) {
  Rat acc(0);
  for (const auto& [label, pd] : w.points) {
    long ri = 0;
    for (std::size_t i = 0; i + 1 < pd.type.n.size(); ++i) {
      ri += pd.type.n[i];
      acc += Rat(pd.weight.a[i + 1] - pd.weight.a[i]) * ri;
    }
  }
  return (Rat(w.k) * w.chi() - acc) / w.r;
}

Rat sigma_value(const ParData& w, const std::string& x, const SubsheafProfile& profile) {
  auto it = w.points.find(x);
  if (it == w.points.end()) throw Error("BadProfile", "unknown point " + x);
  check_profile(w, profile);
  const auto& pd = it->second;
  std::vector<Rat> frac;
  frac.reserve(pd.weight.a.size());
  for (long a : pd.weight.a) frac.emplace_back(Rat(a) / w.k);
  return sigma_value_generic<Rat>(pd.type.n, profile.m.at(x), w.r, profile.r1, frac);
}

std::vector<std::vector<int>> enumerate_m_vectors(const QuasiParType& type, int r1) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(type.n.size(), 0);
  auto rec = [&](auto&& self, std::size_t i, int left) -> void {
    if (i == type.n.size()) {
      if (left == 0) out.push_back(cur);
      return;
    }
    for (int v = 0; v <= std::min(type.n[i], left); ++v) {
      cur[i] = v;
      self(self, i + 1, left - v);
    }
    cur[i] = 0;
  };
  rec(rec, 0, r1);
  return out;
}

Rat sigma_min(const ParData& w, const std::string& x, int r1) {
  auto it = w.points.find(x);
  if (it == w.points.end()) throw Error("BadProfile", "unknown point " + x);
  const auto& pd = it->second;
  std::vector<Rat> frac;
  for (long a : pd.weight.a) frac.emplace_back(Rat(a) / w.k);
  bool first = true;
  Rat best(0);
  for (const auto& m : enumerate_m_vectors(pd.type, r1)) {
    Rat v = sigma_value_generic<Rat>(pd.type.n, m, w.r, r1, frac);
    if (first || v < best) {
      best = v;
      first = false;
    }
  }
  if (first) throw Error("BadProfile", "no valid m-vector for r1=" + std::to_string(r1));
  return best;
}

CodimBounds codim_bounds(const ParData& w) {
  CodimBounds b;
  bool first = true;
  for (int r1 = 1; r1 < w.r; ++r1) {
    Rat base = Rat(static_cast<long>(r1) * (w.r - r1)) * (w.g - 1);
    Rat sharp = base;
    for (const auto& [label, pd] : w.points) sharp += sigma_min(w, label, r1);
    Rat coarse = base + Rat(static_cast<long>(w.points.size())) / w.k;
    if (first) {
      b.coarse = coarse;
      b.sharp = sharp;
      first = false;
    } else {
      b.coarse = std::min(b.coarse, coarse);
      b.sharp = std::min(b.sharp, sharp);
    }
  }
  if (first) throw Error("BadType", "codim bounds need rank >= 2");
  return b;
}

ParData hecke_transform(const ParData& w, const std::string& z) {
  auto it = w.points.find(z);
  if (it == w.points.end()) throw Error("BadHeckePoint", "unknown point " + z);
  const auto& pd = it->second;
  if (pd.type.parts() != w.r ||
      !std::all_of(pd.type.n.begin(), pd.type.n.end(), [](int n) { return n == 1; }))
    throw Error("BadHeckePoint", "Hecke transformation needs a full-flag point");
  ParData out = w;
  out.d -= 1;
  const auto& a = pd.weight.a;
  std::vector<long> ap(static_cast<std::size_t>(w.r));
  ap[0] = 0;
  for (int i = 2; i <= w.r - 1; ++i)
    ap[static_cast<std::size_t>(i - 1)] = a[static_cast<std::size_t>(i)] - a[1];
  ap[static_cast<std::size_t>(w.r - 1)] = w.k - a[1];
  out.points[z].weight.a = ap;
  out.validate();
  return out;
}

ParData omega_t_family(int r, const std::vector<std::string>& Iprime, const std::string& z,
                       const Rat& t) {
  if (std::find(Iprime.begin(), Iprime.end(), z) == Iprime.end())
    throw Error("BadT", "distinguished point z must belong to I'");
  const long nI = static_cast<long>(Iprime.size());
  const Rat bound = Rat(1) / (nI * static_cast<long>(r - 1) * r);
  if (!(abs(t) < bound)) throw Error("BadT", "|t| must be < 1/(|I'|(r-1)r)");
  // collect all weight fractions, then pick k as their least common denominator
  QuasiParType full{std::vector<int>(static_cast<std::size_t>(r), 1)};
  QuasiParType hyp{{r - 1, 1}};
  std::map<std::string, std::vector<Rat>> fracs;
  std::map<std::string, QuasiParType> types;
  types["y1"] = hyp;
  fracs["y1"] = {Rat(0), Rat(1, 2)};  // canonical (r-1,1): a = (0, r), k = 2r
  for (const char* lbl : {"z1", "z2"}) {
    types[lbl] = full;
    std::vector<Rat> v;
    for (int i = 1; i <= r; ++i) v.emplace_back(Rat(i - 1, r));  // canonical: a_i = 2(i-1), k = 2r
    fracs[lbl] = v;
  }
  for (const auto& x : Iprime) {
    if (types.count(x)) throw Error("BadT", "label " + x + " collides with a canonical point");
    types[x] = full;
    std::vector<Rat> v;
    for (int i = 1; i <= r; ++i) v.emplace_back(Rat(i - 1) / (nI * static_cast<long>(r - 1) * r));
    if (x == z) v.back() = Rat(1) / (nI * r) + t;
    fracs[x] = v;
  }
  BigInt kk(1);
  for (const auto& [label, v] : fracs)
    for (const auto& f : v) kk = lcm(kk, denominator(f));
  ParData w;
  w.r = r;
  w.d = 0;
  w.g = 0;
  w.k = static_cast<long>(kk);
  for (const auto& [label, ty] : types) {
    ParWeight a;
    for (const auto& f : fracs[label]) {
      Rat scaled = f * w.k;
      a.a.push_back(static_cast<long>(numerator(scaled)));
    }
    w.points[label] = PointDatum{ty, a};
  }
  w.validate();
  return w;
}

std::vector<EpsRat> omega_t_weights_at_z(int r, int nIprime, const EpsRat& t) {
  std::vector<EpsRat> v;
  const long den = static_cast<long>(nIprime) * (r - 1) * r;
  for (int i = 1; i <= r - 1; ++i) v.emplace_back(Rat(i - 1, den));
  v.push_back(EpsRat(Rat(1, static_cast<long>(nIprime) * r)) + t);
  return v;
}

std::string verdict_str(Verdict v) {
  switch (v) {
    case Verdict::Stable: return "stable";
    case Verdict::StrictlySemistable: return "strictly-semistable";
    case Verdict::Unstable: return "unstable";
  }
  return "?";
}

Verdict gps_alpha_semistable(const GPSProfile& p, const Rat& parchi_E, const Rat& r_E) {
  if (p.dimQ_F < 0 || p.dimQ_F > p.dimQ) throw Error("BadProfile", "dim Q^F out of range");
  if (!(p.alpha > 0 && p.alpha <= 1)) throw Error("BadProfile", "alpha must lie in (0,1]");
  Rat mF(0);
  if (p.two_component) {
    const auto& tc = *p.two_component;
    mF = (p.r_F - tc.r1) * tc.sum_top_weights_I1 / tc.k +
         (p.r_F - tc.r2) * tc.sum_top_weights_I2 / tc.k;
  }
  Rat lhs = p.parchi_F + mF - Rat(p.dimQ_F) * p.alpha;
  Rat rhs = p.r_F * (parchi_E - Rat(p.dimQ) * p.alpha) / r_E;
  if (lhs < rhs) return Verdict::Stable;
  if (lhs == rhs) return Verdict::StrictlySemistable;
  return Verdict::Unstable;
}

std::pair<Rat, Rat> n_j_omega(const ParData& w, const std::set<std::string>& I1, long c1, long c2) {
  Rat l = ell(w);
  Rat s1(0), s2(0);
  for (const auto& [label, pd] : w.points) {
    Rat acc(0);
    long ri = 0;
    for (std::size_t i = 0; i + 1 < pd.type.n.size(); ++i) {
      ri += pd.type.n[i];
      acc += Rat(pd.weight.a[i + 1] - pd.weight.a[i]) * ri;
    }
    (I1.count(label) ? s1 : s2) += acc;
  }
  Rat n1 = (Rat(w.r) * c1 / (c1 + c2) * l + s1) / w.k;
  Rat n2 = (Rat(w.r) * c2 / (c1 + c2) * l + s2) / w.k;
  return {n1, n2};
}

ChiRangeReport chi_range_check(const Rat& n1, const Rat& n2, const Rat& chi1, const Rat& chi2,
                               int r, const Rat& alpha, int dimQ_E1, int dimQ_E2) {
  ChiRangeReport rep;
  rep.coarse_ok = n1 <= chi1 && chi1 <= n1 + r && n2 <= chi2 && chi2 <= n2 + r;
  rep.sharp_ok = n1 + (Rat(r) - dimQ_E2) * alpha <= chi1 && chi1 <= n1 + Rat(dimQ_E1) * alpha &&
                 n2 + (Rat(r) - dimQ_E1) * alpha <= chi2 && chi2 <= n2 + Rat(dimQ_E2) * alpha;
  return rep;
}

}  // namespace frobsplit
