#include "frobsplit/stab01.hpp"

#include <algorithm>
#include <functional>

namespace frobsplit {

namespace {

bool same_point(const P1Point& a, const P1Point& b) {
  if (a.at_infinity != b.at_infinity) return false;
  return a.at_infinity || a.t == b.t;
}

}  // namespace

Subspace FlagConfig::flag_subspace(const std::string& label, int j) const {
  if (j < 0 || j > r) throw Error("BadConfig", "flag index out of range");
  if (j == 0) return Subspace::full(f, r);
  if (label == "y1") {
    if (j == 1) return ell_y1;
    if (j == 2) return Subspace(f, r);
    throw Error("BadConfig", "y1 carries a length-one flag");
  }
  auto it = full_flags.find(label);
  if (it == full_flags.end()) throw Error("BadConfig", "no flag at " + label);
  if (j == r) return Subspace(f, r);
  std::vector<FpVec> gens;
  for (int c = 0; c < r - j; ++c) gens.push_back(it->second.col(c));
  return Subspace::span_rows(f, gens);
}

void FlagConfig::validate() const {
  if (r < 2) throw Error("BadConfig", "rank must be at least 2");
  if (ell_y1.ambient() != r || ell_y1.dim() != 1)
    throw Error("BadConfig", "y1 flag datum must be a line in k^r");
  for (const auto& [label, m] : full_flags) {
    if (m.rows() != r || m.cols() != r || m.det() == 0)
      throw Error("BadConfig", "flag matrix at " + label + " must be invertible");
    if (!at.count(label)) throw Error("BadConfig", "missing coordinate for " + label);
  }
  if (!at.count("y1") || !at.count("z1") || !at.count("z2"))
    throw Error("BadConfig", "configuration needs points y1, z1, z2");
  std::vector<std::string> labels;
  for (const auto& [l, p] : at) labels.push_back(l);
  for (std::size_t i = 0; i < labels.size(); ++i)
    for (std::size_t k = i + 1; k < labels.size(); ++k)
      if (same_point(at.at(labels[i]), at.at(labels[k])))
        throw Error("BadConfig", "marked points must be pairwise distinct");
}

GenericityReport genericity_check_512(const FlagConfig& cfg) {
  cfg.validate();
  const int r = cfg.r;
  GenericityReport rep;
  FpVec ell = cfg.ell_y1.basis_vector(0);
  for (int i = 1; i <= r; ++i) {
    Subspace s = cfg.flag_subspace("z1", r - i + 1).sum(cfg.flag_subspace("z2", i));
    if (s.contains(ell)) {
      rep.witness = "y1 line lies in E_{z1," + std::to_string(r - i + 1) + "} + E_{z2," +
                    std::to_string(i) + "} (i=" + std::to_string(i) + ")";
      return rep;
    }
  }
  for (int i = 1; i <= r - 1; ++i) {
    Subspace s = cfg.flag_subspace("z1", r - i).intersect(cfg.flag_subspace("z2", i));
    if (s.dim() != 0) {
      rep.witness = "E_{z1," + std::to_string(r - i) + "} meets E_{z2," + std::to_string(i) +
                    "} (i=" + std::to_string(i) + ")";
      return rep;
    }
  }
  rep.ok = true;
  return rep;
}

namespace {

fp_t eval_at(const PrimeField& f, const FpVec& a, const FpVec& b, const P1Point& x, int row) {
  // value of (a + b t) at x, one coordinate; at infinity the value is b
  if (x.at_infinity) return b[static_cast<std::size_t>(row)];
  return f.add(a[static_cast<std::size_t>(row)], f.mul(b[static_cast<std::size_t>(row)], x.t));
}

// one row of the membership condition "u(x) lies in S" for each normal of S
std::vector<FpVec> membership_rows(const PrimeField& f, const Subspace& S, const P1Point& x,
                                   int r) {
  std::vector<FpVec> rows;
  for (const auto& n : S.basis().nullspace()) {
    FpVec row(static_cast<std::size_t>(2 * r), 0);
    for (int c = 0; c < r; ++c) {
      if (x.at_infinity) {
        row[static_cast<std::size_t>(r + c)] = n[static_cast<std::size_t>(c)];
      } else {
        row[static_cast<std::size_t>(c)] = n[static_cast<std::size_t>(c)];
        row[static_cast<std::size_t>(r + c)] = f.mul(n[static_cast<std::size_t>(c)], x.t);
      }
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

SpecialLoci special_loci(const FlagConfig& cfg) {
  auto gen = genericity_check_512(cfg);
  if (!gen.ok) throw Error("BadConfig", "configuration fails (5.12): " + gen.witness);
  if (!cfg.at.count("z")) throw Error("BadConfig", "special loci need the extra point z");
  const int r = cfg.r;
  const PrimeField& f = cfg.f;
  SpecialLoci out(f, r);
  // L_i = E_{z1, r-i} n E_{z2, i-1}
  for (int i = 1; i <= r; ++i) {
    Subspace L = cfg.flag_subspace("z1", r - i).intersect(cfg.flag_subspace("z2", i - 1));
    if (L.dim() != 1) throw Error("BadConfig", "L_" + std::to_string(i) + " is not a line");
    out.L.push_back(L);
  }
  // H_i = y1-line + sum_{j != i, i+1} L_j
  for (int i = 1; i <= r - 1; ++i) {
    Subspace h = cfg.ell_y1;
    for (int j = 1; j <= r; ++j)
      if (j != i && j != i + 1) h = h.sum(out.L[static_cast<std::size_t>(j - 1)]);
    if (h.dim() != r - 1) throw Error("BadConfig", "dim H_i != r-1");
    out.H.push_back(h);
  }
  // H_z = W' + u(z): W' is the constant block, u the pinned degree-one section
  Subspace Wp = cfg.flag_subspace("z1", 1).intersect(cfg.flag_subspace("z2", 1));
  if (Wp.dim() != r - 2) throw Error("BadConfig", "dim W' != r-2");
  std::vector<FpVec> rows;
  for (const auto& rw : membership_rows(f, cfg.flag_subspace("z1", 1), cfg.at.at("z1"), r))
    rows.push_back(rw);
  for (const auto& rw : membership_rows(f, cfg.flag_subspace("z2", 1), cfg.at.at("z2"), r))
    rows.push_back(rw);
  // u(y1) must land in W' + ell_y1 so that the image contains the y1 flag line
  for (const auto& rw : membership_rows(f, Wp.sum(cfg.ell_y1), cfg.at.at("y1"), r))
    rows.push_back(rw);
  auto kernel = FpMat::from_rows(f, rows).nullspace();
  const P1Point& z = cfg.at.at("z");
  Subspace hz(f, r);
  std::vector<Subspace> candidates;
  for (const auto& sol : kernel) {
    FpVec a(sol.begin(), sol.begin() + r), b(sol.begin() + r, sol.end());
    FpVec uz(static_cast<std::size_t>(r));
    for (int c = 0; c < r; ++c) uz[static_cast<std::size_t>(c)] = eval_at(f, a, b, z, c);
    if (Wp.contains(uz)) continue;  // trivial direction
    Subspace cand = Wp.sum(Subspace::span_rows(f, {uz}));
    if (hz.dim() == 0) hz = cand;
    candidates.push_back(cand);
  }
  if (hz.dim() != r - 1) throw Error("BadConfig", "dim H_z != r-1");
  out.hz_unique = std::all_of(candidates.begin(), candidates.end(),
                              [&](const Subspace& c) { return c == hz; });
  out.Hz = hz;
  return out;
}

namespace {

// the intersection profile m_i(x) of a subspace with the flag chain at x
std::vector<int> m_profile_at(const FlagConfig& cfg, const PointDatum& pd,
                              const std::string& label, const Subspace& U) {
  const int parts = pd.type.parts();
  std::vector<int> m(static_cast<std::size_t>(parts), 0);
  int prev = U.dim();  // dim(U n K_0) = dim U
  for (int i = 1; i <= parts; ++i) {
    int cur;
    if (i == parts) {
      cur = 0;
    } else {
      // K_i = ker(E -> Q_i) has dimension r - r_i
      int ri = 0;
      for (int t = 0; t < i; ++t) ri += pd.type.n[static_cast<std::size_t>(t)];
      Subspace Ki = cfg.flag_subspace(label, label == "y1" ? i : ri);
      cur = U.intersect(Ki).dim();
    }
    m[static_cast<std::size_t>(i - 1)] = prev - cur;
    prev = cur;
  }
  return m;
}

// all subspaces of F_q^r of the given dimension, as canonical RREF rows
void enumerate_subspaces(const PrimeField& f, int r, int dim,
                         const std::function<void(const std::vector<FpVec>&)>& visit) {
  // choose pivot columns, then run over the free entries
  std::vector<int> cur;
  auto choose = [&](auto&& self, int start) -> void {
    if (static_cast<int>(cur.size()) == dim) {
      // fill free entries: entries (i, c) with c > cur[i], c not a pivot
      std::vector<std::pair<int, int>> free_pos;
      for (int i = 0; i < dim; ++i)
        for (int c = cur[static_cast<std::size_t>(i)] + 1; c < r; ++c)
          if (std::find(cur.begin(), cur.end(), c) == cur.end()) free_pos.emplace_back(i, c);
      std::vector<FpVec> rows(static_cast<std::size_t>(dim),
                              FpVec(static_cast<std::size_t>(r), 0));
      for (int i = 0; i < dim; ++i)
        rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(cur[static_cast<std::size_t>(i)])] = 1;
      std::uint64_t total = 1;
      for (std::size_t k = 0; k < free_pos.size(); ++k) total *= f.p();
      for (std::uint64_t code = 0; code < total; ++code) {
        std::uint64_t c2 = code;
        for (const auto& [i, c] : free_pos) {
          rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)] = c2 % f.p();
          c2 /= f.p();
        }
        visit(rows);
      }
      return;
    }
    for (int c = start; c < r; ++c) {
      cur.push_back(c);
      self(self, c + 1);
      cur.pop_back();
    }
  };
  choose(choose, 0);
}

std::uint64_t subspace_count(fp_t q, int r, int d) {
  // Gaussian binomial [r choose d]_q
  auto qpow = [&](int e) {
    std::uint64_t v = 1;
    for (int i = 0; i < e; ++i) v *= q;
    return v;
  };
  std::uint64_t num = 1, den = 1;
  for (int i = 0; i < d; ++i) {
    num *= qpow(r - i) - 1;
    den *= qpow(d - i) - 1;
  }
  return num / den;
}

}  // namespace

ParData omega_c0(const FlagConfig& cfg, long d) {
  std::map<std::string, QuasiParType> types;
  QuasiParType full{std::vector<int>(static_cast<std::size_t>(cfg.r), 1)};
  for (const auto& [label, p] : cfg.at) {
    if (label == "y1")
      types[label] = QuasiParType{{cfg.r - 1, 1}};
    else
      types[label] = full;
  }
  return canonical_weight(types, cfg.r, d, 0);
}

StabilityReport subspace_destabilizer_search(const FlagConfig& cfg, const ParData& w) {
  cfg.validate();
  const PrimeField& f = cfg.f;
  const int r = cfg.r;
  Rat parchiE = par_chi(w);
  StabilityReport rep;
  Rat best_gap(-1);
  auto consider = [&](const std::vector<FpVec>& rows) {
    Subspace U = Subspace::span_rows(f, rows);
    const int dim = U.dim();
    if (dim < 1 || dim > r - 1) return;
    SubsheafProfile prof;
    prof.r1 = dim;
    prof.deg = 0;
    for (const auto& [label, pd] : w.points) prof.m[label] = m_profile_at(cfg, pd, label, U);
    Rat chiF = par_chi(w, prof);
    Rat bound = parchiE * dim / r;
    Rat gap = chiF - bound;
    if (gap >= 0 && gap > best_gap) {
      best_gap = gap;
      DestabWitness wit{rows, 0, dim, chiF, bound};
      rep.witness = wit;
      rep.verdict = gap > 0 ? Verdict::Unstable : Verdict::StrictlySemistable;
    }
  };
  std::uint64_t total = 0;
  for (int dim = 1; dim <= r - 1; ++dim) total += subspace_count(f.p(), r, dim);
  if (total <= 2'000'000) {
    for (int dim = 1; dim <= r - 1; ++dim) enumerate_subspaces(f, r, dim, consider);
  } else {
    // flag-adapted fallback: spans of subsets of the common refinement basis
    // augmented by the y1 line realize every intersection profile
    std::vector<FpVec> gens;
    for (int j = 1; j <= r; ++j) {
      Subspace L = cfg.flag_subspace("z1", r - j).intersect(cfg.flag_subspace("z2", j - 1));
      for (int i = 0; i < L.dim(); ++i) gens.push_back(L.basis_vector(i));
    }
    gens.push_back(cfg.ell_y1.basis_vector(0));
    const std::size_t n = gens.size();
    for (std::uint64_t mask = 1; mask < (1ull << n); ++mask) {
      std::vector<FpVec> rows;
      for (std::size_t i = 0; i < n; ++i)
        if (mask & (1ull << i)) rows.push_back(gens[i]);
      consider(rows);
    }
  }
  if (best_gap < 0) rep.verdict = Verdict::Stable;
  return rep;
}

StabilityReport rank2_bruteforce(const FlagConfig& cfg, const ParData& w,
                                 std::optional<long> d_max_opt) {
  cfg.validate();
  if (cfg.r != 2) throw Error("UnsupportedRank", "the brute-force oracle is rank 2 only");
  const PrimeField& f = cfg.f;
  Rat parchiE = par_chi(w);
  // default degree bound from the slope estimate
  long d_max;
  if (d_max_opt) {
    d_max = *d_max_opt;
  } else {
    Rat mass(0);
    for (const auto& [label, pd] : w.points) mass += Rat(pd.weight.a.back(), w.k);
    BigInt num = numerator(mass), den = denominator(mass);
    BigInt ceil = (num + den - 1) / den;
    d_max = static_cast<long>(ceil);
  }
  StabilityReport rep;
  Rat best_gap(-1);
  const fp_t q = f.p();
  for (long d = 0; d <= d_max; ++d) {
    // coefficient vectors of (f(t), g(t)), degree <= d each
    const int ncoef = 2 * static_cast<int>(d + 1);
    std::uint64_t total = 1;
    for (int i = 0; i < ncoef; ++i) total *= q;
    for (std::uint64_t code = 0; code < total; ++code) {
      std::uint64_t c2 = code;
      std::vector<fp_t> fc(static_cast<std::size_t>(d + 1)), gc(static_cast<std::size_t>(d + 1));
      for (long i = 0; i <= d; ++i) {
        fc[static_cast<std::size_t>(i)] = c2 % q;
        c2 /= q;
      }
      for (long i = 0; i <= d; ++i) {
        gc[static_cast<std::size_t>(i)] = c2 % q;
        c2 /= q;
      }
      // saturation: top coefficients not both zero (degree exactly d at infinity)
      if (fc[static_cast<std::size_t>(d)] == 0 && gc[static_cast<std::size_t>(d)] == 0) continue;
      // no common projective zero: gcd(f, g) constant
      {
        std::vector<fp_t> a = fc, b = gc;
        auto deg = [&](const std::vector<fp_t>& v) {
          int dd = -1;
          for (int i = 0; i < static_cast<int>(v.size()); ++i)
            if (v[static_cast<std::size_t>(i)]) dd = i;
          return dd;
        };
        while (true) {
          int da = deg(a), db = deg(b);
          if (da < 0 || db < 0) {
            if (std::max(da, db) > 0) goto next_pair;  // gcd nonconstant
            break;
          }
          if (da < db) std::swap(a, b);
          da = deg(a);
          db = deg(b);
          fp_t factor = f.mul(a[static_cast<std::size_t>(da)], f.inv(b[static_cast<std::size_t>(db)]));
          for (int i = 0; i <= db; ++i)
            a[static_cast<std::size_t>(da - db + i)] = f.sub(
                a[static_cast<std::size_t>(da - db + i)], f.mul(factor, b[static_cast<std::size_t>(i)]));
          if (deg(a) < 0) {
            if (db > 0) goto next_pair;
            break;
          }
        }
      }
      {
        // induced parabolic data: the fiber line at each marked point
        SubsheafProfile prof;
        prof.r1 = 1;
        prof.deg = -d;
        for (const auto& [label, pd] : w.points) {
          const P1Point& x = cfg.at.at(label);
          FpVec fiber(2);
          if (x.at_infinity) {
            fiber[0] = fc[static_cast<std::size_t>(d)];
            fiber[1] = gc[static_cast<std::size_t>(d)];
          } else {
            fp_t fx = 0, gx = 0, tp = 1;
            for (long i = 0; i <= d; ++i) {
              fx = f.add(fx, f.mul(fc[static_cast<std::size_t>(i)], tp));
              gx = f.add(gx, f.mul(gc[static_cast<std::size_t>(i)], tp));
              tp = f.mul(tp, x.t);
            }
            fiber[0] = fx;
            fiber[1] = gx;
          }
          Subspace line = Subspace::span_rows(f, {fiber});
          std::vector<int> m(pd.type.n.size(), 0);
          // rank 2: K_1 is the flag line; m_2 = dim(line n K_1)
          Subspace K1 = cfg.flag_subspace(label, 1);
          int inner = line.intersect(K1).dim();
          m[0] = 1 - inner;
          m[1] = inner;
          prof.m[label] = m;
        }
        Rat chiF = par_chi(w, prof);
        Rat bound = parchiE / 2;
        Rat gap = chiF - bound;
        if (gap >= 0 && gap > best_gap) {
          best_gap = gap;
          DestabWitness wit{{FpVec(fc), FpVec(gc)}, -d, 1, chiF, bound};
          rep.witness = wit;
          rep.verdict = gap > 0 ? Verdict::Unstable : Verdict::StrictlySemistable;
        }
      }
    next_pair:;
    }
  }
  if (best_gap < 0) rep.verdict = Verdict::Stable;
  return rep;
}

std::optional<FpVec> orbit_canonical_form(const FlagConfig& cfg) {
  auto gen = genericity_check_512(cfg);
  if (!gen.ok) return std::nullopt;
  const int r = cfg.r;
  const PrimeField& f = cfg.f;
  // basis w_j spanning E_{z1, r-j} n E_{z2, j-1}
  std::vector<FpVec> wcols;
  for (int j = 1; j <= r; ++j) {
    Subspace L = cfg.flag_subspace("z1", r - j).intersect(cfg.flag_subspace("z2", j - 1));
    if (L.dim() != 1) return std::nullopt;
    wcols.push_back(L.basis_vector(0));
  }
  FpMat W = FpMat::from_cols(f, wcols);
  auto Winv = W.inverse();
  if (!Winv) return std::nullopt;
  FpVec v = Winv->apply(cfg.ell_y1.basis_vector(0));
  // torus scaling normalizes every nonzero entry to 1; genericity ((5.12)(a))
  // in fact forces all entries nonzero
  FpVec form(static_cast<std::size_t>(r), 0);
  for (int i = 0; i < r; ++i) form[static_cast<std::size_t>(i)] = v[static_cast<std::size_t>(i)] ? 1 : 0;
  return form;
}

FlagConfig random_config(int r, const PrimeField& f, Rng& rng, bool with_z) {
  FlagConfig cfg(f);
  cfg.r = r;
  // distinct points: y1, z1, z2 (and z) with z2 at infinity
  cfg.at["z1"] = P1Point{false, 0};
  cfg.at["z2"] = P1Point{true, 0};
  cfg.at["y1"] = P1Point{false, 1};
  if (with_z) cfg.at["z"] = P1Point{false, 2 % f.p()};
  FpVec ell(static_cast<std::size_t>(r));
  do {
    for (auto& c : ell) c = rng.field_element(f);
  } while (std::all_of(ell.begin(), ell.end(), [](fp_t c) { return c == 0; }));
  cfg.ell_y1 = Subspace::span_rows(f, {ell});
  cfg.full_flags.emplace("z1", random_invertible(f, r, rng));
  cfg.full_flags.emplace("z2", random_invertible(f, r, rng));
  if (with_z) cfg.full_flags.emplace("z", random_invertible(f, r, rng));
  return cfg;
}

FlagConfig transformed(const FlagConfig& cfg, const FpMat& g) {
  FlagConfig out(cfg.f);
  out.r = cfg.r;
  out.at = cfg.at;
  out.ell_y1 = Subspace::span_rows(cfg.f, {g.apply(cfg.ell_y1.basis_vector(0))});
  for (const auto& [label, m] : cfg.full_flags) out.full_flags.emplace(label, g.mul(m));
  return out;
}

}  // namespace frobsplit
