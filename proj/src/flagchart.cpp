#include "frobsplit/flagchart.hpp"

#include <algorithm>

namespace frobsplit {

namespace {

// columns spanning a subspace, as r-vectors
std::vector<FpVec> subspace_cols(const Subspace& s) {
  std::vector<FpVec> v;
  for (int i = 0; i < s.dim(); ++i) v.push_back(s.basis_vector(i));
  return v;
}

FpVec add_vecs(const PrimeField& f, const FpVec& a, const FpVec& b) {
  FpVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = f.add(a[i], b[i]);
  return r;
}

}  // namespace

FlagChart::FlagChart(int r, const PrimeField& f, FpMat center)
    : r_(r), f_(f), nvars_(r * (r - 1) / 2), center_(std::move(center)) {
  if (r < 2) throw Error("BadType", "flag chart needs rank >= 2");
  if (center_.rows() != r || center_.cols() != r || center_.det() == 0)
    throw Error("DegenerateConfig", "chart center must be an invertible r x r matrix");
}

int FlagChart::var_index(int i, int j) const {
  if (!(0 <= j && j < i && i < r_)) throw Error("ShapeMismatch", "bad frame entry");
  // column j holds variables for rows j+1..r-1
  int off = 0;
  for (int c = 0; c < j; ++c) off += r_ - 1 - c;
  return off + (i - j - 1);
}

PolyMat FlagChart::unipotent_frame() const {
  PolyMat u(f_, nvars_, r_, r_);
  for (int i = 0; i < r_; ++i) u.at(i, i) = Poly::constant(f_, nvars_, 1);
  for (int j = 0; j < r_; ++j)
    for (int i = j + 1; i < r_; ++i)
      u.at(i, j) = Poly::variable(f_, nvars_, var_index(i, j));
  return u;
}

PolyMat FlagChart::translated_frame() const {
  return PolyMat::from_constant(center_, nvars_).mul(unipotent_frame());
}

SubspaceConfig standard_config(int r, const PrimeField& f) {
  if (r < 2) throw Error("BadType", "configuration needs rank >= 2");
  if (f.p() <= 2) throw Error("DegenerateConfig", "p must exceed 2");
  SubspaceConfig cfg(f);
  cfg.r = r;
  auto e = [&](int i) {
    FpVec v(static_cast<std::size_t>(r), 0);
    v[static_cast<std::size_t>(i)] = 1;
    return v;
  };
  for (int i = 0; i < r; ++i) cfg.L.push_back(e(i));
  cfg.Lgen.assign(static_cast<std::size_t>(r), 1);
  // H = ker(e_1^* + e_r^*) = span(e_2..e_{r-1}, e_1 - e_r)
  cfg.H_normal.assign(static_cast<std::size_t>(r), 0);
  cfg.H_normal.front() = 1;
  cfg.H_normal.back() = 1;
  {
    std::vector<FpVec> gens;
    for (int i = 1; i + 1 < r; ++i) gens.push_back(e(i));
    FpVec d = e(0);
    d.back() = f.neg(1);
    gens.push_back(d);
    cfg.H = Subspace::span_rows(f, gens);
  }
  // sanity: W = sum L_i; line containments and exclusions
  {
    Subspace W = Subspace::span_rows(f, cfg.L);
    if (W.dim() != r) throw Error("DegenerateConfig", "lines L_i do not span");
    if (cfg.H.contains(cfg.Lgen) || cfg.H.contains(cfg.L.front()) || cfg.H.contains(cfg.L.back()))
      throw Error("DegenerateConfig", "L, L_1, L_r must avoid H");
    for (int i = 1; i + 1 < r; ++i)
      if (!cfg.H.contains(cfg.L[static_cast<std::size_t>(i)]))
        throw Error("DegenerateConfig", "L_i must lie inside H for 1 < i < r");
  }
  // H_i = L + sum_{j not in {i, i+1}} L_j, 1 <= i <= r-1
  for (int i = 1; i <= r - 1; ++i) {
    std::vector<FpVec> gens{cfg.Lgen};
    for (int j = 1; j <= r; ++j)
      if (j != i && j != i + 1) gens.push_back(cfg.L[static_cast<std::size_t>(j - 1)]);
    Subspace h = Subspace::span_rows(f, gens);
    if (h.dim() != r - 1) throw Error("DegenerateConfig", "dim H_i != r-1");
    // normal covector: the one-dimensional kernel of basis^T x = 0
    auto ns = h.basis().nullspace();
    if (ns.size() != 1) throw Error("DegenerateConfig", "H_i has no unique normal");
    cfg.Hi.push_back(h);
    cfg.Hi_normal.push_back(ns.front());
  }
  // W_i and S_i families; W_r is the full space
  cfg.W.assign(static_cast<std::size_t>(r), Subspace(f, r));
  cfg.S.assign(static_cast<std::size_t>(r - 1), Subspace(f, r));
  std::vector<bool> w_set(static_cast<std::size_t>(r), false), s_set(static_cast<std::size_t>(r - 1), false);
  auto span_of = [&](const std::vector<int>& idx1, bool with_L) {
    std::vector<FpVec> gens;
    if (with_L) gens.push_back(cfg.Lgen);
    for (int j : idx1) gens.push_back(cfg.L[static_cast<std::size_t>(j - 1)]);
    if (gens.empty()) return Subspace(f, r);
    return Subspace::span_rows(f, gens);
  };
  for (int i = 1; 2 * i <= r; ++i) {
    std::vector<int> in1, in2, out1, out2;
    for (int j = i + 1; j <= r + 1 - i; ++j) in1.push_back(j);
    for (int j = i + 1; j <= r - i; ++j) in2.push_back(j);
    for (int j = 1; j <= r; ++j) {
      if (j < i || j > r + 1 - i) out1.push_back(j);
      if (j < i + 1 || j > r + 1 - i) out2.push_back(j);
    }
    auto put_w = [&](int idx, const std::vector<int>& members) {
      if (idx < 1 || idx > r) return;
      cfg.W[static_cast<std::size_t>(idx - 1)] = span_of(members, false);
      w_set[static_cast<std::size_t>(idx - 1)] = true;
    };
    auto put_s = [&](int idx, const std::vector<int>& members) {
      if (idx < 1 || idx > r - 1) return;
      cfg.S[static_cast<std::size_t>(idx - 1)] = span_of(members, true);
      s_set[static_cast<std::size_t>(idx - 1)] = true;
    };
    put_w(r + 1 - 2 * i, in1);
    put_w(r - 2 * i, in2);
    put_s(2 * i - 1, out1);
    put_s(2 * i, out2);
  }
  cfg.W[static_cast<std::size_t>(r - 1)] = Subspace::full(f, r);
  w_set[static_cast<std::size_t>(r - 1)] = true;
  for (int i = 1; i <= r; ++i)
    if (!w_set[static_cast<std::size_t>(i - 1)] || cfg.W[static_cast<std::size_t>(i - 1)].dim() != i)
      throw Error("DegenerateConfig", "dim W_" + std::to_string(i) + " != " + std::to_string(i));
  for (int i = 1; i <= r - 1; ++i)
    if (!s_set[static_cast<std::size_t>(i - 1)] || cfg.S[static_cast<std::size_t>(i - 1)].dim() != i)
      throw Error("DegenerateConfig", "dim S_" + std::to_string(i) + " != " + std::to_string(i));
  for (int i = 1; i < r; ++i)
    if (!cfg.W[static_cast<std::size_t>(i)].contains(cfg.W[static_cast<std::size_t>(i - 1)]))
      throw Error("DegenerateConfig", "W flag is not nested");
  return cfg;
}

namespace {

// determinant detecting W_i (or S_i) + V_{r-i} = W at the chart origin
bool center_is_generic(const FpMat& g, const SubspaceConfig& cfg) {
  const PrimeField& f = g.field();
  const int r = cfg.r;
  for (int i = 1; i <= r - 1; ++i) {
    for (const auto* fam : {&cfg.W, &cfg.S}) {
      const Subspace& s = (*fam)[static_cast<std::size_t>(i - 1)];
      std::vector<FpVec> cols = subspace_cols(s);
      for (int c = 0; c < r - i; ++c) cols.push_back(g.col(c));
      if (FpMat::from_cols(f, cols).det() == 0) return false;
    }
  }
  return true;
}

// Vandermonde-type frame with columns (node_a^1, ..., node_a^r); the plain
// node^0 column is avoided since it coincides with the all-ones line of the
// standard configuration.
FpMat vandermonde(const PrimeField& f, int r, fp_t shift) {
  FpMat g(f, r, r);
  for (int a = 0; a < r; ++a) {
    fp_t node = f.add(static_cast<fp_t>(a), shift);
    for (int b = 0; b < r; ++b) g.at(a, b) = f.pow(node, static_cast<std::uint64_t>(b + 1));
  }
  return g;
}

FpMat find_center(int r, const PrimeField& f, const SubspaceConfig& cfg) {
  FpMat id = FpMat::identity(f, r);
  if (center_is_generic(id, cfg)) return id;
  for (fp_t shift = 1; shift < f.p(); ++shift) {
    FpMat g = vandermonde(f, r, shift);
    if (g.det() != 0 && center_is_generic(g, cfg)) return g;
  }
  throw Error("DegenerateConfig", "no general-position chart center found (p too small?)");
}

}  // namespace

FlagChart big_cell_chart(int r, const PrimeField& f) {
  return big_cell_chart_for(r, f, standard_config(r, f));
}

FlagChart big_cell_chart_for(int r, const PrimeField& f, const SubspaceConfig& cfg) {
  return FlagChart(r, f, find_center(r, f, cfg));
}

std::vector<DivisorSection> divisor_sections(const FlagChart& chart, const SubspaceConfig& cfg) {
  const PrimeField& f = chart.field();
  const int r = chart.r();
  PolyMat frame = chart.translated_frame();
  std::vector<DivisorSection> out;
  auto make = [&](const Subspace& s, int i, const std::string& label) {
    PolyMat m(f, chart.nvars(), r, r);
    int c = 0;
    for (const auto& v : subspace_cols(s)) {
      for (int row = 0; row < r; ++row)
        m.at(row, c) = Poly::constant(f, chart.nvars(), v[static_cast<std::size_t>(row)]);
      ++c;
    }
    for (int fc = 0; fc < r - i; ++fc, ++c)
      for (int row = 0; row < r; ++row) m.at(row, c) = frame.at(row, fc);
    DivisorSection d{m.det(), label, r - i, {}};
    for (int col = 0; col < r - 1; ++col)
      for (int row = col + 1; row < r; ++row)
        if (d.poly.degree_in(chart.var_index(row, col)) > 0) {
          d.column_support.push_back(col + 1);
          break;
        }
    if (d.poly.is_zero()) throw Error("DegenerateConfig", "divisor section " + label + " vanishes");
    out.push_back(std::move(d));
  };
  for (int i = 1; i <= r - 1; ++i)
    make(cfg.W[static_cast<std::size_t>(i - 1)], i, "d" + std::to_string(i));
  for (int i = 1; i <= r - 1; ++i)
    make(cfg.S[static_cast<std::size_t>(i - 1)], i, "e" + std::to_string(i));
  return out;
}

SigmaReport sigma_lemma59(const FlagChart& chart, const SubspaceConfig& cfg) {
  auto sections = divisor_sections(chart, cfg);
  Poly sigma = Poly::constant(chart.field(), chart.nvars(), 1);
  std::vector<SigmaFactorReport> factors;
  std::vector<int> per_class(static_cast<std::size_t>(chart.r()), 0);
  bool ok = true;
  for (const auto& s : sections) {
    sigma = sigma * s.poly;
    factors.push_back(SigmaFactorReport{s.label, s.flag_index, s.poly.total_degree(), s.column_support});
    per_class[static_cast<std::size_t>(s.flag_index - 1)] += 1;
    for (int c : s.column_support)
      if (c > s.flag_index) ok = false;
  }
  for (int c = 1; c <= chart.r() - 1; ++c)
    if (per_class[static_cast<std::size_t>(c - 1)] != 2) ok = false;
  return SigmaReport{std::move(sigma), std::move(sections), std::move(factors), ok};
}

namespace {

// adapted substitution sending the affine subspace {eq_j = 0} to a
// coordinate subspace; returns the pivot variable list
struct Adapted {
  AffineMap map;
  std::vector<int> pivots;
  bool in_chart = true;
};

// hyperplane locus {V_{r-1} = ker(normal)} in the chart
Adapted adapt_hyperplane_locus(const FlagChart& chart, const FpVec& normal) {
  const PrimeField& f = chart.field();
  const int r = chart.r();
  Adapted ad;
  ad.map = AffineMap::identity(f, chart.nvars());
  // psi = normal^T * center; column j of U contributes eq_j = psi_j + sum_{l>j} psi_l x_{lj}
  FpVec psi(static_cast<std::size_t>(r), 0);
  for (int c = 0; c < r; ++c) {
    fp_t acc = 0;
    for (int row = 0; row < r; ++row)
      acc = f.add(acc, f.mul(normal[static_cast<std::size_t>(row)], chart.center().at(row, c)));
    psi[static_cast<std::size_t>(c)] = acc;
  }
  for (int j = 0; j < r - 1; ++j) {
    int pivot = -1;
    for (int l = r - 1; l > j; --l)
      if (psi[static_cast<std::size_t>(l)] != 0) {
        pivot = l;
        break;
      }
    if (pivot < 0) {
      if (psi[static_cast<std::size_t>(j)] != 0) {
        ad.in_chart = false;  // equation is a nonzero constant
        return ad;
      }
      continue;  // equation holds identically in this column
    }
    // x_{pivot, j} = (y_{pivot, j} - psi_j - sum_{l != pivot} psi_l y_{l j}) / psi_pivot
    int pv = chart.var_index(pivot, j);
    fp_t inv = f.inv(psi[static_cast<std::size_t>(pivot)]);
    auto& row = ad.map.lin[static_cast<std::size_t>(pv)];
    std::fill(row.begin(), row.end(), 0);
    row[static_cast<std::size_t>(pv)] = inv;
    for (int l = j + 1; l < r; ++l) {
      if (l == pivot || psi[static_cast<std::size_t>(l)] == 0) continue;
      row[static_cast<std::size_t>(chart.var_index(l, j))] =
          f.neg(f.mul(inv, psi[static_cast<std::size_t>(l)]));
    }
    ad.map.cst[static_cast<std::size_t>(pv)] = f.neg(f.mul(inv, psi[static_cast<std::size_t>(j)]));
    ad.pivots.push_back(pv);
  }
  return ad;
}

}  // namespace

std::map<std::string, OrderResult> vanishing_orders_at_special_loci(const Poly& sigma,
                                                                    const FlagChart& chart,
                                                                    const SubspaceConfig& cfg) {
  const PrimeField& f = chart.field();
  const int r = chart.r();
  std::map<std::string, OrderResult> out;
  auto inv_center = chart.center().inverse();
  if (!inv_center) throw Error("DegenerateConfig", "chart center not invertible");
  // X_i = {V_1 = L_i}: translate the point x_{j1} = c_j/c_1 to the origin of
  // the first column
  for (int i = 1; i <= r; ++i) {
    OrderResult res;
    FpVec c = inv_center->apply(cfg.L[static_cast<std::size_t>(i - 1)]);
    if (c.front() == 0) {
      res.in_chart = false;
    } else {
      res.in_chart = true;
      fp_t inv = f.inv(c.front());
      AffineMap map = AffineMap::identity(f, chart.nvars());
      std::vector<int> coords;
      for (int row = 1; row < r; ++row) {
        int v = chart.var_index(row, 0);
        map.cst[static_cast<std::size_t>(v)] = f.mul(c[static_cast<std::size_t>(row)], inv);
        coords.push_back(v);
      }
      res.order = vanishing_order(substitute_affine(sigma, map), coords);
    }
    out["X" + std::to_string(i)] = res;
  }
  // Y_i = {V_{r-1} = H_i}, Y_r = {V_{r-1} = H}
  for (int i = 1; i <= r; ++i) {
    const FpVec& normal =
        i == r ? cfg.H_normal : cfg.Hi_normal[static_cast<std::size_t>(i - 1)];
    Adapted ad = adapt_hyperplane_locus(chart, normal);
    OrderResult res;
    if (!ad.in_chart || ad.pivots.empty()) {
      res.in_chart = false;
    } else {
      res.in_chart = true;
      res.order = vanishing_order(substitute_affine(sigma, ad.map), ad.pivots);
    }
    out["Y" + std::to_string(i)] = res;
  }
  return out;
}

DeltaChainReport delta_chain(int r, const PrimeField& f) {
  SubspaceConfig cfg = standard_config(r, f);
  DeltaChainReport rep;
  // adapted basis of the W flag: b_k in W_k \ W_{k-1}
  std::vector<FpVec> b;
  for (int k = 1; k <= r; ++k) {
    const Subspace& wk = cfg.W[static_cast<std::size_t>(k - 1)];
    bool found = false;
    for (int i = 0; i < wk.dim() && !found; ++i) {
      FpVec v = wk.basis_vector(i);
      if (k == 1 || !cfg.W[static_cast<std::size_t>(k - 2)].contains(v)) {
        b.push_back(v);
        found = true;
      }
    }
    if (!found) throw Error("DegenerateConfig", "W flag has no adapted basis");
  }
  // constant e_i values at the W flag point: e_i(w) = det[S_i | W_{r-i}]
  for (int i = 1; i <= r - 1; ++i) {
    std::vector<FpVec> cols = subspace_cols(cfg.S[static_cast<std::size_t>(i - 1)]);
    const auto wcols = subspace_cols(cfg.W[static_cast<std::size_t>(r - i - 1)]);
    cols.insert(cols.end(), wcols.begin(), wcols.end());
    rep.constant_e_values.push_back(FpMat::from_cols(f, cols).det());
  }
  rep.base_nonzero = std::all_of(rep.constant_e_values.begin(), rep.constant_e_values.end(),
                                 [](fp_t v) { return v != 0; });

  for (int k = 1; k <= r; ++k) {
    DeltaLevel lvl;
    lvl.k = k;
    const int nv = k * (k - 1) / 2;
    if (k == 1) {
      fp_t v = 1;
      for (fp_t e : rep.constant_e_values) v = f.mul(v, e);
      lvl.coefficient = f.pow(v, f.p() - 1);
      lvl.splits = v != 0;
      rep.levels.push_back(lvl);
      continue;
    }
    // chart of R_k = Flag(W_k): V_i spanned by the first i columns of
    // B_k * G_k * U(x) with B_k = [b_1..b_k]
    FpMat Bk(f, r, k);
    for (int col = 0; col < k; ++col)
      for (int row = 0; row < r; ++row) Bk.at(row, col) = b[static_cast<std::size_t>(col)][static_cast<std::size_t>(row)];
    // unipotent frame of rank k in the chart variables
    FlagChart sub(k, f, FpMat::identity(f, k));
    // delta_k factored into its defining sections; index 0 is the constant
    // part, index c1_index the C_{k,1} section
    int c1_index = -1;
    auto build_factors = [&](const FpMat& gk) -> std::vector<Poly> {
      PolyMat frame_k = PolyMat::from_constant(gk, nv).mul(sub.unipotent_frame());  // k x k
      PolyMat frame_r = PolyMat::from_constant(Bk, nv).mul(frame_k);                // r x k
      std::vector<Poly> factors;
      fp_t cst = 1;
      for (int i = 1; i <= r - k; ++i)
        cst = f.mul(cst, rep.constant_e_values[static_cast<std::size_t>(i - 1)]);
      factors.push_back(Poly::constant(f, nv, cst));
      // varying e_i factors (i > r-k): V_{r-i} spanned by first r-i columns
      for (int i = r - k + 1; i <= r - 1; ++i) {
        PolyMat m(f, nv, r, r);
        int c = 0;
        for (const auto& v : subspace_cols(cfg.S[static_cast<std::size_t>(i - 1)])) {
          for (int row = 0; row < r; ++row)
            m.at(row, c) = Poly::constant(f, nv, v[static_cast<std::size_t>(row)]);
          ++c;
        }
        for (int fc = 0; fc < r - i; ++fc, ++c)
          for (int row = 0; row < r; ++row) m.at(row, c) = frame_r.at(row, fc);
        factors.push_back(m.det());
      }
      // sections 1_{C_{k,i}}: det_k[W_{k-i} in b-coordinates | V_i], i = 1..k-1
      for (int i = 1; i <= k - 1; ++i) {
        PolyMat m(f, nv, k, k);
        for (int col = 0; col < k - i; ++col) m.at(col, col) = Poly::constant(f, nv, 1);
        for (int fc = 0; fc < i; ++fc)
          for (int row = 0; row < k; ++row) m.at(row, k - i + fc) = frame_k.at(row, fc);
        if (i == 1) c1_index = static_cast<int>(factors.size());
        factors.push_back(m.det());
      }
      return factors;
    };
    // pick G_k so that every factor is nonzero at the chart origin
    FpMat gk = FpMat::identity(f, k);
    auto origin_ok = [&](const FpMat& g) {
      std::vector<fp_t> zero(static_cast<std::size_t>(nv), 0);
      auto factors = build_factors(g);
      return std::all_of(factors.begin(), factors.end(),
                         [&](const Poly& p) { return p.eval(zero) != 0; });
    };
    if (!origin_ok(gk)) {
      bool found = false;
      for (fp_t shift = 1; shift < f.p() && !found; ++shift) {
        FpMat cand = vandermonde(f, k, shift);
        if (cand.det() != 0 && origin_ok(cand)) {
          gk = cand;
          found = true;
        }
      }
      if (!found) throw Error("DegenerateConfig", "no generic center for R_k chart");
    }
    auto factors = build_factors(gk);
    SplitReport sr = splits_by_p_minus_1_factored(factors, nv);
    lvl.coefficient = sr.coefficient;
    lvl.splits = sr.splits;
    // divisor-compatibility identity along C_{k,1} = {V_1 subset W_{k-1}}:
    // delta = tau * c1; in coordinates adapted to {c1 = 0} the split
    // coefficient of tau * y equals that of tau restricted to y = 0
    {
      const Poly& c1 = factors[static_cast<std::size_t>(c1_index)];
      Poly tau_raw = Poly::constant(f, nv, 1);
      for (int fi = 0; fi < static_cast<int>(factors.size()); ++fi)
        if (fi != c1_index) tau_raw = tau_raw * factors[static_cast<std::size_t>(fi)];
      std::optional<Poly> q(tau_raw);
      if (q) {
        // c1 is affine-linear: c1 = cst + sum coeff_v x_v
        Monomial zero(static_cast<std::size_t>(nv), 0);
        int pivot = -1;
        fp_t pc = 0;
        for (int v = nv - 1; v >= 0 && pivot < 0; --v) {
          Monomial m(static_cast<std::size_t>(nv), 0);
          m[static_cast<std::size_t>(v)] = 1;
          fp_t cvar = coeff(c1, m);
          if (cvar != 0) {
            pivot = v;
            pc = cvar;
          }
        }
        if (pivot >= 0) {
          AffineMap map = AffineMap::identity(f, nv);
          fp_t inv = f.inv(pc);
          auto& rowv = map.lin[static_cast<std::size_t>(pivot)];
          std::fill(rowv.begin(), rowv.end(), 0);
          rowv[static_cast<std::size_t>(pivot)] = inv;
          for (int v2 = 0; v2 < nv; ++v2) {
            if (v2 == pivot) continue;
            Monomial m(static_cast<std::size_t>(nv), 0);
            m[static_cast<std::size_t>(v2)] = 1;
            fp_t cv = coeff(c1, m);
            if (cv != 0) rowv[static_cast<std::size_t>(v2)] = f.neg(f.mul(inv, cv));
          }
          map.cst[static_cast<std::size_t>(pivot)] = f.neg(f.mul(inv, coeff(c1, zero)));
          Poly tau = substitute_affine(*q, map);
          lvl.propagation_ok = divisor_propagation_check(tau, {pivot});
        }
      } else {
        lvl.propagation_ok = false;
      }
    }
    rep.levels.push_back(lvl);
  }
  rep.all_split = std::all_of(rep.levels.begin(), rep.levels.end(),
                              [](const DeltaLevel& l) { return l.splits; });
  // consistency with the direct sigma verdict
  FlagChart chart = big_cell_chart_for(r, f, cfg);
  SigmaReport sg = sigma_lemma59(chart, cfg);
  SplitReport direct = splits_by_p_minus_1(SplitCandidate(sg.sigma, chart.nvars()));
  rep.consistent_with_sigma = direct.splits == rep.levels.back().splits;
  return rep;
}

}  // namespace frobsplit
