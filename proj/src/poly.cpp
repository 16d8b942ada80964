#include "frobsplit/poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace frobsplit {

namespace {

constexpr std::uint64_t kDenseCellLimit = 1ull << 23;  // ~8.4M cells

void check_shapes(const Poly& a, const Poly& b) {
  if (a.nvars() != b.nvars())
    throw Error("ShapeMismatch", "operands have " + std::to_string(a.nvars()) + " and " +
                                     std::to_string(b.nvars()) + " variables");
  if (a.field() != b.field()) throw Error("ShapeMismatch", "operands live over different fields");
}

// Dense mixed-radix box over per-variable caps.
struct DenseBox {
  const PrimeField* f;
  std::vector<std::uint32_t> caps;
  std::vector<std::uint64_t> stride;
  std::vector<fp_t> cells;

  DenseBox(const PrimeField& field, const ExpCap& cap) : f(&field), caps(cap.caps) {
    stride.resize(caps.size());
    std::uint64_t s = 1;
    for (std::size_t i = 0; i < caps.size(); ++i) {
      stride[i] = s;
      s *= caps[i] + 1;
    }
    cells.assign(s, 0);
  }

  std::uint64_t index(const Monomial& m) const {
    std::uint64_t idx = 0;
    for (std::size_t i = 0; i < m.size(); ++i) idx += stride[i] * m[i];
    return idx;
  }
};

void dense_load(DenseBox& box, const Poly& p) {
  for (const auto& [m, c] : p.terms())
    if (ExpCap{box.caps}.admits(m)) box.cells[box.index(m)] = c;
}

Poly dense_unload(const DenseBox& box, const PrimeField& f, int nvars) {
  Poly out(f, nvars);
  Monomial m(static_cast<std::size_t>(nvars), 0);
  for (std::uint64_t idx = 0; idx < box.cells.size(); ++idx) {
    if (box.cells[idx] != 0) out.add_term(m, box.cells[idx]);
    // odometer
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] < box.caps[i]) {
        ++m[i];
        break;
      }
      m[i] = 0;
    }
  }
  return out;
}

// acc := acc * b inside the capped box, with b given as a term list
void dense_mul_terms(DenseBox& acc, const std::vector<std::pair<Monomial, fp_t>>& b) {
  const PrimeField& f = *acc.f;
  std::vector<fp_t> out(acc.cells.size(), 0);
  const std::size_t nv = acc.caps.size();
  for (const auto& [bm, bc] : b) {
    bool fits = true;
    for (std::size_t i = 0; i < nv; ++i)
      if (bm[i] > acc.caps[i]) fits = false;
    if (!fits) continue;
    const std::uint64_t shift = acc.index(bm);
    // iterate the sub-box of exponents e with e + bm <= caps
    Monomial e(nv, 0);
    std::vector<std::uint32_t> hi(nv);
    for (std::size_t i = 0; i < nv; ++i) hi[i] = acc.caps[i] - bm[i];
    std::uint64_t idx = 0;
    for (;;) {
      fp_t a = acc.cells[idx];
      if (a != 0) {
        fp_t& o = out[idx + shift];
        o = f.add(o, f.mul(a, bc));
      }
      std::size_t i = 0;
      for (; i < nv; ++i) {
        if (e[i] < hi[i]) {
          ++e[i];
          idx += acc.stride[i];
          break;
        }
        idx -= acc.stride[i] * e[i];
        e[i] = 0;
      }
      if (i == nv) break;
    }
  }
  acc.cells.swap(out);
}

std::vector<std::pair<Monomial, fp_t>> term_list(const Poly& p) {
  std::vector<std::pair<Monomial, fp_t>> v;
  v.reserve(p.term_count());
  for (const auto& t : p.terms()) v.push_back(t);
  return v;
}

std::vector<std::pair<Monomial, fp_t>> dense_term_list(const DenseBox& box, int nvars) {
  std::vector<std::pair<Monomial, fp_t>> v;
  Monomial m(static_cast<std::size_t>(nvars), 0);
  for (std::uint64_t idx = 0; idx < box.cells.size(); ++idx) {
    if (box.cells[idx] != 0) v.emplace_back(m, box.cells[idx]);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] < box.caps[i]) {
        ++m[i];
        break;
      }
      m[i] = 0;
    }
  }
  return v;
}

Poly sparse_mul(const Poly& a, const Poly& b, const ExpCap* cap) {
  const PrimeField& f = a.field();
  Poly out(f, a.nvars());
  const auto& small = a.term_count() <= b.term_count() ? a : b;
  const auto& big = a.term_count() <= b.term_count() ? b : a;
  Monomial m(static_cast<std::size_t>(a.nvars()));
  for (const auto& [ma, ca] : small.terms()) {
    for (const auto& [mb, cb] : big.terms()) {
      bool ok = true;
      for (std::size_t i = 0; i < m.size(); ++i) {
        m[i] = ma[i] + mb[i];
        if (cap && m[i] > cap->caps[i]) {
          ok = false;
          break;
        }
      }
      if (ok) out.add_term(m, f.mul(ca, cb));
    }
  }
  return out;
}

}  // namespace

Poly Poly::constant(const PrimeField& f, int nvars, fp_t c) {
  Poly p(f, nvars);
  p.add_term(Monomial(static_cast<std::size_t>(nvars), 0), c % f.p());
  return p;
}

Poly Poly::variable(const PrimeField& f, int nvars, int i) {
  if (i < 0 || i >= nvars) throw Error("ShapeMismatch", "variable index out of range");
  Poly p(f, nvars);
  Monomial m(static_cast<std::size_t>(nvars), 0);
  m[static_cast<std::size_t>(i)] = 1;
  p.add_term(m, 1);
  return p;
}

bool Poly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  const auto& m = terms_.begin()->first;
  return std::all_of(m.begin(), m.end(), [](std::uint32_t e) { return e == 0; });
}

fp_t Poly::constant_value() const {
  Monomial z(static_cast<std::size_t>(nvars_), 0);
  auto it = terms_.find(z);
  return it == terms_.end() ? 0 : it->second;
}

std::int64_t Poly::total_degree() const {
  if (terms_.empty()) return -1;
  const auto& m = terms_.rbegin()->first;  // graded order: last term has max degree
  std::int64_t d = 0;
  for (auto e : m) d += e;
  return d;
}

std::int64_t Poly::degree_in(int var) const {
  std::int64_t d = -1;
  for (const auto& [m, c] : terms_) d = std::max<std::int64_t>(d, m[static_cast<std::size_t>(var)]);
  return d;
}

void Poly::add_term(const Monomial& m, fp_t c) {
  if (static_cast<int>(m.size()) != nvars_)
    throw Error("ShapeMismatch", "monomial length does not match variable count");
  c %= field_.p();
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second = field_.add(it->second, c);
    if (it->second == 0) terms_.erase(it);
  }
}

Poly Poly::operator+(const Poly& o) const {
  check_shapes(*this, o);
  Poly out = *this;
  for (const auto& [m, c] : o.terms_) out.add_term(m, c);
  return out;
}

Poly Poly::operator-(const Poly& o) const {
  check_shapes(*this, o);
  Poly out = *this;
  for (const auto& [m, c] : o.terms_) out.add_term(m, field_.neg(c));
  return out;
}

Poly Poly::operator-() const {
  Poly out(field_, nvars_);
  for (const auto& [m, c] : terms_) out.add_term(m, field_.neg(c));
  return out;
}

Poly Poly::operator*(const Poly& o) const { return poly_mul(*this, o, nullptr); }

Poly Poly::scaled(fp_t c) const {
  Poly out(field_, nvars_);
  c %= field_.p();
  if (c == 0) return out;
  for (const auto& [m, k] : terms_) out.add_term(m, field_.mul(k, c));
  return out;
}

fp_t Poly::eval(const std::vector<fp_t>& point) const {
  if (static_cast<int>(point.size()) != nvars_)
    throw Error("ShapeMismatch", "evaluation point has wrong dimension");
  fp_t acc = 0;
  for (const auto& [m, c] : terms_) {
    fp_t v = c;
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i]) v = field_.mul(v, field_.pow(point[i], m[i]));
    acc = field_.add(acc, v);
  }
  return acc;
}

Poly poly_mul(const Poly& a, const Poly& b, const ExpCap* cap) {
  check_shapes(a, b);
  if (a.is_zero() || b.is_zero()) return Poly(a.field(), a.nvars());
  if (cap && static_cast<int>(cap->caps.size()) != a.nvars())
    throw Error("ShapeMismatch", "cap length does not match variable count");
  if (cap) {
    const std::uint64_t cells = cap->cells(kDenseCellLimit);
    const std::uint64_t work =
        static_cast<std::uint64_t>(a.term_count()) * static_cast<std::uint64_t>(b.term_count());
    if (cells <= kDenseCellLimit && work > cells / 2) {
      DenseBox box(a.field(), *cap);
      dense_load(box, a);
      dense_mul_terms(box, term_list(b));
      return dense_unload(box, a.field(), a.nvars());
    }
  }
  return sparse_mul(a, b, cap);
}

namespace {

// Shared power kernel; returns the dense accumulator when the box is small
// enough, otherwise computes sparsely.
Poly pow_truncated_impl(const Poly& f, std::uint64_t e, const ExpCap& cap) {
  const PrimeField& field = f.field();
  if (static_cast<int>(cap.caps.size()) != f.nvars())
    throw Error("ShapeMismatch", "cap length does not match variable count");
  if (e == 0) return Poly::constant(field, f.nvars(), 1);
  const std::uint64_t cells = cap.cells(kDenseCellLimit);
  if (cells <= kDenseCellLimit) {
    DenseBox acc(field, cap);
    acc.cells[0] = 1;
    auto base = term_list(f);
    // prune base terms outside the box once
    std::erase_if(base, [&](const auto& t) { return !cap.admits(t.first); });
    if (base.size() <= 64 && e <= 4096) {
      for (std::uint64_t i = 0; i < e; ++i) dense_mul_terms(acc, base);
    } else {
      DenseBox sq(field, cap);
      dense_load(sq, f);
      bool first = true;
      std::uint64_t k = e;
      while (k) {
        if (k & 1) {
          if (first) {
            acc.cells = sq.cells;
            first = false;
          } else {
            dense_mul_terms(acc, dense_term_list(sq, f.nvars()));
          }
        }
        k >>= 1;
        if (k) dense_mul_terms(sq, dense_term_list(sq, f.nvars()));
      }
    }
    return dense_unload(acc, field, f.nvars());
  }
  // sparse square-and-multiply, truncating each intermediate product
  Poly acc = Poly::constant(field, f.nvars(), 1);
  Poly sq = f;
  std::uint64_t k = e;
  while (k) {
    if (k & 1) acc = poly_mul(acc, sq, &cap);
    k >>= 1;
    if (k) sq = poly_mul(sq, sq, &cap);
  }
  return acc;
}

}  // namespace

Poly poly_pow_truncated(const Poly& f, std::uint64_t e, const ExpCap& cap) {
  return pow_truncated_impl(f, e, cap);
}

Poly poly_pow(const Poly& f, std::uint64_t e) {
  Poly acc = Poly::constant(f.field(), f.nvars(), 1);
  Poly sq = f;
  while (e) {
    if (e & 1) acc = acc * sq;
    e >>= 1;
    if (e) sq = sq * sq;
  }
  return acc;
}

fp_t poly_pow_truncated_coeff(const Poly& f, std::uint64_t e, const ExpCap& cap,
                              const Monomial& target) {
  Poly p = pow_truncated_impl(f, e, cap);
  return coeff(p, target);
}

fp_t poly_product_pow_truncated_coeff(const std::vector<Poly>& factors, std::uint64_t e,
                                      const ExpCap& cap, const Monomial& target) {
  if (factors.empty()) throw Error("ShapeMismatch", "empty factor list");
  const PrimeField& field = factors.front().field();
  const int nvars = factors.front().nvars();
  for (const auto& f : factors) check_shapes(factors.front(), f);
  const std::uint64_t cells = cap.cells(kDenseCellLimit);
  if (cells <= kDenseCellLimit && e <= 4096) {
    DenseBox acc(field, cap);
    acc.cells[0] = 1;
    std::vector<std::vector<std::pair<Monomial, fp_t>>> lists;
    for (const auto& f : factors) {
      auto l = term_list(f);
      std::erase_if(l, [&](const auto& t) { return !cap.admits(t.first); });
      lists.push_back(std::move(l));
    }
    for (std::uint64_t i = 0; i < e; ++i)
      for (const auto& l : lists) dense_mul_terms(acc, l);
    return acc.cells[acc.index(target)];
  }
  Poly prod = Poly::constant(field, nvars, 1);
  for (const auto& f : factors) prod = poly_mul(prod, f, &cap);
  return poly_pow_truncated_coeff(prod, e, cap, target);
}

fp_t coeff(const Poly& f, const Monomial& m) {
  if (static_cast<int>(m.size()) != f.nvars())
    throw Error("ShapeMismatch", "monomial length does not match variable count");
  auto it = f.terms().find(m);
  return it == f.terms().end() ? 0 : it->second;
}

AffineMap AffineMap::identity(const PrimeField&, int nvars) {
  AffineMap m;
  m.src_nvars = m.dst_nvars = nvars;
  m.lin.assign(static_cast<std::size_t>(nvars), std::vector<fp_t>(static_cast<std::size_t>(nvars), 0));
  m.cst.assign(static_cast<std::size_t>(nvars), 0);
  for (int i = 0; i < nvars; ++i) m.lin[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
  return m;
}

Poly substitute_affine(const Poly& f, const AffineMap& map) {
  if (map.src_nvars != f.nvars() || static_cast<int>(map.lin.size()) != map.src_nvars ||
      static_cast<int>(map.cst.size()) != map.src_nvars)
    throw Error("ShapeMismatch", "substitution does not match the source ring");
  const PrimeField& field = f.field();
  // images of the source variables
  std::vector<Poly> img;
  img.reserve(static_cast<std::size_t>(map.src_nvars));
  for (int i = 0; i < map.src_nvars; ++i) {
    Poly g(field, map.dst_nvars);
    if (static_cast<int>(map.lin[static_cast<std::size_t>(i)].size()) != map.dst_nvars)
      throw Error("ShapeMismatch", "substitution row has wrong length");
    Monomial m(static_cast<std::size_t>(map.dst_nvars), 0);
    g.add_term(m, map.cst[static_cast<std::size_t>(i)]);
    for (int j = 0; j < map.dst_nvars; ++j) {
      Monomial v(static_cast<std::size_t>(map.dst_nvars), 0);
      v[static_cast<std::size_t>(j)] = 1;
      g.add_term(v, map.lin[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
    }
    img.push_back(g);
  }
  Poly out(field, map.dst_nvars);
  for (const auto& [m, c] : f.terms()) {
    Poly t = Poly::constant(field, map.dst_nvars, c);
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i]) t = t * poly_pow(img[i], m[i]);
    out = out + t;
  }
  return out;
}

Poly restrict_to_zero(const Poly& f, const std::vector<int>& vars) {
  Poly out(f.field(), f.nvars());
  for (const auto& [m, c] : f.terms()) {
    bool keep = true;
    for (int v : vars)
      if (m[static_cast<std::size_t>(v)] != 0) {
        keep = false;
        break;
      }
    if (keep) out.add_term(m, c);
  }
  return out;
}

Poly drop_vars(const Poly& f, const std::vector<int>& vars) {
  std::vector<bool> dropped(static_cast<std::size_t>(f.nvars()), false);
  for (int v : vars) dropped[static_cast<std::size_t>(v)] = true;
  std::vector<int> newpos(static_cast<std::size_t>(f.nvars()), -1);
  int k = 0;
  for (int i = 0; i < f.nvars(); ++i)
    if (!dropped[static_cast<std::size_t>(i)]) newpos[static_cast<std::size_t>(i)] = k++;
  Poly out(f.field(), k);
  for (const auto& [m, c] : f.terms()) {
    Monomial nm(static_cast<std::size_t>(k), 0);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (dropped[i]) throw Error("ShapeMismatch", "dropped variable occurs in polynomial");
      nm[static_cast<std::size_t>(newpos[i])] = m[i];
    }
    out.add_term(nm, c);
  }
  return out;
}

std::int64_t vanishing_order(const Poly& f, const std::vector<int>& coords) {
  if (f.is_zero()) return kOrderInfinity;
  std::int64_t best = kOrderInfinity;
  for (const auto& [m, c] : f.terms()) {
    std::int64_t s = 0;
    for (int v : coords) s += m[static_cast<std::size_t>(v)];
    best = std::min(best, s);
  }
  return best;
}

std::optional<Poly> exact_divide(const Poly& f, const Poly& g) {
  check_shapes(f, g);
  if (g.is_zero()) throw Error("ZeroInverse", "division by the zero polynomial");
  const PrimeField& field = f.field();
  Poly rem = f, quo(field, f.nvars());
  const auto& glt = *g.terms().rbegin();  // leading term in graded lex
  const fp_t glc_inv = field.inv(glt.second);
  while (!rem.is_zero()) {
    const auto& rlt = *rem.terms().rbegin();
    Monomial q(rlt.first.size());
    for (std::size_t i = 0; i < q.size(); ++i) {
      if (rlt.first[i] < glt.first[i]) return std::nullopt;
      q[i] = rlt.first[i] - glt.first[i];
    }
    fp_t qc = field.mul(rlt.second, glc_inv);
    Poly qt(field, f.nvars());
    qt.add_term(q, qc);
    quo = quo + qt;
    rem = rem - poly_mul(qt, g, nullptr);
  }
  return quo;
}

bool divides(const Poly& g, const Poly& f) { return exact_divide(f, g).has_value(); }

namespace {

struct Token {
  enum Kind { Num, Var, Mul, Pow, Plus, Minus, End } kind;
  unsigned long long num = 0;
  int var = 0;  // 1-based
};

class Lexer {
 public:
  explicit Lexer(const std::string& s) : s_(s) {}
  Token next() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (i_ >= s_.size()) return {Token::End};
    char c = s_[i_];
    if (c == '+') return ++i_, Token{Token::Plus};
    if (c == '-') return ++i_, Token{Token::Minus};
    if (c == '*') return ++i_, Token{Token::Mul};
    if (c == '^') return ++i_, Token{Token::Pow};
    if (std::isdigit(static_cast<unsigned char>(c))) {
      unsigned long long v = 0;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
        v = v * 10 + static_cast<unsigned long long>(s_[i_] - '0');
        if (v > (1ull << 62)) throw Error("ParseError", "integer literal too large");
        ++i_;
      }
      Token t{Token::Num};
      t.num = v;
      return t;
    }
    if (c == 'x') {
      ++i_;
      if (i_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[i_])))
        throw Error("ParseError", "expected variable index after 'x'");
      int v = 0;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
        v = v * 10 + (s_[i_] - '0');
        if (v > 1'000'000) throw Error("ParseError", "variable index too large");
        ++i_;
      }
      Token t{Token::Var};
      t.var = v;
      return t;
    }
    throw Error("ParseError", std::string("unexpected character '") + c + "'");
  }

 private:
  const std::string& s_;
  std::size_t i_ = 0;
};

}  // namespace

Poly parse_poly(const PrimeField& f, int nvars, const std::string& text) {
  Lexer lex(text);
  Poly out(f, nvars);
  Token t = lex.next();
  if (t.kind == Token::End) throw Error("ParseError", "empty polynomial text");
  bool neg = false;
  // optional leading sign
  if (t.kind == Token::Plus || t.kind == Token::Minus) {
    neg = t.kind == Token::Minus;
    t = lex.next();
  }
  for (;;) {
    // one term: '*'-joined numbers and variable powers
    fp_t c = 1;
    Monomial m(static_cast<std::size_t>(nvars), 0);
    bool expect_item = true;
    while (expect_item) {
      if (t.kind == Token::Num) {
        c = f.mul(c, t.num % f.p());
        t = lex.next();
      } else if (t.kind == Token::Var) {
        if (t.var < 1 || t.var > nvars)
          throw Error("ParseError", "variable x" + std::to_string(t.var) + " out of range (nvars=" +
                                        std::to_string(nvars) + ")");
        int vi = t.var - 1;
        t = lex.next();
        unsigned long long e = 1;
        if (t.kind == Token::Pow) {
          t = lex.next();
          if (t.kind != Token::Num) throw Error("ParseError", "expected exponent after '^'");
          e = t.num;
          if (e > 0xffffffffull) throw Error("ParseError", "exponent too large");
          t = lex.next();
        }
        m[static_cast<std::size_t>(vi)] += static_cast<std::uint32_t>(e);
      } else {
        throw Error("ParseError", "expected a coefficient or variable");
      }
      if (t.kind == Token::Mul) {
        t = lex.next();
        expect_item = true;
      } else {
        expect_item = false;
      }
    }
    out.add_term(m, neg ? f.neg(c) : c);
    if (t.kind == Token::End) break;
    if (t.kind == Token::Plus) neg = false;
    else if (t.kind == Token::Minus) neg = true;
    else throw Error("ParseError", "expected '+' or '-' between terms");
    t = lex.next();
    if (t.kind == Token::End) throw Error("ParseError", "dangling sign at end of input");
  }
  return out;
}

std::string to_string(const Poly& f) {
  if (f.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  // canonical output: descending graded-lex
  for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
    if (!first) os << " + ";
    first = false;
    const auto& [m, c] = *it;
    bool trivial = std::all_of(m.begin(), m.end(), [](std::uint32_t e) { return e == 0; });
    bool wrote = false;
    if (c != 1 || trivial) {
      os << c;
      wrote = true;
    }
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (wrote) os << "*";
      os << "x" << (i + 1);
      if (m[i] > 1) os << "^" << m[i];
      wrote = true;
    }
  }
  return os.str();
}

}  // namespace frobsplit
