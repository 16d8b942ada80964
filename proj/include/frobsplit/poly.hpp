#ifndef FROBSPLIT_POLY_HPP
#define FROBSPLIT_POLY_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "frobsplit/field.hpp"

namespace frobsplit {

// Exponent vector of a monomial. Length always equals the owning
// polynomial's variable count.
using Monomial = std::vector<std::uint32_t>;

// Graded lexicographic order: first by total degree, then lex on exponents.
struct GradedLex {
  bool operator()(const Monomial& a, const Monomial& b) const {
    std::uint64_t da = 0, db = 0;
    for (auto e : a) da += e;
    for (auto e : b) db += e;
    if (da != db) return da < db;
    return a < b;
  }
};

// Per-variable exponent caps for truncated arithmetic. Monomials with any
// exponent above its cap are dropped; exponents only grow under
// multiplication, so truncation commutes with products.
struct ExpCap {
  std::vector<std::uint32_t> caps;

  static ExpCap uniform(int nvars, std::uint32_t c) {
    return ExpCap{std::vector<std::uint32_t>(static_cast<std::size_t>(nvars), c)};
  }
  bool admits(const Monomial& m) const {
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i] > caps[i]) return false;
    return true;
  }
  // number of cells of the dense box, saturating at limit+1
  std::uint64_t cells(std::uint64_t limit) const {
    std::uint64_t n = 1;
    for (auto c : caps) {
      n *= (static_cast<std::uint64_t>(c) + 1);
      if (n > limit) return limit + 1;
    }
    return n;
  }
};

// Sparse multivariate polynomial over F_p. Terms are kept in a graded-lex
// ordered map with nonzero canonical coefficients; the zero polynomial is
// the empty map. All operations are pure.
class Poly {
 public:
  using TermMap = std::map<Monomial, fp_t, GradedLex>;

  Poly(const PrimeField& f, int nvars) : field_(f), nvars_(nvars) {}

  static Poly constant(const PrimeField& f, int nvars, fp_t c);
  static Poly variable(const PrimeField& f, int nvars, int i);  // x_{i+1}, 0-based i

  const PrimeField& field() const { return field_; }
  int nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  bool is_constant() const;
  fp_t constant_value() const;  // coeff of the zero monomial

  std::int64_t total_degree() const;  // -1 for the zero polynomial
  std::int64_t degree_in(int var) const;

  void add_term(const Monomial& m, fp_t c);  // accumulate, drop zeros

  bool operator==(const Poly& o) const {
    return nvars_ == o.nvars_ && field_ == o.field_ && terms_ == o.terms_;
  }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator-() const;
  Poly operator*(const Poly& o) const;
  Poly scaled(fp_t c) const;

  fp_t eval(const std::vector<fp_t>& point) const;

 private:
  PrimeField field_;
  int nvars_;
  TermMap terms_;

  friend Poly poly_mul(const Poly&, const Poly&, const ExpCap*);
};

// product; with cap, truncates the result (and may use a dense kernel)
Poly poly_mul(const Poly& a, const Poly& b, const ExpCap* cap = nullptr);

// f^e with truncation applied after every intermediate multiplication
Poly poly_pow_truncated(const Poly& f, std::uint64_t e, const ExpCap& cap);

// plain repeated-squaring power without truncation
Poly poly_pow(const Poly& f, std::uint64_t e);

// single coefficient of f^e under cap, without materializing the result map
fp_t poly_pow_truncated_coeff(const Poly& f, std::uint64_t e, const ExpCap& cap,
                              const Monomial& target);

// single coefficient of (f_1 * ... * f_m)^e under cap, via iterated truncated
// multiplication by the small factors; equal to expanding the product first
fp_t poly_product_pow_truncated_coeff(const std::vector<Poly>& factors, std::uint64_t e,
                                      const ExpCap& cap, const Monomial& target);

fp_t coeff(const Poly& f, const Monomial& m);

// Affine substitution x_i -> sum_j lin[i][j]*y_j + cst[i] into a ring with
// dst_nvars variables.
struct AffineMap {
  int src_nvars = 0;
  int dst_nvars = 0;
  std::vector<std::vector<fp_t>> lin;  // src_nvars rows of dst_nvars coeffs
  std::vector<fp_t> cst;               // src_nvars constants

  static AffineMap identity(const PrimeField& f, int nvars);
};

Poly substitute_affine(const Poly& f, const AffineMap& map);

// restrict f to {x_j = 0 : j in vars}, keeping the ambient variable count
Poly restrict_to_zero(const Poly& f, const std::vector<int>& vars);

// drop the listed variables (which must not occur in f) and renumber the rest
Poly drop_vars(const Poly& f, const std::vector<int>& vars);

inline constexpr std::int64_t kOrderInfinity = INT64_MAX;

// min over terms of the exponent sum on `coords`; +infinity sentinel for 0
std::int64_t vanishing_order(const Poly& f, const std::vector<int>& coords);

// exact division: f / g when the remainder vanishes, std::nullopt otherwise
std::optional<Poly> exact_divide(const Poly& f, const Poly& g);
bool divides(const Poly& g, const Poly& f);

// Text grammar (bit-exact interface): terms joined by '+'/'-'; each term is
// coeff ["*" var ["^" exp] ...] with variables x1..xN; whitespace ignored.
Poly parse_poly(const PrimeField& f, int nvars, const std::string& text);
std::string to_string(const Poly& f);

}  // namespace frobsplit

#endif
