#ifndef FROBSPLIT_RAT_HPP
#define FROBSPLIT_RAT_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <vector>

namespace frobsplit {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline std::string rat_str(const Rat& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

// Polynomial in a formal infinitesimal eps with exact rational coefficients,
// compared lexicographically with the constant term first. Models the
// paper-style quantities q0 + q1*t for t an infinitesimal.
class EpsRat {
 public:
  EpsRat() = default;
  EpsRat(const Rat& c) : c_{c} { trim(); }  // NOLINT: implicit by design
  EpsRat(long v) : c_{Rat(v)} { trim(); }   // NOLINT

  static EpsRat eps() {
    EpsRat e;
    e.c_ = {Rat(0), Rat(1)};
    return e;
  }

  const std::vector<Rat>& coeffs() const { return c_; }
  Rat coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rat(0); }
  bool is_zero() const { return c_.empty(); }

  EpsRat operator+(const EpsRat& o) const;
  EpsRat operator-(const EpsRat& o) const;
  EpsRat operator*(const EpsRat& o) const;
  EpsRat operator-() const;

  // lexicographic sign: sign of the lowest-order nonzero coefficient
  int sign() const;

  bool operator==(const EpsRat& o) const { return c_ == o.c_; }
  bool operator!=(const EpsRat& o) const { return !(*this == o); }
  bool operator<(const EpsRat& o) const { return (*this - o).sign() < 0; }
  bool operator<=(const EpsRat& o) const { return (*this - o).sign() <= 0; }
  bool operator>(const EpsRat& o) const { return o < *this; }
  bool operator>=(const EpsRat& o) const { return o <= *this; }

  std::string str() const;

 private:
  std::vector<Rat> c_;  // c_[i] multiplies eps^i; trailing zeros trimmed
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
};

}  // namespace frobsplit

#endif
