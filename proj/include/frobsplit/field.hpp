#ifndef FROBSPLIT_FIELD_HPP
#define FROBSPLIT_FIELD_HPP

#include <cstdint>

#include "frobsplit/error.hpp"

namespace frobsplit {

using fp_t = std::uint64_t;

// Arithmetic in F_p with elements stored as canonical residues in [0, p).
// p must be an odd prime below 2^61 so that products fit in 128 bits.
class PrimeField {
 public:
  explicit PrimeField(fp_t p);

  fp_t p() const noexcept { return p_; }

  fp_t reduce_signed(long long v) const noexcept {
    long long m = v % static_cast<long long>(p_);
    if (m < 0) m += static_cast<long long>(p_);
    return static_cast<fp_t>(m);
  }

  fp_t add(fp_t a, fp_t b) const noexcept {
    fp_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  fp_t sub(fp_t a, fp_t b) const noexcept { return a >= b ? a - b : a + p_ - b; }
  fp_t neg(fp_t a) const noexcept { return a == 0 ? 0 : p_ - a; }
  fp_t mul(fp_t a, fp_t b) const noexcept {
    return static_cast<fp_t>(static_cast<unsigned __int128>(a) * b % p_);
  }
  fp_t inv(fp_t a) const;
  fp_t pow(fp_t a, std::uint64_t e) const noexcept;

  bool operator==(const PrimeField& o) const noexcept { return p_ == o.p_; }
  bool operator!=(const PrimeField& o) const noexcept { return p_ != o.p_; }

 private:
  fp_t p_;
};

bool is_prime_u64(fp_t n);

}  // namespace frobsplit

#endif
