#include "frobsplit/field.hpp"

namespace frobsplit {

bool is_prime_u64(fp_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (fp_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

PrimeField::PrimeField(fp_t p) : p_(p) {
  if (!is_prime_u64(p)) throw Error("NotPrime", "modulus " + std::to_string(p) + " is not prime");
  if (p >= (fp_t(1) << 61)) throw Error("ModulusTooLarge", "p must be < 2^61");
}

fp_t PrimeField::inv(fp_t a) const {
  if (a == 0) throw Error("ZeroInverse", "inverse of 0 in F_" + std::to_string(p_));
  // extended Euclid on (a, p)
  long long t = 0, newt = 1;
  long long r = static_cast<long long>(p_), newr = static_cast<long long>(a % p_);
  while (newr != 0) {
    long long q = r / newr;
    long long tmp = t - q * newt;
    t = newt;
    newt = tmp;
    tmp = r - q * newr;
    r = newr;
    newr = tmp;
  }
  if (t < 0) t += static_cast<long long>(p_);
  return static_cast<fp_t>(t);
}

fp_t PrimeField::pow(fp_t a, std::uint64_t e) const noexcept {
  fp_t base = a % p_, acc = 1;
  while (e) {
    if (e & 1) acc = mul(acc, base);
    base = mul(base, base);
    e >>= 1;
  }
  return acc;
}

}  // namespace frobsplit
