#include "frobsplit/repdims.hpp"

#include "frobsplit/error.hpp"

namespace frobsplit {

BigInt weyl_dim(const Partition& lambda, int n) {
  if (static_cast<int>(lambda.size()) > n)
    throw Error("BadType", "partition has more parts than the GL-rank");
  for (std::size_t i = 1; i < lambda.size(); ++i)
    if (lambda[i] > lambda[i - 1]) throw Error("BadType", "partition parts must weakly decrease");
  std::vector<long> l(lambda);
  l.resize(static_cast<std::size_t>(n), 0);
  BigInt num = 1, den = 1;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      num *= l[static_cast<std::size_t>(i)] - l[static_cast<std::size_t>(j)] + (j - i);
      den *= j - i;
    }
  return num / den;  // exact: the hook-content quotient is integral
}

BigInt grass_sections_dim(int r, int m) {
  Partition lambda(static_cast<std::size_t>(r), m);
  return weyl_dim(lambda, 2 * r);
}

std::vector<Partition> partitions_in_box(int rank, int m) {
  std::vector<Partition> out;
  Partition cur(static_cast<std::size_t>(rank), 0);
  auto rec = [&](auto&& self, int i, long hi) -> void {
    if (i == rank) {
      out.push_back(cur);
      return;
    }
    for (long v = 0; v <= hi; ++v) {
      cur[static_cast<std::size_t>(i)] = v;
      self(self, i + 1, v);
    }
    cur[static_cast<std::size_t>(i)] = 0;
  };
  rec(rec, 0, m);
  return out;
}

bool decomposition_identity(int r, int m) {
  BigInt lhs = grass_sections_dim(r, m);
  BigInt rhs = 0;
  for (const auto& mu : partitions_in_box(r, m)) {
    Partition nu(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i)
      nu[static_cast<std::size_t>(i)] = m - mu[static_cast<std::size_t>(r - 1 - i)];
    rhs += weyl_dim(mu, r) * weyl_dim(nu, r);
  }
  return lhs == rhs;
}

bool dominant_in_C(const Partition& lambda, long p, int r) {
  long l1 = lambda.empty() ? 0 : lambda.front();
  long lr = static_cast<int>(lambda.size()) < r ? 0 : lambda.back();
  return l1 - lr <= p - r + 1;
}

}  // namespace frobsplit
