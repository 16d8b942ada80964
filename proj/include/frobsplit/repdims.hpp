#ifndef FROBSPLIT_REPDIMS_HPP
#define FROBSPLIT_REPDIMS_HPP

#include <vector>

#include "frobsplit/rat.hpp"

namespace frobsplit {

// weakly decreasing nonnegative parts, padded to the GL-rank by callers
using Partition = std::vector<long>;

// Weyl dimension formula for GL_n: prod_{i<j} (l_i - l_j + j - i)/(j - i)
BigInt weyl_dim(const Partition& lambda, int n);

// dim H^0(Grass_r(V1 + V2), det(Q)^m) = weyl_dim((m^r, 0^r), 2r)
BigInt grass_sections_dim(int r, int m);

// checks grass_sections_dim(r, m) = sum_mu weyl_dim(mu, r) * weyl_dim(nu, r)
// over partitions mu in the m-box, nu = (m - mu_r, ..., m - mu_1)
bool decomposition_identity(int r, int m);

// lambda(h_0) = lambda_1 - lambda_r <= p - r + 1
bool dominant_in_C(const Partition& lambda, long p, int r);

// all partitions with at most `rank` parts, each part <= m
std::vector<Partition> partitions_in_box(int rank, int m);

}  // namespace frobsplit

#endif
