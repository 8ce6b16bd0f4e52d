#pragma once

#include <gmpxx.h>

#include "etaq/qseries.hpp"

namespace etaq {

// Weighted k-regular partition counting c_{k,r1,r2}(n): parts divisible by k
// come in (r2 - r1) colors, all other parts in r2 colors. Generating function
// prod_{n>=1} (1 - q^(k n))^(r1) / (1 - q^n)^(r2).
struct PartitionSpec {
  int64_t k = 2;
  int64_t r1 = 1;
  int64_t r2 = 1;
};

// Counts c(0), c(1), ... as an integer-graded series of `precision` terms.
template <class Ring>
Series<Ring> c_series(const PartitionSpec& spec, int64_t precision, Ring ring);

// k-regular partition counts b_k(n) = c_{k,1,1}(n).
template <class Ring>
Series<Ring> bk_series(int64_t k, int64_t precision, Ring ring);

// Exhaustive enumeration over colored multisets; independent of the series
// machinery, kept as the reference oracle. Requires r2 >= r1.
mpz_class brute_force_count(const PartitionSpec& spec, int64_t n);

extern template Series<ModRing> c_series<ModRing>(const PartitionSpec&,
                                                  int64_t, ModRing);
extern template Series<IntRing> c_series<IntRing>(const PartitionSpec&,
                                                  int64_t, IntRing);
extern template Series<ModRing> bk_series<ModRing>(int64_t, int64_t, ModRing);
extern template Series<IntRing> bk_series<IntRing>(int64_t, int64_t, IntRing);

}  // namespace etaq
