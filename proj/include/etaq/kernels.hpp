#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <vector>

// Raw coefficient kernels behind the series layer. The production entry
// points parallelize over the output index with OpenMP; every output
// coefficient is computed start to finish by a single thread, so results are
// bit-identical for any thread count. kernels::ref holds the serial
// implementations used as test oracles and benchmark baselines.

namespace etaq::kernels {

struct Config {
  // Outputs below this count skip the OpenMP dispatch.
  std::size_t parallel_cutoff = 4096;
};
Config& config();

struct TermU64 {
  std::size_t idx;
  std::uint64_t val;
};
struct TermMpz {
  std::size_t idx;
  mpz_class val;
};

// c[n] = sum_{i+j=n} a[i]*b[j] (mod m) for 0 <= n < nc.
void mul_dense_mod(const std::uint64_t* a, std::size_t na,
                   const std::uint64_t* b, std::size_t nb, std::uint64_t* c,
                   std::size_t nc, std::uint64_t m);

// Same product with the left factor given by its nonzero terms (ascending idx).
void mul_sparse_dense_mod(const TermU64* t, std::size_t nt,
                          const std::uint64_t* b, std::size_t nb,
                          std::uint64_t* c, std::size_t nc, std::uint64_t m);

void mul_dense_int(const mpz_class* a, std::size_t na, const mpz_class* b,
                   std::size_t nb, mpz_class* c, std::size_t nc);

void mul_sparse_dense_int(const TermMpz* t, std::size_t nt, const mpz_class* b,
                          std::size_t nb, mpz_class* c, std::size_t nc);

// Solves den * b = num coefficient by coefficient:
//   b[n] = lead_inv * (num[n] - sum_t t.val * b[n - t.idx])
// where terms are the nonzero entries of den at idx >= 1 (ascending) and
// lead_inv is the inverse of den[0]. num == nullptr stands for the series 1.
// The recurrence is inherently sequential; no parallel variant exists.
void divide_mod(const std::uint64_t* num, std::size_t nnum, const TermU64* terms,
                std::size_t nt, std::uint64_t lead_inv, std::uint64_t* b,
                std::size_t nb, std::uint64_t m);

// Integer variant; lead_inv must be 1 or -1.
void divide_int(const mpz_class* num, std::size_t nnum, const TermMpz* terms,
                std::size_t nt, const mpz_class& lead_inv, mpz_class* b,
                std::size_t nb);

namespace ref {
void mul_dense_mod(const std::uint64_t* a, std::size_t na,
                   const std::uint64_t* b, std::size_t nb, std::uint64_t* c,
                   std::size_t nc, std::uint64_t m);
void mul_sparse_dense_mod(const TermU64* t, std::size_t nt,
                          const std::uint64_t* b, std::size_t nb,
                          std::uint64_t* c, std::size_t nc, std::uint64_t m);
void mul_dense_int(const mpz_class* a, std::size_t na, const mpz_class* b,
                   std::size_t nb, mpz_class* c, std::size_t nc);
void mul_sparse_dense_int(const TermMpz* t, std::size_t nt, const mpz_class* b,
                          std::size_t nb, mpz_class* c, std::size_t nc);
}  // namespace ref

}  // namespace etaq::kernels
