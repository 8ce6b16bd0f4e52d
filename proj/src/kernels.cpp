#include "etaq/kernels.hpp"

#include <algorithm>

namespace etaq::kernels {

Config& config() {
  static Config cfg;
  return cfg;
}

namespace {

// One output coefficient of the dense product. For m < 2^32 every partial
// product fits in 64 bits and the 128-bit accumulator cannot overflow within
// 2^64 terms; larger moduli reduce term by term.
inline std::uint64_t conv_point_mod(const std::uint64_t* a, std::size_t na,
                                    const std::uint64_t* b, std::size_t nb,
                                    std::size_t n, std::uint64_t m) {
  std::size_t lo = n >= nb ? n - nb + 1 : 0;
  std::size_t hi = std::min(n, na - 1);
  if (lo > hi) return 0;
  if (m < (std::uint64_t{1} << 32)) {
    unsigned __int128 acc = 0;
    for (std::size_t i = lo; i <= hi; ++i)
      acc += static_cast<unsigned __int128>(a[i]) * b[n - i];
    return static_cast<std::uint64_t>(acc % m);
  }
  std::uint64_t acc = 0;
  for (std::size_t i = lo; i <= hi; ++i) {
    std::uint64_t t = static_cast<std::uint64_t>(
        static_cast<unsigned __int128>(a[i]) * b[n - i] % m);
    acc += t;
    if (acc >= m) acc -= m;
  }
  return acc;
}

inline std::uint64_t sparse_point_mod(const TermU64* t, std::size_t nt,
                                      const std::uint64_t* b, std::size_t nb,
                                      std::size_t n, std::uint64_t m) {
  if (m < (std::uint64_t{1} << 32)) {
    unsigned __int128 acc = 0;
    for (std::size_t k = 0; k < nt; ++k) {
      if (t[k].idx > n) break;
      std::size_t j = n - t[k].idx;
      if (j < nb) acc += static_cast<unsigned __int128>(t[k].val) * b[j];
    }
    return static_cast<std::uint64_t>(acc % m);
  }
  std::uint64_t acc = 0;
  for (std::size_t k = 0; k < nt; ++k) {
    if (t[k].idx > n) break;
    std::size_t j = n - t[k].idx;
    if (j >= nb) continue;
    std::uint64_t v = static_cast<std::uint64_t>(
        static_cast<unsigned __int128>(t[k].val) * b[j] % m);
    acc += v;
    if (acc >= m) acc -= m;
  }
  return acc;
}

inline void int_point(const mpz_class* a, std::size_t na, const mpz_class* b,
                      std::size_t nb, std::size_t n, mpz_class& out) {
  std::size_t lo = n >= nb ? n - nb + 1 : 0;
  std::size_t hi = std::min(n, na - 1);
  out = 0;
  for (std::size_t i = lo; i <= hi; ++i)
    mpz_addmul(out.get_mpz_t(), a[i].get_mpz_t(), b[n - i].get_mpz_t());
}

inline void int_sparse_point(const TermMpz* t, std::size_t nt,
                             const mpz_class* b, std::size_t nb, std::size_t n,
                             mpz_class& out) {
  out = 0;
  for (std::size_t k = 0; k < nt; ++k) {
    if (t[k].idx > n) break;
    std::size_t j = n - t[k].idx;
    if (j < nb)
      mpz_addmul(out.get_mpz_t(), t[k].val.get_mpz_t(), b[j].get_mpz_t());
  }
}

}  // namespace

void mul_dense_mod(const std::uint64_t* a, std::size_t na,
                   const std::uint64_t* b, std::size_t nb, std::uint64_t* c,
                   std::size_t nc, std::uint64_t m) {
  if (nc < config().parallel_cutoff) {
    for (std::size_t n = 0; n < nc; ++n) c[n] = conv_point_mod(a, na, b, nb, n, m);
    return;
  }
#pragma omp parallel for schedule(static)
  for (std::size_t n = 0; n < nc; ++n) c[n] = conv_point_mod(a, na, b, nb, n, m);
}

void mul_sparse_dense_mod(const TermU64* t, std::size_t nt,
                          const std::uint64_t* b, std::size_t nb,
                          std::uint64_t* c, std::size_t nc, std::uint64_t m) {
  if (nc < config().parallel_cutoff) {
    for (std::size_t n = 0; n < nc; ++n) c[n] = sparse_point_mod(t, nt, b, nb, n, m);
    return;
  }
#pragma omp parallel for schedule(static)
  for (std::size_t n = 0; n < nc; ++n) c[n] = sparse_point_mod(t, nt, b, nb, n, m);
}

void mul_dense_int(const mpz_class* a, std::size_t na, const mpz_class* b,
                   std::size_t nb, mpz_class* c, std::size_t nc) {
  if (nc < config().parallel_cutoff) {
    for (std::size_t n = 0; n < nc; ++n) int_point(a, na, b, nb, n, c[n]);
    return;
  }
#pragma omp parallel for schedule(static)
  for (std::size_t n = 0; n < nc; ++n) int_point(a, na, b, nb, n, c[n]);
}

void mul_sparse_dense_int(const TermMpz* t, std::size_t nt, const mpz_class* b,
                          std::size_t nb, mpz_class* c, std::size_t nc) {
  if (nc < config().parallel_cutoff) {
    for (std::size_t n = 0; n < nc; ++n) int_sparse_point(t, nt, b, nb, n, c[n]);
    return;
  }
#pragma omp parallel for schedule(static)
  for (std::size_t n = 0; n < nc; ++n) int_sparse_point(t, nt, b, nb, n, c[n]);
}

void divide_mod(const std::uint64_t* num, std::size_t nnum, const TermU64* terms,
                std::size_t nt, std::uint64_t lead_inv, std::uint64_t* b,
                std::size_t nb, std::uint64_t m) {
  bool small = m < (std::uint64_t{1} << 32);
  for (std::size_t n = 0; n < nb; ++n) {
    std::uint64_t sum;
    if (small) {
      unsigned __int128 acc = 0;
      for (std::size_t k = 0; k < nt; ++k) {
        if (terms[k].idx > n) break;
        acc += static_cast<unsigned __int128>(terms[k].val) * b[n - terms[k].idx];
      }
      sum = static_cast<std::uint64_t>(acc % m);
    } else {
      sum = 0;
      for (std::size_t k = 0; k < nt; ++k) {
        if (terms[k].idx > n) break;
        std::uint64_t v = static_cast<std::uint64_t>(
            static_cast<unsigned __int128>(terms[k].val) * b[n - terms[k].idx] % m);
        sum += v;
        if (sum >= m) sum -= m;
      }
    }
    std::uint64_t rhs = (num != nullptr) ? (n < nnum ? num[n] : 0)
                                         : (n == 0 ? 1 % m : 0);
    std::uint64_t diff = rhs >= sum ? rhs - sum : rhs + m - sum;
    b[n] = static_cast<std::uint64_t>(
        static_cast<unsigned __int128>(diff) * lead_inv % m);
  }
}

void divide_int(const mpz_class* num, std::size_t nnum, const TermMpz* terms,
                std::size_t nt, const mpz_class& lead_inv, mpz_class* b,
                std::size_t nb) {
  bool negate = lead_inv == -1;
  mpz_class acc;
  for (std::size_t n = 0; n < nb; ++n) {
    if (num != nullptr)
      acc = n < nnum ? num[n] : 0;
    else
      acc = n == 0 ? 1 : 0;
    for (std::size_t k = 0; k < nt; ++k) {
      if (terms[k].idx > n) break;
      mpz_submul(acc.get_mpz_t(), terms[k].val.get_mpz_t(),
                 b[n - terms[k].idx].get_mpz_t());
    }
    if (negate) mpz_neg(acc.get_mpz_t(), acc.get_mpz_t());
    b[n] = acc;
  }
}

namespace ref {

void mul_dense_mod(const std::uint64_t* a, std::size_t na,
                   const std::uint64_t* b, std::size_t nb, std::uint64_t* c,
                   std::size_t nc, std::uint64_t m) {
  for (std::size_t n = 0; n < nc; ++n) c[n] = 0;
  for (std::size_t i = 0; i < na; ++i) {
    if (i >= nc) break;
    for (std::size_t j = 0; j < nb && i + j < nc; ++j) {
      std::uint64_t t = static_cast<std::uint64_t>(
          static_cast<unsigned __int128>(a[i]) * b[j] % m);
      std::uint64_t s = c[i + j] + t;
      c[i + j] = s >= m ? s - m : s;
    }
  }
}

void mul_sparse_dense_mod(const TermU64* t, std::size_t nt,
                          const std::uint64_t* b, std::size_t nb,
                          std::uint64_t* c, std::size_t nc, std::uint64_t m) {
  for (std::size_t n = 0; n < nc; ++n) c[n] = 0;
  for (std::size_t k = 0; k < nt; ++k) {
    if (t[k].idx >= nc) break;
    for (std::size_t j = 0; j < nb && t[k].idx + j < nc; ++j) {
      std::uint64_t v = static_cast<std::uint64_t>(
          static_cast<unsigned __int128>(t[k].val) * b[j] % m);
      std::uint64_t s = c[t[k].idx + j] + v;
      c[t[k].idx + j] = s >= m ? s - m : s;
    }
  }
}

void mul_dense_int(const mpz_class* a, std::size_t na, const mpz_class* b,
                   std::size_t nb, mpz_class* c, std::size_t nc) {
  for (std::size_t n = 0; n < nc; ++n) c[n] = 0;
  for (std::size_t i = 0; i < na; ++i) {
    if (i >= nc) break;
    for (std::size_t j = 0; j < nb && i + j < nc; ++j)
      mpz_addmul(c[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
  }
}

void mul_sparse_dense_int(const TermMpz* t, std::size_t nt, const mpz_class* b,
                          std::size_t nb, mpz_class* c, std::size_t nc) {
  for (std::size_t n = 0; n < nc; ++n) c[n] = 0;
  for (std::size_t k = 0; k < nt; ++k) {
    if (t[k].idx >= nc) break;
    for (std::size_t j = 0; j < nb && t[k].idx + j < nc; ++j)
      mpz_addmul(c[t[k].idx + j].get_mpz_t(), t[k].val.get_mpz_t(),
                 b[j].get_mpz_t());
  }
}

}  // namespace ref

}  // namespace etaq::kernels
