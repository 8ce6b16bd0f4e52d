#include <omp.h>

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "etaq/kernels.hpp"

// Times the OpenMP kernels against the serial reference implementations on
// the same inputs and confirms the outputs match. Thread count comes from
// OMP_NUM_THREADS or --threads.

namespace {

using Clock = std::chrono::steady_clock;
using etaq::kernels::TermMpz;
using etaq::kernels::TermU64;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::vector<uint64_t> random_mod_vec(std::size_t n, uint64_t m, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<uint64_t> v(n);
  for (auto& x : v) x = rng() % m;
  return v;
}

// Pentagonal-like support: indices k(3k-1)/2 with unit coefficients, the
// density the eta expansions actually present.
template <class Term, class Val>
std::vector<Term> sparse_terms(std::size_t bound, Val one, Val minus_one) {
  std::vector<Term> t;
  t.push_back({0, one});
  for (std::size_t k = 1;; ++k) {
    std::size_t g1 = k * (3 * k - 1) / 2, g2 = k * (3 * k + 1) / 2;
    if (g1 >= bound) break;
    Val v = k % 2 ? minus_one : one;
    t.push_back({g1, v});
    if (g2 < bound) t.push_back({g2, v});
  }
  return t;
}

struct Row {
  std::string name;
  std::size_t n;
  double ref_ms;
  double omp_ms;
  bool equal;
};

void print_row(const Row& r) {
  std::printf("%-22s n=%-8zu ref %9.2f ms   omp %9.2f ms   speedup %5.2fx   %s\n",
              r.name.c_str(), r.n, r.ref_ms, r.omp_ms,
              r.omp_ms > 0 ? r.ref_ms / r.omp_ms : 0.0,
              r.equal ? "outputs equal" : "OUTPUTS DIFFER");
}

Row bench_dense_mod(std::size_t n, uint64_t m) {
  auto a = random_mod_vec(n, m, 1);
  auto b = random_mod_vec(n, m, 2);
  std::vector<uint64_t> c0(n), c1(n);
  auto t0 = Clock::now();
  etaq::kernels::ref::mul_dense_mod(a.data(), n, b.data(), n, c0.data(), n, m);
  double rms = ms_since(t0);
  t0 = Clock::now();
  etaq::kernels::mul_dense_mod(a.data(), n, b.data(), n, c1.data(), n, m);
  double oms = ms_since(t0);
  return {"mul_dense_mod m=" + std::to_string(m), n, rms, oms, c0 == c1};
}

Row bench_sparse_mod(std::size_t n, uint64_t m) {
  auto t = sparse_terms<TermU64, uint64_t>(n, 1, m - 1);
  auto b = random_mod_vec(n, m, 3);
  std::vector<uint64_t> c0(n), c1(n);
  auto t0 = Clock::now();
  etaq::kernels::ref::mul_sparse_dense_mod(t.data(), t.size(), b.data(), n,
                                           c0.data(), n, m);
  double rms = ms_since(t0);
  t0 = Clock::now();
  etaq::kernels::mul_sparse_dense_mod(t.data(), t.size(), b.data(), n,
                                      c1.data(), n, m);
  double oms = ms_since(t0);
  return {"mul_sparse_dense_mod", n, rms, oms, c0 == c1};
}

Row bench_dense_int(std::size_t n) {
  std::mt19937_64 rng(4);
  std::vector<mpz_class> a(n), b(n), c0(n), c1(n);
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = static_cast<long>(rng() % 2000) - 1000;
    b[i] = static_cast<long>(rng() % 2000) - 1000;
  }
  auto t0 = Clock::now();
  etaq::kernels::ref::mul_dense_int(a.data(), n, b.data(), n, c0.data(), n);
  double rms = ms_since(t0);
  t0 = Clock::now();
  etaq::kernels::mul_dense_int(a.data(), n, b.data(), n, c1.data(), n);
  double oms = ms_since(t0);
  return {"mul_dense_int", n, rms, oms, c0 == c1};
}

Row bench_sparse_int(std::size_t n) {
  auto t = sparse_terms<TermMpz, mpz_class>(n, 1, -1);
  std::mt19937_64 rng(5);
  std::vector<mpz_class> b(n), c0(n), c1(n);
  for (auto& x : b) x = static_cast<long>(rng() % 2000) - 1000;
  auto t0 = Clock::now();
  etaq::kernels::ref::mul_sparse_dense_int(t.data(), t.size(), b.data(), n,
                                           c0.data(), n);
  double rms = ms_since(t0);
  t0 = Clock::now();
  etaq::kernels::mul_sparse_dense_int(t.data(), t.size(), b.data(), n,
                                      c1.data(), n);
  double oms = ms_since(t0);
  return {"mul_sparse_dense_int", n, rms, oms, c0 == c1};
}

}  // namespace

int main(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) {
    std::string arg = argv[i];
    if (arg == "--threads" && i + 1 < argc)
      omp_set_num_threads(std::atoi(argv[++i]));
  }
  std::printf("threads: %d\n", omp_get_max_threads());

  bool all_equal = true;
  for (std::size_t n : {std::size_t{4096}, std::size_t{16384}}) {
    for (uint64_t m : {uint64_t{11}, (uint64_t{1} << 61) - 1}) {
      Row r = bench_dense_mod(n, m);
      print_row(r);
      all_equal &= r.equal;
    }
  }
  for (std::size_t n : {std::size_t{1} << 18, std::size_t{1} << 20}) {
    Row r = bench_sparse_mod(n, 11);
    print_row(r);
    all_equal &= r.equal;
  }
  for (std::size_t n : {std::size_t{2048}, std::size_t{8192}}) {
    Row r = bench_dense_int(n);
    print_row(r);
    all_equal &= r.equal;
  }
  for (std::size_t n : {std::size_t{1} << 16, std::size_t{1} << 18}) {
    Row r = bench_sparse_int(n);
    print_row(r);
    all_equal &= r.equal;
  }
  std::printf("%s\n", all_equal ? "all kernels agree with the serial reference"
                                : "MISMATCH against the serial reference");
  return all_equal ? 0 : 1;
}
