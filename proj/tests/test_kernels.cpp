#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <omp.h>

#include <random>
#include <vector>

#include "etaq/kernels.hpp"

using namespace etaq::kernels;

namespace {

std::vector<uint64_t> rand_vec(std::size_t n, uint64_t m, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<uint64_t> v(n);
  for (auto& x : v) x = rng() % m;
  return v;
}

std::vector<TermU64> rand_terms(std::size_t bound, uint64_t m, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<TermU64> t;
  for (std::size_t i = 0; i < bound; ++i)
    if (rng() % 16 == 0) t.push_back({i, rng() % (m - 1) + 1});
  if (t.empty()) t.push_back({0, 1});
  return t;
}

std::vector<mpz_class> rand_mpz_vec(std::size_t n, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<mpz_class> v(n);
  for (auto& x : v) {
    x = static_cast<long>(rng() % 2001) - 1000;
    if (rng() % 11 == 0) x = x * mpz_class("123456789012345678901234567890");
  }
  return v;
}

struct CutoffGuard {
  std::size_t saved = config().parallel_cutoff;
  ~CutoffGuard() { config().parallel_cutoff = saved; }
};

}  // namespace

TEST_CASE("mul_dense_mod matches the serial reference across moduli and sizes") {
  for (std::size_t n : {std::size_t{1}, std::size_t{64}, std::size_t{4095},
                        std::size_t{4096}, std::size_t{5000}}) {
    for (uint64_t m : {uint64_t{11}, uint64_t{2} << 31, (uint64_t{1} << 32) - 5,
                       (uint64_t{1} << 61) - 1}) {
      auto a = rand_vec(n, m, 1 + n), b = rand_vec(n, m, 2 + n);
      std::vector<uint64_t> c0(n), c1(n);
      ref::mul_dense_mod(a.data(), n, b.data(), n, c0.data(), n, m);
      mul_dense_mod(a.data(), n, b.data(), n, c1.data(), n, m);
      CHECK(c0 == c1);
    }
  }
}

TEST_CASE("mul_dense_mod with unequal operand lengths") {
  uint64_t m = 97;
  auto a = rand_vec(300, m, 7);
  auto b = rand_vec(120, m, 8);
  std::vector<uint64_t> c0(200), c1(200);
  ref::mul_dense_mod(a.data(), a.size(), b.data(), b.size(), c0.data(), 200, m);
  mul_dense_mod(a.data(), a.size(), b.data(), b.size(), c1.data(), 200, m);
  CHECK(c0 == c1);
}

TEST_CASE("mul_sparse_dense_mod matches the serial reference") {
  for (std::size_t n : {std::size_t{100}, std::size_t{4097}, std::size_t{20000}}) {
    for (uint64_t m : {uint64_t{11}, (uint64_t{1} << 61) - 1}) {
      auto t = rand_terms(n, m, 3 + n);
      auto b = rand_vec(n, m, 4 + n);
      std::vector<uint64_t> c0(n), c1(n);
      ref::mul_sparse_dense_mod(t.data(), t.size(), b.data(), n, c0.data(), n, m);
      mul_sparse_dense_mod(t.data(), t.size(), b.data(), n, c1.data(), n, m);
      CHECK(c0 == c1);
    }
  }
}

TEST_CASE("integer kernels match the serial reference with large coefficients") {
  for (std::size_t n : {std::size_t{50}, std::size_t{600}}) {
    auto a = rand_mpz_vec(n, 5), b = rand_mpz_vec(n, 6);
    std::vector<mpz_class> c0(n), c1(n);
    ref::mul_dense_int(a.data(), n, b.data(), n, c0.data(), n);
    mul_dense_int(a.data(), n, b.data(), n, c1.data(), n);
    CHECK(c0 == c1);

    std::vector<TermMpz> t;
    std::mt19937_64 rng(7);
    for (std::size_t i = 0; i < n; ++i)
      if (rng() % 8 == 0) t.push_back({i, mpz_class(static_cast<long>(rng() % 19) - 9)});
    if (t.empty()) t.push_back({0, mpz_class(1)});
    std::vector<mpz_class> d0(n), d1(n);
    ref::mul_sparse_dense_int(t.data(), t.size(), a.data(), n, d0.data(), n);
    mul_sparse_dense_int(t.data(), t.size(), a.data(), n, d1.data(), n);
    CHECK(d0 == d1);
  }
}

TEST_CASE("results are bit-identical for any thread count") {
  CutoffGuard guard;
  config().parallel_cutoff = 1;  // forces the parallel path even when tiny
  std::size_t n = 3000;
  uint64_t m = (uint64_t{1} << 61) - 1;
  auto a = rand_vec(n, m, 21), b = rand_vec(n, m, 22);
  auto t = rand_terms(n, m, 23);

  std::vector<uint64_t> c1(n), c4(n), s1(n), s4(n);
  omp_set_num_threads(1);
  mul_dense_mod(a.data(), n, b.data(), n, c1.data(), n, m);
  mul_sparse_dense_mod(t.data(), t.size(), b.data(), n, s1.data(), n, m);
  omp_set_num_threads(4);
  mul_dense_mod(a.data(), n, b.data(), n, c4.data(), n, m);
  mul_sparse_dense_mod(t.data(), t.size(), b.data(), n, s4.data(), n, m);
  CHECK(c1 == c4);
  CHECK(s1 == s4);

  auto ia = rand_mpz_vec(400, 24), ib = rand_mpz_vec(400, 25);
  std::vector<mpz_class> i1(400), i4(400);
  omp_set_num_threads(1);
  mul_dense_int(ia.data(), 400, ib.data(), 400, i1.data(), 400);
  omp_set_num_threads(4);
  mul_dense_int(ia.data(), 400, ib.data(), 400, i4.data(), 400);
  CHECK(i1 == i4);
}

TEST_CASE("divide_mod inverts multiplication") {
  uint64_t m = 97;
  std::size_t n = 500;
  // Unit-lead denominator assembled from its dense form.
  std::mt19937_64 rng(31);
  std::vector<uint64_t> den(n);
  den[0] = 1 + rng() % (m - 1);
  for (std::size_t i = 1; i < n; ++i) den[i] = rng() % m;
  std::vector<TermU64> tail;
  for (std::size_t i = 1; i < n; ++i)
    if (den[i]) tail.push_back({i, den[i]});
  uint64_t lead_inv = 1;
  while (den[0] * lead_inv % m != 1) ++lead_inv;

  auto num = rand_vec(n, m, 32);
  std::vector<uint64_t> q(n), back(n);
  divide_mod(num.data(), n, tail.data(), tail.size(), lead_inv, q.data(), n, m);
  ref::mul_dense_mod(den.data(), n, q.data(), n, back.data(), n, m);
  CHECK(back == num);

  // num == nullptr stands for the constant series 1.
  std::vector<uint64_t> inv(n), one(n, 0);
  one[0] = 1;
  divide_mod(nullptr, 0, tail.data(), tail.size(), lead_inv, inv.data(), n, m);
  ref::mul_dense_mod(den.data(), n, inv.data(), n, back.data(), n, m);
  CHECK(back == one);
}

TEST_CASE("divide_int inverts multiplication for unit leads") {
  std::size_t n = 300;
  std::mt19937_64 rng(41);
  std::vector<mpz_class> den(n);
  den[0] = -1;
  for (std::size_t i = 1; i < n; ++i)
    den[i] = static_cast<long>(rng() % 7) - 3;
  std::vector<TermMpz> tail;
  for (std::size_t i = 1; i < n; ++i)
    if (den[i] != 0) tail.push_back({i, den[i]});

  auto num = rand_mpz_vec(n, 42);
  std::vector<mpz_class> q(n), back(n);
  divide_int(num.data(), n, tail.data(), tail.size(), mpz_class(-1), q.data(), n);
  ref::mul_dense_int(den.data(), n, q.data(), n, back.data(), n);
  CHECK(back == num);
}
