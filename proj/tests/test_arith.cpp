#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "etaq/arith.hpp"
#include "oracles.hpp"

using namespace etaq;

TEST_CASE("floor and ceil division agree with the real-number definitions") {
  for (int64_t a = -50; a <= 50; ++a)
    for (int64_t b : {1, 2, 3, 5, 7, 24}) {
      int64_t f = floor_div(a, b), c = ceil_div(a, b);
      CHECK(f * b <= a);
      CHECK((f + 1) * b > a);
      CHECK(c * b >= a);
      CHECK((c - 1) * b < a);
    }
}

TEST_CASE("mul_mod and pow_mod match GMP") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    uint64_t m = (rng() % ((uint64_t{1} << 62) - 2)) + 2;
    uint64_t a = rng() % m, b = rng() % m, e = rng() % 1000;
    mpz_class za(static_cast<unsigned long>(a)), zb(static_cast<unsigned long>(b));
    mpz_class zm(static_cast<unsigned long>(m)), t;
    t = za * zb % zm;
    CHECK(mul_mod(a, b, m) == t.get_ui());
    mpz_powm_ui(t.get_mpz_t(), za.get_mpz_t(), static_cast<unsigned long>(e),
                zm.get_mpz_t());
    CHECK(pow_mod(a, e, m) == t.get_ui());
  }
}

TEST_CASE("mod_inverse is a two-sided inverse and rejects non-units") {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 500; ++i) {
    int64_t n = static_cast<int64_t>(rng() % 100000) + 2;
    int64_t a = static_cast<int64_t>(rng() % 200001) - 100000;
    int64_t g = std::gcd(a % n, n);
    if (g == 1 || (a % n == 0 && n == 1)) {
      int64_t inv = mod_inverse(a, n);
      CHECK(inv >= 0);
      CHECK(inv < n);
      int64_t am = ((a % n) + n) % n;
      CHECK(static_cast<int64_t>(mul_mod(static_cast<uint64_t>(am),
                                         static_cast<uint64_t>(inv),
                                         static_cast<uint64_t>(n))) == 1 % n);
    } else {
      CHECK_THROWS_AS((void)mod_inverse(a, n), std::domain_error);
    }
  }
  CHECK(mod_inverse(7, 1) == 0);
}

TEST_CASE("kronecker symbol matches the factorization oracle") {
  for (int64_t a = -60; a <= 60; ++a)
    for (int64_t n = -60; n <= 60; ++n)
      CHECK(kronecker(a, n) == oracle::kronecker(a, n));
}

TEST_CASE("kronecker handles the n = 0 and unit edge cases") {
  CHECK(kronecker(1, 0) == 1);
  CHECK(kronecker(-1, 0) == 1);
  CHECK(kronecker(2, 0) == 0);
  CHECK(kronecker(0, 0) == 0);
  CHECK(kronecker(0, 1) == 1);
  CHECK(kronecker(0, -1) == 1);
  CHECK(kronecker(0, 7) == 0);
}

TEST_CASE("is_prime agrees with trial division") {
  for (int64_t n = 0; n <= 20000; ++n)
    CHECK(is_prime(static_cast<uint64_t>(n)) == oracle::is_prime(n));
  CHECK(is_prime(1979));
  CHECK(is_prime((uint64_t{1} << 61) - 1));
  CHECK_FALSE(is_prime(uint64_t{3215031751}));  // strong pseudoprime to 2,3,5,7
}

TEST_CASE("primes_in_progression lists exactly the right primes") {
  auto v = primes_in_progression(-1, 1980, 40000);
  std::vector<int64_t> want1980;
  for (int64_t n = 2; n <= 40000; ++n)
    if ((n + 1) % 1980 == 0 && oracle::is_prime(n)) want1980.push_back(n);
  CHECK(v == want1980);
  CHECK(v.front() == 1979);
  for (int64_t residue : {0, 1, 2, 5, -1})
    for (int64_t modulus : {2, 3, 10, 24}) {
      auto got = primes_in_progression(residue, modulus, 500);
      std::vector<int64_t> want;
      for (int64_t n = 2; n <= 500; ++n)
        if (oracle::is_prime(n) &&
            ((n - residue) % modulus + modulus) % modulus == 0)
          want.push_back(n);
      CHECK(got == want);
    }
}

TEST_CASE("euler_phi and gamma0_index on known values") {
  int64_t phi[] = {1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4};
  for (int64_t n = 1; n <= 11; ++n) CHECK(euler_phi(n) == phi[n - 1]);
  CHECK(gamma0_index(1) == 1);
  CHECK(gamma0_index(2) == 3);
  CHECK(gamma0_index(4) == 6);
  CHECK(gamma0_index(5) == 6);
  CHECK(gamma0_index(6) == 12);
  CHECK(gamma0_index(25) == 30);
  CHECK(gamma0_index(180) == 432);
  CHECK(gamma0_index(1980) == 5184);
}

TEST_CASE("rational arithmetic is exact and normalized") {
  Rational a(1, 6), b(1, 10);
  CHECK((a + b).str() == "4/15");
  CHECK((a - b).str() == "1/15");
  CHECK((a * b).str() == "1/60");
  CHECK((a / b).str() == "5/3");
  CHECK(Rational(-3, -6).str() == "1/2");
  CHECK(Rational(3, -6).str() == "-1/2");
  CHECK(Rational(22, 1).str() == "22");
  CHECK(Rational(0, 5) == Rational(0, 1));
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-1, 2) < Rational(1, 3));
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
}

TEST_CASE("rational overflow is detected rather than wrapped") {
  Rational big(int64_t{1} << 62, 1);
  CHECK_THROWS_AS((void)(big * big), std::overflow_error);
  CHECK_THROWS_AS((void)(big + big), std::overflow_error);
}
