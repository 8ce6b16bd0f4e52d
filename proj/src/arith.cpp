#include "etaq/arith.hpp"

#include <array>
#include <numeric>

namespace etaq {

uint64_t mul_mod(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

uint64_t pow_mod(uint64_t base, uint64_t exp, uint64_t m) {
  if (m == 0) throw std::domain_error("pow_mod: zero modulus");
  if (m == 1) return 0;
  uint64_t acc = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) acc = mul_mod(acc, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return acc;
}

int64_t mod_inverse(int64_t a, int64_t n) {
  if (n < 1) throw std::domain_error("mod_inverse: modulus must be positive");
  if (n == 1) return 0;
  int64_t r0 = n, r1 = ((a % n) + n) % n;
  int64_t t0 = 0, t1 = 1;
  while (r1 != 0) {
    int64_t q = r0 / r1;
    int64_t r2 = r0 - q * r1;
    int64_t t2 = t0 - q * t1;
    r0 = r1; r1 = r2;
    t0 = t1; t1 = t2;
  }
  if (r0 != 1)
    throw std::domain_error("mod_inverse: " + std::to_string(a) +
                            " is not invertible mod " + std::to_string(n));
  return t0 < 0 ? t0 + n : t0;
}

int kronecker(int64_t a, int64_t n) {
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  int result = 1;
  if (n < 0) {
    n = -n;
    if (a < 0) result = -result;
  }
  int twos = 0;
  while (n % 2 == 0) {
    n /= 2;
    ++twos;
  }
  if (twos > 0) {
    if (a % 2 == 0) return 0;
    int64_t a8 = ((a % 8) + 8) % 8;
    if ((twos & 1) && (a8 == 3 || a8 == 5)) result = -result;
  }
  a %= n;
  if (a < 0) a += n;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      int64_t n8 = n % 8;
      if (n8 == 3 || n8 == 5) result = -result;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

bool is_prime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                     23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  uint64_t d = n - 1;
  int s = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++s;
  }
  // This witness set decides primality for all n < 3.3 * 10^24.
  for (uint64_t w : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                     23ull, 29ull, 31ull, 37ull}) {
    uint64_t x = pow_mod(w, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<int64_t> primes_in_progression(int64_t residue, int64_t modulus,
                                           int64_t limit) {
  if (modulus < 1) throw std::domain_error("primes_in_progression: modulus must be positive");
  std::vector<int64_t> out;
  int64_t r = ((residue % modulus) + modulus) % modulus;
  for (int64_t q = r; q <= limit; q += modulus) {
    if (q >= 2 && is_prime(static_cast<uint64_t>(q))) out.push_back(q);
  }
  return out;
}

int64_t euler_phi(int64_t n) {
  if (n < 1) throw std::domain_error("euler_phi: argument must be positive");
  int64_t result = n;
  for (int64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

int64_t gamma0_index(int64_t n) {
  if (n < 1) throw std::domain_error("gamma0_index: level must be positive");
  int64_t result = n, rest = n;
  for (int64_t p = 2; p * p <= rest; ++p) {
    if (rest % p == 0) {
      while (rest % p == 0) rest /= p;
      result = result / p * (p + 1);
    }
  }
  if (rest > 1) result = result / rest * (rest + 1);
  return result;
}

namespace {

int64_t checked_cast(__int128 v, const char* what) {
  if (v > static_cast<__int128>(INT64_MAX) || v < static_cast<__int128>(INT64_MIN))
    throw std::overflow_error(std::string("Rational: overflow in ") + what);
  return static_cast<int64_t>(v);
}

__int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Rational make_rational(__int128 n, __int128 d, const char* what) {
  if (d == 0) throw std::domain_error("Rational: zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  __int128 g = gcd128(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  Rational r;
  r.num = checked_cast(n, what);
  r.den = checked_cast(d, what);
  return r;
}

}  // namespace

Rational::Rational(int64_t n, int64_t d) {
  Rational r = make_rational(n, d, "construction");
  num = r.num;
  den = r.den;
}

Rational operator+(const Rational& a, const Rational& b) {
  return make_rational(static_cast<__int128>(a.num) * b.den +
                           static_cast<__int128>(b.num) * a.den,
                       static_cast<__int128>(a.den) * b.den, "addition");
}

Rational operator-(const Rational& a, const Rational& b) {
  return make_rational(static_cast<__int128>(a.num) * b.den -
                           static_cast<__int128>(b.num) * a.den,
                       static_cast<__int128>(a.den) * b.den, "subtraction");
}

Rational operator*(const Rational& a, const Rational& b) {
  return make_rational(static_cast<__int128>(a.num) * b.num,
                       static_cast<__int128>(a.den) * b.den, "multiplication");
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num == 0) throw std::domain_error("Rational: division by zero");
  return make_rational(static_cast<__int128>(a.num) * b.den,
                       static_cast<__int128>(a.den) * b.num, "division");
}

std::string Rational::str() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

}  // namespace etaq
