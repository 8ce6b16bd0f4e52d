#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace etaq {

using std::int64_t;
using std::uint64_t;

constexpr int64_t floor_div(int64_t a, int64_t b) {
  int64_t q = a / b, r = a % b;
  return (r != 0 && ((r < 0) != (b < 0))) ? q - 1 : q;
}

constexpr int64_t ceil_div(int64_t a, int64_t b) { return -floor_div(-a, b); }

uint64_t mul_mod(uint64_t a, uint64_t b, uint64_t m);
uint64_t pow_mod(uint64_t base, uint64_t exp, uint64_t m);

// x with 0 <= x < n and a*x == 1 (mod n); requires gcd(a, n) = 1, n >= 1.
int64_t mod_inverse(int64_t a, int64_t n);

// Kronecker symbol (a|n), fully extended: n may be zero, negative, or even.
int kronecker(int64_t a, int64_t n);

// Deterministic Miller-Rabin, correct for every 64-bit input.
bool is_prime(uint64_t n);

// Primes q <= limit with q == residue (mod modulus), ascending.
std::vector<int64_t> primes_in_progression(int64_t residue, int64_t modulus,
                                           int64_t limit);

int64_t euler_phi(int64_t n);

// [SL2(Z) : Gamma_0(N)] = N * prod_{p | N} (1 + 1/p), an integer.
int64_t gamma0_index(int64_t n);

// Exact fraction over int64, kept normalized with den > 0.
// Intermediates use __int128 and overflow throws instead of wrapping.
struct Rational {
  int64_t num = 0;
  int64_t den = 1;

  Rational() = default;
  Rational(int64_t n) : num(n) {}
  Rational(int64_t n, int64_t d);

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational operator-() const { return Rational(-num, den); }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend bool operator<(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num) * b.den <
           static_cast<__int128>(b.num) * a.den;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  bool is_integer() const { return den == 1; }
  std::string str() const;
};

}  // namespace etaq
