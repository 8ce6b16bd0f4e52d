#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

#include "etaq/arith.hpp"

namespace etaq {

// Coefficients mod m with canonical representatives in [0, m).
class ModRing {
 public:
  using value_type = uint64_t;

  explicit ModRing(uint64_t m) : m_(m) {
    if (m < 2) throw std::domain_error("ModRing: modulus must be >= 2");
    if (m >= (uint64_t{1} << 62))
      throw std::domain_error("ModRing: modulus must be < 2^62");
  }

  uint64_t modulus() const { return m_; }
  value_type zero() const { return 0; }
  value_type one() const { return 1 % m_; }

  value_type from_int(int64_t x) const {
    int64_t r = x % static_cast<int64_t>(m_);
    if (r < 0) r += static_cast<int64_t>(m_);
    return static_cast<value_type>(r);
  }
  value_type from_mpz(const mpz_class& x) const {
    mpz_class r;
    mpz_mod_ui(r.get_mpz_t(), x.get_mpz_t(), m_);
    return r.get_ui();
  }
  value_type from_string(const std::string& s) const {
    return from_mpz(mpz_class(s));
  }

  value_type add(value_type a, value_type b) const {
    value_type s = a + b;
    return s >= m_ ? s - m_ : s;
  }
  value_type sub(value_type a, value_type b) const {
    return a >= b ? a - b : a + m_ - b;
  }
  value_type neg(value_type a) const { return a == 0 ? 0 : m_ - a; }
  value_type mul(value_type a, value_type b) const { return mul_mod(a, b, m_); }
  value_type pow(value_type b, uint64_t e) const { return pow_mod(b, e, m_); }

  bool is_zero(value_type a) const { return a == 0; }
  bool is_unit(value_type a) const { return std::gcd(a, m_) == 1; }
  value_type inv(value_type a) const {
    return static_cast<value_type>(
        mod_inverse(static_cast<int64_t>(a), static_cast<int64_t>(m_)));
  }

  std::string to_string(value_type a) const { return std::to_string(a); }

  friend bool operator==(const ModRing&, const ModRing&) = default;

 private:
  uint64_t m_;
};

// Exact integers backed by GMP.
class IntRing {
 public:
  using value_type = mpz_class;

  value_type zero() const { return mpz_class(0); }
  value_type one() const { return mpz_class(1); }

  value_type from_int(int64_t x) const {
    return mpz_class(static_cast<long>(x));
  }
  value_type from_string(const std::string& s) const { return mpz_class(s); }

  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type neg(const value_type& a) const { return -a; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type pow(const value_type& b, uint64_t e) const {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(e));
    return r;
  }

  bool is_zero(const value_type& a) const { return a == 0; }
  bool is_unit(const value_type& a) const { return a == 1 || a == -1; }
  value_type inv(const value_type& a) const {
    if (!is_unit(a)) throw std::domain_error("IntRing: inverse of a non-unit");
    return a;
  }

  std::string to_string(const value_type& a) const { return a.get_str(10); }

  friend bool operator==(const IntRing&, const IntRing&) { return true; }
};

inline std::string ring_tag(const ModRing& r) {
  return "mod:" + std::to_string(r.modulus());
}
inline std::string ring_tag(const IntRing&) { return "int"; }

}  // namespace etaq
