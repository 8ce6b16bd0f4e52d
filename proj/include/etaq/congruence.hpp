#pragma once

#include <string>
#include <vector>

#include "etaq/etaquot.hpp"
#include "etaq/partitions.hpp"

namespace etaq {

// Parameter derivation failure; every violated hypothesis is listed.
class derive_error : public std::runtime_error {
 public:
  derive_error(const std::string& msg, std::vector<std::string> violations)
      : std::runtime_error(msg), violations_(std::move(violations)) {}
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

// Data driving one congruence family for c_{p,r,Mr} modulo m.
struct CongruenceParams {
  int64_t p = 0, M = 0, r = 0, m = 0;  // inputs
  int64_t s = 0;        // gcd(r, 24)
  int64_t v = 0;        // r / s
  int64_t d = 0;        // gcd(24/s, p - M)
  int64_t m_prime = 0;  // representative with m * m_prime == v  (mod 24/(d s))
  int64_t a = 0, b = 0;
  int64_t kappa = 0;     // weight of eta(p tau)^(a m + r) eta(tau)^(b m - M r)
  int64_t g_weight = 0;  // kappa - (a + b)/2
  int64_t g_level = 0;   // (24/d)^2 * p
  std::vector<std::string> warnings;
};

// Validates the hypotheses on (p, M, r, m) and selects the admissible
// exponent pair (a, b) minimizing a + b, then a. Throws derive_error with
// the full violation list when the hypotheses fail.
CongruenceParams derive_params(int64_t p, int64_t M, int64_t r, int64_t m);

// eta(p tau)^(a m + r) * eta(tau)^(b m - M r) on Gamma_0(p); errors unless
// the result passes the cusp-form checks at the declared weight.
EtaQuotient build_form(const CongruenceParams& params);

// Checks eta(p tau)^r / eta(tau)^(M r) * eta(p m tau)^a * eta(m tau)^b
// == build_form(params) coefficientwise mod m, below exponent `precision`.
bool verify_lift(const CongruenceParams& params, int64_t precision);

// (build_form | T(m)) / (eta(p tau)^a eta(tau)^b) mod m, in 1/24 grading
// with precision index at least bound24. Coefficients live on exponents
// (24k - (p a + b))/24; the k-th is u(k') under index d * k' = 24k - (p a + b).
Series<ModRing> compute_g(const CongruenceParams& params, int64_t bound24);

// floor(weight * [SL2(Z) : Gamma_0(level)] / 12) + 1.
int64_t sturm_bound(int64_t weight, int64_t level);

// u(0..depth): the coefficient of compute_g at grading-24 index d*n.
std::vector<uint64_t> u_values(const CongruenceParams& params, int64_t depth);

struct UMatchReport {
  int64_t checked = 0;
  std::vector<int64_t> mismatches;          // n where u(n) fails its expected value
  std::vector<int64_t> support_violations;  // nonzero g-indices off the d-lattice
  bool ok() const { return mismatches.empty() && support_violations.empty(); }
};

// u(n) must equal c_{p,r,Mr}((d m n - r(p - M))/24) mod m when that argument
// is a nonnegative integer and 0 otherwise, for all n <= depth.
UMatchReport match_u_against_counts(const CongruenceParams& params,
                                    int64_t depth);

struct SerreCertificate {
  CongruenceParams params;
  int64_t ell = 0;
  bool residue_check = false;  // ell == -1 (mod g_level * m)
  int64_t check_depth = 0;
  int64_t sturm = 0;
  bool fully_certified = false;  // check_depth >= sturm
};

struct SerreSearchResult {
  std::vector<SerreCertificate> certificates;  // ascending by ell
  std::vector<int64_t> failed;   // candidates with a nonzero Hecke value
  std::vector<int64_t> skipped;  // candidates beyond the expansion budget
  bool budget_exceeded = false;
};

// Scans primes ell == -1 (mod g_level * m) up to ell_limit and certifies
// u(ell n) + chi(ell) ell^(g_weight - 1) u(n / ell) == 0 (mod m) for all
// n <= check_depth. max_bound24 caps the series expansion (grading-24 index);
// candidates needing more are skipped and the result is flagged partial.
SerreSearchResult search_serre_primes(const CongruenceParams& params,
                                      int64_t ell_limit, int64_t check_depth,
                                      int64_t max_bound24 = int64_t{1} << 40);

struct FinalReport {
  int64_t ell = 0, n_max = 0;
  int64_t checked = 0;
  int64_t skipped_nonintegral = 0;  // argument not a nonnegative multiple of 24
  int64_t skipped_gcd = 0;          // n sharing a factor with ell
  int64_t max_argument = -1;
  std::vector<int64_t> violations;  // n with c(...) != 0 (mod m)
  bool verified() const { return violations.empty(); }
};

// Direct check of c_{p,r,Mr}((d m n ell - r(p - M))/24) == 0 (mod m) for
// 1 <= n <= n_max with gcd(n, ell) = 1, against the actual counting series.
FinalReport verify_final(const CongruenceParams& params, int64_t ell,
                         int64_t n_max);

}  // namespace etaq
