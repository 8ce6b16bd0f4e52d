#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "etaq/qseries.hpp"

namespace etaq {

// Formal product prod_{delta | N} eta(delta tau)^{r_delta}.
// Divisors absent from the map carry exponent zero.
struct EtaQuotient {
  int64_t level = 1;
  std::map<int64_t, int64_t> exponents;
};

// Canonical text form "N=<level>; <delta>^<exp> * ...", divisors descending.
std::string format_eta(const EtaQuotient& e);
EtaQuotient parse_eta(const std::string& text);

// Structural checks: level >= 1, every delta >= 1 divides the level.
void validate_quotient(const EtaQuotient& e);

// Order conditions for modularity on Gamma_0(N):
// sum delta*r_delta == 0 (mod 24) and sum (N/delta)*r_delta == 0 (mod 24).
bool validate_ghn(const EtaQuotient& e);

// Half the total exponent sum.
Rational weight(const EtaQuotient& e);

// Nebentypus value at d: the Kronecker symbol ((-1)^k s | d) where s is the
// squarefree kernel of prod delta^(r_delta). Integral weight k required.
int character_at(const EtaQuotient& e, int64_t d);

// Vanishing order at the cusp associated with d | N (in units of q-exponent).
Rational cusp_order(const EtaQuotient& e, int64_t d);

struct CuspOrderReport {
  std::vector<std::pair<int64_t, Rational>> orders;  // per cusp divisor, ascending
  Rational valence;  // sum_d phi(gcd(d, N/d)) * order_d
  Rational target;   // weight * [SL2(Z) : Gamma_0(N)] / 12
};

// Holomorphic-and-vanishing test with the full per-cusp report.
std::pair<bool, CuspOrderReport> is_cusp_form(const EtaQuotient& e);

// Weight / level / character bundle for the Hecke action on expansions of e.
FormContext form_context(const EtaQuotient& e);

std::vector<int64_t> divisors(int64_t n);

// Nonzero terms of prod_{n>=1}(1 - q^(delta n)) below the exponent bound,
// ascending; O(sqrt(bound/delta)) entries by the pentagonal number theorem.
std::vector<std::pair<int64_t, int>> pentagonal_terms(int64_t delta,
                                                      int64_t bound);

// prod_delta prod_{n>=1}(1 - q^(delta n))^(r_delta) in integer grading,
// truncated below `bound`.
template <class Ring>
Series<Ring> eta_core(const std::map<int64_t, int64_t>& exps, int64_t bound,
                      Ring ring);

// Full q-expansion including the q^(sum delta r_delta / 24) prefactor,
// in 1/24 grading truncated below bound24/24.
template <class Ring>
Series<Ring> expand(const EtaQuotient& e, int64_t bound24, Ring ring);

extern template Series<ModRing> eta_core<ModRing>(
    const std::map<int64_t, int64_t>&, int64_t, ModRing);
extern template Series<IntRing> eta_core<IntRing>(
    const std::map<int64_t, int64_t>&, int64_t, IntRing);
extern template Series<ModRing> expand<ModRing>(const EtaQuotient&, int64_t,
                                                ModRing);
extern template Series<IntRing> expand<IntRing>(const EtaQuotient&, int64_t,
                                                IntRing);

}  // namespace etaq
