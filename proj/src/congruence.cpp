#include "etaq/congruence.hpp"

#include <algorithm>
#include <numeric>

namespace etaq {

CongruenceParams derive_params(int64_t p, int64_t M, int64_t r, int64_t m) {
  std::vector<std::string> bad;
  if (p < 3 || p % 2 == 0 || !is_prime(static_cast<uint64_t>(p)))
    bad.push_back("p must be an odd prime");
  if (M < 1 || M % 2 == 0) bad.push_back("M must be odd and >= 1");
  if (M >= 1 && p >= 1 && M > p) bad.push_back("M must not exceed p");
  if (r < 1) bad.push_back("r must be >= 1");
  if (m < 5 || !is_prime(static_cast<uint64_t>(m)))
    bad.push_back("m must be a prime >= 5");
  if (m >= 2 && p >= 2 && m == p) bad.push_back("m must differ from p");
  if (m >= 2 && r >= 1 && std::gcd(m, r) != 1)
    bad.push_back("m must not divide r");
  if (m >= 2 && M >= 1 && r >= 1 && std::gcd(m, M * r) != 1)
    bad.push_back("m must not divide M*r");
  if (m >= 2 && ((p % m) * (M % m)) % m == 1 % m)
    bad.push_back("p*M == 1 (mod m) is excluded");
  if (p >= 3 && m >= 3 && p % 2 == 1 && m % 2 == 1 &&
      ((p - 1) * (m - 1) / 4) % 2 != 0)
    bad.push_back("(p-1)(m-1)/4 must be even");
  if (!bad.empty())
    throw derive_error("parameter hypotheses failed for (p=" +
                           std::to_string(p) + ", M=" + std::to_string(M) +
                           ", r=" + std::to_string(r) + ", m=" +
                           std::to_string(m) + ")",
                       std::move(bad));

  CongruenceParams out;
  out.p = p;
  out.M = M;
  out.r = r;
  out.m = m;
  out.s = std::gcd(r, int64_t{24});
  out.v = r / out.s;
  int64_t per_s = 24 / out.s;
  out.d = std::gcd(per_s, p - M);
  int64_t d_alt = std::gcd(per_s, p * M - 1);
  if (out.d != d_alt)
    out.warnings.push_back("gcd(24/s, p-M) = " + std::to_string(out.d) +
                           " differs from gcd(24/s, pM-1) = " +
                           std::to_string(d_alt));
  int64_t step = per_s / out.d;
  int64_t mp0 = (mod_inverse(m, step) * (out.v % step)) % step;

  const int64_t shift_bound = 10;
  bool found = false;
  int64_t best_a = 0, best_b = 0, best_mp = 0;
  for (int64_t mp = 1; mp <= per_s; ++mp) {
    if (((mp - mp0) % step + step) % step != 0) continue;
    for (int64_t j = 0; j <= shift_bound; ++j) {
      int64_t a = out.s * (p - mp) + 24 * j;
      if (a < 0) continue;
      if (a * m + r < 1) continue;
      for (int64_t jp = 0; jp <= shift_bound; ++jp) {
        int64_t b = out.s * (M * mp - 1) + 24 * jp;
        if (b * m - M * r < 1) continue;
        if ((a + b) % 2 != 0) continue;
        int64_t kappa2 = (a + b) * m + r * (1 - M);
        if (kappa2 < 2 || kappa2 % 2 != 0) continue;
        int64_t c1 = m * (p * a + b) - (M * r - p * r);
        int64_t c2 = m * (a + p * b) - (p * M * r - r);
        if (((c1 % 24) + 24) % 24 != 0 || ((c2 % 24) + 24) % 24 != 0) continue;
        if (!found || a + b < best_a + best_b ||
            (a + b == best_a + best_b && a < best_a)) {
          found = true;
          best_a = a;
          best_b = b;
          best_mp = mp;
        }
      }
    }
  }
  if (!found)
    throw derive_error(
        "no admissible exponent pair (a, b) for (p=" + std::to_string(p) +
            ", M=" + std::to_string(M) + ", r=" + std::to_string(r) +
            ", m=" + std::to_string(m) + ")",
        {"no candidate satisfied the exponent congruences within the shift "
         "window"});
  out.a = best_a;
  out.b = best_b;
  out.m_prime = best_mp;
  out.kappa = ((best_a + best_b) * m + r * (1 - M)) / 2;
  out.g_weight = out.kappa - (best_a + best_b) / 2;
  int64_t q = 24 / out.d;
  out.g_level = q * q * p;
  return out;
}

EtaQuotient build_form(const CongruenceParams& params) {
  EtaQuotient e;
  e.level = params.p;
  int64_t ep = params.a * params.m + params.r;
  int64_t e1 = params.b * params.m - params.M * params.r;
  if (ep != 0) e.exponents[params.p] = ep;
  if (e1 != 0) e.exponents[1] = e1;
  auto [cusp, rep] = is_cusp_form(e);
  if (!cusp)
    throw std::domain_error("build_form: " + format_eta(e) +
                            " fails the cusp-form checks");
  Rational w = weight(e);
  if (!(w == Rational(params.kappa)))
    throw std::domain_error("build_form: weight " + w.str() +
                            " does not match the declared " +
                            std::to_string(params.kappa));
  return e;
}

bool verify_lift(const CongruenceParams& params, int64_t precision) {
  if (precision < 1)
    throw std::domain_error("verify_lift: precision must be >= 1");
  EtaQuotient lhs;
  lhs.level = params.p * params.m;
  auto bump = [&lhs](int64_t delta, int64_t r) {
    if (r != 0) lhs.exponents[delta] += r;
  };
  bump(params.p, params.r);
  bump(1, -params.M * params.r);
  bump(params.p * params.m, params.a);
  bump(params.m, params.b);
  for (auto it = lhs.exponents.begin(); it != lhs.exponents.end();)
    it = it->second == 0 ? lhs.exponents.erase(it) : std::next(it);
  EtaQuotient rhs = build_form(params);
  int64_t bound24 = 24 * precision;
  ModRing ring(static_cast<uint64_t>(params.m));
  Series<ModRing> L = expand(lhs, bound24, ring);
  Series<ModRing> R = expand(rhs, bound24, ring);
  if (L.offset() != R.offset() || L.denom() != R.denom()) return false;
  int64_t len = std::min(L.size(), R.size());
  for (int64_t i = 0; i < len; ++i)
    if (L.coeffs()[static_cast<std::size_t>(i)] !=
        R.coeffs()[static_cast<std::size_t>(i)])
      return false;
  return true;
}

Series<ModRing> compute_g(const CongruenceParams& params, int64_t bound24) {
  if (bound24 < 1)
    throw std::domain_error("compute_g: precision must be >= 1");
  ModRing ring(static_cast<uint64_t>(params.m));
  EtaQuotient F = build_form(params);
  FormContext ctx = form_context(F);

  int64_t pi24 = params.p * params.a + params.b;
  // T(m) divides precision by m; the final product divides nothing further,
  // so expand F to m times the integer precision the quotient needs.
  int64_t target = ceil_div(bound24 + pi24, 24) + 1;
  Series<ModRing> F1 =
      regrade(expand(F, 24 * params.m * target, ring), 1);
  Series<ModRing> T1 = hecke_t(F1, params.m, ctx);

  EtaQuotient den;
  den.level = params.p;
  if (params.a != 0) den.exponents[params.p] = params.a;
  if (params.b != 0) den.exponents[1] = params.b;
  int64_t den_target = target + ceil_div(pi24, 24) + 1;
  Series<ModRing> den24 = expand(den, 24 * den_target, ring);
  Series<ModRing> den_unit = regrade(den24.shifted(-pi24), 1);

  Series<ModRing> gU = mul(T1, invert(den_unit));
  Series<ModRing> g = regrade(gU, 24).shifted(-pi24);
  if (g.prec_index() < bound24)
    throw std::logic_error("compute_g: internal precision shortfall");
  return g;
}

int64_t sturm_bound(int64_t weight, int64_t level) {
  if (weight < 1 || level < 1)
    throw std::domain_error("sturm_bound: weight and level must be >= 1");
  return weight * gamma0_index(level) / 12 + 1;
}

std::vector<uint64_t> u_values(const CongruenceParams& params, int64_t depth) {
  if (depth < 0) throw std::domain_error("u_values: depth must be >= 0");
  Series<ModRing> g = compute_g(params, params.d * depth + 2);
  std::vector<uint64_t> u(static_cast<std::size_t>(depth) + 1);
  for (int64_t n = 0; n <= depth; ++n)
    u[static_cast<std::size_t>(n)] = g.at_index(params.d * n);
  return u;
}

UMatchReport match_u_against_counts(const CongruenceParams& params,
                                    int64_t depth) {
  UMatchReport rep;
  Series<ModRing> g = compute_g(params, params.d * depth + 2);
  for (int64_t idx = g.offset(); idx < g.prec_index(); ++idx) {
    if (g.at_index(idx) != 0 && ((idx % params.d) + params.d) % params.d != 0)
      rep.support_violations.push_back(idx);
  }
  int64_t max_arg = 0;
  for (int64_t n = 0; n <= depth; ++n) {
    int64_t t = params.d * params.m * n - params.r * (params.p - params.M);
    if (t >= 0 && t % 24 == 0) max_arg = std::max(max_arg, t / 24);
  }
  Series<ModRing> c =
      c_series(PartitionSpec{params.p, params.r, params.M * params.r},
               max_arg + 1, ModRing(static_cast<uint64_t>(params.m)));
  for (int64_t n = 0; n <= depth; ++n) {
    uint64_t un = g.at_index(params.d * n);
    int64_t t = params.d * params.m * n - params.r * (params.p - params.M);
    uint64_t expect =
        (t >= 0 && t % 24 == 0) ? c.at_index(t / 24) : uint64_t{0};
    ++rep.checked;
    if (un != expect) rep.mismatches.push_back(n);
  }
  return rep;
}

SerreSearchResult search_serre_primes(const CongruenceParams& params,
                                      int64_t ell_limit, int64_t check_depth,
                                      int64_t max_bound24) {
  if (check_depth < 1)
    throw std::domain_error("search_serre_primes: check depth must be >= 1");
  SerreSearchResult result;
  int64_t modulus = params.g_level * params.m;
  std::vector<int64_t> cands =
      primes_in_progression(-1, modulus, ell_limit);
  std::vector<int64_t> affordable;
  for (int64_t ell : cands) {
    int64_t need = params.d * ell * check_depth + 2;
    if (need > max_bound24) {
      result.skipped.push_back(ell);
      result.budget_exceeded = true;
    } else {
      affordable.push_back(ell);
    }
  }
  if (affordable.empty()) return result;

  int64_t depth = affordable.back() * check_depth;
  std::vector<uint64_t> u = u_values(params, depth);
  EtaQuotient F = build_form(params);
  FormContext ctx = form_context(F);
  int64_t sturm = sturm_bound(params.g_weight, params.g_level);

  for (int64_t ell : affordable) {
    int chi = ctx.chi(ell);
    uint64_t scale = pow_mod(static_cast<uint64_t>(ell % params.m),
                             static_cast<uint64_t>(params.g_weight - 1),
                             static_cast<uint64_t>(params.m));
    if (chi < 0) scale = (params.m - scale) % params.m;
    if (chi == 0) scale = 0;
    bool ok = true;
    for (int64_t n = 1; n <= check_depth; ++n) {
      uint64_t lhs = u[static_cast<std::size_t>(ell * n)];
      if (n % ell == 0)
        lhs = (lhs + mul_mod(scale, u[static_cast<std::size_t>(n / ell)],
                             static_cast<uint64_t>(params.m))) %
              static_cast<uint64_t>(params.m);
      if (lhs != 0) {
        ok = false;
        break;
      }
    }
    if (!ok) {
      result.failed.push_back(ell);
      continue;
    }
    SerreCertificate cert;
    cert.params = params;
    cert.ell = ell;
    cert.residue_check = (ell + 1) % modulus == 0;
    cert.check_depth = check_depth;
    cert.sturm = sturm;
    cert.fully_certified = check_depth >= sturm;
    result.certificates.push_back(std::move(cert));
  }
  return result;
}

FinalReport verify_final(const CongruenceParams& params, int64_t ell,
                         int64_t n_max) {
  if (!is_prime(static_cast<uint64_t>(std::max<int64_t>(ell, 0))))
    throw std::domain_error("verify_final: ell must be prime");
  if (std::gcd(ell, params.g_level * params.m) != 1)
    throw std::domain_error(
        "verify_final: ell must be coprime to g_level * m");
  if (n_max < 1)
    throw std::domain_error("verify_final: n_max must be >= 1");
  FinalReport rep;
  rep.ell = ell;
  rep.n_max = n_max;
  std::vector<std::pair<int64_t, int64_t>> args;
  for (int64_t n = 1; n <= n_max; ++n) {
    if (std::gcd(n, ell) != 1) {
      ++rep.skipped_gcd;
      continue;
    }
    int64_t t =
        params.d * params.m * n * ell - params.r * (params.p - params.M);
    if (t < 0 || t % 24 != 0) {
      ++rep.skipped_nonintegral;
      continue;
    }
    args.emplace_back(n, t / 24);
    rep.max_argument = std::max(rep.max_argument, t / 24);
  }
  if (args.empty()) return rep;
  Series<ModRing> c =
      c_series(PartitionSpec{params.p, params.r, params.M * params.r},
               rep.max_argument + 1, ModRing(static_cast<uint64_t>(params.m)));
  for (const auto& [n, arg] : args) {
    ++rep.checked;
    if (c.at_index(arg) != 0) rep.violations.push_back(n);
  }
  return rep;
}

}  // namespace etaq
