#include "etaq/etaquot.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <numeric>
#include <sstream>

namespace etaq {

std::string format_eta(const EtaQuotient& e) {
  std::ostringstream os;
  os << "N=" << e.level << ";";
  bool first = true;
  for (auto it = e.exponents.rbegin(); it != e.exponents.rend(); ++it) {
    if (it->second == 0) continue;
    os << (first ? " " : " * ") << it->first << "^" << it->second;
    first = false;
  }
  return os.str();
}

namespace {

int64_t parse_int(const std::string& s, const std::string& what) {
  std::size_t pos = 0;
  int64_t v;
  try {
    v = std::stoll(s, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("eta quotient: bad " + what + " '" + s + "'");
  }
  while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
    ++pos;
  if (pos != s.size())
    throw std::invalid_argument("eta quotient: bad " + what + " '" + s + "'");
  return v;
}

std::string strip(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

}  // namespace

EtaQuotient parse_eta(const std::string& text) {
  std::size_t semi = text.find(';');
  if (semi == std::string::npos)
    throw std::invalid_argument("eta quotient: missing ';' after the level");
  std::string head = strip(text.substr(0, semi));
  if (head.rfind("N=", 0) != 0)
    throw std::invalid_argument("eta quotient: expected 'N=<level>', got '" +
                                head + "'");
  EtaQuotient e;
  e.level = parse_int(head.substr(2), "level");
  std::string body = strip(text.substr(semi + 1));
  if (!body.empty()) {
    std::size_t pos = 0;
    while (pos <= body.size()) {
      std::size_t star = body.find('*', pos);
      std::string term = strip(star == std::string::npos
                                   ? body.substr(pos)
                                   : body.substr(pos, star - pos));
      std::size_t caret = term.find('^');
      if (caret == std::string::npos)
        throw std::invalid_argument("eta quotient: term '" + term +
                                    "' lacks '^'");
      int64_t delta = parse_int(strip(term.substr(0, caret)), "divisor");
      int64_t r = parse_int(strip(term.substr(caret + 1)), "exponent");
      if (r != 0) e.exponents[delta] += r;
      if (star == std::string::npos) break;
      pos = star + 1;
    }
  }
  for (auto it = e.exponents.begin(); it != e.exponents.end();)
    it = it->second == 0 ? e.exponents.erase(it) : std::next(it);
  validate_quotient(e);
  return e;
}

void validate_quotient(const EtaQuotient& e) {
  if (e.level < 1)
    throw std::invalid_argument("eta quotient: level must be >= 1");
  for (const auto& [delta, r] : e.exponents) {
    if (delta < 1)
      throw std::invalid_argument("eta quotient: divisor " +
                                  std::to_string(delta) + " must be >= 1");
    if (e.level % delta != 0)
      throw std::invalid_argument("eta quotient: " + std::to_string(delta) +
                                  " does not divide the level " +
                                  std::to_string(e.level));
  }
}

bool validate_ghn(const EtaQuotient& e) {
  validate_quotient(e);
  int64_t s1 = 0, s2 = 0;
  for (const auto& [delta, r] : e.exponents) {
    s1 += delta * r;
    s2 += (e.level / delta) * r;
  }
  return s1 % 24 == 0 && s2 % 24 == 0;
}

Rational weight(const EtaQuotient& e) {
  validate_quotient(e);
  int64_t total = 0;
  for (const auto& [delta, r] : e.exponents) total += r;
  return Rational(total, 2);
}

int character_at(const EtaQuotient& e, int64_t d) {
  Rational w = weight(e);
  if (!w.is_integer())
    throw std::domain_error(
        "character_at: defined only for integral weight, got " + w.str());
  std::map<int64_t, int64_t> prime_exp;
  for (const auto& [delta, r] : e.exponents) {
    int64_t x = delta;
    for (int64_t q = 2; q * q <= x; ++q) {
      while (x % q == 0) {
        prime_exp[q] += r;
        x /= q;
      }
    }
    if (x > 1) prime_exp[x] += r;
  }
  int64_t kernel = 1;
  for (const auto& [q, exp] : prime_exp)
    if (((exp % 2) + 2) % 2 == 1) kernel *= q;
  if (((w.num % 2) + 2) % 2 == 1) kernel = -kernel;
  return kronecker(kernel, d);
}

Rational cusp_order(const EtaQuotient& e, int64_t d) {
  validate_quotient(e);
  if (d < 1 || e.level % d != 0)
    throw std::invalid_argument("cusp_order: " + std::to_string(d) +
                                " does not divide the level");
  Rational sum(0);
  for (const auto& [delta, r] : e.exponents) {
    int64_t g = std::gcd(d, delta);
    sum += Rational(r * g * g, delta);
  }
  return sum * Rational(e.level, 24 * d * std::gcd(d, e.level / d));
}

std::vector<int64_t> divisors(int64_t n) {
  std::vector<int64_t> out;
  for (int64_t d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      if (d != n / d) out.push_back(n / d);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::pair<bool, CuspOrderReport> is_cusp_form(const EtaQuotient& e) {
  validate_quotient(e);
  CuspOrderReport rep;
  bool positive = true;
  for (int64_t d : divisors(e.level)) {
    Rational ord = cusp_order(e, d);
    rep.orders.emplace_back(d, ord);
    rep.valence += Rational(euler_phi(std::gcd(d, e.level / d))) * ord;
    if (!(Rational(0) < ord)) positive = false;
  }
  rep.target = weight(e) * Rational(gamma0_index(e.level), 12);
  Rational w = weight(e);
  bool ok = validate_ghn(e) && w.is_integer() && w.num > 0 && positive;
  return {ok, rep};
}

FormContext form_context(const EtaQuotient& e) {
  Rational w = weight(e);
  if (!w.is_integer())
    throw std::domain_error("form_context: integral weight required, got " +
                            w.str());
  character_at(e, 1);
  FormContext ctx;
  ctx.weight = w.num;
  ctx.level = e.level;
  ctx.character = [quotient = e](int64_t d) {
    return character_at(quotient, d);
  };
  return ctx;
}

std::vector<std::pair<int64_t, int>> pentagonal_terms(int64_t delta,
                                                      int64_t bound) {
  std::vector<std::pair<int64_t, int>> out;
  if (bound <= 0) return out;
  out.emplace_back(0, 1);
  for (int64_t k = 1;; ++k) {
    int64_t g1 = delta * (k * (3 * k - 1) / 2);
    if (g1 >= bound) break;
    int sign = (k % 2 == 1) ? -1 : 1;
    out.emplace_back(g1, sign);
    int64_t g2 = delta * (k * (3 * k + 1) / 2);
    if (g2 < bound) out.emplace_back(g2, sign);
  }
  return out;
}

namespace {

template <class Ring>
std::vector<typename detail::term_of<Ring>::type> pent_ring_terms(
    int64_t delta, int64_t bound, const Ring& ring) {
  std::vector<typename detail::term_of<Ring>::type> out;
  for (const auto& [idx, sign] : pentagonal_terms(delta, bound))
    out.push_back({static_cast<std::size_t>(idx), ring.from_int(sign)});
  return out;
}

template <class Ring>
Series<Ring> phi_series(int64_t delta, int64_t bound, const Ring& ring) {
  std::vector<typename Ring::value_type> c(static_cast<std::size_t>(bound),
                                           ring.zero());
  for (const auto& [idx, sign] : pentagonal_terms(delta, bound))
    c[static_cast<std::size_t>(idx)] = ring.from_int(sign);
  return Series<Ring>(ring, 1, 0, std::move(c));
}

// acc *= phi(q^delta)^e. Repeated sparse multiplication costs about
// e * terms per output; binary powering about (squarings + multiplies) * L/2.
template <class Ring>
Series<Ring> apply_phi_power(Series<Ring> acc, int64_t delta, int64_t e,
                             const Ring& ring, int64_t bound) {
  Series<Ring> phi = phi_series(delta, bound, ring);
  double terms = static_cast<double>(phi.nonzero_count());
  int muls = std::bit_width(static_cast<uint64_t>(e)) - 1 +
             std::popcount(static_cast<uint64_t>(e)) - 1;
  double cost_sparse = static_cast<double>(e) * terms * 2.0 / 3.0;
  double cost_binary = static_cast<double>(muls) * static_cast<double>(bound) / 2.0;
  if (cost_sparse <= cost_binary) {
    for (int64_t i = 0; i < e; ++i) acc = mul(acc, phi);
    return acc;
  }
  return mul(acc, pow(phi, e));
}

// acc /= phi(q^delta)^e via the sequential division kernel.
template <class Ring>
Series<Ring> apply_phi_division(Series<Ring> acc, int64_t delta, int64_t e,
                                const Ring& ring, int64_t bound) {
  auto terms = pent_ring_terms(delta, bound, ring);
  std::size_t n = acc.coeffs().size();
  std::size_t nt = terms.empty() ? 0 : terms.size() - 1;
  const auto* tail = nt > 0 ? terms.data() + 1 : nullptr;
  for (int64_t i = 0; i < e; ++i) {
    std::vector<typename Ring::value_type> out(n, ring.zero());
    detail::raw_divide(ring, acc.coeffs().data(), n, tail, nt, ring.one(),
                       out.data(), n);
    acc = Series<Ring>(ring, 1, acc.offset(), std::move(out));
  }
  return acc;
}

}  // namespace

template <class Ring>
Series<Ring> eta_core(const std::map<int64_t, int64_t>& exps, int64_t bound,
                      Ring ring) {
  if (bound < 0) bound = 0;
  Series<Ring> acc = Series<Ring>::constant(ring, ring.one(), 1, bound);
  for (const auto& [delta, r] : exps)
    if (r > 0) acc = apply_phi_power(std::move(acc), delta, r, ring, bound);
  for (const auto& [delta, r] : exps)
    if (r < 0) acc = apply_phi_division(std::move(acc), delta, -r, ring, bound);
  return acc;
}

template <class Ring>
Series<Ring> expand(const EtaQuotient& e, int64_t bound24, Ring ring) {
  validate_quotient(e);
  int64_t pre = 0;
  for (const auto& [delta, r] : e.exponents) pre += delta * r;
  if (bound24 <= pre)
    throw std::domain_error("expand: precision " + Rational(bound24, 24).str() +
                            " does not exceed the q^(" + Rational(pre, 24).str() +
                            ") prefactor");
  int64_t L = ceil_div(bound24 - pre, 24);
  Series<Ring> core = eta_core(e.exponents, L, ring);
  int64_t len24 = bound24 - pre;
  std::vector<typename Ring::value_type> c(static_cast<std::size_t>(len24),
                                           ring.zero());
  for (int64_t j = 0; j < core.size(); ++j)
    c[static_cast<std::size_t>(24 * j)] = core.coeffs()[static_cast<std::size_t>(j)];
  return Series<Ring>(ring, 24, pre, std::move(c));
}

template Series<ModRing> eta_core<ModRing>(const std::map<int64_t, int64_t>&,
                                           int64_t, ModRing);
template Series<IntRing> eta_core<IntRing>(const std::map<int64_t, int64_t>&,
                                           int64_t, IntRing);
template Series<ModRing> expand<ModRing>(const EtaQuotient&, int64_t, ModRing);
template Series<IntRing> expand<IntRing>(const EtaQuotient&, int64_t, IntRing);

}  // namespace etaq
