#pragma once

#include <algorithm>
#include <cstring>
#include <functional>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "etaq/arith.hpp"
#include "etaq/kernels.hpp"
#include "etaq/ring.hpp"

namespace etaq {

struct SeriesConfig {
  // An operand counts as sparse when nonzeros * sparse_density_den <= length.
  std::size_t sparse_density_den = 8;
};
inline SeriesConfig& series_config() {
  static SeriesConfig cfg;
  return cfg;
}

// Weight / level / Nebentypus bundle consumed by the Hecke action.
struct FormContext {
  int64_t weight = 0;
  int64_t level = 1;
  std::function<int(int64_t)> character;  // d -> {-1, 0, 1}; empty means trivial

  int chi(int64_t d) const { return character ? character(d) : 1; }
};

namespace detail {

template <class Ring>
struct term_of;
template <>
struct term_of<ModRing> {
  using type = kernels::TermU64;
};
template <>
struct term_of<IntRing> {
  using type = kernels::TermMpz;
};

inline void raw_mul(const ModRing& r, const uint64_t* a, std::size_t na,
                    const uint64_t* b, std::size_t nb, uint64_t* c,
                    std::size_t nc) {
  kernels::mul_dense_mod(a, na, b, nb, c, nc, r.modulus());
}
inline void raw_mul(const IntRing&, const mpz_class* a, std::size_t na,
                    const mpz_class* b, std::size_t nb, mpz_class* c,
                    std::size_t nc) {
  kernels::mul_dense_int(a, na, b, nb, c, nc);
}
inline void raw_mul_sparse(const ModRing& r, const kernels::TermU64* t,
                           std::size_t nt, const uint64_t* b, std::size_t nb,
                           uint64_t* c, std::size_t nc) {
  kernels::mul_sparse_dense_mod(t, nt, b, nb, c, nc, r.modulus());
}
inline void raw_mul_sparse(const IntRing&, const kernels::TermMpz* t,
                           std::size_t nt, const mpz_class* b, std::size_t nb,
                           mpz_class* c, std::size_t nc) {
  kernels::mul_sparse_dense_int(t, nt, b, nb, c, nc);
}
inline void raw_divide(const ModRing& r, const uint64_t* num, std::size_t nnum,
                       const kernels::TermU64* t, std::size_t nt,
                       uint64_t lead_inv, uint64_t* b, std::size_t nb) {
  kernels::divide_mod(num, nnum, t, nt, lead_inv, b, nb, r.modulus());
}
inline void raw_divide(const IntRing&, const mpz_class* num, std::size_t nnum,
                       const kernels::TermMpz* t, std::size_t nt,
                       const mpz_class& lead_inv, mpz_class* b,
                       std::size_t nb) {
  kernels::divide_int(num, nnum, t, nt, lead_inv, b, nb);
}

template <class Ring>
std::vector<typename term_of<Ring>::type> gather_terms(
    const Ring& ring, const std::vector<typename Ring::value_type>& v,
    std::size_t from, std::size_t to) {
  std::vector<typename term_of<Ring>::type> out;
  for (std::size_t i = from; i < std::min(to, v.size()); ++i)
    if (!ring.is_zero(v[i])) out.push_back({i, v[i]});
  return out;
}

}  // namespace detail

// Truncated q-expansion sum_j coeffs[j] * q^((offset+j)/denom).
// Coefficients are known exactly for every exponent below
// (offset+len)/denom; exponents below offset/denom are structurally zero.
template <class Ring>
class Series {
 public:
  using value_type = typename Ring::value_type;

  Series(Ring ring, int64_t denom, int64_t offset,
         std::vector<value_type> coeffs)
      : ring_(std::move(ring)),
        denom_(denom),
        offset_(offset),
        coeffs_(std::move(coeffs)) {
    if (denom_ < 1) throw std::domain_error("Series: denom must be >= 1");
  }

  static Series zero(Ring ring, int64_t denom, int64_t prec_index) {
    std::size_t len = prec_index > 0 ? static_cast<std::size_t>(prec_index) : 0;
    std::vector<value_type> c(len, ring.zero());
    return Series(std::move(ring), denom, 0, std::move(c));
  }

  static Series constant(Ring ring, value_type v, int64_t denom,
                         int64_t prec_index) {
    Series s = zero(std::move(ring), denom, prec_index);
    if (!s.coeffs_.empty()) s.coeffs_[0] = std::move(v);
    return s;
  }

  const Ring& ring() const { return ring_; }
  int64_t denom() const { return denom_; }
  int64_t offset() const { return offset_; }
  int64_t size() const { return static_cast<int64_t>(coeffs_.size()); }
  int64_t prec_index() const { return offset_ + size(); }
  Rational precision() const { return Rational(prec_index(), denom_); }
  const std::vector<value_type>& coeffs() const { return coeffs_; }

  // Coefficient at absolute grading index idx (exponent idx/denom).
  value_type at_index(int64_t idx) const {
    if (idx >= prec_index())
      throw std::out_of_range("Series: index " + std::to_string(idx) +
                              " at or beyond precision index " +
                              std::to_string(prec_index()));
    if (idx < offset_) return ring_.zero();
    return coeffs_[static_cast<std::size_t>(idx - offset_)];
  }

  // Multiplication by q^(delta/denom).
  Series shifted(int64_t delta) const {
    Series s = *this;
    s.offset_ += delta;
    return s;
  }

  // Drops leading zeros; represented precision is unchanged.
  Series trimmed() const {
    std::size_t k = 0;
    while (k < coeffs_.size() && ring_.is_zero(coeffs_[k])) ++k;
    Series s = *this;
    s.offset_ += static_cast<int64_t>(k);
    s.coeffs_.erase(s.coeffs_.begin(), s.coeffs_.begin() + k);
    return s;
  }

  int64_t nonzero_count() const {
    int64_t n = 0;
    for (const auto& c : coeffs_)
      if (!ring_.is_zero(c)) ++n;
    return n;
  }

  friend bool operator==(const Series& a, const Series& b) {
    return a.ring_ == b.ring_ && a.denom_ == b.denom_ &&
           a.offset_ == b.offset_ && a.coeffs_ == b.coeffs_;
  }

 private:
  Ring ring_;
  int64_t denom_;
  int64_t offset_;
  std::vector<value_type> coeffs_;
};

template <class Ring>
void require_compatible(const Series<Ring>& a, const Series<Ring>& b) {
  if (!(a.ring() == b.ring()))
    throw std::invalid_argument("series ring mismatch");
  if (a.denom() != b.denom())
    throw std::invalid_argument("series denom mismatch; regrade first");
}

template <class Ring>
Series<Ring> add(const Series<Ring>& a, const Series<Ring>& b) {
  require_compatible(a, b);
  const Ring& R = a.ring();
  int64_t off = std::min(a.offset(), b.offset());
  int64_t prec = std::min(a.prec_index(), b.prec_index());
  int64_t len = std::max<int64_t>(0, prec - off);
  std::vector<typename Ring::value_type> c(static_cast<std::size_t>(len),
                                           R.zero());
  for (int64_t i = 0; i < len; ++i)
    c[static_cast<std::size_t>(i)] = R.add(a.at_index(off + i), b.at_index(off + i));
  return Series<Ring>(R, a.denom(), off, std::move(c));
}

template <class Ring>
Series<Ring> sub(const Series<Ring>& a, const Series<Ring>& b) {
  require_compatible(a, b);
  const Ring& R = a.ring();
  int64_t off = std::min(a.offset(), b.offset());
  int64_t prec = std::min(a.prec_index(), b.prec_index());
  int64_t len = std::max<int64_t>(0, prec - off);
  std::vector<typename Ring::value_type> c(static_cast<std::size_t>(len),
                                           R.zero());
  for (int64_t i = 0; i < len; ++i)
    c[static_cast<std::size_t>(i)] = R.sub(a.at_index(off + i), b.at_index(off + i));
  return Series<Ring>(R, a.denom(), off, std::move(c));
}

// Product truncated to the provable precision:
// prec = min(prec(a) + offset(b), prec(b) + offset(a)), i.e. len = min(la, lb).
template <class Ring>
Series<Ring> mul(const Series<Ring>& a, const Series<Ring>& b) {
  require_compatible(a, b);
  const Ring& R = a.ring();
  std::size_t nc = static_cast<std::size_t>(std::min(a.size(), b.size()));
  std::vector<typename Ring::value_type> c(nc, R.zero());
  if (nc > 0) {
    const auto& av = a.coeffs();
    const auto& bv = b.coeffs();
    std::size_t nnz_a = 0, nnz_b = 0;
    for (std::size_t i = 0; i < nc; ++i) {
      if (!R.is_zero(av[i])) ++nnz_a;
      if (!R.is_zero(bv[i])) ++nnz_b;
    }
    std::size_t nnz = std::min(nnz_a, nnz_b);
    if (nnz * series_config().sparse_density_den <= nc) {
      const auto& sv = nnz_a <= nnz_b ? av : bv;
      const auto& dv = nnz_a <= nnz_b ? bv : av;
      auto terms = detail::gather_terms(R, sv, 0, nc);
      detail::raw_mul_sparse(R, terms.data(), terms.size(), dv.data(), nc,
                             c.data(), nc);
    } else {
      detail::raw_mul(R, av.data(), nc, bv.data(), nc, c.data(), nc);
    }
  }
  return Series<Ring>(R, a.denom(), a.offset() + b.offset(), std::move(c));
}

// Reciprocal with offset negated; requires a unit leading coefficient.
template <class Ring>
Series<Ring> invert(const Series<Ring>& f) {
  const Ring& R = f.ring();
  if (f.size() == 0 || !R.is_unit(f.coeffs()[0]))
    throw std::domain_error("invert: leading coefficient is not a unit");
  std::size_t n = static_cast<std::size_t>(f.size());
  auto terms = detail::gather_terms(R, f.coeffs(), 1, n);
  std::vector<typename Ring::value_type> b(n, R.zero());
  detail::raw_divide(R, nullptr, 0, terms.data(), terms.size(),
                     R.inv(f.coeffs()[0]), b.data(), n);
  return Series<Ring>(R, f.denom(), -f.offset(), std::move(b));
}

template <class Ring>
Series<Ring> pow(const Series<Ring>& f, int64_t e) {
  if (e < 0) return pow(invert(f), -e);
  if (e == 0)
    return Series<Ring>::constant(f.ring(), f.ring().one(), f.denom(),
                                  f.size());
  Series<Ring> acc = f;
  int bit = 62;
  while (bit >= 0 && ((e >> bit) & 1) == 0) --bit;
  for (--bit; bit >= 0; --bit) {
    acc = mul(acc, acc);
    if ((e >> bit) & 1) acc = mul(acc, f);
  }
  return acc;
}

// Substitution q -> q^t: indices, offset, and precision all scale by t.
template <class Ring>
Series<Ring> dilate(const Series<Ring>& f, int64_t t) {
  if (t < 1) throw std::domain_error("dilate: factor must be >= 1");
  if (t == 1) return f;
  const Ring& R = f.ring();
  std::size_t len = static_cast<std::size_t>(f.size()) * static_cast<std::size_t>(t);
  std::vector<typename Ring::value_type> c(len, R.zero());
  for (int64_t j = 0; j < f.size(); ++j)
    c[static_cast<std::size_t>(j * t)] = f.coeffs()[static_cast<std::size_t>(j)];
  return Series<Ring>(R, f.denom(), f.offset() * t, std::move(c));
}

// a(n) -> a(p n); integral grading only.
template <class Ring>
Series<Ring> u_op(const Series<Ring>& f, int64_t p) {
  if (p < 1) throw std::domain_error("u_op: p must be >= 1");
  if (f.denom() != 1)
    throw std::invalid_argument("u_op: series must be in integral grading");
  const Ring& R = f.ring();
  int64_t off = ceil_div(f.offset(), p);
  int64_t prec = ceil_div(f.prec_index(), p);
  int64_t len = std::max<int64_t>(0, prec - off);
  std::vector<typename Ring::value_type> c(static_cast<std::size_t>(len),
                                           R.zero());
  for (int64_t n = off; n < prec; ++n)
    c[static_cast<std::size_t>(n - off)] = f.at_index(p * n);
  return Series<Ring>(R, 1, off, std::move(c));
}

// Hecke action a(n) -> a(p n) + chi(p) p^(k-1) a(n/p), with a(n/p) read as 0
// when p does not divide n. Integral grading only.
template <class Ring>
Series<Ring> hecke_t(const Series<Ring>& f, int64_t p, const FormContext& ctx) {
  if (f.denom() != 1)
    throw std::invalid_argument("hecke_t: series must be in integral grading");
  if (p < 2 || !is_prime(static_cast<uint64_t>(p)))
    throw std::domain_error("hecke_t: p must be prime");
  if (ctx.weight < 1)
    throw std::domain_error("hecke_t: weight must be >= 1");
  const Ring& R = f.ring();
  int chi = ctx.chi(p);
  typename Ring::value_type scale = R.zero();
  if (chi != 0) {
    scale = R.pow(R.from_int(p), static_cast<uint64_t>(ctx.weight - 1));
    if (chi < 0) scale = R.neg(scale);
  }
  int64_t o = f.offset(), P = f.prec_index();
  int64_t off = ceil_div(o, p);
  int64_t prec = ceil_div(P, p);
  if (chi != 0) {
    // The shift term reaches exponent p*o and needs a(n/p) known up to p*P.
    off = std::min(off, p * o);
    prec = std::min(prec, p * P);
  }
  int64_t len = std::max<int64_t>(0, prec - off);
  std::vector<typename Ring::value_type> c(static_cast<std::size_t>(len),
                                           R.zero());
  for (int64_t n = off; n < prec; ++n) {
    typename Ring::value_type v = R.zero();
    int64_t pn = p * n;
    if (pn >= o && pn < P) v = f.at_index(pn);
    if (chi != 0 && n % p == 0) {
      int64_t q = n / p;
      if (q >= o && q < P) v = R.add(v, R.mul(scale, f.at_index(q)));
    }
    c[static_cast<std::size_t>(n - off)] = std::move(v);
  }
  return Series<Ring>(R, 1, off, std::move(c));
}

// Rewrites exponents over a new grading denominator; every nonzero
// coefficient must sit at an exponent representable in the new grading.
template <class Ring>
Series<Ring> regrade(const Series<Ring>& f, int64_t new_denom) {
  if (new_denom < 1) throw std::domain_error("regrade: denom must be >= 1");
  if (new_denom == f.denom()) return f;
  const Ring& R = f.ring();
  int64_t D = f.denom();
  int64_t o2 = ceil_div(f.offset() * new_denom, D);
  int64_t p2 = ceil_div(f.prec_index() * new_denom, D);
  int64_t len = std::max<int64_t>(0, p2 - o2);
  std::vector<typename Ring::value_type> c(static_cast<std::size_t>(len),
                                           R.zero());
  for (int64_t j = 0; j < f.size(); ++j) {
    const auto& v = f.coeffs()[static_cast<std::size_t>(j)];
    if (R.is_zero(v)) continue;
    int64_t num = (f.offset() + j) * new_denom;
    if (num % D != 0)
      throw std::domain_error(
          "regrade: exponent " + Rational(f.offset() + j, D).str() +
          " is not representable over denom " + std::to_string(new_denom));
    c[static_cast<std::size_t>(num / D - o2)] = v;
  }
  return Series<Ring>(R, new_denom, o2, std::move(c));
}

// Coefficient at a rational exponent; 0 off-grading or below the offset,
// errors at or beyond the represented precision.
template <class Ring>
typename Ring::value_type coeff_at(const Series<Ring>& f, const Rational& e) {
  if (!(e < f.precision()))
    throw std::out_of_range("coeff_at: exponent " + e.str() +
                            " at or beyond precision " + f.precision().str());
  if ((static_cast<__int128>(f.denom()) * e.num) % e.den != 0)
    return f.ring().zero();
  int64_t idx = f.denom() / e.den * e.num;
  if (idx < f.offset()) return f.ring().zero();
  return f.coeffs()[static_cast<std::size_t>(idx - f.offset())];
}

inline Series<ModRing> reduce_mod(const Series<IntRing>& f, uint64_t m) {
  ModRing R(m);
  std::vector<uint64_t> c(f.coeffs().size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = R.from_mpz(f.coeffs()[i]);
  return Series<ModRing>(R, f.denom(), f.offset(), std::move(c));
}

// Text form, one coefficient per line after a single header line:
//   QS1 denom=<D> offset=<o> len=<L> ring=<int|mod:m>
template <class Ring>
void write_series(std::ostream& os, const Series<Ring>& s) {
  os << "QS1 denom=" << s.denom() << " offset=" << s.offset()
     << " len=" << s.size() << " ring=" << ring_tag(s.ring()) << "\n";
  for (const auto& c : s.coeffs()) os << s.ring().to_string(c) << "\n";
}

template <class Ring>
std::string series_to_string(const Series<Ring>& s) {
  std::ostringstream os;
  write_series(os, s);
  return os.str();
}

namespace detail {

inline int64_t header_field(const std::string& token, const char* key) {
  std::string prefix = std::string(key) + "=";
  if (token.rfind(prefix, 0) != 0)
    throw std::invalid_argument("malformed series header near '" + token + "'");
  try {
    return std::stoll(token.substr(prefix.size()));
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed series header near '" + token + "'");
  }
}

}  // namespace detail

template <class Ring>
Series<Ring> read_series(std::istream& is, Ring ring) {
  std::string magic;
  if (!(is >> magic) || magic != "QS1")
    throw std::invalid_argument("series input is not in QS1 format");
  std::string td, to, tl, tr;
  if (!(is >> td >> to >> tl >> tr))
    throw std::invalid_argument("malformed series header");
  int64_t denom = detail::header_field(td, "denom");
  int64_t offset = detail::header_field(to, "offset");
  int64_t len = detail::header_field(tl, "len");
  if (tr.rfind("ring=", 0) != 0)
    throw std::invalid_argument("malformed series header near '" + tr + "'");
  if (tr.substr(5) != ring_tag(ring))
    throw std::invalid_argument("series ring mismatch: file has " +
                                tr.substr(5) + ", expected " + ring_tag(ring));
  if (len < 0) throw std::invalid_argument("malformed series header");
  std::vector<typename Ring::value_type> c;
  c.reserve(static_cast<std::size_t>(len));
  for (int64_t i = 0; i < len; ++i) {
    std::string tok;
    if (!(is >> tok))
      throw std::invalid_argument("series input truncated at coefficient " +
                                  std::to_string(i));
    c.push_back(ring.from_string(tok));
  }
  return Series<Ring>(std::move(ring), denom, offset, std::move(c));
}

template <class Ring>
Series<Ring> series_from_string(const std::string& text, Ring ring) {
  std::istringstream is(text);
  return read_series(is, std::move(ring));
}

}  // namespace etaq
