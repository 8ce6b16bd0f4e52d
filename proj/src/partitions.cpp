#include "etaq/partitions.hpp"

#include "etaq/etaquot.hpp"

namespace etaq {

namespace {

void check_spec(const PartitionSpec& spec) {
  if (spec.k < 1)
    throw std::domain_error("partition spec: k must be >= 1");
}

mpz_class colored_choose(int64_t colors, int64_t mult) {
  if (mult == 0) return 1;
  if (colors <= 0) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(mult + colors - 1),
               static_cast<unsigned long>(mult));
  return r;
}

mpz_class count_rec(const PartitionSpec& spec, int64_t part, int64_t rem) {
  if (rem == 0) return 1;
  if (part == 0) return 0;
  int64_t colors = (part % spec.k == 0) ? spec.r2 - spec.r1 : spec.r2;
  mpz_class total = 0;
  for (int64_t mult = 0; mult * part <= rem; ++mult) {
    mpz_class ways = colored_choose(colors, mult);
    if (ways != 0)
      total += ways * count_rec(spec, part - 1, rem - mult * part);
  }
  return total;
}

}  // namespace

template <class Ring>
Series<Ring> c_series(const PartitionSpec& spec, int64_t precision, Ring ring) {
  check_spec(spec);
  if (precision < 1)
    throw std::domain_error("c_series: precision must be >= 1");
  std::map<int64_t, int64_t> exps;
  exps[spec.k] += spec.r1;
  exps[1] += -spec.r2;
  return eta_core(exps, precision, std::move(ring));
}

template <class Ring>
Series<Ring> bk_series(int64_t k, int64_t precision, Ring ring) {
  return c_series(PartitionSpec{k, 1, 1}, precision, std::move(ring));
}

mpz_class brute_force_count(const PartitionSpec& spec, int64_t n) {
  check_spec(spec);
  if (spec.r2 < spec.r1)
    throw std::domain_error(
        "brute_force_count: the coloring needs r2 >= r1 (parts divisible by k "
        "carry r2 - r1 colors)");
  if (n < 0) throw std::domain_error("brute_force_count: n must be >= 0");
  return count_rec(spec, n, n);
}

template Series<ModRing> c_series<ModRing>(const PartitionSpec&, int64_t,
                                           ModRing);
template Series<IntRing> c_series<IntRing>(const PartitionSpec&, int64_t,
                                           IntRing);
template Series<ModRing> bk_series<ModRing>(int64_t, int64_t, ModRing);
template Series<IntRing> bk_series<IntRing>(int64_t, int64_t, IntRing);

}  // namespace etaq
