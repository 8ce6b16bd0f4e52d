#include <omp.h>

#include <CLI11.hpp>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>

#include "etaq/congruence.hpp"
#include "etaq/etaquot.hpp"
#include "etaq/partitions.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitInputError = 2;

enum class Fmt { json, csv, text };

Fmt parse_fmt(const std::string& s, Fmt fallback) {
  if (s.empty()) return fallback;
  if (s == "json") return Fmt::json;
  if (s == "csv") return Fmt::csv;
  if (s == "text") return Fmt::text;
  throw CLI::ValidationError("--output", "expected one of json, csv, text");
}

uint64_t fnv1a64(const std::string& s) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

// On-disk store for expanded quotients, keyed by a content hash of
// (canonical quotient text, expansion bound, ring). Writes go through a
// temp file in the same directory followed by a rename.
class SeriesCache {
 public:
  explicit SeriesCache(fs::path dir) : dir_(std::move(dir)) {}

  fs::path path_for(const std::string& key) const {
    return dir_ / (hex64(fnv1a64(key)) + ".qs");
  }

  std::optional<std::string> load(const std::string& key) const {
    std::ifstream in(path_for(key), std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  }

  void store(const std::string& key, const std::string& text) const {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    fs::path dst = path_for(key);
    fs::path tmp = dst;
    tmp += ".tmp" + std::to_string(static_cast<long>(::getpid()));
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      out << text;
      if (!out) {
        fs::remove(tmp, ec);
        return;
      }
    }
    fs::rename(tmp, dst, ec);
    if (ec) fs::remove(tmp, ec);
  }

 private:
  fs::path dir_;
};

void print_text(const json& j, std::ostream& os, const std::string& prefix) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
      print_text(it.value(), os, key);
    }
  } else if (j.is_array()) {
    os << prefix << " =";
    for (const auto& v : j)
      os << " " << (v.is_string() ? v.get<std::string>() : v.dump());
    os << "\n";
  } else {
    os << prefix << " = "
       << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

int emit_report(const json& j, Fmt fmt) {
  if (fmt == Fmt::csv)
    throw CLI::ValidationError("--output",
                               "csv applies only to series commands");
  if (fmt == Fmt::json)
    std::cout << j.dump(2) << "\n";
  else
    print_text(j, std::cout, "");
  return j.value("verified", true) ? kExitOk : kExitVerifyFailed;
}

template <class Ring>
json series_json(const etaq::Series<Ring>& s) {
  json coeffs = json::array();
  for (const auto& c : s.coeffs()) coeffs.push_back(s.ring().to_string(c));
  return json{{"denom", s.denom()},
              {"offset", s.offset()},
              {"len", s.size()},
              {"ring", etaq::ring_tag(s.ring())},
              {"coeffs", std::move(coeffs)}};
}

template <class Ring>
void emit_series(const etaq::Series<Ring>& s, Fmt fmt,
                 const std::string& command) {
  switch (fmt) {
    case Fmt::text:
      etaq::write_series(std::cout, s);
      break;
    case Fmt::csv:
      for (int64_t j = 0; j < s.size(); ++j)
        std::cout << s.offset() + j << ","
                  << s.ring().to_string(
                         s.coeffs()[static_cast<std::size_t>(j)])
                  << "\n";
      break;
    case Fmt::json:
      std::cout << json{{"schema", 1},
                        {"command", command},
                        {"series", series_json(s)}}
                       .dump(2)
                << "\n";
      break;
  }
}

json params_json(const etaq::CongruenceParams& pr) {
  return json{{"p", pr.p},         {"M", pr.M},
              {"r", pr.r},         {"m", pr.m},
              {"s", pr.s},         {"v", pr.v},
              {"d", pr.d},         {"m_prime", pr.m_prime},
              {"a", pr.a},         {"b", pr.b},
              {"kappa", pr.kappa}, {"g_weight", pr.g_weight},
              {"g_level", pr.g_level}};
}

struct Options {
  std::string quotient;
  int64_t precision = 100;
  int64_t modulus = 0;  // 0 means exact integers
  int64_t k = 5, r1 = 1, r2 = 1;
  int64_t p = 5, M = 1, r = 1, m = 11;
  int64_t ell = 0;
  int64_t ell_limit = 2000;
  int64_t check_depth = 50;
  int64_t n_max = 300;
  int64_t max_bound = int64_t{1} << 40;
  std::string cache_dir = ".etaq-cache";
  std::string output;
  int threads = 0;
};

fs::path resolve_cache_dir(const Options& opt) {
  if (const char* env = std::getenv("ETAQ_CACHE"); env && *env)
    return fs::path(env);
  return fs::path(opt.cache_dir);
}

template <class Ring>
int run_expand(const etaq::EtaQuotient& e, const Options& opt, Ring ring,
               Fmt fmt) {
  const int64_t bound24 = 24 * opt.precision;
  SeriesCache cache(resolve_cache_dir(opt));
  const std::string key = etaq::format_eta(e) + "|" +
                          std::to_string(bound24) + "|" + etaq::ring_tag(ring);
  etaq::Series<Ring> s = [&] {
    if (auto hit = cache.load(key))
      return etaq::series_from_string(*hit, ring);
    auto fresh = etaq::expand(e, bound24, ring);
    cache.store(key, etaq::series_to_string(fresh));
    return fresh;
  }();
  emit_series(s, fmt, "expand-eta");
  return kExitOk;
}

int cmd_expand_eta(const Options& opt) {
  Fmt fmt = parse_fmt(opt.output, Fmt::text);
  etaq::EtaQuotient e = etaq::parse_eta(opt.quotient);
  if (opt.modulus)
    return run_expand(e, opt, etaq::ModRing(static_cast<uint64_t>(opt.modulus)),
                      fmt);
  return run_expand(e, opt, etaq::IntRing{}, fmt);
}

int cmd_check_eta(const Options& opt) {
  Fmt fmt = parse_fmt(opt.output, Fmt::json);
  etaq::EtaQuotient e = etaq::parse_eta(opt.quotient);
  etaq::Rational w = etaq::weight(e);
  auto [cusp, report] = etaq::is_cusp_form(e);
  json orders = json::object();
  for (const auto& [dv, ord] : report.orders)
    orders[std::to_string(dv)] = ord.str();
  json j{{"schema", 1},
         {"command", "check-eta"},
         {"quotient", etaq::format_eta(e)},
         {"ghn", etaq::validate_ghn(e)},
         {"weight", w.str()},
         {"integral_weight", w.den == 1},
         {"cusp_orders", std::move(orders)},
         {"valence", report.valence.str()},
         {"valence_target", report.target.str()},
         {"cusp_form", cusp}};
  return emit_report(j, fmt);
}

int cmd_partition_series(const Options& opt) {
  Fmt fmt = parse_fmt(opt.output, Fmt::csv);
  etaq::PartitionSpec spec{opt.k, opt.r1, opt.r2};
  if (opt.modulus) {
    emit_series(etaq::c_series(spec, opt.precision,
                               etaq::ModRing(static_cast<uint64_t>(opt.modulus))),
                fmt, "partition-series");
  } else {
    emit_series(etaq::c_series(spec, opt.precision, etaq::IntRing{}), fmt,
                "partition-series");
  }
  return kExitOk;
}

int cmd_derive_params(const Options& opt) {
  Fmt fmt = parse_fmt(opt.output, Fmt::json);
  auto pr = etaq::derive_params(opt.p, opt.M, opt.r, opt.m);
  json j{{"schema", 1},
         {"command", "derive-params"},
         {"params", params_json(pr)},
         {"form", etaq::format_eta(etaq::build_form(pr))},
         {"warnings", pr.warnings}};
  return emit_report(j, fmt);
}

int cmd_verify_pipeline(const Options& opt) {
  Fmt fmt = parse_fmt(opt.output, Fmt::json);
  auto pr = etaq::derive_params(opt.p, opt.M, opt.r, opt.m);
  bool lift = etaq::verify_lift(pr, opt.precision);
  auto um = etaq::match_u_against_counts(pr, opt.precision);
  json j{{"schema", 1},
         {"command", "verify-pipeline"},
         {"params", params_json(pr)},
         {"form", etaq::format_eta(etaq::build_form(pr))},
         {"precision", opt.precision},
         {"lift_verified", lift},
         {"u_match",
          {{"checked", um.checked},
           {"mismatches", um.mismatches},
           {"support_violations", um.support_violations}}},
         {"verified", lift && um.ok()}};
  return emit_report(j, fmt);
}

int cmd_search_ell(const Options& opt) {
  Fmt fmt = parse_fmt(opt.output, Fmt::json);
  auto pr = etaq::derive_params(opt.p, opt.M, opt.r, opt.m);
  auto result = etaq::search_serre_primes(pr, opt.ell_limit, opt.check_depth,
                                          opt.max_bound);
  json certs = json::array();
  for (const auto& c : result.certificates) {
    json cj = params_json(c.params);
    cj["ell"] = c.ell;
    cj["residue_check"] = c.residue_check;
    cj["check_depth"] = c.check_depth;
    cj["sturm_bound"] = c.sturm;
    cj["fully_certified"] = c.fully_certified;
    certs.push_back(std::move(cj));
  }
  json j{{"schema", 1},
         {"command", "search-ell"},
         {"params", params_json(pr)},
         {"candidate_modulus", pr.g_level * pr.m},
         {"candidates",
          etaq::primes_in_progression(-1, pr.g_level * pr.m, opt.ell_limit)},
         {"check_depth", opt.check_depth},
         {"certificates", std::move(certs)},
         {"failed", result.failed},
         {"skipped", result.skipped},
         {"budget_exceeded", result.budget_exceeded}};
  return emit_report(j, fmt);
}

int cmd_verify_congruence(const Options& opt) {
  Fmt fmt = parse_fmt(opt.output, Fmt::json);
  auto pr = etaq::derive_params(opt.p, opt.M, opt.r, opt.m);
  auto rep = etaq::verify_final(pr, opt.ell, opt.n_max);
  json j{{"schema", 1},
         {"command", "verify-congruence"},
         {"params", params_json(pr)},
         {"ell", rep.ell},
         {"n_max", rep.n_max},
         {"checked", rep.checked},
         {"skipped_nonintegral", rep.skipped_nonintegral},
         {"skipped_gcd", rep.skipped_gcd},
         {"max_argument", rep.max_argument},
         {"violations", rep.violations},
         {"verified", rep.verified()}};
  return emit_report(j, fmt);
}

int emit_error(const std::string& command, const std::string& message,
               const std::vector<std::string>& violations = {}) {
  json j{{"schema", 1}, {"command", command}, {"error", message}};
  if (!violations.empty()) j["violations"] = violations;
  std::cout << j.dump(2) << "\n";
  return kExitInputError;
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  CLI::App app{"eta-quotient partition congruence toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--cache-dir", opt.cache_dir,
                 "series cache directory (env ETAQ_CACHE overrides)");
  app.add_option("--threads", opt.threads, "worker thread count");
  app.add_option("--output", opt.output, "output format: json, csv, text");

  auto* expand = app.add_subcommand(
      "expand-eta", "expand an eta-quotient as a truncated q-series");
  expand->add_option("quotient", opt.quotient, "e.g. \"N=5; 5^1 * 1^43\"")
      ->required();
  expand->add_option("--precision", opt.precision, "integer-exponent window")
      ->check(CLI::PositiveNumber);
  expand->add_option("--modulus", opt.modulus, "reduce coefficients mod m");

  auto* check = app.add_subcommand(
      "check-eta", "report modularity conditions and cusp orders");
  check->add_option("quotient", opt.quotient, "e.g. \"N=5; 5^1 * 1^43\"")
      ->required();

  auto* pseries = app.add_subcommand(
      "partition-series", "weighted k-regular partition counts c_{k,r1,r2}");
  pseries->add_option("--k", opt.k, "regularity modulus")->required();
  pseries->add_option("--r1", opt.r1, "numerator exponent")->required();
  pseries->add_option("--r2", opt.r2, "denominator exponent")->required();
  pseries->add_option("--precision", opt.precision, "number of terms")
      ->check(CLI::PositiveNumber);
  pseries->add_option("--modulus", opt.modulus, "reduce coefficients mod m");

  auto* derive = app.add_subcommand(
      "derive-params", "derive congruence parameters from (p, M, r, m)");
  auto* pipeline = app.add_subcommand(
      "verify-pipeline",
      "check the congruence pipeline: lift identity and u(n) extraction");
  pipeline->add_option("--precision", opt.precision, "check depth")
      ->check(CLI::PositiveNumber);
  auto* search = app.add_subcommand(
      "search-ell", "scan Serre prime candidates and certify annihilation");
  search->add_option("--ell-limit", opt.ell_limit, "candidate bound")
      ->check(CLI::PositiveNumber);
  search->add_option("--check-depth", opt.check_depth, "annihilation depth")
      ->check(CLI::PositiveNumber);
  search->add_option("--max-bound", opt.max_bound,
                     "expansion budget (grading-24 index)");
  auto* verify = app.add_subcommand(
      "verify-congruence", "check the final congruence for a given ell");
  verify->add_option("--ell", opt.ell, "prime ell")->required();
  verify->add_option("--n-max", opt.n_max, "largest n to check")
      ->check(CLI::PositiveNumber);

  for (auto* cmd : {derive, pipeline, search, verify}) {
    cmd->add_option("--p", opt.p, "odd prime p")->required();
    cmd->add_option("--M", opt.M, "odd multiplier M <= p")->required();
    cmd->add_option("--r", opt.r, "exponent r >= 1")->required();
    cmd->add_option("--m", opt.m, "prime modulus m >= 5")->required();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInputError;
  }

  if (opt.threads > 0) omp_set_num_threads(opt.threads);

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    if (command == "expand-eta") return cmd_expand_eta(opt);
    if (command == "check-eta") return cmd_check_eta(opt);
    if (command == "partition-series") return cmd_partition_series(opt);
    if (command == "derive-params") return cmd_derive_params(opt);
    if (command == "verify-pipeline") return cmd_verify_pipeline(opt);
    if (command == "search-ell") return cmd_search_ell(opt);
    if (command == "verify-congruence") return cmd_verify_congruence(opt);
    return emit_error(command, "unknown command");
  } catch (const etaq::derive_error& e) {
    return emit_error(command, e.what(), e.violations());
  } catch (const std::exception& e) {
    return emit_error(command, e.what());
  }
}
