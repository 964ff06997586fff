#pragma once

// Command-line front end for the partx library. `run` is kept separate from
// main() so tests can drive it in-process.

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "partx/cache_io.hpp"
#include "partx/counting.hpp"
#include "partx/identities.hpp"
#include "partx/partition.hpp"
#include "partx/report_json.hpp"
#include "partx/series.hpp"

namespace partx::cli {

enum class Format { text, json, csv };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitUsage = 2;

/// `A..B` (inclusive) or a single `A`.
inline IntRange parse_range(const std::string& text) {
  auto to_int = [&](std::string_view s) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
      throw UsageError("malformed range '" + text + "', expected A..B or A");
    }
    return v;
  };
  const auto dots = text.find("..");
  IntRange r;
  if (dots == std::string::npos) {
    r.lo = r.hi = to_int(text);
  } else {
    r.lo = to_int(std::string_view(text).substr(0, dots));
    r.hi = to_int(std::string_view(text).substr(dots + 2));
  }
  if (r.lo > r.hi) throw UsageError("empty range '" + text + "'");
  return r;
}

namespace detail {

struct Options {
  bool json = false;
  bool csv = false;
  std::string cache_path;
  bool verify_cache = false;
  std::int64_t enum_limit = kDefaultEnumerationLimit;

  Format format() const { return json ? Format::json : csv ? Format::csv : Format::text; }
};

inline std::string range_text(const IntRange& r) {
  return r.lo == r.hi ? std::to_string(r.lo) : std::to_string(r.lo) + ".." + std::to_string(r.hi);
}

inline void print_report_line(const IdentityReport& rep, std::ostream& out) {
  out << (rep.passed ? "PASS " : "FAIL ") << to_string(rep.identity);
  for (const auto& [name, value] : rep.params) out << ' ' << name << '=' << value;
  out << ": lhs=" << rep.lhs.str() << " rhs=" << rep.rhs.str() << " [" << to_string(rep.backend) << "]\n";
}

inline void print_sweep(const SweepResult& result, Format format, std::ostream& out) {
  const auto& req = result.request;
  if (format == Format::json) {
    out << to_json(result).dump(2) << '\n';
    return;
  }
  if (format == Format::csv) {
    out << "identity,n_lo,n_hi,k_lo,k_hi,total,failures\n";
    out << to_string(req.identity) << ',' << req.n.lo << ',' << req.n.hi << ',';
    if (req.k) out << req.k->lo << ',' << req.k->hi;
    else out << ',';
    out << ',' << result.total_checked << ',' << result.failures.size() << '\n';
    if (!result.failures.empty()) {
      out << "\nidentity,n,k,modulus,lhs,rhs,passed,backend\n";
      for (const auto& f : result.failures) {
        auto param = [&](const char* name) {
          auto it = f.params.find(name);
          return it == f.params.end() ? std::string() : std::to_string(it->second);
        };
        out << to_string(f.identity) << ',' << param("n") << ',' << param("k") << ',' << param("modulus") << ','
            << f.lhs.str() << ',' << f.rhs.str() << ',' << (f.passed ? "true" : "false") << ','
            << to_string(f.backend) << '\n';
      }
    }
    return;
  }
  out << to_string(req.identity);
  if (req.family) out << " mod " << form_of(*req.family).modulus;
  if (req.congruence) out << ' ' << to_string(*req.congruence);
  out << " n=" << range_text(req.n);
  if (req.k) out << " k=" << range_text(*req.k);
  out << ": " << result.total_checked << " checked, " << result.failed_instances() << " failed\n";
  for (const auto& f : result.failures) print_report_line(f, out);
}

template <CoefficientRing Ring>
void print_series(const PowerSeries<Ring>& s, Format format, std::ostream& out) {
  if (format == Format::json) {
    nlohmann::json coeffs = nlohmann::json::array();
    for (std::size_t i = 0; i <= s.trunc(); ++i) coeffs.push_back(s.ring().to_bigint(s[i]).str());
    out << nlohmann::json{{"ring", s.ring().name()}, {"trunc", s.trunc()}, {"coefficients", coeffs}}.dump(2)
        << '\n';
  } else if (format == Format::csv) {
    out << "degree,coefficient\n";
    for (std::size_t i = 0; i <= s.trunc(); ++i) out << i << ',' << s.ring().to_bigint(s[i]).str() << '\n';
  } else {
    write_series(s, out);
  }
}

}  // namespace detail

/// Parses `args` (without the program name), runs the command, and returns
/// 0 on success, 1 when a verification failed, 2 on a usage error.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  using detail::Options;
  CLI::App app{"Exact partition statistics and identity checks", "partx"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  auto* json_flag = app.add_flag("--json", opt.json, "Emit JSON");
  auto* csv_flag = app.add_flag("--csv", opt.csv, "Emit CSV");
  json_flag->excludes(csv_flag);
  app.add_option("--cache", opt.cache_path, "Persistent P(n) table (partition-table v1)");
  app.add_flag("--verify-cache", opt.verify_cache, "Recheck a loaded cache against the recurrence");
  app.add_option("--enum-limit", opt.enum_limit, "Largest n the enumeration oracle accepts")
      ->check(CLI::PositiveNumber);

  // count
  auto* count_cmd = app.add_subcommand("count", "P(n)");
  std::int64_t count_n = 0;
  std::int64_t count_mod = 0;
  count_cmd->add_option("n", count_n, "Integer to partition")->required();
  count_cmd->add_option("--mod", count_mod, "Report P(n) mod M instead")->check(CLI::Range(2, 1 << 30));

  // stats
  auto* stats_cmd = app.add_subcommand("stats", "P, S, Q_k and R_k of n");
  std::int64_t stats_n = 0;
  std::int64_t stats_kmax = 0;
  bool stats_list = false;
  stats_cmd->add_option("n", stats_n)->required()->check(CLI::PositiveNumber);
  stats_cmd->add_option("--kmax", stats_kmax, "Largest k reported (default n)")->check(CLI::PositiveNumber);
  stats_cmd->add_flag("--list", stats_list, "Also enumerate the partitions");

  // table
  auto* table_cmd = app.add_subcommand("table", "Q_k(n+i) triangle with column sums");
  std::int64_t table_n = 0;
  std::int64_t table_kmax = 0;
  table_cmd->add_option("n", table_n)->required()->check(CLI::PositiveNumber);
  table_cmd->add_option("--kmax", table_kmax)->required()->check(CLI::PositiveNumber);

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "Sweep an identity over a range");
  std::string verify_identity, verify_n, verify_k, verify_backend = "both", verify_congruence;
  std::int64_t verify_family = 0;
  verify_cmd->add_option("identity", verify_identity,
                         "stanley | extended-stanley | lemma1 | lemma2 | result1 | result2 | elder | "
                         "ramanujan-p | qk-congruence | difference-identity")
      ->required();
  verify_cmd->add_option("--n", verify_n, "n range, A..B or A")->required();
  verify_cmd->add_option("--k", verify_k, "k range, A..B or A");
  verify_cmd->add_option("--backend", verify_backend, "oracle | closed | both | series")
      ->check(CLI::IsMember({"oracle", "closed", "both", "series"}));
  verify_cmd->add_option("--family", verify_family, "ramanujan-p modulus: 5, 7 or 11")
      ->check(CLI::IsMember({5, 7, 11}));
  verify_cmd->add_option("--congruence", verify_congruence,
                         "qk-congruence form: q5-mod5 | q7-mod7 | q11-mod11 | q5-mod25 | q5-mod125");

  // series
  auto* series_cmd = app.add_subcommand("series", "Dump a generating function");
  std::string series_kind;
  std::size_t series_trunc = 0;
  std::size_t series_k = 0;
  std::uint64_t series_mod = 0;
  series_cmd->add_option("kind", series_kind, "f | gk | euler4 | double-sum")
      ->required()
      ->check(CLI::IsMember({"f", "gk", "euler4", "double-sum"}));
  series_cmd->add_option("--trunc", series_trunc)->required()->check(CLI::PositiveNumber);
  series_cmd->add_option("--k", series_k, "k for gk")->check(CLI::PositiveNumber);
  series_cmd->add_option("--mod", series_mod, "Reduce coefficients mod M")->check(CLI::Range(2, 1 << 30));

  // cache
  auto* cache_cmd = app.add_subcommand("cache", "Build or check the persistent P(n) table");
  cache_cmd->require_subcommand(1);
  auto* cache_build = cache_cmd->add_subcommand("build", "Compute P(0..N) and write it");
  std::size_t cache_max = 0;
  cache_build->add_option("--max", cache_max)->required();
  auto* cache_check = cache_cmd->add_subcommand("check", "Recheck a stored table");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  const Format format = opt.format();

  try {
    // cache-backed counter
    CountTable seed;
    const bool cache_cmd_used = cache_cmd->parsed();
    if (cache_cmd_used && opt.cache_path.empty()) throw UsageError("cache commands need --cache PATH");
    std::optional<std::int64_t> cache_bad_at;
    if (!opt.cache_path.empty() && !cache_build->parsed() && std::filesystem::exists(opt.cache_path)) {
      CountTable loaded = load_table(opt.cache_path);
      if (opt.verify_cache || cache_check->parsed()) {
        const auto bad = loaded.first_inconsistency();
        if (bad >= 0) cache_bad_at = bad;
      }
      seed = std::move(loaded);
    } else if (cache_check->parsed()) {
      throw CacheError(0, "cannot open " + opt.cache_path);
    }
    if (cache_bad_at) {
      err << "cache " << opt.cache_path << " is inconsistent at n=" << *cache_bad_at << "\n";
      return kExitFailed;
    }
    const PartitionCounter counter(std::move(seed));
    auto persist = [&] {
      if (!opt.cache_path.empty()) save_table(counter.snapshot(), opt.cache_path);
    };

    if (count_cmd->parsed()) {
      if (count_mod) {
        const auto r = counter.partition_count_mod(count_n, static_cast<std::uint64_t>(count_mod));
        if (format == Format::json) {
          out << nlohmann::json{{"n", count_n}, {"modulus", count_mod}, {"residue", r}}.dump() << '\n';
        } else if (format == Format::csv) {
          out << "n,modulus,residue\n" << count_n << ',' << count_mod << ',' << r << '\n';
        } else {
          out << r << '\n';
        }
        return kExitOk;
      }
      const BigInt value = counter.partition_count(count_n);
      persist();
      if (format == Format::json) out << nlohmann::json{{"n", count_n}, {"P", value.str()}}.dump() << '\n';
      else if (format == Format::csv) out << "n,P\n" << count_n << ',' << value.str() << '\n';
      else out << value.str() << '\n';
      return kExitOk;
    }

    if (stats_cmd->parsed()) {
      const std::int64_t kmax = stats_kmax ? stats_kmax : stats_n;
      std::vector<Partition> partitions;
      if (stats_list) partitions = enumerate_partitions(stats_n, opt.enum_limit);
      const BigInt p = counter.partition_count(stats_n);
      const BigInt s = counter.distinct_members(stats_n);
      persist();
      if (format == Format::json) {
        nlohmann::json q = nlohmann::json::object(), r = nlohmann::json::object();
        for (std::int64_t k = 1; k <= kmax; ++k) {
          q[std::to_string(k)] = counter.occurrence_count(k, stats_n).str();
          r[std::to_string(k)] = counter.count_containing(k, stats_n).str();
        }
        nlohmann::json doc{{"n", stats_n}, {"P", p.str()}, {"S", s.str()}, {"Q", q}, {"R", r}};
        if (stats_list) {
          doc["partitions"] = nlohmann::json::array();
          for (const auto& part : partitions) doc["partitions"].push_back(part.to_string());
        }
        out << doc.dump(2) << '\n';
      } else if (format == Format::csv) {
        out << "statistic,k,value\nP,," << p.str() << "\nS,," << s.str() << '\n';
        for (std::int64_t k = 1; k <= kmax; ++k) out << "Q," << k << ',' << counter.occurrence_count(k, stats_n).str() << '\n';
        for (std::int64_t k = 1; k <= kmax; ++k) out << "R," << k << ',' << counter.count_containing(k, stats_n).str() << '\n';
      } else {
        out << "n=" << stats_n << "\nP=" << p.str() << "\nS=" << s.str() << '\n';
        for (std::int64_t k = 1; k <= kmax; ++k) out << "Q_" << k << '=' << counter.occurrence_count(k, stats_n).str() << '\n';
        for (std::int64_t k = 1; k <= kmax; ++k) out << "R_" << k << '=' << counter.count_containing(k, stats_n).str() << '\n';
        for (const auto& part : partitions) out << "partition " << part.to_string() << '\n';
      }
      return kExitOk;
    }

    if (table_cmd->parsed()) {
      const BigInt s = counter.distinct_members(table_n);
      // columns[k-1][i] = Q_k(n+i), i < k
      std::vector<std::vector<BigInt>> columns;
      std::vector<BigInt> totals;
      bool all_match = true;
      for (std::int64_t k = 1; k <= table_kmax; ++k) {
        std::vector<BigInt> col;
        BigInt total = 0;
        for (std::int64_t i = 0; i < k; ++i) {
          col.push_back(counter.occurrence_count(k, table_n + i));
          total += col.back();
        }
        all_match = all_match && total == s;
        columns.push_back(std::move(col));
        totals.push_back(std::move(total));
      }
      persist();
      if (format == Format::json) {
        nlohmann::json cols = nlohmann::json::array();
        for (std::size_t c = 0; c < columns.size(); ++c) {
          nlohmann::json values = nlohmann::json::array();
          for (const auto& v : columns[c]) values.push_back(v.str());
          cols.push_back({{"k", c + 1}, {"values", values}, {"total", totals[c].str()}, {"matches", totals[c] == s}});
        }
        out << nlohmann::json{{"n", table_n}, {"kmax", table_kmax}, {"S", s.str()}, {"columns", cols}}.dump(2)
            << '\n';
      } else {
        const bool csv = format == Format::csv;
        const char* sep = csv ? "," : "\t";
        out << (csv ? "n" : "n\\k");
        for (std::int64_t k = 1; k <= table_kmax; ++k) out << sep << (csv ? "k=" : "") << k;
        out << '\n';
        for (std::int64_t i = 0; i < table_kmax; ++i) {
          out << table_n + i;
          for (std::int64_t k = 1; k <= table_kmax; ++k) {
            out << sep;
            if (i < k) out << columns[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(i)].str();
            else if (!csv) out << '-';
          }
          out << '\n';
        }
        out << (csv ? "total" : "Total");
        for (const auto& t : totals) out << sep << t.str();
        out << '\n';
        if (csv) out << "S," << s.str() << '\n';
        else out << "S(" << table_n << ")=" << s.str() << '\n';
      }
      return all_match ? kExitOk : kExitFailed;
    }

    if (verify_cmd->parsed()) {
      SweepRequest req;
      const auto id = parse_identity(verify_identity);
      if (!id) throw UsageError("unknown identity '" + verify_identity + "'");
      req.identity = *id;
      req.n = parse_range(verify_n);
      if (!verify_k.empty()) req.k = parse_range(verify_k);
      if (verify_backend == "oracle") req.backend = Backend::oracle;
      else if (verify_backend == "series") req.backend = Backend::series;
      else req.backend = Backend::closed_form;
      req.oracle_cross_check = verify_backend == "both";
      if (verify_family) req.family = parse_family(verify_family);
      if (!verify_congruence.empty()) {
        req.congruence = parse_qk_congruence(verify_congruence);
        if (!req.congruence) throw UsageError("unknown congruence form '" + verify_congruence + "'");
      }
      const Verifier verifier(counter, opt.enum_limit);
      try {
        verifier.validate(req);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      const SweepResult result = verifier.sweep(req);
      persist();
      detail::print_sweep(result, format, out);
      return result.ok() ? kExitOk : kExitFailed;
    }

    if (series_cmd->parsed()) {
      auto integer_series = [&]() -> PowerSeries<IntegerRing> {
        const IntegerRing z;
        if (series_kind == "f") return euler_inverse_product(series_trunc, z);
        if (series_kind == "gk") {
          if (!series_k) throw UsageError("series gk needs --k");
          if (series_trunc < series_k) throw UsageError("--trunc must be at least --k");
          return qk_generating_function(series_k, series_trunc, z);
        }
        if (series_kind == "euler4") return euler_product_pow(4, series_trunc, z);
        return double_sum_expansion(series_trunc);
      };
      if (series_mod) {
        const ModularRing ring(series_mod);
        if (series_kind == "f") detail::print_series(euler_inverse_product(series_trunc, ring), format, out);
        else if (series_kind == "euler4") detail::print_series(euler_product_pow(4, series_trunc, ring), format, out);
        else detail::print_series(reduce(integer_series(), ring), format, out);
      } else {
        detail::print_series(integer_series(), format, out);
      }
      return kExitOk;
    }

    if (cache_build->parsed()) {
      CountTable table;
      table.extend(cache_max);
      save_table(table, opt.cache_path);
      out << "wrote P(0.." << cache_max << ") to " << opt.cache_path << '\n';
      return kExitOk;
    }

    if (cache_check->parsed()) {
      out << "cache " << opt.cache_path << " consistent through n=" << counter.snapshot().max_n() << '\n';
      return kExitOk;
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const CacheError& e) {
    err << "cache error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace partx::cli
