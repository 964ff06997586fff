// Acceptance suite: one PASS/FAIL line per criterion. All checks are exact.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "partx/cache_io.hpp"
#include "partx/counting.hpp"
#include "partx/identities.hpp"
#include "partx/series.hpp"
#include "partx_cli.hpp"

namespace {

using namespace partx;

struct Check {
  bool ok = true;
  std::vector<std::string> notes;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      notes.push_back(what);
    }
  }
  void expect_sweep(const SweepResult& r, std::uint64_t expected_total, const std::string& label) {
    expect(r.total_checked == expected_total,
           label + ": checked " + std::to_string(r.total_checked) + ", expected " + std::to_string(expected_total));
    if (!r.ok()) {
      const auto& f = r.failures.front();
      std::string params;
      for (const auto& [k, v] : f.params) params += " " + k + "=" + std::to_string(v);
      expect(false, label + ": " + std::to_string(r.failed_instances()) + " failing instances, first:" + params +
                        " lhs=" + f.lhs.str() + " rhs=" + f.rhs.str());
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string run_cli(const std::vector<std::string>& args, int& code) {
  std::ostringstream out, err;
  code = cli::run(args, out, err);
  return out.str();
}

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

// --- criteria ----------------------------------------------------------------

Check stats_of_four() {
  Check c;
  int code = 0;
  const auto out = run_cli({"stats", "4", "--list"}, code);
  c.expect(code == 0, "stats exit code " + std::to_string(code));
  for (const char* line : {"P=5\n", "S=7\n", "Q_1=7\n"}) c.expect(contains(out, line), std::string("missing ") + line);
  std::vector<std::string> listed;
  std::istringstream in(out);
  for (std::string line; std::getline(in, line);) {
    if (line.rfind("partition ", 0) == 0) listed.push_back(line.substr(10));
  }
  c.expect(listed == std::vector<std::string>{"4", "3+1", "2+2", "2+1+1", "1+1+1+1"}, "partition listing differs");
  return c;
}

Check triangle_of_four() {
  Check c;
  int code = 0;
  const auto out = run_cli({"table", "4", "--kmax", "4", "--csv"}, code);
  c.expect(code == 0, "table exit code " + std::to_string(code));
  c.expect(out ==
               "n,k=1,k=2,k=3,k=4\n"
               "4,7,3,1,1\n"
               "5,,4,2,1\n"
               "6,,,4,2\n"
               "7,,,,3\n"
               "total,7,7,7,7\n"
               "S,7\n",
           "table differs:\n" + out);
  return c;
}

Check extended_stanley(const Verifier& v) {
  Check c;
  c.expect_sweep(v.sweep({IdentityId::extended_stanley, {1, 60}, IntRange{1, 20}, Backend::closed_form, false}), 1200,
                 "closed form");
  c.expect_sweep(v.sweep({IdentityId::extended_stanley, {1, 30}, IntRange{1, 10}, Backend::oracle}), 300, "oracle");
  return c;
}

Check lemmas(const Verifier& v) {
  Check c;
  c.expect_sweep(v.sweep({IdentityId::lemma1, {1, 40}, IntRange{1, 15}}), 600, "lemma1");
  c.expect_sweep(v.sweep({IdentityId::lemma2, {1, 40}, IntRange{1, 15}}), 600, "lemma2");
  return c;
}

Check results(const Verifier& v) {
  Check c;
  c.expect_sweep(v.sweep({IdentityId::result1, {1, 200}}), 200, "result1");
  c.expect_sweep(v.sweep({IdentityId::result2, {1, 200}, IntRange{1, 20}}), 4000, "result2");
  return c;
}

Check elder(const Verifier& v) {
  Check c;
  for (std::int64_t n = 1; n <= 35; ++n) {
    c.expect_sweep(v.sweep({IdentityId::elder, {n, n}, IntRange{1, n}}), static_cast<std::uint64_t>(n),
                   "elder n=" + std::to_string(n));
  }
  return c;
}

std::int64_t last_n(const CongruenceForm& f, std::int64_t max_argument) {
  return (max_argument - f.offset) / f.stride;
}

Check ramanujan(const Verifier& v) {
  Check c;
  for (auto family : {RamanujanFamily::mod5, RamanujanFamily::mod7, RamanujanFamily::mod11}) {
    const auto form = form_of(family);
    SweepRequest req{IdentityId::ramanujan_p, {0, last_n(form, 5000)}};
    req.family = family;
    c.expect_sweep(v.sweep(req), req.n.size(), "P mod " + std::to_string(form.modulus));
  }
  return c;
}

Check qk_congruences(const Verifier& v) {
  Check c;
  for (auto spec : kAllQkCongruences) {
    const auto form = form_of(spec);
    SweepRequest req{IdentityId::qk_congruence, {0, last_n(form, 3000)}};
    req.congruence = spec;
    c.expect_sweep(v.sweep(req), req.n.size(), std::string(to_string(spec)));
  }
  return c;
}

Check series_agreement() {
  Check c;
  const IntegerRing z;
  const auto f = euler_inverse_product(200, z);
  for (int m = 0; m <= 200; ++m) c.expect(f[m] == partition_count(m), "F coefficient " + std::to_string(m));
  for (std::int64_t k : {1, 2, 3, 4, 5, 7, 11}) {
    const auto g = qk_generating_function(static_cast<std::size_t>(k), 200, z);
    for (int m = 0; m <= 200; ++m) {
      c.expect(g[m] == occurrence_count(k, m), "G_" + std::to_string(k) + " coefficient " + std::to_string(m));
    }
  }
  const auto lhs = double_sum_expansion(300);
  c.expect(lhs == shift(euler_product_pow(4, 300, z), 1), "double sum differs from x*E(x)^4");
  for (std::size_t d = 5; d <= 300; d += 5) c.expect(lhs[d] % 5 == 0, "x^" + std::to_string(d) + " not divisible by 5");
  for (std::uint64_t m : {5u, 7u, 11u}) c.expect(freshman_dream_check(m, 200), "freshman dream mod " + std::to_string(m));
  return c;
}

Check difference(const Verifier& v) {
  Check c;
  c.expect_sweep(v.sweep({IdentityId::difference_identity, {0, 100}}), 101, "difference identity");
  return c;
}

Check performance_and_cache() {
  Check c;
  const auto start = std::chrono::steady_clock::now();
  CountTable table;
  table.extend(10000);
  const double build = seconds_since(start);
  c.expect(build < 10.0, "P table to 10^4 took " + std::to_string(build) + " s");
  c.expect(table[10000] == BigInt("36167251325636293988820471890953695495016030339315650422081868605887952568754066"
                                  "420592310556052906916435144"),
           "P(10000) value");

  const auto path = std::filesystem::temp_directory_path() / "partx_acceptance_cache.txt";
  save_table(table, path);
  const CountTable loaded = load_table(path);
  c.expect(loaded == table, "loaded table differs");
  std::ostringstream a, b;
  write_table(table, a);
  write_table(loaded, b);
  std::ifstream in(path, std::ios::binary);
  const std::string on_disk((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  c.expect(a.str() == b.str() && a.str() == on_disk, "cache bytes differ after round trip");
  std::filesystem::remove(path);
  return c;
}

}  // namespace

int main() {
  const Verifier verifier;
  struct Criterion {
    const char* id;
    const char* title;
    double budget_seconds;  // 0 = no runtime bound
    std::function<Check()> run;
  };
  const std::vector<Criterion> criteria{
      {"AC1", "statistics of 4 (stats 4 --list)", 1.0, stats_of_four},
      {"AC2", "Q_k triangle of 4 (table 4 --kmax 4)", 1.0, triangle_of_four},
      {"AC3", "extended Stanley sweeps, closed n<=60 k<=20 and oracle n<=30 k<=10", 60.0,
       [&] { return extended_stanley(verifier); }},
      {"AC4", "lemma1 and lemma2, n<=40 k<=15 with oracle cross-check", 0, [&] { return lemmas(verifier); }},
      {"AC5", "result1 n<=200, result2 n<=200 k<=20", 0, [&] { return results(verifier); }},
      {"AC6", "Elder's theorem, n<=35 k<=n", 0, [&] { return elder(verifier); }},
      {"AC7", "P(5n+4), P(7n+5), P(11n+6) congruences, arguments <= 5000", 30.0,
       [&] { return ramanujan(verifier); }},
      {"AC8", "Q_k congruences incl. mod 25 and mod 125 forms, arguments <= 3000", 0,
       [&] { return qk_congruences(verifier); }},
      {"AC9", "series agreement, double sum, mod-5 divisibility, freshman dream", 0, series_agreement},
      {"AC10", "P(5n+4) = Q_5(5n+9) - Q_5(5n+4), n<=100", 0, [&] { return difference(verifier); }},
      {"AC11", "P table to 10^4 under 10 s, bit-exact cache round trip", 0, performance_and_cache},
  };

  int failed = 0;
  for (const auto& criterion : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Check result = criterion.run();
    const double elapsed = seconds_since(start);
    if (criterion.budget_seconds > 0 && elapsed >= criterion.budget_seconds) {
      result.expect(false, "runtime " + std::to_string(elapsed) + " s exceeds " +
                               std::to_string(criterion.budget_seconds) + " s");
    }
    std::printf("[%s] %-5s %s (%.3f s)\n", result.ok ? "PASS" : "FAIL", criterion.id, criterion.title, elapsed);
    for (const auto& note : result.notes) std::printf("        %s\n", note.c_str());
    if (!result.ok) ++failed;
  }
  std::printf("%zu criteria, %d failed\n", criteria.size(), failed);
  return failed == 0 ? 0 : 1;
}
