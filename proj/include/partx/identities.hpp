#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "partx/bigint.hpp"
#include "partx/counting.hpp"
#include "partx/errors.hpp"
#include "partx/partition.hpp"
#include "partx/series.hpp"

namespace partx {

enum class IdentityId {
  stanley,
  extended_stanley,
  lemma1,
  lemma2,
  result1,
  result2,
  elder,
  ramanujan_p,
  qk_congruence,
  difference_identity,
};

inline constexpr std::array kAllIdentities = {
    IdentityId::stanley,     IdentityId::extended_stanley, IdentityId::lemma1,
    IdentityId::lemma2,      IdentityId::result1,          IdentityId::result2,
    IdentityId::elder,       IdentityId::ramanujan_p,      IdentityId::qk_congruence,
    IdentityId::difference_identity,
};

inline std::string_view to_string(IdentityId id) {
  switch (id) {
    case IdentityId::stanley: return "stanley";
    case IdentityId::extended_stanley: return "extended_stanley";
    case IdentityId::lemma1: return "lemma1";
    case IdentityId::lemma2: return "lemma2";
    case IdentityId::result1: return "result1";
    case IdentityId::result2: return "result2";
    case IdentityId::elder: return "elder";
    case IdentityId::ramanujan_p: return "ramanujan_p";
    case IdentityId::qk_congruence: return "qk_congruence";
    case IdentityId::difference_identity: return "difference_identity";
  }
  return "?";
}

/// Accepts both `extended_stanley` and `extended-stanley`.
inline std::optional<IdentityId> parse_identity(std::string_view text) {
  std::string normalized(text);
  for (auto& c : normalized) {
    if (c == '-') c = '_';
  }
  for (auto id : kAllIdentities) {
    if (to_string(id) == normalized) return id;
  }
  return std::nullopt;
}

/// Whether the identity is parameterized by k as well as n.
inline bool takes_k(IdentityId id) {
  switch (id) {
    case IdentityId::extended_stanley:
    case IdentityId::lemma1:
    case IdentityId::lemma2:
    case IdentityId::result2:
    case IdentityId::elder: return true;
    default: return false;
  }
}

enum class Backend { oracle, closed_form, series };

inline std::string_view to_string(Backend b) {
  switch (b) {
    case Backend::oracle: return "oracle";
    case Backend::closed_form: return "closed_form";
    case Backend::series: return "series";
  }
  return "?";
}

/// f(stride*n + offset) == 0 (mod modulus), where f is P (part == 0) or Q_part.
struct CongruenceForm {
  std::int64_t part;
  std::int64_t stride;
  std::int64_t offset;
  std::uint64_t modulus;

  std::int64_t argument(std::int64_t n) const { return stride * n + offset; }
};

enum class RamanujanFamily { mod5, mod7, mod11 };

inline CongruenceForm form_of(RamanujanFamily f) {
  switch (f) {
    case RamanujanFamily::mod5: return {0, 5, 4, 5};
    case RamanujanFamily::mod7: return {0, 7, 5, 7};
    case RamanujanFamily::mod11: return {0, 11, 6, 11};
  }
  throw std::invalid_argument("unknown family");
}

inline std::optional<RamanujanFamily> parse_family(std::int64_t modulus) {
  switch (modulus) {
    case 5: return RamanujanFamily::mod5;
    case 7: return RamanujanFamily::mod7;
    case 11: return RamanujanFamily::mod11;
    default: return std::nullopt;
  }
}

enum class QkCongruence { q5_mod5, q7_mod7, q11_mod11, q5_mod25, q5_mod125 };

inline constexpr std::array kAllQkCongruences = {QkCongruence::q5_mod5, QkCongruence::q7_mod7,
                                                 QkCongruence::q11_mod11, QkCongruence::q5_mod25,
                                                 QkCongruence::q5_mod125};

inline CongruenceForm form_of(QkCongruence c) {
  switch (c) {
    case QkCongruence::q5_mod5: return {5, 5, 4, 5};
    case QkCongruence::q7_mod7: return {7, 7, 5, 7};
    case QkCongruence::q11_mod11: return {11, 11, 6, 11};
    case QkCongruence::q5_mod25: return {5, 25, 24, 25};
    case QkCongruence::q5_mod125: return {5, 125, 99, 125};
  }
  throw std::invalid_argument("unknown congruence");
}

inline std::string_view to_string(QkCongruence c) {
  switch (c) {
    case QkCongruence::q5_mod5: return "q5-mod5";
    case QkCongruence::q7_mod7: return "q7-mod7";
    case QkCongruence::q11_mod11: return "q11-mod11";
    case QkCongruence::q5_mod25: return "q5-mod25";
    case QkCongruence::q5_mod125: return "q5-mod125";
  }
  return "?";
}

inline std::optional<QkCongruence> parse_qk_congruence(std::string_view text) {
  for (auto c : kAllQkCongruences) {
    if (to_string(c) == text) return c;
  }
  return std::nullopt;
}

/// Outcome of checking one instance of an identity.
///
/// Equalities store both sides. Congruences store the value in `lhs` and its
/// residue in `rhs`; they pass iff the residue is 0.
struct IdentityReport {
  IdentityId identity{};
  std::map<std::string, std::int64_t> params;
  BigInt lhs;
  BigInt rhs;
  bool passed = false;
  Backend backend = Backend::closed_form;

  friend bool operator==(const IdentityReport&, const IdentityReport&) = default;
};

/// Inclusive, nonempty integer range.
struct IntRange {
  std::int64_t lo = 0;
  std::int64_t hi = 0;

  std::uint64_t size() const { return static_cast<std::uint64_t>(hi - lo + 1); }
  friend bool operator==(const IntRange&, const IntRange&) = default;
};

struct SweepRequest {
  IdentityId identity = IdentityId::stanley;
  IntRange n;
  std::optional<IntRange> k;
  Backend backend = Backend::closed_form;
  /// Also evaluate with the enumeration oracle wherever the instance is within
  /// the enumeration limit; disagreement counts as a failure.
  bool oracle_cross_check = true;
  std::optional<RamanujanFamily> family;     // ramanujan_p
  std::optional<QkCongruence> congruence;    // qk_congruence
};

struct SweepResult {
  SweepRequest request;
  std::uint64_t total_checked = 0;
  std::vector<IdentityReport> failures;

  bool ok() const { return failures.empty(); }

  /// Distinct failing instances; a cross-checked instance may contribute two reports.
  std::size_t failed_instances() const {
    std::set<std::map<std::string, std::int64_t>> seen;
    for (const auto& f : failures) seen.insert(f.params);
    return seen.size();
  }
};

/// Checks the partition identities instance by instance with a chosen backend:
/// direct enumeration, closed forms over the P(n) table, or generating-function
/// coefficients.
class Verifier {
 public:
  explicit Verifier(const PartitionCounter& counter = default_counter(),
                    std::int64_t enumeration_limit = kDefaultEnumerationLimit)
      : counter_(&counter), limit_(enumeration_limit) {}

  std::int64_t enumeration_limit() const { return limit_; }

  /// S(n) = Q_1(n).
  IdentityReport verify_stanley(std::int64_t n, Backend backend = Backend::closed_form) const {
    require_positive("n", n);
    require_backend_range(backend, n);
    return equality(IdentityId::stanley, {{"n", n}}, s(n, backend), q(1, n, backend), backend);
  }

  /// S(n) = Q_k(n) + Q_k(n+1) + ... + Q_k(n+k-1).
  IdentityReport verify_extended_stanley(std::int64_t n, std::int64_t k,
                                         Backend backend = Backend::closed_form) const {
    require_positive("n", n);
    require_positive("k", k);
    require_backend_range(backend, n + k - 1);
    BigInt rhs = 0;
    for (std::int64_t i = 0; i < k; ++i) rhs += q(k, n + i, backend);
    return equality(IdentityId::extended_stanley, {{"n", n}, {"k", k}}, s(n, backend), rhs, backend);
  }

  /// Q_k(n+k) = Q_k(n) + R_k(n+k).
  IdentityReport verify_lemma1(std::int64_t n, std::int64_t k, Backend backend = Backend::closed_form) const {
    require_positive("n", n);
    require_positive("k", k);
    require_backend_range(backend, n + k);
    return equality(IdentityId::lemma1, {{"n", n}, {"k", k}}, q(k, n + k, backend),
                    q(k, n, backend) + r(k, n + k, backend), backend);
  }

  /// P(n) = R_k(n+k).
  IdentityReport verify_lemma2(std::int64_t n, std::int64_t k, Backend backend = Backend::closed_form) const {
    require_positive("n", n);
    require_positive("k", k);
    require_backend_range(backend, n + k);
    return equality(IdentityId::lemma2, {{"n", n}, {"k", k}}, p(n, backend), r(k, n + k, backend), backend);
  }

  /// Q_1(n) = P(0) + ... + P(n-1).
  IdentityReport verify_result1(std::int64_t n, Backend backend = Backend::closed_form) const {
    require_positive("n", n);
    require_backend_range(backend, n);
    BigInt rhs = 0;
    for (std::int64_t i = 0; i < n; ++i) rhs += p(i, backend);
    return equality(IdentityId::result1, {{"n", n}}, q(1, n, backend), rhs, backend);
  }

  /// Q_k(n) = sum of P(i) over 0 <= i <= n-1 with i == n (mod k).
  IdentityReport verify_result2(std::int64_t n, std::int64_t k, Backend backend = Backend::closed_form) const {
    require_positive("n", n);
    require_positive("k", k);
    require_backend_range(backend, n);
    BigInt rhs = 0;
    for (std::int64_t i = 0; i < n; ++i) {
      if ((n - i) % k == 0) rhs += p(i, backend);
    }
    return equality(IdentityId::result2, {{"n", n}, {"k", k}}, q(k, n, backend), rhs, backend);
  }

  /// elder_count(n, k) = Q_k(n). The left side always comes from enumeration;
  /// the backend selects how Q_k(n) is evaluated.
  IdentityReport verify_elder(std::int64_t n, std::int64_t k, Backend backend = Backend::closed_form) const {
    require_positive("n", n);
    require_positive("k", k);
    require_backend_range(Backend::oracle, n);
    return equality(IdentityId::elder, {{"n", n}, {"k", k}}, BigInt(elder_count(n, k, limit_)),
                    q(k, n, backend), backend);
  }

  /// P(stride*n + offset) == 0 (mod m) for the 5, 7, 11 families.
  IdentityReport verify_ramanujan_p(RamanujanFamily family, std::int64_t n,
                                    Backend backend = Backend::closed_form) const {
    return congruence(IdentityId::ramanujan_p, form_of(family), n, backend);
  }

  /// Q_k(stride*n + offset) == 0 (mod m) for the supported forms.
  IdentityReport verify_qk_congruence(QkCongruence form, std::int64_t n,
                                      Backend backend = Backend::closed_form) const {
    return congruence(IdentityId::qk_congruence, form_of(form), n, backend);
  }

  /// P(5n+4) = Q_5(5n+9) - Q_5(5n+4).
  IdentityReport verify_difference_identity(std::int64_t n, Backend backend = Backend::closed_form) const {
    if (n < 0) throw DomainError("n must be nonnegative");
    require_backend_range(backend, 5 * n + 9);
    return equality(IdentityId::difference_identity, {{"n", n}}, p(5 * n + 4, backend),
                    q(5, 5 * n + 9, backend) - q(5, 5 * n + 4, backend), backend);
  }

  /// Largest argument of P, S, Q or R that one instance needs.
  std::int64_t max_argument(const SweepRequest& req, std::int64_t n, std::int64_t k) const {
    switch (req.identity) {
      case IdentityId::stanley:
      case IdentityId::result1:
      case IdentityId::result2:
      case IdentityId::elder: return n;
      case IdentityId::extended_stanley: return n + k - 1;
      case IdentityId::lemma1:
      case IdentityId::lemma2: return n + k;
      case IdentityId::ramanujan_p: return form_of(*req.family).argument(n);
      case IdentityId::qk_congruence: return form_of(*req.congruence).argument(n);
      case IdentityId::difference_identity: return 5 * n + 9;
    }
    return n;
  }

  /// Single instance dispatch.
  IdentityReport verify(const SweepRequest& req, std::int64_t n, std::int64_t k, Backend backend) const {
    switch (req.identity) {
      case IdentityId::stanley: return verify_stanley(n, backend);
      case IdentityId::extended_stanley: return verify_extended_stanley(n, k, backend);
      case IdentityId::lemma1: return verify_lemma1(n, k, backend);
      case IdentityId::lemma2: return verify_lemma2(n, k, backend);
      case IdentityId::result1: return verify_result1(n, backend);
      case IdentityId::result2: return verify_result2(n, k, backend);
      case IdentityId::elder: return verify_elder(n, k, backend);
      case IdentityId::ramanujan_p: return verify_ramanujan_p(*req.family, n, backend);
      case IdentityId::qk_congruence: return verify_qk_congruence(*req.congruence, n, backend);
      case IdentityId::difference_identity: return verify_difference_identity(n, backend);
    }
    throw std::invalid_argument("unknown identity");
  }

  /// Throws std::invalid_argument for malformed requests and DomainError when
  /// the oracle backend is asked for instances beyond the enumeration limit.
  void validate(const SweepRequest& req) const {
    if (req.n.lo > req.n.hi) throw std::invalid_argument("empty n range");
    if (takes_k(req.identity)) {
      if (!req.k) throw std::invalid_argument(std::string(to_string(req.identity)) + " needs a k range");
      if (req.k->lo > req.k->hi) throw std::invalid_argument("empty k range");
      if (req.k->lo < 1) throw std::invalid_argument("k range must start at 1 or above");
    } else if (req.k) {
      throw std::invalid_argument(std::string(to_string(req.identity)) + " takes no k range");
    }
    const bool zero_ok = req.identity == IdentityId::ramanujan_p ||
                         req.identity == IdentityId::qk_congruence ||
                         req.identity == IdentityId::difference_identity;
    if (req.n.lo < (zero_ok ? 0 : 1)) {
      throw std::invalid_argument("n range must start at " + std::string(zero_ok ? "0" : "1") + " or above");
    }
    if (req.identity == IdentityId::ramanujan_p && !req.family) {
      throw std::invalid_argument("ramanujan_p needs a family (5, 7 or 11)");
    }
    if (req.identity == IdentityId::qk_congruence && !req.congruence) {
      throw std::invalid_argument("qk_congruence needs a congruence form");
    }
    const bool oracle_bound = req.backend == Backend::oracle || req.identity == IdentityId::elder;
    if (oracle_bound) {
      const std::int64_t worst = max_argument(req, req.n.hi, req.k ? req.k->hi : 1);
      if (worst > limit_) {
        throw DomainError("instances reach n = " + std::to_string(worst) + ", beyond the enumeration limit " +
                          std::to_string(limit_) + "; use the closed-form backend");
      }
    }
  }

  /// Runs every (n, k) in the Cartesian range. Never stops at a failure;
  /// failures come out ordered by (n, k).
  SweepResult sweep(const SweepRequest& req) const {
    validate(req);
    SweepResult result{req, 0, {}};
    const IntRange ks = req.k.value_or(IntRange{1, 1});
    for (std::int64_t n = req.n.lo; n <= req.n.hi; ++n) {
      for (std::int64_t k = ks.lo; k <= ks.hi; ++k) {
        ++result.total_checked;
        IdentityReport primary = verify(req, n, k, req.backend);
        const bool cross = req.oracle_cross_check && req.backend != Backend::oracle &&
                           max_argument(req, n, k) <= limit_;
        if (!cross) {
          if (!primary.passed) result.failures.push_back(std::move(primary));
          continue;
        }
        IdentityReport check = verify(req, n, k, Backend::oracle);
        const bool agree = primary.lhs == check.lhs && primary.rhs == check.rhs;
        if (!primary.passed || !agree) result.failures.push_back(std::move(primary));
        if (!check.passed || !agree) result.failures.push_back(std::move(check));
      }
    }
    return result;
  }

 private:
  static void require_positive(const char* name, std::int64_t v) {
    if (v < 1) throw DomainError(std::string(name) + " must be at least 1, got " + std::to_string(v));
  }

  void require_backend_range(Backend backend, std::int64_t max_arg) const {
    if (backend == Backend::oracle && max_arg > limit_) {
      throw DomainError("n = " + std::to_string(max_arg) + " exceeds the enumeration limit " +
                        std::to_string(limit_) + "; use the closed-form backend");
    }
  }

  static IdentityReport equality(IdentityId id, std::map<std::string, std::int64_t> params, BigInt lhs,
                                 BigInt rhs, Backend backend) {
    const bool passed = lhs == rhs;
    return {id, std::move(params), std::move(lhs), std::move(rhs), passed, backend};
  }

  IdentityReport congruence(IdentityId id, const CongruenceForm& form, std::int64_t n, Backend backend) const {
    if (n < 0) throw DomainError("n must be nonnegative");
    const std::int64_t arg = form.argument(n);
    require_backend_range(backend, arg);
    std::map<std::string, std::int64_t> params{
        {"n", n}, {"argument", arg}, {"modulus", static_cast<std::int64_t>(form.modulus)}};
    if (form.part) params.emplace("k", form.part);

    BigInt value = form.part ? q(form.part, arg, backend) : p(arg, backend);
    BigInt res = residue(value, form.modulus);
    bool consistent = true;
    if (backend == Backend::closed_form) {
      // residue-only fast path; must agree with the exact value
      const std::uint64_t fast = form.part ? counter_->occurrence_count_mod(form.part, arg, form.modulus)
                                           : counter_->partition_count_mod(arg, form.modulus);
      consistent = res == fast;
      res = fast;
    }
    const bool passed = consistent && res == 0;
    return {id, std::move(params), std::move(value), std::move(res), passed, backend};
  }

  // --- statistics by backend -------------------------------------------------

  BigInt p(std::int64_t n, Backend backend) const {
    if (n < 0) return 0;
    switch (backend) {
      case Backend::oracle: return n == 0 ? BigInt(1) : BigInt(stats(n).partition_count);
      case Backend::closed_form: return counter_->partition_count(n);
      case Backend::series: return coefficient(SeriesKind::partitions, 0, n);
    }
    return 0;
  }

  BigInt s(std::int64_t n, Backend backend) const {
    if (n <= 0) return 0;
    switch (backend) {
      case Backend::oracle: return stats(n).distinct_member_total;
      case Backend::closed_form: return counter_->distinct_members(n);
      case Backend::series: return coefficient(SeriesKind::distinct_members, 0, n);
    }
    return 0;
  }

  BigInt q(std::int64_t k, std::int64_t n, Backend backend) const {
    if (n <= 0) return 0;
    switch (backend) {
      case Backend::oracle: return stats(n).occurrences(k);
      case Backend::closed_form: return counter_->occurrence_count(k, n);
      case Backend::series: return coefficient(SeriesKind::occurrences, k, n);
    }
    return 0;
  }

  BigInt r(std::int64_t k, std::int64_t n, Backend backend) const {
    if (n <= 0) return 0;
    switch (backend) {
      case Backend::oracle: return stats(n).containing(k);
      case Backend::closed_form: return counter_->count_containing(k, n);
      // x^k F(x): partitions with at least one part k
      case Backend::series: return n < k ? BigInt(0) : coefficient(SeriesKind::partitions, 0, n - k);
    }
    return 0;
  }

  const PartitionStats& stats(std::int64_t n) const {
    std::scoped_lock lock(oracle_mutex_);
    auto it = oracle_cache_.find(n);
    if (it == oracle_cache_.end()) it = oracle_cache_.emplace(n, oracle_stats(n, limit_)).first;
    return it->second;
  }

  enum class SeriesKind { partitions, distinct_members, occurrences };

  // Generating functions cached per (kind, k), regrown by doubling.
  BigInt coefficient(SeriesKind kind, std::int64_t k, std::int64_t n) const {
    std::scoped_lock lock(series_mutex_);
    const auto degree = static_cast<std::size_t>(n);
    auto key = std::pair{static_cast<int>(kind), k};
    auto it = series_cache_.find(key);
    if (it == series_cache_.end() || it->second.trunc() < degree) {
      const std::size_t old = it == series_cache_.end() ? 0 : it->second.trunc();
      const std::size_t trunc = std::max({degree, 2 * old, std::size_t{64}, static_cast<std::size_t>(k)});
      const IntegerRing ring;
      PowerSeries<IntegerRing> s(ring, trunc);
      switch (kind) {
        case SeriesKind::partitions: s = euler_inverse_product(trunc, ring); break;
        // sum over k >= 1 of x^k F(x), the series counting partitions containing k
        case SeriesKind::distinct_members: {
          const auto f = euler_inverse_product(trunc, ring);
          for (std::size_t part = 1; part <= trunc; ++part) s = add(s, shift(f, part));
          break;
        }
        case SeriesKind::occurrences:
          s = qk_generating_function(static_cast<std::size_t>(k), trunc, ring);
          break;
      }
      it = series_cache_.insert_or_assign(key, std::move(s)).first;
    }
    return it->second[degree];
  }

  const PartitionCounter* counter_;
  std::int64_t limit_;
  mutable std::mutex oracle_mutex_;
  mutable std::map<std::int64_t, PartitionStats> oracle_cache_;
  mutable std::mutex series_mutex_;
  mutable std::map<std::pair<int, std::int64_t>, PowerSeries<IntegerRing>> series_cache_;
};

}  // namespace partx
