#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "partx/bigint.hpp"
#include "partx/errors.hpp"

namespace partx {

namespace detail {

// Generalized pentagonal numbers k(3k-1)/2 and k(3k+1)/2 for k = 1, 2, ...
// paired with the sign (+ for odd k). Calls f(offset, positive) for every
// offset <= n, smaller offsets first.
template <class F>
void for_each_pentagonal(std::size_t n, F&& f) {
  for (std::size_t k = 1;; ++k) {
    const std::size_t g1 = k * (3 * k - 1) / 2;
    if (g1 > n) break;
    const bool positive = (k % 2) == 1;
    f(g1, positive);
    const std::size_t g2 = k * (3 * k + 1) / 2;
    if (g2 <= n) f(g2, positive);
  }
}

}  // namespace detail

/// P(0..max_n) in exact arithmetic. Entries are append-only.
class CountTable {
 public:
  CountTable() : values_{BigInt(1)} {}

  /// Adopts precomputed values without checking them against the recurrence
  /// (see `first_inconsistency`). Requires a nonempty sequence starting at 1.
  static CountTable from_values(std::vector<BigInt> values) {
    if (values.empty() || values.front() != 1) {
      throw std::invalid_argument("a partition table must start with P(0) = 1");
    }
    CountTable table;
    table.values_ = std::move(values);
    return table;
  }

  std::size_t max_n() const { return values_.size() - 1; }
  const BigInt& operator[](std::size_t n) const { return values_.at(n); }
  std::span<const BigInt> values() const { return values_; }

  /// Extends coverage to 0..new_max with the pentagonal recurrence.
  /// Never shrinks; existing entries are untouched.
  void extend(std::size_t new_max) {
    if (new_max <= max_n()) return;
    values_.reserve(new_max + 1);
    for (std::size_t n = values_.size(); n <= new_max; ++n) {
      BigInt sum = 0;
      detail::for_each_pentagonal(n, [&](std::size_t offset, bool positive) {
        if (positive) sum += values_[n - offset];
        else sum -= values_[n - offset];
      });
      values_.push_back(std::move(sum));
    }
  }

  /// Smallest n whose stored value disagrees with the recurrence applied to
  /// the stored values below it, or -1 when the table is consistent.
  std::int64_t first_inconsistency() const {
    CountTable fresh;
    fresh.extend(max_n());
    for (std::size_t n = 0; n < values_.size(); ++n) {
      if (values_[n] != fresh.values_[n]) return static_cast<std::int64_t>(n);
    }
    return -1;
  }

  friend bool operator==(const CountTable&, const CountTable&) = default;

 private:
  std::vector<BigInt> values_;
};

inline CountTable extend_table(CountTable table, std::size_t new_max) {
  table.extend(new_max);
  return table;
}

/// Residues P(0..max_n) mod `modulus`, computed without leaving the residue ring.
class ModCountTable {
 public:
  /// Moduli are capped at 2^62 so that a sum of two residues never overflows.
  static constexpr std::uint64_t kMaxModulus = std::uint64_t{1} << 62;

  explicit ModCountTable(std::uint64_t modulus) : modulus_(modulus) {
    if (modulus < 2 || modulus > kMaxModulus) {
      throw DomainError("modulus must lie in [2, 2^62], got " + std::to_string(modulus));
    }
    values_.push_back(1);
  }

  std::uint64_t modulus() const { return modulus_; }
  std::size_t max_n() const { return values_.size() - 1; }
  std::uint64_t operator[](std::size_t n) const { return values_.at(n); }

  void extend(std::size_t new_max) {
    if (new_max <= max_n()) return;
    values_.reserve(new_max + 1);
    for (std::size_t n = values_.size(); n <= new_max; ++n) {
      std::uint64_t plus = 0, minus = 0;
      detail::for_each_pentagonal(n, [&](std::size_t offset, bool positive) {
        std::uint64_t& acc = positive ? plus : minus;
        acc += values_[n - offset];
        if (acc >= modulus_) acc -= modulus_;
      });
      values_.push_back(plus >= minus ? plus - minus : plus + modulus_ - minus);
    }
  }

 private:
  std::uint64_t modulus_;
  std::vector<std::uint64_t> values_;
};

/// Closed-form partition statistics over a shared, append-only P(n) cache.
///
/// Readers of computed entries take a shared lock; extension is exclusive and
/// grows the table to at least twice its previous size. Results do not
/// depend on the interleaving of concurrent calls.
class PartitionCounter {
 public:
  PartitionCounter() = default;
  explicit PartitionCounter(CountTable seed) : table_(std::move(seed)) {}

  /// P(n); 0 for n < 0 and 1 for n = 0.
  BigInt partition_count(std::int64_t n) const {
    if (n < 0) return 0;
    const auto index = static_cast<std::size_t>(n);
    ensure(index);
    std::shared_lock lock(mutex_);
    return table_[index];
  }

  /// R_k(n), the number of partitions of n having a part equal to k: P(n - k).
  BigInt count_containing(std::int64_t k, std::int64_t n) const {
    require_positive_k(k);
    return partition_count(n - k);
  }

  /// Q_k(n), the total multiplicity of k over the partitions of n:
  /// sum of P(n - jk) for j = 1, 2, ... while n - jk >= 0.
  BigInt occurrence_count(std::int64_t k, std::int64_t n) const {
    require_positive_k(k);
    if (n < k) return 0;
    ensure(static_cast<std::size_t>(n - k));
    std::shared_lock lock(mutex_);
    BigInt sum = 0;
    for (std::int64_t m = n - k; m >= 0; m -= k) sum += table_[static_cast<std::size_t>(m)];
    return sum;
  }

  /// S(n) = P(0) + ... + P(n-1); 0 for n <= 0.
  BigInt distinct_members(std::int64_t n) const {
    if (n <= 0) return 0;
    ensure(static_cast<std::size_t>(n - 1));
    std::shared_lock lock(mutex_);
    BigInt sum = 0;
    for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i) sum += table_[i];
    return sum;
  }

  /// P(n) mod m through a residue-only table cached per modulus.
  std::uint64_t partition_count_mod(std::int64_t n, std::uint64_t m) const {
    if (m < 2) throw DomainError("modulus must be at least 2");
    if (n < 0) return 0;
    const auto index = static_cast<std::size_t>(n);
    std::scoped_lock lock(mod_mutex_);
    return mod_table(m, index)[index];
  }

  /// Q_k(n) mod m from the residue table.
  std::uint64_t occurrence_count_mod(std::int64_t k, std::int64_t n, std::uint64_t m) const {
    require_positive_k(k);
    if (m < 2) throw DomainError("modulus must be at least 2");
    if (n < k) return 0;
    std::scoped_lock lock(mod_mutex_);
    const ModCountTable& table = mod_table(m, static_cast<std::size_t>(n - k));
    std::uint64_t sum = 0;
    for (std::int64_t i = n - k; i >= 0; i -= k) {
      sum += table[static_cast<std::size_t>(i)];
      if (sum >= m) sum -= m;
    }
    return sum;
  }

  /// Copy of the current exact table.
  CountTable snapshot() const {
    std::shared_lock lock(mutex_);
    return table_;
  }

  /// Makes sure P(0..n) is cached.
  void reserve(std::size_t n) const { ensure(n); }

 private:
  static void require_positive_k(std::int64_t k) {
    if (k < 1) throw DomainError("k must be at least 1, got " + std::to_string(k));
  }

  void ensure(std::size_t n) const {
    {
      std::shared_lock lock(mutex_);
      if (n <= table_.max_n()) return;
    }
    std::unique_lock lock(mutex_);
    if (n <= table_.max_n()) return;
    table_.extend(std::max(n, 2 * table_.max_n()));
  }

  // caller holds mod_mutex_
  const ModCountTable& mod_table(std::uint64_t m, std::size_t n) const {
    auto it = mod_tables_.try_emplace(m, m).first;
    ModCountTable& table = it->second;
    if (n > table.max_n()) table.extend(std::max(n, 2 * table.max_n()));
    return table;
  }

  mutable std::shared_mutex mutex_;
  mutable CountTable table_;
  mutable std::mutex mod_mutex_;
  mutable std::map<std::uint64_t, ModCountTable> mod_tables_;
};

/// Process-wide counter behind the free functions below.
inline const PartitionCounter& default_counter() {
  static const PartitionCounter counter;
  return counter;
}

inline BigInt partition_count(std::int64_t n) { return default_counter().partition_count(n); }

inline BigInt count_containing(std::int64_t k, std::int64_t n) {
  return default_counter().count_containing(k, n);
}

inline BigInt occurrence_count(std::int64_t k, std::int64_t n) {
  return default_counter().occurrence_count(k, n);
}

/// Throws DomainError for n < 1.
inline BigInt distinct_members(std::int64_t n) {
  if (n < 1) throw DomainError("distinct_members requires n >= 1");
  return default_counter().distinct_members(n);
}

inline std::uint64_t partition_count_mod(std::int64_t n, std::int64_t m) {
  if (m < 2) throw DomainError("modulus must be at least 2, got " + std::to_string(m));
  return default_counter().partition_count_mod(n, static_cast<std::uint64_t>(m));
}

}  // namespace partx
