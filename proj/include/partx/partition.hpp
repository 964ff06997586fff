#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <iterator>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "partx/errors.hpp"

namespace partx {

/// Largest n the enumeration oracle accepts unless a caller raises the ceiling.
/// P(80) is about 1.6e7 partitions.
inline constexpr std::int64_t kDefaultEnumerationLimit = 80;

/// An unordered partition, stored as a nonincreasing sequence of positive parts.
class Partition {
 public:
  Partition() = default;

  /// Throws std::invalid_argument unless every part is positive and the
  /// sequence is nonincreasing.
  explicit Partition(std::vector<unsigned> parts) : parts_(std::move(parts)) {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (parts_[i] == 0) throw std::invalid_argument("partition parts must be positive");
      if (i + 1 < parts_.size() && parts_[i] < parts_[i + 1]) {
        throw std::invalid_argument("partition parts must be nonincreasing");
      }
    }
  }

  std::span<const unsigned> parts() const { return parts_; }
  std::size_t size() const { return parts_.size(); }

  std::uint64_t total() const {
    return std::accumulate(parts_.begin(), parts_.end(), std::uint64_t{0});
  }

  std::size_t multiplicity(unsigned part) const {
    return static_cast<std::size_t>(std::count(parts_.begin(), parts_.end(), part));
  }

  std::size_t distinct_count() const {
    std::size_t count = 0;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (i == 0 || parts_[i] != parts_[i - 1]) ++count;
    }
    return count;
  }

  /// "3+1" style rendering.
  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (i) out += '+';
      out += std::to_string(parts_[i]);
    }
    return out;
  }

  friend bool operator==(const Partition&, const Partition&) = default;
  friend auto operator<=>(const Partition& a, const Partition& b) {
    return std::lexicographical_compare_three_way(a.parts_.begin(), a.parts_.end(),
                                                  b.parts_.begin(), b.parts_.end());
  }

 private:
  std::vector<unsigned> parts_;
};

namespace detail {

inline unsigned check_enumerable(std::int64_t n, std::int64_t limit) {
  if (n < 1) throw DomainError("enumeration requires n >= 1, got " + std::to_string(n));
  if (n > limit) {
    throw DomainError("n = " + std::to_string(n) + " exceeds the enumeration limit " +
                      std::to_string(limit) + "; use the closed-form backend");
  }
  return static_cast<unsigned>(n);
}

}  // namespace detail

/// Lazy generator of the partitions of n in descending lexicographic order.
///
/// Successor rule: strip the trailing 1s, decrement the last remaining part x,
/// then refill the removed mass (the 1s plus one) greedily with parts <= x-1.
/// The sequence starts at [n] and ends at [1,...,1].
class PartitionRange {
 public:
  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = std::vector<unsigned>;
    using difference_type = std::ptrdiff_t;
    using reference = const std::vector<unsigned>&;
    using pointer = const std::vector<unsigned>*;

    iterator() = default;
    explicit iterator(unsigned n) : parts_{n}, done_(false) {}

    reference operator*() const { return parts_; }
    pointer operator->() const { return &parts_; }

    iterator& operator++() {
      std::size_t ones = 0;
      while (!parts_.empty() && parts_.back() == 1) {
        parts_.pop_back();
        ++ones;
      }
      if (parts_.empty()) {
        done_ = true;
        return *this;
      }
      const unsigned x = --parts_.back();
      std::size_t rest = ones + 1;
      while (rest > x) {
        parts_.push_back(x);
        rest -= x;
      }
      if (rest > 0) parts_.push_back(static_cast<unsigned>(rest));
      return *this;
    }
    void operator++(int) { ++*this; }

    friend bool operator==(const iterator& it, std::default_sentinel_t) { return it.done_; }

   private:
    std::vector<unsigned> parts_;
    bool done_ = true;
  };

  explicit PartitionRange(std::int64_t n, std::int64_t limit = kDefaultEnumerationLimit)
      : n_(detail::check_enumerable(n, limit)) {}

  iterator begin() const { return iterator(n_); }
  std::default_sentinel_t end() const { return {}; }

 private:
  unsigned n_;
};

/// Every partition of n exactly once, in descending lexicographic order.
/// Throws DomainError for n < 1 or n > limit.
inline std::vector<Partition> enumerate_partitions(std::int64_t n,
                                                   std::int64_t limit = kDefaultEnumerationLimit) {
  std::vector<Partition> out;
  for (const auto& parts : PartitionRange(n, limit)) out.emplace_back(parts);
  return out;
}

/// Statistics of the partitions of n gathered by direct enumeration.
/// The maps are sparse: absent keys mean zero.
struct PartitionStats {
  std::int64_t n = 0;
  std::uint64_t partition_count = 0;
  std::uint64_t distinct_member_total = 0;
  std::map<unsigned, std::uint64_t> occurrence_counts;
  std::map<unsigned, std::uint64_t> containing_counts;

  std::uint64_t occurrences(std::int64_t k) const { return lookup(occurrence_counts, k); }
  std::uint64_t containing(std::int64_t k) const { return lookup(containing_counts, k); }

  friend bool operator==(const PartitionStats&, const PartitionStats&) = default;

 private:
  static std::uint64_t lookup(const std::map<unsigned, std::uint64_t>& m, std::int64_t k) {
    if (k < 1) return 0;
    auto it = m.find(static_cast<unsigned>(k));
    return it == m.end() ? 0 : it->second;
  }
};

/// One pass over the partitions of n computing P(n), S(n), Q_k(n) and R_k(n).
inline PartitionStats oracle_stats(std::int64_t n, std::int64_t limit = kDefaultEnumerationLimit) {
  PartitionRange range(n, limit);
  const auto size = static_cast<std::size_t>(n) + 1;
  std::vector<std::uint64_t> occurrences(size, 0), containing(size, 0);
  PartitionStats stats;
  stats.n = n;
  for (const auto& parts : range) {
    ++stats.partition_count;
    // parts are sorted, so equal values form runs
    for (std::size_t i = 0; i < parts.size();) {
      std::size_t j = i;
      while (j < parts.size() && parts[j] == parts[i]) ++j;
      ++stats.distinct_member_total;
      occurrences[parts[i]] += j - i;
      ++containing[parts[i]];
      i = j;
    }
  }
  for (unsigned k = 1; k < size; ++k) {
    if (occurrences[k]) stats.occurrence_counts.emplace(k, occurrences[k]);
    if (containing[k]) stats.containing_counts.emplace(k, containing[k]);
  }
  return stats;
}

/// Sum over the partitions of n of the number of distinct part values whose
/// multiplicity is at least k.
inline std::uint64_t elder_count(std::int64_t n, std::int64_t k,
                                 std::int64_t limit = kDefaultEnumerationLimit) {
  if (k < 1) throw DomainError("elder_count requires k >= 1");
  const auto threshold = static_cast<std::size_t>(k);
  std::uint64_t total = 0;
  for (const auto& parts : PartitionRange(n, limit)) {
    for (std::size_t i = 0; i < parts.size();) {
      std::size_t j = i;
      while (j < parts.size() && parts[j] == parts[i]) ++j;
      if (j - i >= threshold) ++total;
      i = j;
    }
  }
  return total;
}

}  // namespace partx
