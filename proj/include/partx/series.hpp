#pragma once

#include <concepts>
#include <cstdint>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "partx/bigint.hpp"
#include "partx/errors.hpp"

namespace partx {

// ---------------------------------------------------------------------------
// Coefficient rings
// ---------------------------------------------------------------------------

/// The integers, with exact arbitrary-precision elements.
struct IntegerRing {
  using value_type = BigInt;

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type from_int(std::int64_t v) const { return v; }
  value_type from_bigint(const BigInt& v) const { return v; }
  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type neg(const value_type& a) const { return -a; }
  bool is_unit(const value_type& a) const { return a == 1 || a == -1; }
  value_type unit_inverse(const value_type& a) const { return a; }
  BigInt to_bigint(const value_type& a) const { return a; }
  std::string name() const { return "Z"; }

  friend bool operator==(const IntegerRing&, const IntegerRing&) = default;
};

/// Integers modulo m, elements kept in [0, m).
class ModularRing {
 public:
  using value_type = std::uint64_t;

  explicit ModularRing(std::uint64_t modulus) : modulus_(modulus) {
    if (modulus < 2 || modulus > (std::uint64_t{1} << 62)) {
      throw DomainError("ring modulus must lie in [2, 2^62], got " + std::to_string(modulus));
    }
  }

  std::uint64_t modulus() const { return modulus_; }

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type from_int(std::int64_t v) const {
    const auto m = static_cast<std::int64_t>(modulus_);
    auto r = v % m;
    return static_cast<value_type>(r < 0 ? r + m : r);
  }
  value_type from_bigint(const BigInt& v) const { return residue(v, modulus_); }
  value_type add(value_type a, value_type b) const {
    const value_type s = a + b;
    return s >= modulus_ ? s - modulus_ : s;
  }
  value_type sub(value_type a, value_type b) const { return a >= b ? a - b : a + modulus_ - b; }
  value_type mul(value_type a, value_type b) const {
    return static_cast<value_type>(static_cast<unsigned __int128>(a) * b % modulus_);
  }
  value_type neg(value_type a) const { return a == 0 ? 0 : modulus_ - a; }
  bool is_unit(value_type a) const { return gcd(a, modulus_) == 1; }
  value_type unit_inverse(value_type a) const {
    // extended Euclid on (a, m), coefficients tracked mod m
    std::int64_t t = 0, new_t = 1;
    std::uint64_t r = modulus_, new_r = a;
    while (new_r != 0) {
      const std::uint64_t q = r / new_r;
      std::tie(t, new_t) = std::pair{new_t, t - static_cast<std::int64_t>(q) * new_t};
      std::tie(r, new_r) = std::pair{new_r, r - q * new_r};
    }
    if (r != 1) throw DomainError("element is not a unit");
    return from_int(t);
  }
  BigInt to_bigint(value_type a) const { return a; }
  std::string name() const { return "Zmod:" + std::to_string(modulus_); }

  friend bool operator==(const ModularRing&, const ModularRing&) = default;

 private:
  static std::uint64_t gcd(std::uint64_t a, std::uint64_t b) {
    while (b) a = std::exchange(b, a % b);
    return a;
  }

  std::uint64_t modulus_;
};

template <class R>
concept CoefficientRing = std::equality_comparable<R> && requires(const R r, typename R::value_type a,
                                                                  std::int64_t i, BigInt big) {
  { r.zero() } -> std::convertible_to<typename R::value_type>;
  { r.one() } -> std::convertible_to<typename R::value_type>;
  { r.from_int(i) } -> std::convertible_to<typename R::value_type>;
  { r.from_bigint(big) } -> std::convertible_to<typename R::value_type>;
  { r.add(a, a) } -> std::convertible_to<typename R::value_type>;
  { r.sub(a, a) } -> std::convertible_to<typename R::value_type>;
  { r.mul(a, a) } -> std::convertible_to<typename R::value_type>;
  { r.neg(a) } -> std::convertible_to<typename R::value_type>;
  { r.is_unit(a) } -> std::convertible_to<bool>;
  { r.unit_inverse(a) } -> std::convertible_to<typename R::value_type>;
  { r.to_bigint(a) } -> std::convertible_to<BigInt>;
  { r.name() } -> std::convertible_to<std::string>;
};

// ---------------------------------------------------------------------------
// Truncated power series
// ---------------------------------------------------------------------------

/// A formal power series known exactly through x^trunc.
template <CoefficientRing Ring>
class PowerSeries {
 public:
  using value_type = typename Ring::value_type;

  /// The zero series.
  PowerSeries(Ring ring, std::size_t trunc) : ring_(std::move(ring)), coeffs_(trunc + 1, ring_.zero()) {}

  /// Coefficients beyond trunc are dropped, missing ones are zero.
  PowerSeries(Ring ring, std::size_t trunc, std::span<const value_type> coeffs) : PowerSeries(std::move(ring), trunc) {
    for (std::size_t i = 0; i < coeffs.size() && i <= trunc; ++i) coeffs_[i] = coeffs[i];
  }

  /// Series from small integer coefficients, reduced into the ring.
  static PowerSeries from_ints(Ring ring, std::size_t trunc, std::initializer_list<std::int64_t> coeffs) {
    PowerSeries s(std::move(ring), trunc);
    std::size_t i = 0;
    for (auto c : coeffs) {
      if (i > trunc) break;
      s.coeffs_[i++] = s.ring_.from_int(c);
    }
    return s;
  }

  static PowerSeries one(Ring ring, std::size_t trunc) {
    PowerSeries s(std::move(ring), trunc);
    s.coeffs_[0] = s.ring_.one();
    return s;
  }

  /// x^degree (the zero series if degree > trunc).
  static PowerSeries monomial(Ring ring, std::size_t trunc, std::size_t degree) {
    PowerSeries s(std::move(ring), trunc);
    if (degree <= trunc) s.coeffs_[degree] = s.ring_.one();
    return s;
  }

  const Ring& ring() const { return ring_; }
  std::size_t trunc() const { return coeffs_.size() - 1; }
  std::span<const value_type> coeffs() const { return coeffs_; }

  const value_type& operator[](std::size_t i) const { return coeffs_.at(i); }
  value_type& operator[](std::size_t i) { return coeffs_.at(i); }

  friend bool operator==(const PowerSeries&, const PowerSeries&) = default;

 private:
  Ring ring_;
  std::vector<value_type> coeffs_;
};

namespace detail {

template <CoefficientRing Ring>
void require_compatible(const PowerSeries<Ring>& a, const PowerSeries<Ring>& b) {
  if (!(a.ring() == b.ring())) throw std::invalid_argument("series over different rings");
  if (a.trunc() != b.trunc()) throw std::invalid_argument("series with different truncation degrees");
}

}  // namespace detail

template <CoefficientRing Ring>
PowerSeries<Ring> add(const PowerSeries<Ring>& a, const PowerSeries<Ring>& b) {
  detail::require_compatible(a, b);
  PowerSeries<Ring> out(a.ring(), a.trunc());
  for (std::size_t i = 0; i <= a.trunc(); ++i) out[i] = a.ring().add(a[i], b[i]);
  return out;
}

template <CoefficientRing Ring>
PowerSeries<Ring> sub(const PowerSeries<Ring>& a, const PowerSeries<Ring>& b) {
  detail::require_compatible(a, b);
  PowerSeries<Ring> out(a.ring(), a.trunc());
  for (std::size_t i = 0; i <= a.trunc(); ++i) out[i] = a.ring().sub(a[i], b[i]);
  return out;
}

/// Truncated Cauchy product (schoolbook).
template <CoefficientRing Ring>
PowerSeries<Ring> mul(const PowerSeries<Ring>& a, const PowerSeries<Ring>& b) {
  detail::require_compatible(a, b);
  const auto& ring = a.ring();
  const std::size_t n = a.trunc();
  PowerSeries<Ring> out(ring, n);
  for (std::size_t i = 0; i <= n; ++i) {
    if (a[i] == ring.zero()) continue;
    for (std::size_t j = 0; i + j <= n; ++j) {
      if (b[j] == ring.zero()) continue;
      out[i + j] = ring.add(out[i + j], ring.mul(a[i], b[j]));
    }
  }
  return out;
}

/// Multiplicative inverse through trunc: b0 = 1/a0, b_n = -(1/a0) * sum_{i=1..n} a_i b_{n-i}.
/// Throws DomainError when a0 is not a unit.
template <CoefficientRing Ring>
PowerSeries<Ring> inverse(const PowerSeries<Ring>& a) {
  const auto& ring = a.ring();
  if (!ring.is_unit(a[0])) throw DomainError("constant term is not a unit in " + ring.name());
  const auto a0_inv = ring.unit_inverse(a[0]);
  PowerSeries<Ring> b(ring, a.trunc());
  b[0] = a0_inv;
  for (std::size_t n = 1; n <= a.trunc(); ++n) {
    auto sum = ring.zero();
    for (std::size_t i = 1; i <= n; ++i) {
      if (a[i] == ring.zero()) continue;
      sum = ring.add(sum, ring.mul(a[i], b[n - i]));
    }
    b[n] = ring.neg(ring.mul(a0_inv, sum));
  }
  return b;
}

/// Multiplication by x^degree, truncated.
template <CoefficientRing Ring>
PowerSeries<Ring> shift(const PowerSeries<Ring>& a, std::size_t degree) {
  PowerSeries<Ring> out(a.ring(), a.trunc());
  for (std::size_t i = degree; i <= a.trunc(); ++i) out[i] = a[i - degree];
  return out;
}

template <CoefficientRing Ring>
PowerSeries<Ring> pow(const PowerSeries<Ring>& base, std::uint64_t exponent) {
  PowerSeries<Ring> result = PowerSeries<Ring>::one(base.ring(), base.trunc());
  PowerSeries<Ring> square = base;
  while (exponent) {
    if (exponent & 1) result = mul(result, square);
    exponent >>= 1;
    if (exponent) square = mul(square, square);
  }
  return result;
}

/// Coefficientwise image of an integer series in another ring.
template <CoefficientRing Ring>
PowerSeries<Ring> reduce(const PowerSeries<IntegerRing>& a, const Ring& ring) {
  PowerSeries<Ring> out(ring, a.trunc());
  for (std::size_t i = 0; i <= a.trunc(); ++i) out[i] = ring.from_bigint(a[i]);
  return out;
}

// ---------------------------------------------------------------------------
// Partition generating functions
// ---------------------------------------------------------------------------

/// F(x) = prod_{n>=1} 1/(1 - x^n) through trunc, so coefficient m is P(m).
/// Divides by one factor at a time: c[i] += c[i - n] in ascending i.
template <CoefficientRing Ring>
PowerSeries<Ring> euler_inverse_product(std::size_t trunc, const Ring& ring) {
  auto f = PowerSeries<Ring>::one(ring, trunc);
  for (std::size_t n = 1; n <= trunc; ++n) {
    for (std::size_t i = n; i <= trunc; ++i) f[i] = ring.add(f[i], f[i - n]);
  }
  return f;
}

/// [prod_{n>=1} (1 - x^n)]^power through trunc.
template <CoefficientRing Ring>
PowerSeries<Ring> euler_product_pow(std::uint64_t power, std::size_t trunc, const Ring& ring) {
  if (power < 1) throw DomainError("power must be at least 1");
  auto e = PowerSeries<Ring>::one(ring, trunc);
  // multiply by (1 - x^n): descending i so c[i - n] is still the old value
  for (std::size_t n = 1; n <= trunc; ++n) {
    for (std::size_t i = trunc; i >= n; --i) e[i] = ring.sub(e[i], e[i - n]);
  }
  return pow(e, power);
}

/// G_k(x) = x^k/(1 - x^k) * F(x) through trunc, so coefficient m is Q_k(m).
/// Throws DomainError when k < 1 or trunc < k.
template <CoefficientRing Ring>
PowerSeries<Ring> qk_generating_function(std::size_t k, std::size_t trunc, const Ring& ring) {
  if (k < 1) throw DomainError("k must be at least 1");
  if (trunc < k) throw DomainError("trunc must be at least k");
  PowerSeries<Ring> geometric(ring, trunc);
  for (std::size_t i = k; i <= trunc; i += k) geometric[i] = ring.one();
  return mul(geometric, euler_inverse_product(trunc, ring));
}

/// The double sum
///   sum_{mu>=0} sum_{nu in Z} (-1)^(mu+nu) (2mu+1) x^(1 + mu(mu+1)/2 + nu(3nu+1)/2),
/// i.e. x * [prod (1 - x^n)]^4, accumulated term by term through trunc.
inline PowerSeries<IntegerRing> double_sum_expansion(std::size_t trunc) {
  if (trunc < 1) throw DomainError("trunc must be at least 1");
  PowerSeries<IntegerRing> out(IntegerRing{}, trunc);
  const auto t = static_cast<std::int64_t>(trunc);
  for (std::int64_t mu = 0; 1 + mu * (mu + 1) / 2 <= t; ++mu) {
    const std::int64_t base = 1 + mu * (mu + 1) / 2;
    // nu = 0, +1, -1, +2, -2, ...; both branches of nu(3nu+1)/2 grow with |nu|
    for (std::int64_t a = 0;; ++a) {
      bool any = false;
      const std::int64_t candidates[] = {a, -a};
      for (int i = 0; i < (a == 0 ? 1 : 2); ++i) {
        const std::int64_t nu = candidates[i];
        const std::int64_t e = base + nu * (3 * nu + 1) / 2;
        if (e > t) continue;
        any = true;
        const std::int64_t sign = ((mu + nu) % 2 == 0) ? 1 : -1;
        out[static_cast<std::size_t>(e)] += sign * (2 * mu + 1);
      }
      if (!any) break;
    }
  }
  return out;
}

inline bool is_prime(std::uint64_t m) {
  if (m < 2) return false;
  for (std::uint64_t d = 2; d * d <= m; ++d) {
    if (m % d == 0) return false;
  }
  return true;
}

/// Whether (1 - x^m) / (1 - x)^m == 1 through trunc over Z/mZ.
/// Throws DomainError unless m is prime.
inline bool freshman_dream_check(std::uint64_t m, std::size_t trunc) {
  if (!is_prime(m)) throw DomainError(std::to_string(m) + " is not prime");
  if (trunc < 1) throw DomainError("trunc must be at least 1");
  const ModularRing ring(m);
  using S = PowerSeries<ModularRing>;
  const auto one_minus_x = S::from_ints(ring, trunc, {1, -1});
  auto numerator = S::one(ring, trunc);
  if (m <= trunc) numerator[m] = ring.from_int(-1);
  const auto quotient = mul(numerator, inverse(pow(one_minus_x, m)));
  return quotient == S::one(ring, trunc);
}

// ---------------------------------------------------------------------------
// Dump format
// ---------------------------------------------------------------------------

template <CoefficientRing Ring>
std::ostream& operator<<(std::ostream& os, const PowerSeries<Ring>& s) {
  os << '[';
  for (std::size_t i = 0; i <= s.trunc(); ++i) os << (i ? ", " : "") << s.ring().to_bigint(s[i]).str();
  return os << "] over " << s.ring().name();
}

/// `#series v1 ring=<Z|Zmod:m> trunc=<N>` then one `degree,coefficient` line per degree.
template <CoefficientRing Ring>
void write_series(const PowerSeries<Ring>& s, std::ostream& out) {
  out << "#series v1 ring=" << s.ring().name() << " trunc=" << s.trunc() << '\n';
  for (std::size_t i = 0; i <= s.trunc(); ++i) out << i << ',' << s.ring().to_bigint(s[i]).str() << '\n';
}

}  // namespace partx
