#pragma once

// Exact rational numbers.
//
// Values whose numerator and denominator fit in a signed 64-bit word are kept
// inline and combined with 128-bit intermediates; anything larger spills to a
// GMP mpq_class. Every value is canonical (lowest terms, positive denominator,
// and stored inline whenever it fits), so equality and hashing never need to
// normalize.

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sbill {

class Rat {
 public:
  Rat() noexcept = default;

  template <std::integral I>
  Rat(I v) {  // NOLINT(google-explicit-constructor)
    if constexpr (std::is_signed_v<I>) {
      if (static_cast<long long>(v) != std::numeric_limits<long long>::min()) {
        num_ = static_cast<std::int64_t>(v);
        return;
      }
    } else {
      if (static_cast<unsigned long long>(v) <=
          static_cast<unsigned long long>(kMax)) {
        num_ = static_cast<std::int64_t>(v);
        return;
      }
    }
    set_big(mpq_class(mpz_class(std::to_string(v))));
  }

  Rat(std::int64_t num, std::int64_t den);
  explicit Rat(const mpq_class& q) { set_big(q); }

  Rat(const Rat& o) : num_(o.num_), den_(o.den_) {
    if (o.big_) big_ = std::make_unique<mpq_class>(*o.big_);
  }
  Rat(Rat&&) noexcept = default;
  Rat& operator=(const Rat& o) {
    if (this != &o) {
      num_ = o.num_;
      den_ = o.den_;
      big_ = o.big_ ? std::make_unique<mpq_class>(*o.big_) : nullptr;
    }
    return *this;
  }
  Rat& operator=(Rat&&) noexcept = default;

  /// Parses "p/q", "p" or a finite decimal such as "-1.25".
  static Rat parse(std::string_view text);

  /// Always "p/q", including "n/1" for integers.
  std::string str() const;

  int sign() const noexcept {
    if (!big_) return (num_ > 0) - (num_ < 0);
    return sgn(*big_);
  }
  bool is_zero() const noexcept { return !big_ && num_ == 0; }
  bool is_integer() const noexcept { return !big_ && den_ == 1; }
  bool is_small() const noexcept { return !big_; }
  /// True when the denominator is a power of two.
  bool is_dyadic() const;

  mpz_class numerator() const;
  mpz_class denominator() const;
  mpq_class to_mpq() const;
  double to_double() const;
  std::size_t hash() const noexcept;

  Rat operator-() const;
  Rat& operator+=(const Rat& o) { return *this = *this + o; }
  Rat& operator-=(const Rat& o) { return *this = *this - o; }
  Rat& operator*=(const Rat& o) { return *this = *this * o; }
  Rat& operator/=(const Rat& o) { return *this = *this / o; }

  friend Rat operator+(const Rat& a, const Rat& b);
  friend Rat operator-(const Rat& a, const Rat& b);
  friend Rat operator*(const Rat& a, const Rat& b);
  friend Rat operator/(const Rat& a, const Rat& b);

  friend bool operator==(const Rat& a, const Rat& b) noexcept {
    if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
    if (a.big_ && b.big_) return *a.big_ == *b.big_;
    return false;  // canonical storage: a small and a big value never coincide
  }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b);

 private:
  static constexpr std::int64_t kMax = std::numeric_limits<std::int64_t>::max();

  void set_big(const mpq_class& q);
  // Stores n/d (already in lowest terms, d > 0) inline if it fits.
  bool try_small(__int128 n, __int128 d) noexcept {
    if (n > kMax || n < -kMax || d > kMax) return false;
    num_ = static_cast<std::int64_t>(n);
    den_ = static_cast<std::int64_t>(d);
    big_.reset();
    return true;
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::unique_ptr<mpq_class> big_;
};

Rat abs(const Rat& r);
Rat min(const Rat& a, const Rat& b);
Rat max(const Rat& a, const Rat& b);

struct RatHash {
  std::size_t operator()(const Rat& r) const noexcept { return r.hash(); }
};

inline void hash_combine(std::size_t& seed, std::size_t v) noexcept {
  seed ^= v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

}  // namespace sbill
