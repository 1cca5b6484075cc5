#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "hasse/errors.hpp"

namespace hasse {

using BigInt = boost::multiprecision::cpp_int;
using Real = long double;
using WideFloat = boost::multiprecision::cpp_bin_float_50;

static_assert(std::numeric_limits<Real>::digits >= 64, "extended precision required");

inline constexpr Real kPi = 3.141592653589793238462643383279502884L;
inline constexpr Real kLn10 = 2.302585092994045684017991454684364208L;

// Neumaier's compensated summation.
class CompensatedSum {
 public:
  void add(Real x) {
    Real t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  Real value() const { return sum_ + comp_; }

 private:
  Real sum_ = 0;
  Real comp_ = 0;
};

inline std::optional<std::uint64_t> checked_mul(std::uint64_t a, std::uint64_t b) {
  unsigned __int128 r = static_cast<unsigned __int128>(a) * b;
  if (r > std::numeric_limits<std::uint64_t>::max()) return std::nullopt;
  return static_cast<std::uint64_t>(r);
}

// a^e, or nullopt once the result exceeds limit.
inline std::optional<std::uint64_t> bounded_pow(std::uint64_t a, unsigned e, std::uint64_t limit) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < e; ++i) {
    auto next = checked_mul(r, a);
    if (!next || *next > limit) return std::nullopt;
    r = *next;
  }
  return r;
}

inline std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

inline std::uint64_t iroot(std::uint64_t n, unsigned k) {
  if (k == 1) return n;
  auto r = static_cast<std::uint64_t>(std::pow(static_cast<long double>(n), 1.0L / k));
  while (r > 0 && !bounded_pow(r, k, n)) --r;
  while (bounded_pow(r + 1, k, n)) ++r;
  return r;
}

inline bool is_perfect_square(std::int64_t n) {
  if (n < 0) return false;
  auto r = isqrt(static_cast<std::uint64_t>(n));
  return r * r == static_cast<std::uint64_t>(n);
}

inline WideFloat to_wide(const BigInt& n) { return WideFloat(n); }

inline Real log_big(const BigInt& n) {
  if (n <= 0) throw ValidationError("log of a non-positive integer");
  return static_cast<Real>(boost::multiprecision::log(to_wide(n)));
}

// A positive quantity that may overflow every floating type. level 0 stores the
// value itself, level 1 its log10, level 2 log10(log10(value)).
struct Magnitude {
  int level = 0;
  Real top = 0;

  static Magnitude from_ln(Real ln_value) {
    Real l10 = ln_value / kLn10;
    if (l10 < 300) return {0, std::exp(ln_value)};
    return {1, l10};
  }

  // value = exp(exp(ln_ln_value)).
  static Magnitude from_ln_ln(Real ln_ln_value) {
    if (ln_ln_value < 11000) return from_ln(std::exp(ln_ln_value));
    Real log10_log10 = (ln_ln_value - std::log(kLn10)) / kLn10;
    return {2, log10_log10};
  }

  Real log10_value() const {
    if (level == 0) return std::log10(top);
    if (level == 1) return top;
    return std::pow(Real(10), top);
  }
};

inline Magnitude raise(Magnitude m) { return {m.level + 1, std::log10(m.top)}; }

inline bool less(Magnitude a, Magnitude b) {
  while (a.level < b.level) a = raise(a);
  while (b.level < a.level) b = raise(b);
  return a.top < b.top;
}

}  // namespace hasse
