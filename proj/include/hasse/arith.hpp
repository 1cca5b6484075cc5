#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "hasse/errors.hpp"
#include "hasse/numeric.hpp"

namespace hasse {

using i64 = std::int64_t;
using u64 = std::uint64_t;

inline i64 mod_floor(i64 a, i64 m) {
  i64 r = a % m;
  return r < 0 ? r + m : r;
}

// Kronecker symbol (a/n) for n >= 1.
inline int kronecker_symbol(i64 a, u64 n) {
  if (n == 0) throw ValidationError("kronecker symbol needs n >= 1");
  int result = 1;
  unsigned twos = 0;
  while (n % 2 == 0) {
    n /= 2;
    ++twos;
  }
  if (twos > 0) {
    if (a % 2 == 0) return 0;
    if (twos % 2 == 1) {
      i64 r = mod_floor(a, 8);
      if (r == 3 || r == 5) result = -result;
    }
  }
  if (n == 1) return result;
  // n odd: Jacobi symbol (a mod n / n).
  u64 x = static_cast<u64>(mod_floor(a, static_cast<i64>(n)));
  u64 y = n;
  while (x != 0) {
    while (x % 2 == 0) {
      x /= 2;
      u64 r = y % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(x, y);
    if (x % 4 == 3 && y % 4 == 3) result = -result;
    x %= y;
  }
  return y == 1 ? result : 0;
}

inline std::vector<u64> primes_up_to(u64 limit) {
  std::vector<u64> primes;
  if (limit < 2) return primes;
  std::vector<bool> composite(limit + 1, false);
  for (u64 i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    if (i <= limit / i)
      for (u64 j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return primes;
}

inline bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d <= n / d; ++d)
    if (n % d == 0) return false;
  return true;
}

// Prime factorization by trial division, ascending.
inline std::vector<std::pair<u64, unsigned>> factorize(u64 n) {
  std::vector<std::pair<u64, unsigned>> out;
  for (u64 p = 2; p <= n / p; ++p) {
    if (n % p != 0) continue;
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

inline int mobius(u64 n) {
  int mu = 1;
  for (auto [p, e] : factorize(n)) {
    if (e > 1) return 0;
    mu = -mu;
  }
  return mu;
}

inline u64 euler_phi(u64 n) {
  u64 phi = n;
  for (auto [p, e] : factorize(n)) phi = phi / p * (p - 1);
  return phi;
}

inline std::vector<u64> divisors(u64 n) {
  std::vector<u64> out;
  for (u64 d = 1; d <= n / d; ++d) {
    if (n % d) continue;
    out.push_back(d);
    if (d != n / d) out.push_back(n / d);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline u64 least_prime_factor(u64 n) {
  if (n < 2) throw ValidationError("least prime factor of n < 2");
  return factorize(n).front().first;
}

inline bool is_squarefree(u64 n) {
  if (n == 0) return false;
  for (auto [p, e] : factorize(n))
    if (e > 1) return false;
  return true;
}

inline bool is_fundamental_discriminant(i64 d) {
  if (d == 0 || d == 1) return false;
  i64 r = mod_floor(d, 4);
  if (r == 1) return is_squarefree(static_cast<u64>(std::llabs(d)));
  if (r != 0) return false;
  i64 m = d / 4;
  i64 rm = mod_floor(m, 4);
  return (rm == 2 || rm == 3) && is_squarefree(static_cast<u64>(std::llabs(m)));
}

// Signed squarefree kernel of a nonzero integer: d = s * k^2 with s squarefree.
inline i64 squarefree_part(i64 d) {
  if (d == 0) throw ValidationError("squarefree part of zero");
  i64 s = d < 0 ? -1 : 1;
  for (auto [p, e] : factorize(static_cast<u64>(std::llabs(d))))
    if (e % 2) s *= static_cast<i64>(p);
  return s;
}

// Discriminant of Q(sqrt(s)) for a squarefree s != 1.
inline i64 fundamental_from_squarefree(i64 s) {
  if (s == 1 || s == 0) throw ValidationError("no quadratic field for squarefree part 0 or 1");
  return mod_floor(s, 4) == 1 ? s : 4 * s;
}

struct SieveRecord {
  int mu;
  u64 phi;
  bool squarefree;
  bool fundamental_positive;
  bool fundamental_negative;
};

// Linear sieve of mu, phi, squarefree and fundamental-discriminant flags.
class SieveTable {
 public:
  static constexpr u64 kDefaultMemoryBudget = u64(1) << 30;

  explicit SieveTable(u64 limit, u64 memory_budget = kDefaultMemoryBudget) : limit_(limit) {
    if (limit < 1) throw ValidationError("sieve limit must be >= 1");
    constexpr u64 bytes_per_entry = sizeof(std::int8_t) + sizeof(std::uint32_t) + 2;
    if (limit > memory_budget / bytes_per_entry)
      throw ResourceError("sieve limit " + std::to_string(limit) + " exceeds memory budget");
    mu_.assign(limit + 1, 0);
    phi_.assign(limit + 1, 0);
    std::vector<std::uint32_t> lp(limit + 1, 0);
    std::vector<std::uint32_t> primes;
    mu_[1] = 1;
    phi_[1] = 1;
    for (u64 i = 2; i <= limit; ++i) {
      if (lp[i] == 0) {
        lp[i] = static_cast<std::uint32_t>(i);
        primes.push_back(static_cast<std::uint32_t>(i));
        mu_[i] = -1;
        phi_[i] = static_cast<std::uint32_t>(i - 1);
      }
      for (std::uint32_t p : primes) {
        u64 ip = i * p;
        if (p > lp[i] || ip > limit) break;
        lp[ip] = p;
        if (p == lp[i]) {
          mu_[ip] = 0;
          phi_[ip] = phi_[i] * p;
        } else {
          mu_[ip] = static_cast<std::int8_t>(-mu_[i]);
          phi_[ip] = phi_[i] * (p - 1);
        }
      }
    }
    fund_pos_.assign(limit + 1, false);
    fund_neg_.assign(limit + 1, false);
    for (u64 n = 2; n <= limit; ++n) {
      fund_pos_[n] = classify(static_cast<i64>(n));
      fund_neg_[n] = classify(-static_cast<i64>(n));
    }
    fund_neg_[1] = false;
  }

  u64 limit() const { return limit_; }
  int mu(u64 n) const { return mu_.at(n); }
  u64 phi(u64 n) const { return phi_.at(n); }
  bool squarefree(u64 n) const { return mu_.at(n) != 0; }
  bool fundamental(i64 d) const {
    u64 a = static_cast<u64>(std::llabs(d));
    if (a > limit_) throw ValidationError("discriminant outside sieve range");
    return d > 0 ? fund_pos_[a] : d < 0 ? fund_neg_[a] : false;
  }
  SieveRecord at(u64 n) const {
    return {mu(n), phi(n), squarefree(n), fund_pos_.at(n), fund_neg_.at(n)};
  }

 private:
  bool classify(i64 d) const {
    i64 r = mod_floor(d, 4);
    u64 a = static_cast<u64>(std::llabs(d));
    if (r == 1) return mu_[a] != 0;
    if (r != 0) return false;
    i64 rm = mod_floor(d / 4, 4);
    return (rm == 2 || rm == 3) && mu_[a / 4] != 0;
  }

  u64 limit_;
  std::vector<std::int8_t> mu_;
  std::vector<std::uint32_t> phi_;
  std::vector<bool> fund_pos_;
  std::vector<bool> fund_neg_;
};

// #{1 <= m <= x squarefree} = sum_{d <= sqrt x} mu(d) floor(x / d^2).
inline u64 count_squarefree(u64 x) {
  if (x == 0) return 0;
  u64 r = isqrt(x);
  SieveTable table(std::max<u64>(r, 1));
  i64 total = 0;
  for (u64 d = 1; d <= r; ++d) {
    int m = table.mu(d);
    if (m) total += m * static_cast<i64>(x / (d * d));
  }
  return static_cast<u64>(total);
}

// Hoelder's closed form c_q(j) = mu(q/g) phi(q) / phi(q/g), g = gcd(q, j).
inline i64 ramanujan_sum(u64 q, i64 j) {
  if (q == 0) throw ValidationError("ramanujan sum needs q >= 1");
  u64 g = std::gcd(q, static_cast<u64>(std::llabs(j)));
  if (j == 0) g = q;
  u64 t = q / g;
  return mobius(t) * static_cast<i64>(euler_phi(q) / euler_phi(t));
}

inline Real chebyshev_theta(u64 x) {
  CompensatedSum s;
  for (u64 p : primes_up_to(x)) s.add(std::log(static_cast<Real>(p)));
  return s.value();
}

// Running theta over all integers up to limit: theta[n] = sum_{p <= n} log p.
inline std::vector<Real> chebyshev_theta_table(u64 limit) {
  std::vector<Real> out(limit + 1, 0);
  auto primes = primes_up_to(limit);
  CompensatedSum s;
  std::size_t k = 0;
  for (u64 n = 0; n <= limit; ++n) {
    while (k < primes.size() && primes[k] == n) {
      s.add(std::log(static_cast<Real>(n)));
      ++k;
    }
    out[n] = s.value();
  }
  return out;
}

// h(D) for D < 0 by counting reduced forms (a, b, c): |b| <= a <= c, b >= 0 when |b| = a or a = c.
inline u64 class_number_imaginary(i64 d) {
  if (d >= 0 || !is_fundamental_discriminant(d))
    throw ValidationError("class number needs a negative fundamental discriminant, got " + std::to_string(d));
  u64 h = 0;
  i64 n = -d;
  for (i64 a = 1; 3 * a * a <= n; ++a) {
    for (i64 b = -a + 1; b <= a; ++b) {
      i64 num = b * b - d;
      if (num % (4 * a)) continue;
      i64 c = num / (4 * a);
      if (c < a) continue;
      if (b < 0 && a == c) continue;
      if (std::gcd(std::gcd(a, std::llabs(b)), c) != 1) continue;
      ++h;
    }
  }
  return h;
}

inline unsigned units_count(i64 d) { return d == -3 ? 6 : d == -4 ? 4 : 2; }

}  // namespace hasse
