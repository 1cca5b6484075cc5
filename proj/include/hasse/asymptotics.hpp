#pragma once

#include <bit>
#include <cmath>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "hasse/census.hpp"
#include "hasse/lvalues.hpp"

namespace hasse {

struct EulerProductValue {
  Real value = 0;
  u64 cutoff = 0;
  Real tail_estimate = 0;  // bound on |log(true) - log(value)|
};

namespace detail {

// sum over p <= cutoff of log f(p), plus a tail bound assuming
// |log f(p)| <= C p^{-sigma} with C fitted on the last dyadic block.
struct LogProduct {
  Real log_value = 0;
  int sign = 1;
  Real tail = 0;
};

inline const std::vector<u64>& cached_primes(u64 cutoff) {
  static thread_local std::vector<u64> primes;
  static thread_local u64 limit = 0;
  if (cutoff > limit) {
    limit = std::max<u64>(cutoff, 2 * limit);
    primes = primes_up_to(limit);
  }
  return primes;
}

inline Real prime_tail_sum(u64 cutoff, Real sigma) {
  // sum_{p > P} p^{-sigma} <= 1.26 sigma P^{1-sigma} / ((sigma - 1) log P), from pi(t) < 1.26 t / log t.
  Real P = static_cast<Real>(std::max<u64>(cutoff, 17));
  return 1.26L * sigma * std::pow(P, 1 - sigma) / ((sigma - 1) * std::log(P));
}

inline LogProduct log_euler_product(u64 cutoff, Real sigma, const std::function<Real(u64)>& factor,
                                    const std::function<bool(u64)>& skip = nullptr) {
  CompensatedSum s;
  LogProduct out;
  Real c = 0;
  for (u64 p : cached_primes(cutoff)) {
    if (p > cutoff) break;
    if (skip && skip(p)) continue;
    Real f = factor(p);
    if (f == 0) {
      out.sign = 0;
      return out;
    }
    if (f < 0) out.sign = -out.sign;
    Real l = std::log(std::fabs(f));
    s.add(l);
    if (2 * p > cutoff) c = std::max(c, std::fabs(l) * std::pow(static_cast<Real>(p), sigma));
  }
  out.log_value = s.value();
  out.tail = 2 * c * prime_tail_sum(cutoff, sigma);
  return out;
}

inline Real factorial(int k) {
  Real f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

}  // namespace detail

// The constant delta_{m,n} of N_{m,n}(x) ~ delta x^{1/(n^2(1-1/l))} (log x)^{l-2}, over Q.
inline EulerProductValue delta_mn(i64 m, i64 n, u64 cutoff) {
  if (m < 1 || n < 2 || n % m) throw ValidationError("delta_mn needs m | n, n >= 2");
  if (cutoff < 2) throw ValidationError("cutoff must be >= 2");
  const i64 l = static_cast<i64>(least_prime_factor(static_cast<u64>(n)));
  if (m % l) return {0, cutoff, 0};
  const Real a = static_cast<Real>(n * n) * (1 - Real(1) / l);
  Real prefactor = 1 / (m * detail::factorial(static_cast<int>(l - 2)) * std::pow(a, static_cast<Real>(l - 2)));
  if (m % 2 == 0) prefactor *= 2;
  std::vector<u64> higher;
  for (u64 d : divisors(static_cast<u64>(m)))
    if (d > static_cast<u64>(l)) higher.push_back(d);
  Real sigma = 2;
  for (u64 d : higher)
    sigma = std::min(sigma, (1 - Real(1) / d) / (1 - Real(1) / l));
  CompensatedSum total;
  Real tail = 0;
  for (i64 j = 0; j < m; j += l) {
    std::vector<std::pair<Real, i64>> terms;
    for (u64 d : higher) terms.emplace_back((1 - Real(1) / d) / (1 - Real(1) / l), ramanujan_sum(d, j));
    auto lp = detail::log_euler_product(cutoff, sigma, [&](u64 p) {
      Real P = static_cast<Real>(p);
      Real f = 1 + (l - 1) / P;
      for (auto [e, c] : terms) f += c * std::pow(P, -e);
      return f * std::pow(1 - 1 / P, static_cast<Real>(l - 1));
    });
    total.add(lp.sign * std::exp(lp.log_value));
    tail = std::max(tail, lp.tail);
  }
  return {prefactor * total.value(), cutoff, tail};
}

// delta_n = sum_{m | n} mu(n/m) delta_{m,n}.
inline EulerProductValue delta_n(i64 n, u64 cutoff) {
  if (n < 2) throw ValidationError("delta_n needs n >= 2");
  CompensatedSum s;
  Real abs_err = 0;
  for (u64 m : divisors(static_cast<u64>(n))) {
    int mu = mobius(static_cast<u64>(n) / m);
    if (!mu) continue;
    EulerProductValue d = delta_mn(static_cast<i64>(m), n, cutoff);
    s.add(mu * d.value);
    abs_err += std::fabs(d.value) * std::expm1(d.tail_estimate);
  }
  Real v = s.value();
  if (!(v > 0)) throw InvariantViolation("delta_n is not positive for n = " + std::to_string(n));
  return {v, cutoff, std::log1p(abs_err / v)};
}

// Exponent 1/(n^2 (1 - 1/l)) of the division-algebra count.
inline Real division_growth_exponent(i64 n) {
  i64 l = static_cast<i64>(least_prime_factor(static_cast<u64>(n)));
  return 1 / (static_cast<Real>(n * n) * (1 - Real(1) / l));
}

inline Real embed_quads_lower_bound(const QuaternionAlgebraQ& b) {
  return 6 / (kPi * kPi) / std::pow(Real(2), static_cast<Real>(b.ramification().size()));
}

// The r = 1 display 2^{r1'-1/2} (1/L(1,chi))^{1/2} prod_{non-split}(1-p^-2)^{1/2} prod_{p|D}(1+1/p)^{1/2},
// without the Gamma factor.
inline EulerProductValue embed_constant_r1_display(i64 delta, u64 cutoff) {
  QuadraticField L(delta);
  const Real r1 = delta < 0 ? 1 : 0;
  LValue l1 = dirichlet_L(delta, 1);
  auto lp = detail::log_euler_product(
      cutoff, 2,
      [&](u64 p) {
        int k = kronecker_symbol(delta, p);
        Real P = static_cast<Real>(p);
        if (k == -1) return std::sqrt(1 - 1 / (P * P));
        if (k == 0) return std::sqrt((1 + 1 / P) * (1 - 1 / (P * P)));
        return Real(1);
      },
      [&](u64 p) { return kronecker_symbol(delta, p) == 1; });
  Real v = std::pow(Real(2), r1 - Real(0.5)) / std::sqrt(l1.value) * std::exp(lp.log_value);
  return {v, cutoff, lp.tail + l1.error / l1.value};
}

// Leading constant of #{B : L embeds, |disc B| <= x} ~ c x^{1/2} / (log x)^{1/2}.
inline EulerProductValue embed_constant_r1(i64 delta, u64 cutoff) {
  EulerProductValue d = embed_constant_r1_display(delta, cutoff);
  d.value /= std::tgamma(Real(0.5));
  if (!(d.value > 0)) throw InvariantViolation("embedding constant is not positive");
  return d;
}

// Fundamental discriminant of the character prod_{i in T} chi_i.
inline i64 product_character_discriminant(const std::vector<i64>& deltas, unsigned mask) {
  i64 s = 1;
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    if (!(mask >> i & 1)) continue;
    i64 t = squarefree_part(deltas[i]);
    i64 g = std::gcd(std::llabs(s), std::llabs(t));
    s = (s / g) * (t / g);
  }
  return fundamental_from_squarefree(s);
}

// A_0(1/2) / Gamma(1/2^r): the general leading constant for r independent fields.
inline EulerProductValue embed_constant_general(const std::vector<i64>& deltas, u64 cutoff) {
  if (deltas.empty()) throw ValidationError("at least one field is required");
  require_full_compositum(deltas);
  const std::size_t r = deltas.size();
  const unsigned subsets = 1u << r;
  const Real root = 1 / static_cast<Real>(subsets);
  std::vector<u64> ramified;
  for (u64 p : primes_up_to(std::max<u64>(2, static_cast<u64>(std::llabs(*std::max_element(
                                                   deltas.begin(), deltas.end(),
                                                   [](i64 a, i64 b) { return std::llabs(a) < std::llabs(b); }))))))
    for (i64 d : deltas)
      if (kronecker_symbol(d, p) == 0) {
        ramified.push_back(p);
        break;
      }
  const bool r1 = infinity_nonsplit_in_all(deltas);
  std::vector<i64> chars(subsets, 1);
  for (unsigned t = 1; t < subsets; ++t) chars[t] = product_character_discriminant(deltas, t);

  CompensatedSum log_inner;
  Real err = 0;
  for (u64 p : ramified) log_inner.add(std::log1p(-Real(1) / p));
  for (unsigned t = 1; t < subsets; ++t) {
    int sign = std::popcount(t) % 2 ? -1 : 1;
    LValue lv = dirichlet_L(chars[t], 1);
    Real lt = std::log(lv.value);
    err += lv.error / lv.value;
    for (u64 p : ramified) lt += std::log1p(-Real(kronecker_symbol(chars[t], p)) / p);
    log_inner.add(sign * lt);
  }
  CompensatedSum log_q0;
  for (u64 p : ramified)
    if (nonsplit_in_all(deltas, p)) log_q0.add(std::log1p(Real(1) / p));

  auto is_ramified = [&](u64 p) { return std::binary_search(ramified.begin(), ramified.end(), p); };
  auto z = detail::log_euler_product(
      cutoff, 2,
      [&](u64 p) {
        Real P = static_cast<Real>(p);
        Real prod = 1;
        std::vector<int> chi(r);
        for (std::size_t i = 0; i < r; ++i) {
          chi[i] = kronecker_symbol(deltas[i], p);
          prod *= 1 - chi[i];
        }
        Real l = subsets * std::log1p(prod / subsets / P);
        for (unsigned t = 0; t < subsets; ++t) {
          int c = 1;
          for (std::size_t i = 0; i < r; ++i)
            if (t >> i & 1) c *= chi[i];
          int sign = std::popcount(t) % 2 ? -1 : 1;
          l += sign * std::log1p(-c / P);
        }
        return std::exp(l);
      },
      is_ramified);

  Real log_value = (r1 ? 1 - root : -root) * std::log(Real(2)) - std::lgamma(root) + log_q0.value() +
                   root * (log_inner.value() + z.log_value);
  Real v = std::exp(log_value);
  if (!(v > 0)) throw InvariantViolation("embedding constant is not positive");
  return {v, cutoff, root * (z.tail + err)};
}

// ---- predictions -----------------------------------------------------------

struct DivisionModel {
  i64 n;
};
struct EmbedModel {
  std::vector<i64> deltas;
};
struct QuadsModel {
  QuaternionAlgebraQ b;
};
using PredictionModel = std::variant<DivisionModel, EmbedModel, QuadsModel>;

struct PredictionRow {
  u64 x;
  BigInt count;
  Real predicted;
  Real ratio;
};

inline Real predicted_count(const PredictionModel& model, u64 x, u64 cutoff) {
  const Real X = static_cast<Real>(x);
  if (auto* d = std::get_if<DivisionModel>(&model)) {
    i64 l = static_cast<i64>(least_prime_factor(static_cast<u64>(d->n)));
    return delta_n(d->n, cutoff).value * std::pow(X, division_growth_exponent(d->n)) *
           std::pow(std::log(X), static_cast<Real>(l - 2));
  }
  if (auto* e = std::get_if<EmbedModel>(&model)) {
    Real r = static_cast<Real>(e->deltas.size());
    Real c = e->deltas.size() == 1 ? embed_constant_r1(e->deltas[0], cutoff).value
                                   : embed_constant_general(e->deltas, cutoff).value;
    return c * std::sqrt(X) / std::pow(std::log(X), 1 - std::pow(Real(2), -r));
  }
  return embed_quads_lower_bound(std::get<QuadsModel>(model).b) * X;
}

inline std::vector<PredictionRow> prediction_report(const CountTable& table, const PredictionModel& model,
                                                    u64 cutoff = 1000000) {
  std::vector<PredictionRow> rows;
  for (std::size_t i = 0; i < table.thresholds.size(); ++i) {
    u64 x = table.thresholds[i];
    Real pred = x > 1 ? predicted_count(model, x, cutoff) : 0;
    Real c = static_cast<Real>(table.counts[i].convert_to<long double>());
    rows.push_back({x, table.counts[i], pred, pred > 0 ? c / pred : 0});
  }
  return rows;
}

}  // namespace hasse
