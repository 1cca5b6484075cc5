#pragma once

#include <string>

#include "hasse/arith.hpp"
#include "hasse/numeric.hpp"

namespace hasse {

// Fundamental solution of t^2 - D u^2 = +-4 together with the norm-one pair.
struct PellSolution {
  i64 delta = 0;
  BigInt t, u;
  int norm = 1;
  BigInt t1, u1;
};

// Walks the continued fraction of w = (s + sqrt D)/2, s = D mod 2, with the
// exact (P, Q) recurrence. The first convergent p/q with
// (2p - s q)^2 - D q^2 = +-4 gives the fundamental unit (2p - s q + q sqrt D)/2.
inline PellSolution pell_fundamental(i64 delta) {
  if (delta <= 0 || !is_fundamental_discriminant(delta))
    throw ValidationError("pell_fundamental needs a positive fundamental discriminant, got " +
                          std::to_string(delta));
  const i64 s = delta % 2;
  const BigInt D = delta;
  const i64 root = static_cast<i64>(isqrt(static_cast<u64>(delta)));
  // w = (P + sqrt D) / Q with Q | D - P^2.
  i64 P = s, Q = 2;
  BigInt p_prev = 0, p_cur = 1, q_prev = 1, q_cur = 0;
  for (long step = 0;; ++step) {
    i64 a = (P + root) / Q;
    BigInt p_next = a * p_cur + p_prev;
    BigInt q_next = a * q_cur + q_prev;
    p_prev = p_cur;
    p_cur = p_next;
    q_prev = q_cur;
    q_cur = q_next;
    BigInt t = 2 * p_cur - s * q_cur;
    BigInt n = t * t - D * q_cur * q_cur;
    if (t > 0 && (n == 4 || n == -4)) {
      PellSolution sol;
      sol.delta = delta;
      sol.t = t;
      sol.u = q_cur;
      sol.norm = n == 4 ? 1 : -1;
      if (sol.norm == 1) {
        sol.t1 = t;
        sol.u1 = q_cur;
      } else {
        sol.t1 = (t * t + D * q_cur * q_cur) / 2;
        sol.u1 = t * q_cur;
      }
      return sol;
    }
    P = a * Q - P;
    Q = (delta - P * P) / Q;
    if (step > 100000000) throw InvariantViolation("continued fraction did not close");
  }
}

// log((t + u sqrt D)/2) evaluated in wide precision.
inline Real unit_log(const BigInt& t, const BigInt& u, i64 delta) {
  WideFloat x = (WideFloat(t) + WideFloat(u) * boost::multiprecision::sqrt(WideFloat(delta))) / 2;
  return static_cast<Real>(boost::multiprecision::log(x));
}

}  // namespace hasse
