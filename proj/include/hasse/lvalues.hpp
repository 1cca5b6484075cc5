#pragma once

#include <cmath>
#include <limits>
#include <string>

#include <boost/math/special_functions/expint.hpp>
#include <boost/math/special_functions/trigamma.hpp>

#include "hasse/arith.hpp"
#include "hasse/numeric.hpp"

namespace hasse {

// A real value with an absolute error bound.
struct LValue {
  Real value = 0;
  Real error = 0;
};

namespace detail {

inline void require_nontrivial_fundamental(i64 delta) {
  if (!is_fundamental_discriminant(delta))
    throw ValidationError("expected a fundamental discriminant != 1, got " + std::to_string(delta));
}

inline constexpr Real kEps = std::numeric_limits<Real>::epsilon();

}  // namespace detail

// L(1, chi_D) from a finite sum over one period: the log-sine sum for D > 0,
// -(pi / |D|^{3/2}) sum chi(a) a for D < 0.
inline LValue dirichlet_L1_finite_sum(i64 delta) {
  detail::require_nontrivial_fundamental(delta);
  const i64 q = std::llabs(delta);
  CompensatedSum s;
  Real magnitude = 0;
  for (i64 a = 1; a < q; ++a) {
    int c = kronecker_symbol(delta, static_cast<u64>(a));
    if (!c) continue;
    Real term = delta > 0 ? std::log(std::sin(kPi * a / q)) : static_cast<Real>(a);
    s.add(c * term);
    magnitude += std::fabs(term);
  }
  Real scale = delta > 0 ? -1 / std::sqrt(static_cast<Real>(q))
                         : -kPi / (q * std::sqrt(static_cast<Real>(q)));
  return {scale * s.value(), std::fabs(scale) * magnitude * 16 * detail::kEps};
}

// L(1, chi_D) = 2 pi h / (w sqrt|D|) for D < 0.
inline LValue dirichlet_L1_class_number(i64 delta) {
  if (delta >= 0) throw ValidationError("class number route needs D < 0");
  Real h = static_cast<Real>(class_number_imaginary(delta));
  Real v = 2 * kPi * h / (units_count(delta) * std::sqrt(static_cast<Real>(-delta)));
  return {v, 8 * detail::kEps * v};
}

// L(1, chi_D) by the theta-function smoothed series (erfc / E1 terms).
inline LValue dirichlet_L1_smoothed(i64 delta) {
  detail::require_nontrivial_fundamental(delta);
  const Real q = static_cast<Real>(std::llabs(delta));
  const Real rq = std::sqrt(q);
  const Real c = std::sqrt(kPi / q);
  CompensatedSum s;
  Real magnitude = 0;
  for (i64 n = 1;; ++n) {
    Real x = kPi * n * n / q;
    if (x > 60) break;
    int k = kronecker_symbol(delta, static_cast<u64>(n));
    if (!k) continue;
    Real term = delta > 0 ? std::erfc(n * c) / n + boost::math::expint(1, x) / rq
                          : kPi * std::erfc(n * c) / rq + std::exp(-x) / n;
    s.add(k * term);
    magnitude += std::fabs(term);
  }
  return {s.value(), magnitude * 16 * detail::kEps + 1e-24L};
}

// L(2, chi_D) = |D|^{-2} sum_a chi(a) psi_1(a / |D|).
inline LValue dirichlet_L2_hurwitz(i64 delta) {
  detail::require_nontrivial_fundamental(delta);
  const i64 q = std::llabs(delta);
  CompensatedSum s;
  Real magnitude = 0;
  for (i64 a = 1; a < q; ++a) {
    int c = kronecker_symbol(delta, static_cast<u64>(a));
    if (!c) continue;
    Real term = boost::math::trigamma(static_cast<Real>(a) / q);
    s.add(c * term);
    magnitude += term;
  }
  Real scale = 1 / (static_cast<Real>(q) * q);
  return {scale * s.value(), scale * magnitude * 64 * detail::kEps};
}

// L(s, chi_D) for s in {1, 2}.
inline LValue dirichlet_L(i64 delta, int s) {
  detail::require_nontrivial_fundamental(delta);
  if (s == 1) {
    if (delta > 0) return dirichlet_L1_finite_sum(delta);
    return dirichlet_L1_class_number(delta);
  }
  if (s == 2) return dirichlet_L2_hurwitz(delta);
  throw ValidationError("dirichlet_L supports s = 1 or s = 2");
}

inline Real zeta2() { return kPi * kPi / 6; }

// zeta_k(2) for k = Q (delta = 1) or a quadratic field.
inline LValue zeta_k_at_2(i64 delta) {
  if (delta == 1) return {zeta2(), 4 * detail::kEps};
  LValue l = dirichlet_L(delta, 2);
  return {zeta2() * l.value, zeta2() * l.error};
}

}  // namespace hasse
