#pragma once

#include <cmath>
#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "hasse/arith.hpp"
#include "hasse/lvalues.hpp"
#include "hasse/pell.hpp"

namespace hasse {

enum class SplittingType { Split, Inert, Ramified };

inline const char* to_string(SplittingType t) {
  switch (t) {
    case SplittingType::Split: return "split";
    case SplittingType::Inert: return "inert";
    case SplittingType::Ramified: return "ramified";
  }
  return "?";
}

// A place of Q: a finite prime p, or the real place (stored as p = 0).
// Finite places sort ascending and the real place sorts last.
struct PlaceQ {
  u64 p = 0;

  static PlaceQ infinity() { return {0}; }
  static PlaceQ finite(u64 prime) {
    if (!is_prime(prime)) throw ValidationError(std::to_string(prime) + " is not prime");
    return {prime};
  }
  bool is_infinite() const { return p == 0; }
  u64 norm() const { return p == 0 ? 1 : p; }

  std::strong_ordering operator<=>(const PlaceQ& o) const {
    if (p == o.p) return std::strong_ordering::equal;
    if (p == 0) return std::strong_ordering::greater;
    if (o.p == 0) return std::strong_ordering::less;
    return p <=> o.p;
  }
  bool operator==(const PlaceQ&) const = default;
};

enum class Signature { Real, Imaginary };

class QuadraticField {
 public:
  explicit QuadraticField(i64 delta) : delta_(delta) {
    if (!is_fundamental_discriminant(delta))
      throw ValidationError("not a fundamental discriminant: " + std::to_string(delta));
  }
  i64 delta() const { return delta_; }
  Signature signature() const { return delta_ > 0 ? Signature::Real : Signature::Imaginary; }
  bool is_real() const { return delta_ > 0; }
  u64 absolute_discriminant() const { return static_cast<u64>(std::llabs(delta_)); }
  bool operator==(const QuadraticField&) const = default;

 private:
  i64 delta_;
};

inline QuadraticField make_field(i64 delta) { return QuadraticField(delta); }

inline SplittingType splitting_from_symbol(int k) {
  return k == 1 ? SplittingType::Split : k == -1 ? SplittingType::Inert : SplittingType::Ramified;
}

inline SplittingType splitting(const QuadraticField& L, PlaceQ v) {
  if (v.is_infinite()) return L.is_real() ? SplittingType::Split : SplittingType::Ramified;
  return splitting_from_symbol(kronecker_symbol(L.delta(), v.p));
}

// A place of a quadratic field over the place `below` of Q. For real fields
// the two real places are indexed 1 and 2.
struct QuadraticPlace {
  PlaceQ below;
  SplittingType type = SplittingType::Inert;
  int index = 1;

  u64 norm() const {
    if (below.is_infinite()) return 1;
    return type == SplittingType::Inert ? below.p * below.p : below.p;
  }
  QuadraticPlace conjugate() const {
    QuadraticPlace c = *this;
    if (type == SplittingType::Split) c.index = 3 - index;
    return c;
  }
  auto operator<=>(const QuadraticPlace& o) const {
    if (auto c = below <=> o.below; c != 0) return c;
    return index <=> o.index;
  }
  bool operator==(const QuadraticPlace& o) const { return below == o.below && index == o.index; }
};

// Least root r in [0, p/2] of x^2 = D mod p, labelling the first split place.
inline u64 split_label(i64 delta, u64 p) {
  u64 d = static_cast<u64>(mod_floor(delta, static_cast<i64>(p)));
  for (u64 r = 0; r <= p / 2; ++r)
    if ((r * r) % p == d) return r;
  throw ValidationError("no square root: prime " + std::to_string(p) + " is not split");
}

inline std::vector<QuadraticPlace> places_above(const QuadraticField& L, PlaceQ v) {
  SplittingType t = splitting(L, v);
  if (v.is_infinite()) {
    if (L.is_real()) return {{v, t, 1}, {v, t, 2}};
    return {};
  }
  if (t == SplittingType::Split) return {{v, t, 1}, {v, t, 2}};
  return {{v, t, 1}};
}

inline Real regulator(const QuadraticField& L) {
  if (!L.is_real()) throw ValidationError("regulator needs a real quadratic field");
  PellSolution s = pell_fundamental(L.delta());
  return unit_log(s.t, s.u, L.delta());
}

// An algebraic integer of degree <= 2 given by its monic minimal polynomial
// x^2 + b x + c, or a rational integer a (minimal polynomial x - a).
struct QuadraticInteger {
  int degree = 1;
  i64 b = 0;
  i64 c = 0;
  i64 a = 0;

  static QuadraticInteger rational(i64 value) { return {1, 0, 0, value}; }
  static QuadraticInteger from_minpoly(i64 b, i64 c) {
    if (is_perfect_square(b * b - 4 * c)) throw ValidationError("minimal polynomial is reducible");
    return {2, b, c, 0};
  }
  // x + y sqrt(d) with d not a square.
  static QuadraticInteger from_components(i64 x, i64 y, i64 d) {
    if (y == 0) return rational(x);
    return from_minpoly(-2 * x, x * x - d * y * y);
  }
};

inline Real mahler_measure(const QuadraticInteger& alpha) {
  if (alpha.degree == 1) return std::fabs(static_cast<Real>(alpha.a));
  Real b = alpha.b, c = alpha.c;
  Real disc = b * b - 4 * c;
  if (disc < 0) return std::max<Real>(1, std::fabs(c));
  Real sq = std::sqrt(disc);
  Real big = (b >= 0 ? -b - sq : -b + sq) / 2;
  Real small = c / big;
  return std::max<Real>(1, std::fabs(big)) * std::max<Real>(1, std::fabs(small));
}

// Absolute logarithmic height H(alpha) = log M(minpoly) / degree.
inline Real height(const QuadraticInteger& alpha) {
  if ((alpha.degree == 1 && alpha.a == 0) || (alpha.degree == 2 && alpha.c == 0))
    throw ValidationError("height of zero");
  return std::log(mahler_measure(alpha)) / alpha.degree;
}

// Integral basis {1, w} with w = (s + sqrt D)/2, s = D mod 2.
inline Real basis_bound_B(const QuadraticField& L) {
  const Real D = static_cast<Real>(L.delta());
  const Real s = static_cast<Real>(mod_floor(L.delta(), 2));
  if (L.is_real()) {
    Real r = std::sqrt(D);
    return (1 + std::fabs((s + r) / 2)) * (1 + std::fabs((s - r) / 2));
  }
  Real modulus = std::sqrt(s * s - D) / 2;
  return (1 + modulus) * (1 + modulus);
}

inline Real basis_bound_ceiling(const QuadraticField& L) {
  Real d = static_cast<Real>(L.absolute_discriminant());
  return 256 * d * d;
}

}  // namespace hasse
