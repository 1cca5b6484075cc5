#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hasse/asymptotics.hpp"
#include "hasse/census.hpp"
#include "hasse/lvalues.hpp"
#include "hasse/pell.hpp"

namespace hasse {

// cosh(l/2) = |t|/2.
inline Real length_from_trace(Real t) {
  if (!(std::fabs(t) > 2)) throw ValidationError("non-hyperbolic-trace: |t| must exceed 2");
  return 2 * std::acosh(std::fabs(t) / 2);
}

inline Real length_from_trace(const BigInt& t) {
  BigInt a = boost::multiprecision::abs(t);
  if (a <= 2) throw ValidationError("non-hyperbolic-trace: |t| must exceed 2");
  WideFloat h = WideFloat(a) / 2;
  return static_cast<Real>(2 * boost::multiprecision::log(h + boost::multiprecision::sqrt(h * h - 1)));
}

inline Real trace_from_length(Real length) {
  if (!(length > 0)) throw ValidationError("length must be positive");
  return 2 * std::cosh(length / 2);
}

struct GeodesicDatum {
  i64 delta = 0;
  BigInt trace;  // trace of the norm-one unit power eps_1^exponent
  BigInt u;
  int exponent = 1;
  Real length = 0;
  Real paper_unit_length = 0;  // length from u = +-eps_0^2
};

inline GeodesicDatum geodesic_from_field(i64 delta) {
  if (delta <= 0) throw ValidationError("geodesic_from_field needs a real quadratic field");
  PellSolution s = pell_fundamental(delta);
  GeodesicDatum g;
  g.delta = delta;
  g.trace = s.t1;
  g.u = s.u1;
  g.length = length_from_trace(s.t1);
  g.paper_unit_length = 4 * unit_log(s.t, s.u, delta);
  return g;
}

// Datum of eps_1^k from the trace recurrence t_{k+1} = t_1 t_k - t_{k-1}.
inline GeodesicDatum geodesic_power(const GeodesicDatum& g, int k) {
  if (k < 1 || g.exponent != 1) throw ValidationError("powers are taken of a primitive datum with k >= 1");
  BigInt t_prev = 2, t_cur = g.trace, u_prev = 0, u_cur = g.u;
  for (int i = 1; i < k; ++i) {
    BigInt t_next = g.trace * t_cur - t_prev;
    BigInt u_next = g.trace * u_cur - u_prev;
    t_prev = t_cur;
    t_cur = t_next;
    u_prev = u_cur;
    u_cur = u_next;
  }
  GeodesicDatum out = g;
  out.trace = t_cur;
  out.u = u_cur;
  out.exponent = k;
  out.length = length_from_trace(t_cur);
  return out;
}

// Groups by field; within a class lengths are the rational multiples exponent_i / exponent_j.
inline std::vector<std::vector<GeodesicDatum>> rational_classes(const std::vector<GeodesicDatum>& data) {
  std::map<i64, std::vector<GeodesicDatum>> by_field;
  for (auto& g : data) by_field[g.delta].push_back(g);
  std::vector<std::vector<GeodesicDatum>> out;
  for (auto& [d, v] : by_field) out.push_back(v);
  return out;
}

inline Fraction length_ratio(const GeodesicDatum& a, const GeodesicDatum& b) {
  if (a.delta != b.delta) throw ValidationError("lengths from different fields are not rational multiples");
  return Fraction(a.exponent, b.exponent);
}

struct CommensurabilityClass {
  i64 field = 1;
  std::string algebra;
  auto operator<=>(const CommensurabilityClass&) const = default;
};

inline CommensurabilityClass commensurability_class(const QuaternionAlgebraQ& b) {
  return {1, format_ramification(b)};
}

// ---- volumes -----------------------------------------------------------------

struct Coarea {
  Real value = 0;
  Real bound = 0;  // 2 pi^2 |disc B|
};

// 8 pi^2 zeta_k(2) prod (N p - 1) / (4 pi^2)^{n_k}, for totally real k.
inline Real coarea_formula(int n_k, Real zeta_k2, const std::vector<u64>& ram_norms) {
  Real prod = 1;
  for (u64 q : ram_norms) prod *= static_cast<Real>(q - 1);
  return 8 * kPi * kPi * zeta_k2 * prod / std::pow(4 * kPi * kPi, n_k);
}

inline Coarea coarea_maximal_order(const QuaternionAlgebraQ& b) {
  if (b.is_definite()) throw ValidationError("definite-algebra: the coarea needs an indefinite algebra");
  Coarea c;
  c.value = coarea_formula(1, zeta2(), b.finite_primes());
  c.bound = 2 * kPi * kPi * static_cast<Real>(b.discriminant().convert_to<long double>());
  if (c.value > c.bound * (1 + 1e-15L)) throw InvariantViolation("coarea exceeds 2 pi^2 |disc B|");
  return c;
}

inline Real covolume_kleinian(const QuaternionAlgebraL& b) {
  const QuadraticField& L = b.base();
  if (L.is_real()) throw ValidationError("real-field: Kleinian covolumes need an imaginary quadratic field");
  Real d = static_cast<Real>(L.absolute_discriminant());
  Real prod = 1;
  for (auto& w : b.ramification()) prod *= static_cast<Real>(w.norm() - 1);
  return std::pow(d, Real(1.5)) * zeta_k_at_2(L.delta()).value * prod / (4 * kPi * kPi);
}

inline Real minimal_covolume_CF(Real d_k, int n_k, Real zeta_k2, const std::vector<u64>& ram_norms,
                                Real kB_index) {
  if (kB_index < 1) throw ValidationError("kB_index must be >= 1");
  Real phi = 1;
  for (u64 q : ram_norms) phi *= static_cast<Real>(q - 1) / 2;
  return 2 * kPi * kPi * zeta_k2 * std::pow(d_k, Real(1.5)) * phi / (std::pow(4 * kPi * kPi, n_k) * kB_index);
}

// |disc B| <= 10^57 V^7 (dimension 3) or [10^93 V^13]^10 (dimension 2), as log10.
inline Magnitude disc_bound_from_volume(Real V, int dimension) {
  if (!(V > 0)) throw ValidationError("volume must be positive");
  Real l10;
  if (dimension == 3)
    l10 = 57 + 7 * std::log10(V);
  else if (dimension == 2)
    l10 = 10 * (93 + 13 * std::log10(V));
  else
    throw ValidationError("dimension must be 2 or 3");
  return {1, l10};
}

// ---- censuses ------------------------------------------------------------------

// Indefinite algebras with prod (p - 1) <= 3V / pi^2, i.e. coarea <= V.
inline std::vector<QuaternionAlgebraQ> indefinite_with_coarea(const std::vector<u64>& allowed, Real V,
                                                               bool require_ramified) {
  std::vector<QuaternionAlgebraQ> out;
  Real w = V * 3 / (kPi * kPi) * (1 + 1e-12L);
  if (w < 1) return out;
  u64 bound = static_cast<u64>(std::floor(std::min<Real>(w, 1e18L)));
  enumerate_prime_sets(allowed, 1, bound, [](u64 p) { return p - 1; }, [&](const std::vector<u64>& s, u64) {
    if (s.size() % 2) return;
    if (require_ramified && s.empty()) return;
    out.push_back(QuaternionAlgebraQ(std::set<PlaceQ>(s.begin(), s.end())));
  });
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<u64> primes_for_coarea(Real V) {
  Real w = V * 3 / (kPi * kPi) * (1 + 1e-12L);
  if (w < 1) return {};
  // p - 1 <= w for any prime in a set, and 2 has weight 1.
  return primes_up_to(static_cast<u64>(std::min<Real>(w, 1e8L)) + 1);
}

struct FuchsianCensus {
  u64 count = 0;
  std::vector<CommensurabilityClass> classes;
  Magnitude paper_bound;  // V^130 / zeta(2)
};

inline FuchsianCensus class_census_fuchsian(Real V) {
  if (!(V > 0)) throw ValidationError("volume must be positive");
  FuchsianCensus c;
  for (auto& b : indefinite_with_coarea(primes_for_coarea(V), V, false))
    c.classes.push_back(commensurability_class(b));
  c.count = c.classes.size();
  c.paper_bound = Magnitude::from_ln(130 * std::log(V) - std::log(zeta2()));
  if (c.count > 0 && less(c.paper_bound, Magnitude{0, static_cast<Real>(c.count)}) && V > 1)
    throw InvariantViolation("class count exceeds the V^130 bound");
  return c;
}

struct GeodesicCensus {
  u64 count = 0;
  Real max_length = 0;
  u64 classes = 0;
  Real length_bound = 0;  // 2x
  std::vector<GeodesicDatum> data;
};

inline GeodesicCensus geodesic_census(const QuaternionAlgebraQ& b, u64 x) {
  if (b.is_definite()) throw ValidationError("geodesic census needs an indefinite algebra");
  GeodesicCensus c;
  c.length_bound = 2 * static_cast<Real>(x);
  if (x < 5) return c;
  SieveTable sieve(x);
  for (u64 d = 5; d <= x; ++d) {
    if (!sieve.fundamental(static_cast<i64>(d))) continue;
    if (!embeds(QuadraticField(static_cast<i64>(d)), b)) continue;
    c.data.push_back(geodesic_from_field(static_cast<i64>(d)));
    c.max_length = std::max(c.max_length, c.data.back().length);
  }
  c.count = c.data.size();
  c.classes = rational_classes(c.data).size();
  return c;
}

struct SurfaceEntry {
  QuaternionAlgebraQ b0;
  Real area = 0;
  Real ggs_area_bound = 0;
};

inline void require_imaginary_base(const QuaternionAlgebraL& bl) {
  if (bl.base().is_real()) throw ValidationError("surface census needs an imaginary quadratic base field");
}

// Indefinite B0 over Q with B0 (x) L = BL and |disc B0| <= x, ascending by disc.
inline std::vector<SurfaceEntry> surface_census(const QuaternionAlgebraL& bl, u64 x, Real V, Real C) {
  require_imaginary_base(bl);
  std::vector<SurfaceEntry> out;
  auto d = descends(bl);
  if (!d) return out;
  const QuadraticField& L = bl.base();
  u64 forced = 1;
  for (u64 p : *d) {
    auto f = checked_mul(forced, p);
    if (!f) return out;
    forced = *f;
  }
  const u64 root = isqrt(x);
  std::vector<u64> allowed;
  for (u64 p : primes_up_to(root / std::max<u64>(forced, 1)))
    if (nonsplit_in_all({L.delta()}, p)) allowed.push_back(p);
  enumerate_prime_sets(allowed, forced, root, [](u64 p) { return p; }, [&](const std::vector<u64>& s, u64) {
    if ((s.size() + d->size()) % 2) return;
    std::set<PlaceQ> ram;
    for (u64 p : s) ram.insert(PlaceQ{p});
    for (u64 p : *d) ram.insert(PlaceQ{p});
    QuaternionAlgebraQ b0(ram);
    Coarea a = coarea_maximal_order(b0);
    Real disc = static_cast<Real>(b0.discriminant().convert_to<long double>());
    out.push_back({b0, a.value, 2 * kPi * kPi * disc * std::exp(C * V)});
  });
  std::sort(out.begin(), out.end(), [](const SurfaceEntry& a, const SurfaceEntry& b) { return a.b0 < b.b0; });
  return out;
}

// Independent route: every indefinite B0 with |disc| <= x, kept when restrict(B0, L) matches BL.
inline u64 surface_count_by_restriction(const QuaternionAlgebraL& bl, u64 x) {
  require_imaginary_base(bl);
  const u64 root = isqrt(x);
  SieveTable sieve(std::max<u64>(root, 1));
  u64 count = 0;
  for (u64 n = 1; n <= root; ++n) {
    if (!sieve.squarefree(n)) continue;
    auto f = factorize(n);
    if (f.size() % 2) continue;
    std::set<PlaceQ> ram;
    for (auto [p, e] : f) ram.insert(PlaceQ{p});
    if (restrict(QuaternionAlgebraQ(ram), bl.base()).ramification() == bl.ramification()) ++count;
  }
  return count;
}

// Half of the squarefree products of primes non-split in L below sqrt(x)/prod S:
// (1/2) c(L) y / (log y^2)^{1/2} with y = sqrt(x) / prod S and c(L) = embed_constant_r1.
inline Real surface_prediction(const QuaternionAlgebraL& bl, u64 x, u64 cutoff = 1000000) {
  require_imaginary_base(bl);
  auto d = descends(bl);
  if (!d) return 0;
  Real forced = 1;
  for (u64 p : *d) forced *= static_cast<Real>(p);
  Real y = std::sqrt(static_cast<Real>(x)) / forced;
  if (y <= 1) return 0;
  return embed_constant_r1(bl.base().delta(), cutoff).value / 2 * y / std::sqrt(2 * std::log(y));
}

// Indefinite algebras with a finite ramified place admitting every real field, coarea <= V.
inline std::vector<QuaternionAlgebraQ> class_census_with_lengths(const std::vector<i64>& deltas, Real V) {
  for (i64 d : deltas)
    if (d <= 0) throw ValidationError("class_census_with_lengths takes real quadratic fields");
  require_full_compositum(deltas);
  if (!(V > 0)) throw ValidationError("volume must be positive");
  std::vector<u64> allowed;
  for (u64 p : primes_for_coarea(V))
    if (nonsplit_in_all(deltas, p)) allowed.push_back(p);
  return indefinite_with_coarea(allowed, V, true);
}

}  // namespace hasse
