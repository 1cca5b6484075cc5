#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <variant>
#include <vector>

#include "hasse/brauer.hpp"

namespace hasse {

// Ordered key/value description of a census, copied verbatim into reports.
using CensusSpec = std::vector<std::pair<std::string, std::string>>;

struct CountTable {
  std::vector<u64> thresholds;
  std::vector<BigInt> counts;
  CensusSpec spec;

  BigInt at(u64 x) const {
    for (std::size_t i = 0; i < thresholds.size(); ++i)
      if (thresholds[i] == x) return counts[i];
    throw ValidationError("threshold " + std::to_string(x) + " not in table");
  }
  BigInt last() const { return counts.back(); }
};

inline void validate_thresholds(const std::vector<u64>& thresholds) {
  if (thresholds.empty()) throw ValidationError("at least one threshold is required");
  for (std::size_t i = 0; i < thresholds.size(); ++i) {
    if (thresholds[i] < 1) throw ValidationError("thresholds must be >= 1");
    if (i && thresholds[i] <= thresholds[i - 1]) throw ValidationError("thresholds must be strictly ascending");
  }
}

// Counts of a sorted value list at each threshold.
inline CountTable tabulate(std::vector<u64> values, const std::vector<u64>& thresholds, CensusSpec spec) {
  std::sort(values.begin(), values.end());
  CountTable t{thresholds, {}, std::move(spec)};
  for (u64 x : thresholds)
    t.counts.emplace_back(static_cast<u64>(std::upper_bound(values.begin(), values.end(), x) - values.begin()));
  for (std::size_t i = 1; i < t.counts.size(); ++i)
    if (t.counts[i] < t.counts[i - 1]) throw InvariantViolation("census is not monotone");
  return t;
}

// ---- central simple algebras ---------------------------------------------

struct CsaRecord {
  u64 disc;
  i64 division_degree;
};

struct ResidueChoice {
  i64 k;
  i64 d;
  unsigned exponent;
};

struct CsaVisit {
  u64 disc;
  i64 division_degree;
  bool real_place;
  const std::vector<std::pair<u64, i64>>& path;
};

// Enumerates every Hasse datum of degree n with all local indices dividing m and
// discriminant <= x_max. Primes are added in descending order, so the first
// chosen prime is the largest; top-level branches are sharded by its index.
class CsaEnumerator {
 public:
  CsaEnumerator(i64 m, i64 n, u64 x_max) : m_(m), n_(n), x_max_(x_max) {
    if (m < 1 || n < 1 || n % m) throw ValidationError("need m | n");
    if (x_max < 1) throw ValidationError("x must be >= 1");
    for (i64 k = 1; k < m; ++k) {
      i64 d = m / std::gcd(k, m);
      choices_.push_back({k, d, static_cast<unsigned>(n * n / d * (d - 1))});
    }
    min_exponent_ = 0;
    for (auto& c : choices_)
      if (min_exponent_ == 0 || c.exponent < min_exponent_) min_exponent_ = c.exponent;
    if (min_exponent_) primes_ = primes_up_to(std::max<u64>(2, iroot(x_max, min_exponent_)));
  }

  template <class Visitor>
  void run_shard(unsigned shard, unsigned shards, Visitor&& visit) const {
    std::vector<std::pair<u64, i64>> path;
    if (shard == 0) emit(1, 0, 1, path, visit);
    if (!min_exponent_) return;
    std::size_t hi = upper_index(x_max_);
    for (std::size_t j = hi; j-- > 0;) {
      if (j % shards != shard) continue;
      branch(j, 1, 0, 1, path, visit);
    }
  }

  template <class Visitor>
  void run(Visitor&& visit) const {
    run_shard(0, 1, visit);
  }

  i64 m() const { return m_; }
  i64 n() const { return n_; }

 private:
  std::size_t upper_index(u64 budget) const {
    u64 r = iroot(budget, min_exponent_);
    return static_cast<std::size_t>(std::upper_bound(primes_.begin(), primes_.end(), r) - primes_.begin());
  }

  template <class Visitor>
  void emit(u64 disc, i64 sum, i64 lcm, std::vector<std::pair<u64, i64>>& path, Visitor& visit) const {
    if (sum == 0) visit(CsaVisit{disc, lcm, false, path});
    if (m_ % 2 == 0 && sum == m_ / 2) visit(CsaVisit{disc, std::lcm(lcm, i64(2)), true, path});
  }

  template <class Visitor>
  void branch(std::size_t j, u64 disc, i64 sum, i64 lcm, std::vector<std::pair<u64, i64>>& path,
              Visitor& visit) const {
    const u64 p = primes_[j];
    const u64 budget = x_max_ / disc;
    for (const ResidueChoice& c : choices_) {
      auto pe = bounded_pow(p, c.exponent, budget);
      if (!pe) continue;
      u64 next = disc * *pe;
      path.emplace_back(p, c.k);
      i64 s = (sum + c.k) % m_;
      i64 l = std::lcm(lcm, c.d);
      emit(next, s, l, path, visit);
      std::size_t hi = std::min(j, upper_index(x_max_ / next));
      for (std::size_t i = hi; i-- > 0;) branch(i, next, s, l, path, visit);
      path.pop_back();
    }
  }

  i64 m_, n_;
  u64 x_max_;
  std::vector<ResidueChoice> choices_;
  unsigned min_exponent_ = 0;
  std::vector<u64> primes_;
};

// All (disc, division degree) records, collected over `shards` worker threads
// and merged in sorted order.
inline std::vector<CsaRecord> csa_records(i64 m, i64 n, u64 x_max, unsigned shards = 1) {
  if (shards < 1) throw ValidationError("shard count must be >= 1");
  CsaEnumerator e(m, n, x_max);
  std::vector<std::vector<CsaRecord>> parts(shards);
  auto work = [&](unsigned s) {
    e.run_shard(s, shards, [&](const CsaVisit& v) { parts[s].push_back({v.disc, v.division_degree}); });
  };
  if (shards == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned s = 0; s < shards; ++s) pool.emplace_back(work, s);
    for (auto& t : pool) t.join();
  }
  std::vector<CsaRecord> all;
  for (auto& p : parts) all.insert(all.end(), p.begin(), p.end());
  std::sort(all.begin(), all.end(), [](const CsaRecord& a, const CsaRecord& b) {
    return a.disc != b.disc ? a.disc < b.disc : a.division_degree < b.division_degree;
  });
  return all;
}

// Enumerated algebras as Hasse data, for inspection and tests.
inline std::vector<CentralSimpleAlgebraQ> enumerate_csa(i64 m, i64 n, u64 x_max) {
  std::vector<CentralSimpleAlgebraQ> out;
  CsaEnumerator e(m, n, x_max);
  e.run([&](const CsaVisit& v) {
    std::vector<std::pair<PlaceQ, Fraction>> a;
    for (auto [p, k] : v.path) a.emplace_back(PlaceQ{p}, Fraction(k, m));
    if (v.real_place) a.emplace_back(PlaceQ::infinity(), Fraction(1, 2));
    out.push_back(make_csa(n, a));
  });
  return out;
}

inline CensusSpec csa_spec(const std::string& kind, i64 m, i64 n) {
  CensusSpec s{{"census", kind}, {"base_field", "Q"}, {"n", std::to_string(n)}};
  if (m > 0) s.emplace_back("m", std::to_string(m));
  return s;
}

inline CountTable count_csa(i64 m, i64 n, const std::vector<u64>& thresholds, unsigned shards = 1) {
  validate_thresholds(thresholds);
  std::vector<u64> discs;
  for (auto& r : csa_records(m, n, thresholds.back(), shards)) discs.push_back(r.disc);
  return tabulate(std::move(discs), thresholds, csa_spec("csa", m, n));
}

inline CountTable count_division_direct(i64 n, const std::vector<u64>& thresholds, unsigned shards = 1) {
  validate_thresholds(thresholds);
  std::vector<u64> discs;
  for (auto& r : csa_records(n, n, thresholds.back(), shards))
    if (r.division_degree == n) discs.push_back(r.disc);
  return tabulate(std::move(discs), thresholds, csa_spec("division", 0, n));
}

// N(x) = sum_{m | n} mu(n/m) N_{m,n}(x).
inline CountTable count_division_inclusion_exclusion(i64 n, const std::vector<u64>& thresholds,
                                                     unsigned shards = 1) {
  validate_thresholds(thresholds);
  CountTable out{thresholds, std::vector<BigInt>(thresholds.size(), 0), csa_spec("division", 0, n)};
  for (u64 m : divisors(static_cast<u64>(n))) {
    int mu = mobius(static_cast<u64>(n) / m);
    if (!mu) continue;
    CountTable part = count_csa(static_cast<i64>(m), n, thresholds, shards);
    for (std::size_t i = 0; i < thresholds.size(); ++i) out.counts[i] += mu * part.counts[i];
  }
  return out;
}

inline CountTable count_division(i64 n, const std::vector<u64>& thresholds, unsigned shards = 1) {
  if (n < 2) throw ValidationError("count_division needs n >= 2");
  CountTable direct = count_division_direct(n, thresholds, shards);
  CountTable ie = count_division_inclusion_exclusion(n, thresholds, shards);
  if (direct.counts != ie.counts)
    throw InvariantViolation("direct and inclusion-exclusion division counts disagree");
  return direct;
}

// ---- quaternion algebras from prime sets ----------------------------------

// DFS over subsets of `primes` (ascending) whose product of weights, times the
// weight of `forced`, stays <= bound. The visitor sees the chosen free primes.
template <class Weight, class Visitor>
void enumerate_prime_sets(const std::vector<u64>& primes, u64 forced_weight, u64 bound, Weight weight,
                          Visitor&& visit) {
  if (forced_weight > bound) return;
  std::vector<u64> chosen;
  std::function<void(std::size_t, u64)> rec = [&](std::size_t start, u64 w) {
    visit(static_cast<const std::vector<u64>&>(chosen), w);
    for (std::size_t i = start; i < primes.size(); ++i) {
      u64 wp = weight(primes[i]);
      auto next = checked_mul(w, wp);
      if (!next || *next > bound) break;
      chosen.push_back(primes[i]);
      rec(i + 1, *next);
      chosen.pop_back();
    }
  };
  rec(0, forced_weight);
}

// Indices of the multiplicative relations among the square classes of the
// discriminants: each relation is a subset T with prod_{i in T} D_i a square.
inline std::vector<std::vector<int>> square_class_relations(const std::vector<i64>& deltas) {
  // Vectors over F_2 indexed by -1 and primes; row reduction tracking combinations.
  std::vector<u64> basis_primes{0};
  for (i64 d : deltas)
    for (auto [p, e] : factorize(static_cast<u64>(std::llabs(d))))
      if (e % 2 && std::find(basis_primes.begin(), basis_primes.end(), p) == basis_primes.end())
        basis_primes.push_back(p);
  const std::size_t r = deltas.size(), c = basis_primes.size();
  std::vector<std::vector<int>> rows(r, std::vector<int>(c, 0)), combo(r, std::vector<int>(r, 0));
  for (std::size_t i = 0; i < r; ++i) {
    combo[i][i] = 1;
    if (deltas[i] < 0) rows[i][0] = 1;
    for (auto [p, e] : factorize(static_cast<u64>(std::llabs(deltas[i]))))
      if (e % 2) rows[i][std::find(basis_primes.begin(), basis_primes.end(), p) - basis_primes.begin()] = 1;
  }
  std::size_t rank = 0;
  for (std::size_t col = 0; col < c && rank < r; ++col) {
    std::size_t piv = rank;
    while (piv < r && !rows[piv][col]) ++piv;
    if (piv == r) continue;
    std::swap(rows[piv], rows[rank]);
    std::swap(combo[piv], combo[rank]);
    for (std::size_t i = 0; i < r; ++i) {
      if (i == rank || !rows[i][col]) continue;
      for (std::size_t k = 0; k < c; ++k) rows[i][k] ^= rows[rank][k];
      for (std::size_t k = 0; k < r; ++k) combo[i][k] ^= combo[rank][k];
    }
    ++rank;
  }
  std::vector<std::vector<int>> rel;
  for (std::size_t i = rank; i < r; ++i) {
    std::vector<int> t;
    for (std::size_t k = 0; k < r; ++k)
      if (combo[i][k]) t.push_back(static_cast<int>(k));
    rel.push_back(t);
  }
  return rel;
}

// The compositum of the fields has degree 2^r.
inline bool compositum_is_full(const std::vector<i64>& deltas) { return square_class_relations(deltas).empty(); }

inline void require_full_compositum(const std::vector<i64>& deltas) {
  for (i64 d : deltas) QuadraticField{d};
  if (!compositum_is_full(deltas))
    throw ValidationError("dependent-discriminants: the discriminants are not independent mod squares");
}

// Infinitely many primes are inert in every field iff no odd-size relation exists.
inline bool has_common_inert_primes(const std::vector<i64>& deltas) {
  for (auto& t : square_class_relations(deltas))
    if (t.size() % 2) return false;
  return true;
}

inline bool nonsplit_in_all(const std::vector<i64>& deltas, u64 p) {
  for (i64 d : deltas)
    if (kronecker_symbol(d, p) == 1) return false;
  return true;
}

inline bool infinity_nonsplit_in_all(const std::vector<i64>& deltas) {
  for (i64 d : deltas)
    if (d > 0) return false;
  return true;
}

inline std::string join_deltas(const std::vector<i64>& deltas) {
  std::string s;
  for (i64 d : deltas) s += (s.empty() ? "" : ",") + std::to_string(d);
  return s;
}

// Quaternion algebras over Q admitting all the fields, with reduced
// discriminant <= reduced_max, ascending by (disc, places).
inline std::vector<QuaternionAlgebraQ> quaternions_with_subfields(const std::vector<i64>& deltas,
                                                                  u64 reduced_max) {
  require_full_compositum(deltas);
  std::vector<u64> allowed;
  for (u64 p : primes_up_to(reduced_max))
    if (nonsplit_in_all(deltas, p)) allowed.push_back(p);
  const bool inf_ok = infinity_nonsplit_in_all(deltas);
  std::vector<QuaternionAlgebraQ> out;
  enumerate_prime_sets(allowed, 1, reduced_max, [](u64 p) { return p; },
                       [&](const std::vector<u64>& s, u64) {
                         if (s.size() % 2 == 0 || inf_ok) out.push_back(quaternion_from_primes(s));
                       });
  std::sort(out.begin(), out.end());
  return out;
}

inline CountTable count_quat_with_subfields(const std::vector<i64>& deltas, const std::vector<u64>& thresholds) {
  validate_thresholds(thresholds);
  require_full_compositum(deltas);
  std::vector<u64> allowed;
  const u64 root = isqrt(thresholds.back());
  for (u64 p : primes_up_to(root))
    if (nonsplit_in_all(deltas, p)) allowed.push_back(p);
  const bool inf_ok = infinity_nonsplit_in_all(deltas);
  std::vector<u64> discs;
  enumerate_prime_sets(allowed, 1, root, [](u64 p) { return p; }, [&](const std::vector<u64>& s, u64 w) {
    if (s.size() % 2 == 0 || inf_ok) discs.push_back(w * w);
  });
  return tabulate(std::move(discs), thresholds,
                  {{"census", "quat-subfields"}, {"base_field", "Q"}, {"fields", join_deltas(deltas)}});
}

// ---- quadratic fields ----------------------------------------------------

inline std::vector<i64> fundamental_discriminants(u64 x, const SieveTable& sieve) {
  std::vector<i64> out;
  for (u64 a = 3; a <= x; ++a) {
    i64 neg = -static_cast<i64>(a), pos = static_cast<i64>(a);
    if (sieve.fundamental(neg)) out.push_back(neg);
    if (sieve.fundamental(pos)) out.push_back(pos);
  }
  return out;
}

inline u64 fundamental_discriminant_count(u64 x) {
  if (x < 1) throw ValidationError("x must be >= 1");
  SieveTable sieve(std::max<u64>(x, 4));
  return fundamental_discriminants(x, sieve).size();
}

inline CountTable count_embedding_quads(const QuaternionAlgebraQ& b, const std::vector<u64>& thresholds,
                                        bool not_totally_complex = false) {
  validate_thresholds(thresholds);
  SieveTable sieve(std::max<u64>(thresholds.back(), 4));
  std::vector<u64> values;
  for (i64 d : fundamental_discriminants(thresholds.back(), sieve)) {
    if (not_totally_complex && d < 0) continue;
    if (embeds(QuadraticField(d), b)) values.push_back(static_cast<u64>(std::llabs(d)));
  }
  return tabulate(std::move(values), thresholds,
                  {{"census", "embed-quads"},
                   {"base_field", "Q"},
                   {"algebra", format_ramification(b)},
                   {"not_totally_complex", not_totally_complex ? "true" : "false"}});
}

struct SplittingDensity {
  u64 split = 0, inert = 0, ramified = 0, total = 0;
  Real split_fraction() const { return static_cast<Real>(split) / total; }
  Real inert_fraction() const { return static_cast<Real>(inert) / total; }
  Real ramified_fraction() const { return static_cast<Real>(ramified) / total; }
};

inline SplittingDensity splitting_density(PlaceQ v, u64 x) {
  if (x < 100) throw ValidationError("splitting_density needs X >= 100");
  SieveTable sieve(x);
  SplittingDensity out;
  for (i64 d : fundamental_discriminants(x, sieve)) {
    switch (splitting(QuadraticField(d), v)) {
      case SplittingType::Split: ++out.split; break;
      case SplittingType::Inert: ++out.inert; break;
      case SplittingType::Ramified: ++out.ramified; break;
    }
    ++out.total;
  }
  if (out.split + out.inert + out.ramified != out.total) throw InvariantViolation("density counts do not add up");
  return out;
}

inline u64 smallest_inert_prime(const QuadraticField& L) {
  for (u64 p = 2;; ++p)
    if (is_prime(p) && splitting(L, PlaceQ{p}) == SplittingType::Inert) return p;
}

struct InertPrimeStatistics {
  i64 worst_delta = 0;
  u64 worst_prime = 0;
  Real max_exponent = 0;  // max log p / log d_L
};

inline InertPrimeStatistics smallest_inert_statistics(u64 x) {
  SieveTable sieve(std::max<u64>(x, 4));
  InertPrimeStatistics st;
  for (i64 d : fundamental_discriminants(x, sieve)) {
    u64 p = smallest_inert_prime(QuadraticField(d));
    Real e = std::log(static_cast<Real>(p)) / std::log(static_cast<Real>(std::llabs(d)));
    if (e > st.max_exponent) st = {d, p, e};
  }
  return st;
}

// ---- Dirichlet series oracle ---------------------------------------------

struct CsaSeries {
  i64 m, n;
};
struct EmbedSeries {
  std::vector<i64> deltas;
};
using SeriesSpec = std::variant<CsaSeries, EmbedSeries>;

namespace detail {

// Multiplies the coefficient array in place by 1 + sum_t c_t p^{-e_t s}.
inline void multiply_euler_factor(std::vector<i64>& a, u64 p, const std::vector<std::pair<unsigned, i64>>& terms) {
  const u64 n_max = a.size() - 1;
  std::vector<std::pair<u64, i64>> powered;
  for (auto [e, c] : terms) {
    if (!c) continue;
    auto pe = bounded_pow(p, e, n_max);
    if (pe) powered.emplace_back(*pe, c);
  }
  if (powered.empty()) return;
  for (u64 k = n_max; k >= 1; --k) {
    if (!a[k]) continue;
    for (auto [pe, c] : powered)
      if (k <= n_max / pe) a[k * pe] += c * a[k];
  }
}

}  // namespace detail

// Coefficients a_1..a_{n_max} (index 0 unused) of the generating series.
inline std::vector<i64> dirichlet_coefficients(const SeriesSpec& spec, u64 n_max) {
  if (n_max < 1) throw ValidationError("N_max must be >= 1");
  std::vector<i64> total(n_max + 1, 0);
  auto primes = primes_up_to(n_max);
  i64 divide_by = 1;
  if (auto* c = std::get_if<CsaSeries>(&spec)) {
    if (c->m < 1 || c->n % c->m) throw ValidationError("need m | n");
    const i64 m = c->m, n = c->n;
    divide_by = m;
    for (i64 j = 0; j < m; ++j) {
      std::vector<i64> g(n_max + 1, 0);
      g[1] = (m % 2 == 0) ? 1 + (j % 2 == 0 ? 1 : -1) : 1;
      if (!g[1]) continue;
      std::vector<std::pair<unsigned, i64>> terms;
      for (u64 d : divisors(static_cast<u64>(m)))
        if (d > 1) terms.emplace_back(static_cast<unsigned>(n * n / d * (d - 1)), ramanujan_sum(d, j));
      for (u64 p : primes) detail::multiply_euler_factor(g, p, terms);
      for (u64 k = 1; k <= n_max; ++k) total[k] += g[k];
    }
  } else {
    const auto& deltas = std::get<EmbedSeries>(spec).deltas;
    require_full_compositum(deltas);
    const std::size_t r = deltas.size();
    const bool inf_q = infinity_nonsplit_in_all(deltas);
    divide_by = 2;
    std::vector<i64> g0(n_max + 1, 0), g1(n_max + 1, 0);
    g0[1] = inf_q ? 2 : 1;
    g1[1] = inf_q ? 0 : 1;
    for (u64 p : primes) {
      bool ramified = false;
      i64 prod = 1;
      for (i64 d : deltas) {
        int k = kronecker_symbol(d, p);
        if (!k) ramified = true;
        prod *= 1 - k;
      }
      // Indicator of p in Q: the character average for unramified p.
      bool in_q = ramified ? nonsplit_in_all(deltas, p) : prod == (i64(1) << r);
      if (!in_q) continue;
      detail::multiply_euler_factor(g0, p, {{2u, 1}});
      detail::multiply_euler_factor(g1, p, {{2u, -1}});
    }
    for (u64 k = 1; k <= n_max; ++k) total[k] = g0[k] + g1[k];
  }
  for (u64 k = 1; k <= n_max; ++k) {
    if (total[k] % divide_by) throw InvariantViolation("non-integral Dirichlet coefficient at " + std::to_string(k));
    total[k] /= divide_by;
    if (total[k] < 0) throw InvariantViolation("negative Dirichlet coefficient at " + std::to_string(k));
  }
  return total;
}

}  // namespace hasse
