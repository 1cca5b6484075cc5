#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "hasse/census.hpp"
#include "hasse/geometry.hpp"

namespace hasse {

struct BoundInput {
  std::string name;
  Real value;
};

struct BoundReport {
  std::string bound_name;
  std::string symbolic;
  std::vector<BoundInput> inputs;
  Magnitude value;
};

namespace detail {

inline Real theta_bound_exponent(Real x) {
  Real l = std::log(x);
  return 21 * x / (l * l * l) + x;
}

inline void require_positive(Real v, const char* what) {
  if (!(v > 0)) throw ValidationError(std::string(what) + " must be positive");
}

}  // namespace detail

// 64^{n^3} d^n e^{2n (21x/log^3 x + x)}.
inline BoundReport recognizing_bound(int n_k, Real d_k, Real x) {
  if (!(x > 2)) throw ValidationError("domain: recognizing_bound needs x > 2");
  if (n_k < 1) throw ValidationError("n_k must be >= 1");
  detail::require_positive(d_k, "d_k");
  Real ln = n_k * n_k * n_k * std::log(Real(64)) + n_k * std::log(d_k) +
            2 * n_k * detail::theta_bound_exponent(x);
  return {"recognizing", "64^{n_k^3} d_k^{n_k} e^{2 n_k (21x/log^3 x + x)}",
          {{"n_k", Real(n_k)}, {"d_k", d_k}, {"x", x}}, Magnitude::from_ln(ln)};
}

// 32^{n^2} B(Omega) (prod_{p <= x} p)^{2n}.
inline BoundReport grunwald_wang_conductor_bound(int n_k, Real basis_bound, Real x) {
  if (!(x > 2)) throw ValidationError("domain: the conductor bound needs x > 2");
  detail::require_positive(basis_bound, "B(Omega)");
  Real ln = n_k * n_k * std::log(Real(32)) + std::log(basis_bound) +
            2 * n_k * chebyshev_theta(static_cast<u64>(std::floor(x)));
  return {"gw", "32^{n_k^2} B(Omega) (prod_{p<=x} p)^{2 n_k}",
          {{"n_k", Real(n_k)}, {"basis_bound", basis_bound}, {"x", x}}, Magnitude::from_ln(ln)};
}

inline BoundReport theta_bound(Real x) {
  if (!(x > 2)) throw ValidationError("domain: the theta bound needs x > 2");
  return {"theta", "e^{21x/log^3 x + x}", {{"x", x}}, Magnitude::from_ln(detail::theta_bound_exponent(x))};
}

// c1 e^{c2 log(V) V^130} (dimension 2) or c3 e^{(log V)^{log V}} (dimension 3).
inline BoundReport chlr_length_bound(Real V, int dimension, Real c1, Real c2, Real c3) {
  if (dimension == 2) {
    if (!(V > 1)) throw ValidationError("domain: dimension 2 needs V > 1");
    detail::require_positive(c1, "c1");
    detail::require_positive(c2, "c2");
    Real lv = std::log(V);
    // ln(value) = ln c1 + c2 log V V^130; its log is ln c2 + ln log V + 130 ln V.
    Real ln_ln_exp = std::log(c2) + std::log(lv) + 130 * lv;
    Magnitude m = ln_ln_exp < 11000 ? Magnitude::from_ln(std::log(c1) + std::exp(ln_ln_exp))
                                    : Magnitude::from_ln_ln(ln_ln_exp);
    return {"chlr", "c1 e^{c2 log(V) V^130}", {{"V", V}, {"dimension", 2}, {"c1", c1}, {"c2", c2}}, m};
  }
  if (dimension == 3) {
    if (!(V > 1)) throw ValidationError("domain: dimension 3 needs V > 1");
    detail::require_positive(c3, "c3");
    Real lv = std::log(V);
    Real ln_ln_exp = lv * std::log(lv);
    Magnitude m = ln_ln_exp < 11000 ? Magnitude::from_ln(std::log(c3) + std::exp(ln_ln_exp))
                                    : Magnitude::from_ln_ln(ln_ln_exp);
    return {"chlr", "c3 e^{(log V)^{log V}}", {{"V", V}, {"dimension", 3}, {"c3", c3}}, m};
  }
  throw ValidationError("dimension must be 2 or 3");
}

inline BoundReport mcreid_area_bound(Real V, Real c) {
  if (V < 0) throw ValidationError("volume must be non-negative");
  detail::require_positive(c, "c");
  return {"mcreid", "e^{c V}", {{"V", V}, {"c", c}}, Magnitude::from_ln(c * V)};
}

// d^{2C} (2 log(D1 D2))^4 D1 D2.
inline BoundReport brauer_rigidity_bound(Real d_base, Real C, Real disc1, Real disc2) {
  detail::require_positive(d_base, "d_base");
  detail::require_positive(C, "C");
  if (!(disc1 >= 1 && disc2 >= 1 && disc1 * disc2 > 1)) throw ValidationError("discriminants must be >= 1, not both 1");
  Real lp = std::log(disc1) + std::log(disc2);
  Real ln = 2 * C * std::log(d_base) + 4 * std::log(2 * lp) + lp;
  return {"brauer", "d^{2C} (2 log(|disc B1| |disc B2|))^4 |disc B1| |disc B2|",
          {{"d_base", d_base}, {"C", C}, {"disc1", disc1}, {"disc2", disc2}}, Magnitude::from_ln(ln)};
}

// ---- experiments -------------------------------------------------------------

// Fundamental discriminants by |D| ascending, negative first on ties.
inline std::vector<i64> search_order(u64 delta_max) {
  std::vector<i64> out;
  for (u64 a = 3; a <= delta_max; ++a) {
    i64 n = -static_cast<i64>(a), p = static_cast<i64>(a);
    if (is_fundamental_discriminant(n)) out.push_back(n);
    if (is_fundamental_discriminant(p)) out.push_back(p);
  }
  return out;
}

class DiscriminantOrder {
 public:
  explicit DiscriminantOrder(u64 delta_max) : delta_max_(delta_max) {
    SieveTable sieve(std::max<u64>(delta_max, 4));
    for (u64 a = 3; a <= delta_max; ++a) {
      if (sieve.fundamental(-static_cast<i64>(a))) order_.push_back(-static_cast<i64>(a));
      if (sieve.fundamental(static_cast<i64>(a))) order_.push_back(static_cast<i64>(a));
    }
  }
  const std::vector<i64>& order() const { return order_; }
  u64 delta_max() const { return delta_max_; }

 private:
  u64 delta_max_;
  std::vector<i64> order_;
};

inline std::optional<i64> distinguish_quaternions(const QuaternionAlgebraQ& b1, const QuaternionAlgebraQ& b2,
                                                  const DiscriminantOrder& order, bool not_totally_complex = false) {
  if (b1 == b2) return std::nullopt;
  for (i64 d : order.order()) {
    if (not_totally_complex && d < 0) continue;
    QuadraticField L(d);
    if (embeds(L, b1) != embeds(L, b2)) return d;
  }
  throw NotFoundWithinBound("no fundamental discriminant with |D| <= " + std::to_string(order.delta_max()) +
                            " distinguishes " + format_ramification(b1) + " from " + format_ramification(b2));
}

inline std::optional<i64> distinguish_quaternions(const QuaternionAlgebraQ& b1, const QuaternionAlgebraQ& b2,
                                                  u64 delta_max, bool not_totally_complex = false) {
  return distinguish_quaternions(b1, b2, DiscriminantOrder(delta_max), not_totally_complex);
}

struct BrauerDistinction {
  QuaternionAlgebraQ algebra;      // least |disc| indefinite algebra separating the pairs
  QuaternionAlgebraQ recipe;       // algebra built from the distinguishing prime
  u64 omega1 = 0;
  std::optional<u64> omega2;
};

inline bool restriction_xor(const QuaternionAlgebraQ& b, const QuadraticField& L1, const QuaternionAlgebraL& bl1,
                            const QuadraticField& L2, const QuaternionAlgebraL& bl2) {
  return is_restriction(b, L1, bl1) != is_restriction(b, L2, bl2);
}

inline std::optional<BrauerDistinction> distinguish_brauer_pairs(const QuaternionAlgebraL& bl1,
                                                                 const QuaternionAlgebraL& bl2, u64 x_max) {
  const QuadraticField& L1 = bl1.base();
  const QuadraticField& L2 = bl2.base();
  if (L1.is_real() || L2.is_real()) throw ValidationError("distinguish_brauer_pairs takes imaginary fields");
  auto s1 = descends(bl1);
  auto s2 = descends(bl2);
  if (!s1 || !s2) throw ValidationError("both algebras must descend to Q");
  if (L1 == L2 && bl1.ramification() == bl2.ramification()) return std::nullopt;

  BrauerDistinction out;
  std::set<u64> excluded(s1->begin(), s1->end());
  excluded.insert(s2->begin(), s2->end());
  // Recipe: omega1 inert in one field and split in the other; start from the
  // descent set on the inert side, then fix parity with a prime inert in both.
  std::optional<QuaternionAlgebraQ> recipe;
  if (!(L1 == L2)) {
    for (u64 p = 2; !recipe; ++p) {
      if (!is_prime(p) || excluded.count(p)) continue;
      SplittingType t1 = splitting(L1, PlaceQ{p}), t2 = splitting(L2, PlaceQ{p});
      bool one_split = (t1 == SplittingType::Split) != (t2 == SplittingType::Split);
      if (!one_split) continue;
      const std::set<u64>& base = t1 == SplittingType::Split ? *s2 : *s1;
      std::set<PlaceQ> ram;
      for (u64 q : base) ram.insert(PlaceQ{q});
      ram.insert(PlaceQ{p});
      out.omega1 = p;
      if (ram.size() % 2) {
        for (u64 q = 2;; ++q) {
          if (!is_prime(q) || q == p || excluded.count(q)) continue;
          if (splitting(L1, PlaceQ{q}) == SplittingType::Inert && splitting(L2, PlaceQ{q}) == SplittingType::Inert) {
            ram.insert(PlaceQ{q});
            out.omega2 = q;
            break;
          }
        }
      }
      recipe = QuaternionAlgebraQ(ram);
    }
    if (!restriction_xor(*recipe, L1, bl1, L2, bl2))
      throw InvariantViolation("recipe algebra does not separate the pairs");
    out.recipe = *recipe;
  }
  // Least discriminant search over indefinite algebras.
  const u64 root = isqrt(x_max);
  std::optional<QuaternionAlgebraQ> best;
  enumerate_prime_sets(primes_up_to(root), 1, root, [](u64 p) { return p; }, [&](const std::vector<u64>& s, u64) {
    if (s.size() % 2) return;
    QuaternionAlgebraQ b(std::set<PlaceQ>(s.begin(), s.end()));
    if (restriction_xor(b, L1, bl1, L2, bl2) && (!best || b < *best)) best = b;
  });
  if (!best) {
    if (recipe && recipe->discriminant() <= x_max) best = recipe;
    else throw NotFoundWithinBound("no separating algebra with |disc| <= " + std::to_string(x_max));
  }
  out.algebra = *best;
  if (!recipe) out.recipe = *best;
  return out;
}

struct LimitPair {
  i64 delta1 = 0, delta2 = 0;
  u64 p1 = 0, p2 = 0;
};

inline bool same_splitting_up_to(i64 d1, i64 d2, u64 m) {
  for (u64 p : primes_up_to(m))
    if (splitting(QuadraticField(d1), PlaceQ{p}) != splitting(QuadraticField(d2), PlaceQ{p})) return false;
  return true;
}

// Lexicographically least (|D1|, |D2|) of distinct negative fundamental
// discriminants with the same splitting at all p <= m.
inline LimitPair limit_pair(u64 m) {
  if (m < 2) throw ValidationError("limit_pair needs m >= 2");
  for (i64 a1 = 3;; ++a1) {
    if (!is_fundamental_discriminant(-a1)) continue;
    for (i64 a2 = 3; a2 < a1 + 100000000; ++a2) {
      if (a2 == a1 || !is_fundamental_discriminant(-a2)) continue;
      if (!same_splitting_up_to(-a1, -a2, m)) continue;
      LimitPair out{-a1, -a2, 0, 0};
      for (u64 p = 2; !out.p2; ++p) {
        if (!is_prime(p)) continue;
        if (kronecker_symbol(out.delta1, p) == 1 && kronecker_symbol(out.delta2, p) == -1) {
          if (!out.p1) out.p1 = p;
          else out.p2 = p;
        }
      }
      return out;
    }
  }
}

// Ram(B) plus {p_1, p_j} for the primes p_1 < p_2 < ... inert in every field and outside Ram(B).
inline std::vector<QuaternionAlgebraQ> length_preserving_family(const QuaternionAlgebraQ& b,
                                                                const std::vector<i64>& deltas, std::size_t count) {
  for (i64 d : deltas) {
    if (d <= 0) throw ValidationError("length_preserving_family takes real quadratic fields");
    if (!embeds(QuadraticField(d), b))
      throw ValidationError("field " + std::to_string(d) + " does not embed in " + format_ramification(b));
  }
  if (!has_common_inert_primes(deltas))
    throw ValidationError("no-common-inert-primes: an odd-size set of the characters multiplies to 1");
  std::vector<u64> chosen;
  for (u64 p = 2; chosen.size() < count + 1; ++p) {
    if (!is_prime(p) || b.ramification().count(PlaceQ{p})) continue;
    bool inert = true;
    for (i64 d : deltas)
      if (kronecker_symbol(d, p) != -1) inert = false;
    if (inert) chosen.push_back(p);
  }
  std::vector<QuaternionAlgebraQ> out;
  for (std::size_t j = 1; j <= count; ++j) {
    std::set<PlaceQ> ram = b.ramification();
    ram.insert(PlaceQ{chosen[0]});
    ram.insert(PlaceQ{chosen[j]});
    QuaternionAlgebraQ bj(ram);
    for (i64 d : deltas)
      if (!embeds(QuadraticField(d), bj)) throw InvariantViolation("family member lost an embedding");
    out.push_back(bj);
  }
  return out;
}

struct PairResult {
  QuaternionAlgebraQ b1, b2;
  i64 minimal_delta = 0;
};

struct RigidityScanReport {
  std::vector<QuaternionAlgebraQ> algebras;
  std::vector<PairResult> pairs;
  u64 max_minimal_delta = 0;
  std::map<u64, u64> histogram;
  BoundReport bound;
};

// All quaternion algebras over Q with |disc| <= X, ascending.
inline std::vector<QuaternionAlgebraQ> quaternions_up_to(u64 X) {
  std::vector<QuaternionAlgebraQ> out;
  const u64 root = isqrt(X);
  enumerate_prime_sets(primes_up_to(root), 1, root, [](u64 p) { return p; },
                       [&](const std::vector<u64>& s, u64) { out.push_back(quaternion_from_primes(s)); });
  std::sort(out.begin(), out.end());
  return out;
}

inline RigidityScanReport rigidity_scan(u64 X, u64 delta_max, bool not_totally_complex = false,
                                        unsigned workers = 1) {
  if (X < 4) throw ValidationError("rigidity_scan needs X >= 4");
  if (workers < 1) throw ValidationError("worker count must be >= 1");
  RigidityScanReport rep;
  rep.algebras = quaternions_up_to(X);
  DiscriminantOrder order(delta_max);
  std::vector<std::pair<std::size_t, std::size_t>> index;
  for (std::size_t i = 0; i < rep.algebras.size(); ++i)
    for (std::size_t j = i + 1; j < rep.algebras.size(); ++j) index.emplace_back(i, j);
  rep.pairs.resize(index.size());
  std::atomic<std::size_t> next{0};
  std::vector<std::string> errors(workers);
  auto work = [&](unsigned w) {
    try {
      for (std::size_t k; (k = next++) < index.size();) {
        auto [i, j] = index[k];
        const auto& b1 = rep.algebras[i];
        const auto& b2 = rep.algebras[j];
        bool restrict_real = not_totally_complex && !b1.is_definite() && !b2.is_definite();
        auto d = distinguish_quaternions(b1, b2, order, restrict_real);
        rep.pairs[k] = {b1, b2, *d};
      }
    } catch (const NotFoundWithinBound& e) {
      errors[w] = e.what();
      next = index.size();
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (!e.empty()) throw NotFoundWithinBound(e);
  for (auto& pr : rep.pairs) {
    u64 a = static_cast<u64>(std::llabs(pr.minimal_delta));
    rep.max_minimal_delta = std::max(rep.max_minimal_delta, a);
    ++rep.histogram[a];
  }
  rep.bound = recognizing_bound(1, 1, static_cast<Real>(X));
  if (less(rep.bound.value, Magnitude{0, static_cast<Real>(std::max<u64>(rep.max_minimal_delta, 1))}))
    throw InvariantViolation("empirical distinguishing discriminant exceeds the recognizing bound");
  return rep;
}

}  // namespace hasse
