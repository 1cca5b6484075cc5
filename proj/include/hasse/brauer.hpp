#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "hasse/fields.hpp"

namespace hasse {

using Fraction = boost::rational<i64>;

// Representative of a fraction mod 1 in [0, 1).
inline Fraction reduce_mod_one(Fraction f) {
  i64 q = f.numerator() / f.denominator();
  f -= q;
  if (f.numerator() < 0) f += Fraction(1);
  return f;
}

using InvariantMap = std::map<PlaceQ, Fraction>;

struct BrauerClass {
  InvariantMap invariants;
  i64 division_degree = 1;
  bool operator==(const BrauerClass&) const = default;
};

inline i64 division_degree_of(const InvariantMap& inv) {
  i64 d = 1;
  for (auto& [v, f] : inv) d = std::lcm(d, f.denominator());
  return d;
}

class CentralSimpleAlgebraQ {
 public:
  CentralSimpleAlgebraQ() = default;

  i64 degree() const { return n_; }
  const InvariantMap& invariants() const { return inv_; }
  i64 division_degree() const { return division_degree_of(inv_); }
  bool operator==(const CentralSimpleAlgebraQ&) const = default;

  friend CentralSimpleAlgebraQ make_csa(i64 n, const std::vector<std::pair<PlaceQ, Fraction>>& assignments);

 private:
  i64 n_ = 1;
  InvariantMap inv_;
};

inline CentralSimpleAlgebraQ make_csa(i64 n, const std::vector<std::pair<PlaceQ, Fraction>>& assignments) {
  if (n < 1) throw ValidationError("degree must be >= 1");
  CentralSimpleAlgebraQ a;
  a.n_ = n;
  Fraction total = 0;
  for (auto& [v, f0] : assignments) {
    Fraction f = reduce_mod_one(f0);
    if (f.numerator() == 0) continue;
    if (a.inv_.count(v)) throw ValidationError("place assigned twice");
    if (n % f.denominator() != 0)
      throw ValidationError("m-not-dividing-n: local index " + std::to_string(f.denominator()) +
                            " does not divide " + std::to_string(n));
    if (v.is_infinite() && f != Fraction(1, 2))
      throw ValidationError("bad-real-invariant: the real place only admits 1/2");
    a.inv_[v] = f;
    total += f;
  }
  if (total.denominator() != 1) throw ValidationError("invariant-sum-not-integral");
  return a;
}

// prod over finite ramified p of p^{n^2 (1 - 1/m_p)}.
inline BigInt disc_norm(const CentralSimpleAlgebraQ& a) {
  BigInt out = 1;
  const i64 n = a.degree();
  for (auto& [v, f] : a.invariants()) {
    if (v.is_infinite()) continue;
    i64 m = f.denominator();
    i64 e = n * n / m * (m - 1);
    out *= boost::multiprecision::pow(BigInt(v.p), static_cast<unsigned>(e));
  }
  return out;
}

inline CentralSimpleAlgebraQ opposite(const CentralSimpleAlgebraQ& a) {
  std::vector<std::pair<PlaceQ, Fraction>> neg;
  for (auto& [v, f] : a.invariants()) neg.emplace_back(v, reduce_mod_one(-f));
  return make_csa(a.degree(), neg);
}

inline BrauerClass brauer_class(const CentralSimpleAlgebraQ& a) {
  return {a.invariants(), a.division_degree()};
}

inline BrauerClass tensor_class(const CentralSimpleAlgebraQ& a1, const CentralSimpleAlgebraQ& a2) {
  InvariantMap sum = a1.invariants();
  for (auto& [v, f] : a2.invariants()) {
    Fraction s = reduce_mod_one(sum.count(v) ? sum[v] + f : f);
    if (s.numerator() == 0)
      sum.erase(v);
    else
      sum[v] = s;
  }
  return {sum, division_degree_of(sum)};
}

inline bool iso(const CentralSimpleAlgebraQ& a1, const CentralSimpleAlgebraQ& a2) {
  if (a1.degree() != a2.degree()) throw ValidationError("degree-mismatch");
  return a1.invariants() == a2.invariants();
}

class QuaternionAlgebraQ {
 public:
  QuaternionAlgebraQ() = default;
  explicit QuaternionAlgebraQ(std::set<PlaceQ> ram) : ram_(std::move(ram)) {
    if (ram_.size() % 2) throw ValidationError("a quaternion algebra has an even number of ramified places");
  }

  const std::set<PlaceQ>& ramification() const { return ram_; }
  bool is_definite() const { return ram_.count(PlaceQ::infinity()) > 0; }
  bool is_split() const { return ram_.empty(); }
  u64 reduced_discriminant() const {
    u64 r = 1;
    for (PlaceQ v : ram_)
      if (!v.is_infinite()) r *= v.p;
    return r;
  }
  BigInt discriminant() const {
    BigInt r = reduced_discriminant();
    return r * r;
  }
  std::vector<u64> finite_primes() const {
    std::vector<u64> out;
    for (PlaceQ v : ram_)
      if (!v.is_infinite()) out.push_back(v.p);
    return out;
  }
  CentralSimpleAlgebraQ as_csa() const {
    std::vector<std::pair<PlaceQ, Fraction>> a;
    for (PlaceQ v : ram_) a.emplace_back(v, Fraction(1, 2));
    return make_csa(2, a);
  }
  auto operator<=>(const QuaternionAlgebraQ& o) const {
    if (auto c = reduced_discriminant() <=> o.reduced_discriminant(); c != 0) return c;
    return std::lexicographical_compare_three_way(ram_.begin(), ram_.end(), o.ram_.begin(), o.ram_.end());
  }
  bool operator==(const QuaternionAlgebraQ&) const = default;

 private:
  std::set<PlaceQ> ram_;
};

// Quaternion algebra from finite primes; the real place is added when needed for parity.
inline QuaternionAlgebraQ quaternion_from_primes(const std::vector<u64>& primes) {
  std::set<PlaceQ> s;
  for (u64 p : primes) s.insert(PlaceQ{p});
  if (s.size() % 2) s.insert(PlaceQ::infinity());
  return QuaternionAlgebraQ(s);
}

class QuaternionAlgebraL {
 public:
  QuaternionAlgebraL(QuadraticField base, std::set<QuadraticPlace> ram) : base_(base), ram_(std::move(ram)) {
    if (ram_.size() % 2) throw ValidationError("a quaternion algebra has an even number of ramified places");
    for (const QuadraticPlace& w : ram_) {
      if (w.below.is_infinite()) {
        if (!base_.is_real()) throw ValidationError("complex places cannot ramify");
        if (w.index != 1 && w.index != 2) throw ValidationError("real places are indexed 1 and 2");
        continue;
      }
      SplittingType t = splitting(base_, w.below);
      if (t != w.type) throw ValidationError("place type does not match the splitting of " + std::to_string(w.below.p));
      if (w.index == 2 && t != SplittingType::Split) throw ValidationError("index 2 requires a split prime");
      if (w.index != 1 && w.index != 2) throw ValidationError("place index must be 1 or 2");
    }
  }

  const QuadraticField& base() const { return base_; }
  const std::set<QuadraticPlace>& ramification() const { return ram_; }
  bool is_split() const { return ram_.empty(); }
  bool operator==(const QuaternionAlgebraL&) const = default;

 private:
  QuadraticField base_;
  std::set<QuadraticPlace> ram_;
};

// Local degree rule: a place over v keeps the invariant 1/2 iff [L_w : Q_v] = 1.
inline QuaternionAlgebraL restrict(const QuaternionAlgebraQ& b, const QuadraticField& L) {
  std::set<QuadraticPlace> out;
  for (PlaceQ v : b.ramification()) {
    if (v.is_infinite()) {
      if (L.is_real())
        for (auto& w : places_above(L, v)) out.insert(w);
      continue;
    }
    if (splitting(L, v) == SplittingType::Split)
      for (auto& w : places_above(L, v)) out.insert(w);
  }
  return QuaternionAlgebraL(L, out);
}

inline bool embeds(const QuadraticField& L, const QuaternionAlgebraQ& b) {
  for (PlaceQ v : b.ramification())
    if (splitting(L, v) == SplittingType::Split) return false;
  return true;
}

// Primes p_j when the finite ramification is a union of conjugate pairs over
// split primes (and the real places appear both or neither).
inline std::optional<std::set<u64>> descends(const QuaternionAlgebraL& bl) {
  std::set<u64> pairs;
  int real_count = 0;
  std::map<u64, int> seen;
  for (const QuadraticPlace& w : bl.ramification()) {
    if (w.below.is_infinite()) {
      ++real_count;
      continue;
    }
    if (w.type != SplittingType::Split) return std::nullopt;
    ++seen[w.below.p];
  }
  if (real_count == 1) return std::nullopt;
  for (auto [p, c] : seen) {
    if (c != 2) return std::nullopt;
    pairs.insert(p);
  }
  return pairs;
}

inline bool is_restriction(const QuaternionAlgebraQ& b0, const QuadraticField& L, const QuaternionAlgebraL& bl) {
  if (!(bl.base() == L)) return false;
  return restrict(b0, L).ramification() == bl.ramification();
}

// The descent criterion read with Ram_f(B0): Ram_f(B0) contains the split-pair
// primes and every other finite ramified prime of B0 is inert or ramified in L.
inline bool is_restriction_by_descent(const QuaternionAlgebraQ& b0, const QuadraticField& L,
                                      const QuaternionAlgebraL& bl) {
  if (!(bl.base() == L)) return false;
  auto d = descends(bl);
  if (!d) return false;
  bool bl_real = false;
  for (auto& w : bl.ramification())
    if (w.below.is_infinite()) bl_real = true;
  bool b0_real = b0.is_definite() && L.is_real();
  if (bl_real != b0_real) return false;
  for (u64 p : *d)
    if (!b0.ramification().count(PlaceQ{p})) return false;
  for (u64 p : b0.finite_primes()) {
    if (d->count(p)) continue;
    if (splitting(L, PlaceQ{p}) == SplittingType::Split) return false;
  }
  return true;
}

// ---- text format -------------------------------------------------------

inline std::vector<std::string> split_tokens(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  std::stringstream ss(text);
  while (std::getline(ss, cur, ',')) {
    auto b = cur.find_first_not_of(" \t");
    auto e = cur.find_last_not_of(" \t");
    if (b == std::string::npos) throw ValidationError("empty token in ramification set '" + text + "'");
    out.push_back(cur.substr(b, e - b + 1));
  }
  return out;
}

inline bool is_empty_set_text(const std::string& text) {
  return text.empty() || text == "none" || text == "{}" || text == "-";
}

inline u64 parse_prime_token(const std::string& tok) {
  if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos || tok.size() > 18)
    throw ValidationError("malformed ramification token '" + tok + "'");
  u64 p = std::stoull(tok);
  if (!is_prime(p)) throw ValidationError("'" + tok + "' is not a prime");
  return p;
}

inline std::set<PlaceQ> parse_places_q(const std::string& text) {
  std::set<PlaceQ> out;
  if (is_empty_set_text(text)) return out;
  for (auto& tok : split_tokens(text)) {
    PlaceQ v = tok == "inf" ? PlaceQ::infinity() : PlaceQ{parse_prime_token(tok)};
    if (!out.insert(v).second) throw ValidationError("duplicate place '" + tok + "'");
  }
  return out;
}

inline QuaternionAlgebraQ parse_quaternion_q(const std::string& text) {
  return QuaternionAlgebraQ(parse_places_q(text));
}

inline std::string format_place(PlaceQ v) { return v.is_infinite() ? "inf" : std::to_string(v.p); }

inline std::string format_ramification(const QuaternionAlgebraQ& b) {
  std::string out;
  for (PlaceQ v : b.ramification()) out += (out.empty() ? "" : ",") + format_place(v);
  return out;
}

inline QuaternionAlgebraL parse_quaternion_l(const QuadraticField& L, const std::string& text) {
  std::set<QuadraticPlace> out;
  if (!is_empty_set_text(text)) {
    for (auto& tok : split_tokens(text)) {
      auto dot = tok.find('.');
      std::string head = tok.substr(0, dot);
      int index = 1;
      if (dot != std::string::npos) {
        std::string idx = tok.substr(dot + 1);
        if (idx != "1" && idx != "2") throw ValidationError("malformed place index in '" + tok + "'");
        index = idx[0] - '0';
      }
      QuadraticPlace w;
      if (head == "inf") {
        if (!L.is_real()) throw ValidationError("imaginary fields have no real places");
        if (dot == std::string::npos) throw ValidationError("real places of a real field are inf.1 and inf.2");
        w = {PlaceQ::infinity(), SplittingType::Split, index};
      } else {
        PlaceQ v{parse_prime_token(head)};
        SplittingType t = splitting(L, v);
        if (t == SplittingType::Split && dot == std::string::npos)
          throw ValidationError("split prime " + head + " needs an index: " + head + ".1 or " + head + ".2");
        if (t != SplittingType::Split && dot != std::string::npos && index != 1)
          throw ValidationError("prime " + head + " has a single place above it");
        w = {v, t, index};
      }
      if (!out.insert(w).second) throw ValidationError("duplicate place '" + tok + "'");
    }
  }
  return QuaternionAlgebraL(L, out);
}

inline std::string format_place(const QuadraticPlace& w) {
  std::string head = w.below.is_infinite() ? "inf" : std::to_string(w.below.p);
  bool indexed = w.below.is_infinite() || w.type == SplittingType::Split;
  return indexed ? head + "." + std::to_string(w.index) : head;
}

inline std::string format_ramification(const QuaternionAlgebraL& b) {
  std::string out;
  for (auto& w : b.ramification()) out += (out.empty() ? "" : ",") + format_place(w);
  return out;
}

}  // namespace hasse
