#pragma once

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hasse/asymptotics.hpp"
#include "hasse/cache.hpp"
#include "hasse/census.hpp"
#include "hasse/geometry.hpp"
#include "hasse/rigidity.hpp"

namespace hasse::cli {

using Json = nlohmann::ordered_json;

enum ExitCode : int { kOk = 0, kValidation = 2, kInvariant = 3, kNotFound = 4, kResource = 5 };

// Accepts plain decimal or `AeB` (e.g. 1e10).
inline u64 parse_u64(const std::string& text) {
  auto fail = [&] { return ValidationError("not a non-negative integer: '" + text + "'"); };
  if (text.empty()) throw fail();
  auto e = text.find_first_of("eE");
  auto digits = [&](const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) throw fail();
    try {
      return static_cast<u64>(std::stoull(s));
    } catch (const std::out_of_range&) {
      throw fail();
    }
  };
  if (e == std::string::npos) return digits(text);
  u64 mant = digits(text.substr(0, e));
  u64 exp = digits(text.substr(e + 1));
  for (u64 i = 0; i < exp; ++i) {
    auto m = checked_mul(mant, u64(10));
    if (!m) throw fail();
    mant = *m;
  }
  return mant;
}

inline std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok.erase(0, tok.find_first_not_of(" \t"));
    tok.erase(tok.find_last_not_of(" \t") + 1);
    if (!tok.empty()) out.push_back(tok);
  }
  return out;
}

inline std::vector<u64> parse_thresholds(const std::string& text) {
  std::vector<u64> out;
  for (auto& t : split_commas(text)) out.push_back(parse_u64(t));
  validate_thresholds(out);
  return out;
}

inline std::vector<i64> parse_deltas(const std::string& text) {
  std::vector<i64> out;
  for (auto& t : split_commas(text)) {
    std::size_t used = 0;
    i64 d = 0;
    try {
      d = std::stoll(t, &used);
    } catch (const std::exception&) {
      throw ValidationError("not an integer: '" + t + "'");
    }
    if (used != t.size()) throw ValidationError("not an integer: '" + t + "'");
    QuadraticField check(d);
    out.push_back(d);
  }
  if (out.empty()) throw ValidationError("at least one discriminant is required");
  return out;
}

inline std::string format_real(Real v, int digits = 15) {
  std::ostringstream os;
  os << std::setprecision(digits) << v;
  return os.str();
}

inline Json magnitude_json(const Magnitude& m) {
  if (m.level == 0 && m.top < 1e308L) return static_cast<double>(m.top);
  if (m.level == 0 || (m.level == 1 && m.top < 1e300L)) return Json{{"log10", static_cast<double>(m.log10_value())}};
  Magnitude r = m.level == 1 ? raise(m) : m;
  return Json{{"log10_log10", static_cast<double>(r.top)}};
}

inline Json log10_json(const Magnitude& m) {
  Real l = m.log10_value();
  if (std::isfinite(l) && l < 1e300L) return static_cast<double>(l);
  return magnitude_json(m);
}

inline std::string magnitude_text(const Magnitude& m) {
  if (m.level == 0) return format_real(m.top);
  if (m.level == 1) return "10^" + format_real(m.top);
  return "10^10^" + format_real(m.top);
}

inline std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

// Output: CSV rows with a header, or a JSON document.
struct Output {
  std::string format;
  std::ostream* stream;

  bool json() const { return format == "json"; }
  void csv(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) const {
    *stream << join(header, ",") << "\n";
    for (auto& r : rows) *stream << join(r, ",") << "\n";
  }
  void emit(const Json& j) const { *stream << j.dump(2) << "\n"; }
};

inline std::string quote_csv(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

inline void emit_table(const Output& o, const CountTable& t) {
  if (o.json()) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < t.thresholds.size(); ++i)
      rows.push_back({{"x", t.thresholds[i]}, {"count", t.counts[i].str()}});
    o.emit({{"spec", spec_json(t.spec)}, {"rows", rows}});
    return;
  }
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < t.thresholds.size(); ++i)
    rows.push_back({std::to_string(t.thresholds[i]), t.counts[i].str()});
  o.csv({"x", "count"}, rows);
}

inline void emit_euler(const Output& o, const std::string& name, const EulerProductValue& v) {
  if (o.json()) {
    o.emit({{"constant", name},
            {"value", static_cast<double>(v.value)},
            {"cutoff", v.cutoff},
            {"tail_estimate", static_cast<double>(v.tail_estimate)}});
    return;
  }
  o.csv({"constant", "value", "cutoff", "tail_estimate"},
        {{name, format_real(v.value), std::to_string(v.cutoff), format_real(v.tail_estimate)}});
}

inline void emit_bound(const Output& o, const BoundReport& r) {
  if (o.json()) {
    Json inputs = Json::object();
    for (auto& in : r.inputs) inputs[in.name] = static_cast<double>(in.value);
    o.emit({{"bound", r.bound_name},
            {"symbolic", r.symbolic},
            {"inputs", inputs},
            {"value", magnitude_json(r.value)},
            {"bound_log10", log10_json(r.value)}});
    return;
  }
  o.csv({"bound", "value", "log10", "symbolic"},
        {{r.bound_name, magnitude_text(r.value), format_real(r.value.log10_value()), quote_csv(r.symbolic)}});
}

struct Options {
  std::string format = "auto";
  std::string out_path;
  std::string cache_dir;
  unsigned shards = 1;
  unsigned precision = 64;
};

inline std::unique_ptr<CensusCache> open_cache(const Options& opt) {
  std::string dir = opt.cache_dir;
  if (dir.empty())
    if (const char* env = std::getenv("HASSE_CACHE_DIR")) dir = env;
  if (dir.empty()) return nullptr;
  return std::make_unique<CensusCache>(dir);
}

inline CensusSpec quat_subfields_spec(const std::vector<i64>& deltas) {
  return {{"census", "quat-subfields"}, {"base_field", "Q"}, {"fields", join_deltas(deltas)}};
}

inline CensusSpec embed_quads_spec(const QuaternionAlgebraQ& b, bool ntc) {
  return {{"census", "embed-quads"},
          {"base_field", "Q"},
          {"algebra", format_ramification(b)},
          {"not_totally_complex", ntc ? "true" : "false"}};
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Arithmetic censuses, asymptotic predictions and rigidity experiments for quaternion algebras"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"auto", "csv", "json"}));
  app.add_option("--out", opt.out_path, "Write results to this file instead of standard output");
  app.add_option("--cache-dir", opt.cache_dir, "Census cache directory (default: $HASSE_CACHE_DIR)");
  app.add_option("--shards", opt.shards, "Worker count for parallel enumerations")->check(CLI::PositiveNumber);
  app.add_option("--precision", opt.precision, "Working precision in bits (64 supported)");

  std::function<void(const Output&)> action;

  // Shared option storage.
  std::string x_text, b_text, b1_text, b2_text, fields_text, ram_text, model = "division", delta_text;
  i64 n = 2, m = 0, field = 0, field1 = 0, field2 = 0;
  u64 cutoff = 1000000, delta_max = 1000000, scan_x = 0, limit_m = 2, count = 2;
  Real volume = 0, const_C = 1, const_c = 1, c1 = 1, c2 = 1, c3 = 1, d_k = 1, zeta_k2 = 0, kb_index = 1;
  Real d_base = 1, disc1 = 1, disc2 = 1, basis_bound = 1, x_real = 0;
  int dim = 3, n_k = 1;
  std::string ram_norms_text;
  bool ntc = false;

  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help) {
    auto* s = parent->add_subcommand(name, help);
    s->fallthrough();
    return s;
  };

  // ---- census ----
  auto* census = app.add_subcommand("census", "Exact censuses of algebras and fields");
  census->require_subcommand(1);
  census->fallthrough();
  {
    auto* s = leaf(census, "csa", "Central simple algebras over Q with m | period and degree n");
    s->add_option("--m", m, "Period divisor m")->required();
    s->add_option("--n", n, "Degree n")->required();
    s->add_option("--x", x_text, "Threshold or comma-separated ascending thresholds")->required();
    s->callback([&] {
      action = [&](const Output& o) {
        auto cache = open_cache(opt);
        auto t = cached_census(cache.get(), csa_spec("csa", m, n), parse_thresholds(x_text),
                               [&](const std::vector<u64>& th) { return count_csa(m, n, th, opt.shards); });
        emit_table(o, t);
      };
    });
  }
  {
    auto* s = leaf(census, "division", "Division algebras over Q of degree n");
    s->add_option("--n", n, "Degree n")->required();
    s->add_option("--x", x_text, "Threshold or comma-separated ascending thresholds")->required();
    s->callback([&] {
      action = [&](const Output& o) {
        auto cache = open_cache(opt);
        auto t = cached_census(cache.get(), csa_spec("division", 0, n), parse_thresholds(x_text),
                               [&](const std::vector<u64>& th) { return count_division(n, th, opt.shards); });
        emit_table(o, t);
      };
    });
  }
  {
    auto* s = leaf(census, "embed-quads", "Quadratic fields embedding in a quaternion algebra");
    s->add_option("--b", b_text, "Ramification set, e.g. 2,inf")->required();
    s->add_option("--x", x_text, "Threshold or comma-separated ascending thresholds")->required();
    s->add_flag("--not-totally-complex", ntc, "Only real quadratic fields");
    s->callback([&] {
      action = [&](const Output& o) {
        auto b = parse_quaternion_q(b_text);
        auto cache = open_cache(opt);
        auto t = cached_census(cache.get(), embed_quads_spec(b, ntc), parse_thresholds(x_text),
                               [&](const std::vector<u64>& th) { return count_embedding_quads(b, th, ntc); });
        emit_table(o, t);
      };
    });
  }
  {
    auto* s = leaf(census, "quat-subfields", "Quaternion algebras over Q admitting every given field");
    s->add_option("--fields", fields_text, "Comma-separated fundamental discriminants")->required();
    s->add_option("--x", x_text, "Threshold or comma-separated ascending thresholds")->required();
    s->callback([&] {
      action = [&](const Output& o) {
        auto deltas = parse_deltas(fields_text);
        auto cache = open_cache(opt);
        auto t = cached_census(cache.get(), quat_subfields_spec(deltas), parse_thresholds(x_text),
                               [&](const std::vector<u64>& th) { return count_quat_with_subfields(deltas, th); });
        emit_table(o, t);
      };
    });
  }
  {
    auto* s = leaf(census, "fund-disc", "Fundamental discriminants with |D| <= x");
    s->add_option("--x", x_text, "Threshold or comma-separated ascending thresholds")->required();
    s->callback([&] {
      action = [&](const Output& o) {
        auto th = parse_thresholds(x_text);
        SieveTable sieve(std::max<u64>(th.back(), 4));
        std::vector<u64> values;
        for (i64 d : fundamental_discriminants(th.back(), sieve)) values.push_back(static_cast<u64>(std::llabs(d)));
        emit_table(o, tabulate(std::move(values), th, {{"census", "fund-disc"}}));
      };
    });
  }

  // ---- predict ----
  auto* predict = app.add_subcommand("predict", "Asymptotic constants and prediction reports");
  predict->require_subcommand(1);
  predict->fallthrough();
  {
    auto* s = leaf(predict, "delta-n", "Leading constant for division algebras of degree n");
    s->add_option("--n", n, "Degree n")->required();
    s->add_option("--cutoff", cutoff, "Euler product prime cutoff");
    s->callback([&] { action = [&](const Output& o) { emit_euler(o, "delta_" + std::to_string(n), delta_n(n, cutoff)); }; });
  }
  {
    auto* s = leaf(predict, "embed-constant", "Leading constant for quaternion algebras with given subfields");
    s->add_option("--fields", fields_text, "Comma-separated fundamental discriminants")->required();
    s->add_option("--cutoff", cutoff, "Euler product prime cutoff");
    s->callback([&] {
      action = [&](const Output& o) {
        auto deltas = parse_deltas(fields_text);
        auto v = deltas.size() == 1 ? embed_constant_r1(deltas[0], cutoff) : embed_constant_general(deltas, cutoff);
        emit_euler(o, "embed_constant", v);
      };
    });
  }
  {
    auto* s = leaf(predict, "report", "Census counts against the asymptotic prediction");
    s->add_option("--model", model, "division, embed or quads")->check(CLI::IsMember({"division", "embed", "quads"}));
    s->add_option("--n", n, "Degree for the division model");
    s->add_option("--fields", fields_text, "Fields for the embed model");
    s->add_option("--b", b_text, "Algebra for the quads model");
    s->add_option("--x", x_text, "Threshold or comma-separated ascending thresholds")->required();
    s->add_option("--cutoff", cutoff, "Euler product prime cutoff");
    s->callback([&] {
      action = [&](const Output& o) {
        auto th = parse_thresholds(x_text);
        auto cache = open_cache(opt);
        CountTable t;
        PredictionModel pm;
        if (model == "division") {
          t = cached_census(cache.get(), csa_spec("division", 0, n), th,
                            [&](const std::vector<u64>& v) { return count_division(n, v, opt.shards); });
          pm = DivisionModel{n};
        } else if (model == "embed") {
          auto deltas = parse_deltas(fields_text);
          t = cached_census(cache.get(), quat_subfields_spec(deltas), th,
                            [&](const std::vector<u64>& v) { return count_quat_with_subfields(deltas, v); });
          pm = EmbedModel{deltas};
        } else {
          auto b = parse_quaternion_q(b_text);
          t = cached_census(cache.get(), embed_quads_spec(b, false), th,
                            [&](const std::vector<u64>& v) { return count_embedding_quads(b, v, false); });
          pm = QuadsModel{b};
        }
        auto rows = prediction_report(t, pm, cutoff);
        if (o.json()) {
          Json arr = Json::array();
          for (auto& r : rows)
            arr.push_back({{"x", r.x},
                           {"count", r.count.str()},
                           {"predicted", static_cast<double>(r.predicted)},
                           {"ratio", static_cast<double>(r.ratio)}});
          o.emit({{"spec", spec_json(t.spec)}, {"model", model}, {"rows", arr}});
          return;
        }
        std::vector<std::vector<std::string>> csv;
        for (auto& r : rows)
          csv.push_back({std::to_string(r.x), r.count.str(), format_real(r.predicted), format_real(r.ratio)});
        o.csv({"x", "count", "predicted", "ratio"}, csv);
      };
    });
  }

  // ---- geodesics ----
  auto* geo = app.add_subcommand("geodesics", "Closed geodesics from real quadratic fields");
  geo->require_subcommand(1);
  geo->fallthrough();
  {
    auto* s = leaf(geo, "from-field", "Trace and length of the primitive geodesic of each field");
    s->add_option("--delta", delta_text, "Comma-separated positive fundamental discriminants")->required();
    s->callback([&] {
      action = [&](const Output& o) {
        std::vector<GeodesicDatum> data;
        for (i64 d : parse_deltas(delta_text)) data.push_back(geodesic_from_field(d));
        if (o.json()) {
          Json arr = Json::array();
          for (auto& g : data)
            arr.push_back({{"delta", g.delta}, {"trace", g.trace.str()}, {"length", static_cast<double>(g.length)}});
          o.emit(arr);
          return;
        }
        std::vector<std::vector<std::string>> rows;
        for (auto& g : data) rows.push_back({std::to_string(g.delta), g.trace.str(), format_real(g.length)});
        o.csv({"delta", "trace", "length"}, rows);
      };
    });
  }
  {
    auto* s = leaf(geo, "census", "Geodesics of an indefinite algebra from fields with discriminant <= x");
    s->add_option("--b", b_text, "Ramification set of an indefinite algebra")->required();
    s->add_option("--x", x_text, "Discriminant bound")->required();
    s->callback([&] {
      action = [&](const Output& o) {
        auto g = geodesic_census(parse_quaternion_q(b_text), parse_u64(x_text));
        if (o.json()) {
          o.emit({{"count", g.count},
                  {"max_length", static_cast<double>(g.max_length)},
                  {"classes", g.classes},
                  {"length_bound", static_cast<double>(g.length_bound)}});
          return;
        }
        std::vector<std::vector<std::string>> rows;
        for (auto& d : g.data) rows.push_back({std::to_string(d.delta), d.trace.str(), format_real(d.length)});
        o.csv({"delta", "trace", "length"}, rows);
      };
    });
  }

  // ---- volumes ----
  auto* vol = app.add_subcommand("volumes", "Coareas and covolumes of maximal-order groups");
  vol->require_subcommand(1);
  vol->fallthrough();
  {
    auto* s = leaf(vol, "coarea", "Coarea of a maximal order in an indefinite algebra over Q");
    s->add_option("--b", b_text, "Ramification set")->required();
    s->callback([&] {
      action = [&](const Output& o) {
        auto c = coarea_maximal_order(parse_quaternion_q(b_text));
        if (o.json()) return o.emit({{"coarea", static_cast<double>(c.value)}, {"bound", static_cast<double>(c.bound)}});
        o.csv({"coarea", "bound"}, {{format_real(c.value), format_real(c.bound)}});
      };
    });
  }
  {
    auto* s = leaf(vol, "kleinian", "Covolume of a maximal order over an imaginary quadratic field");
    s->add_option("--field", field, "Negative fundamental discriminant")->required();
    s->add_option("--ram", ram_text, "Ramification set over the field, e.g. 5.1,5.2");
    s->callback([&] {
      action = [&](const Output& o) {
        QuadraticField L(field);
        Real v = covolume_kleinian(parse_quaternion_l(L, ram_text));
        if (o.json()) return o.emit({{"covolume", static_cast<double>(v)}});
        o.csv({"covolume"}, {{format_real(v)}});
      };
    });
  }
  {
    auto* s = leaf(vol, "min-cf", "Minimal covolume over a totally real field");
    s->add_option("--d-k", d_k, "Absolute discriminant of k")->required();
    s->add_option("--n-k", n_k, "Degree of k")->required();
    s->add_option("--zeta-k2", zeta_k2, "zeta_k(2)")->required();
    s->add_option("--ram-norms", ram_norms_text, "Comma-separated norms of ramified primes");
    s->add_option("--kb-index", kb_index, "Index [k_B : k]");
    s->callback([&] {
      action = [&](const Output& o) {
        std::vector<u64> norms;
        for (auto& t : split_commas(ram_norms_text)) norms.push_back(parse_u64(t));
        Real v = minimal_covolume_CF(d_k, n_k, zeta_k2, norms, kb_index);
        if (o.json()) return o.emit({{"covolume", static_cast<double>(v)}});
        o.csv({"covolume"}, {{format_real(v)}});
      };
    });
  }

  // ---- surfaces ----
  auto* surf = app.add_subcommand("surfaces", "Totally geodesic surfaces");
  surf->require_subcommand(1);
  surf->fallthrough();
  {
    auto* s = leaf(surf, "census", "Algebras B0 over Q with B0 (x) L = BL and |disc B0| <= x");
    s->add_option("--field", field, "Negative fundamental discriminant")->required();
    s->add_option("--ram", ram_text, "Ramification set over the field");
    s->add_option("--x", x_text, "Discriminant bound")->required();
    s->add_option("--volume", volume, "Covolume V used in the area bound");
    s->add_option("--const-C", const_C, "Constant C in the area bound 2 pi^2 |disc| e^{C V}");
    s->callback([&] {
      action = [&](const Output& o) {
        QuadraticField L(field);
        auto entries = surface_census(parse_quaternion_l(L, ram_text), parse_u64(x_text), volume, const_C);
        if (o.json()) {
          Json arr = Json::array();
          for (auto& e : entries)
            arr.push_back({{"ram_set", format_ramification(e.b0)},
                           {"area", static_cast<double>(e.area)},
                           {"area_bound", static_cast<double>(e.ggs_area_bound)}});
          return o.emit(arr);
        }
        std::vector<std::vector<std::string>> rows;
        for (auto& e : entries) rows.push_back({quote_csv(format_ramification(e.b0)), format_real(e.area)});
        o.csv({"ram_set", "area"}, rows);
      };
    });
  }

  // ---- rigidity ----
  auto* rig = app.add_subcommand("rigidity", "Distinguishing experiments");
  rig->require_subcommand(1);
  rig->fallthrough();
  {
    auto* s = leaf(rig, "distinguish", "Least quadratic field embedding in exactly one algebra");
    s->add_option("--b1", b1_text, "First ramification set")->required();
    s->add_option("--b2", b2_text, "Second ramification set")->required();
    s->add_option("--field1", field1, "Imaginary base field of b1 (compare algebras over fields)");
    s->add_option("--field2", field2, "Imaginary base field of b2");
    s->add_option("--delta-max", delta_max, "Search bound on |D|, or on |disc B| with fields");
    s->callback([&] {
      action = [&](const Output& o) {
        if (field1 || field2) {
          QuadraticField L1(field1), L2(field2);
          auto bl1 = parse_quaternion_l(L1, b1_text), bl2 = parse_quaternion_l(L2, b2_text);
          auto r = distinguish_brauer_pairs(bl1, bl2, delta_max);
          Json j{{"pair", {format_ramification(bl1), format_ramification(bl2)}}, {"fields", {field1, field2}}};
          if (!r) {
            j["algebra"] = nullptr;
          } else {
            j["algebra"] = format_ramification(r->algebra);
            j["recipe_algebra"] = format_ramification(r->recipe);
            j["omega1"] = r->omega1;
            j["omega2"] = r->omega2 ? Json(*r->omega2) : Json(nullptr);
          }
          if (o.json()) return o.emit(j);
          o.csv({"algebra"}, {{r ? quote_csv(format_ramification(r->algebra)) : "none"}});
          return;
        }
        auto b1 = parse_quaternion_q(b1_text), b2 = parse_quaternion_q(b2_text);
        auto d = distinguish_quaternions(b1, b2, delta_max);
        if (o.json())
          return o.emit({{"pair", {format_ramification(b1), format_ramification(b2)}},
                         {"minimal_delta", d ? Json(*d) : Json(nullptr)}});
        o.csv({"minimal_delta"}, {{d ? std::to_string(*d) : "none"}});
      };
    });
  }
  {
    auto* s = leaf(rig, "scan", "Distinguish every pair of quaternion algebras over Q with |disc| <= X");
    s->add_option("--X", scan_x, "Discriminant bound X")->required();
    s->add_option("--delta-max", delta_max, "Search bound on |D|");
    s->add_flag("--not-totally-complex", ntc, "Use only real fields for pairs of indefinite algebras");
    s->callback([&] {
      action = [&](const Output& o) {
        auto r = rigidity_scan(scan_x, delta_max, ntc, opt.shards);
        if (o.json()) {
          Json pairs = Json::array();
          for (auto& p : r.pairs)
            pairs.push_back({{"pair", {format_ramification(p.b1), format_ramification(p.b2)}},
                             {"minimal_delta", p.minimal_delta},
                             {"bound_log10", log10_json(r.bound.value)}});
          Json hist = Json::object();
          for (auto& [k, v] : r.histogram) hist[std::to_string(k)] = v;
          return o.emit({{"algebras", r.algebras.size()},
                         {"max_minimal_delta", r.max_minimal_delta},
                         {"histogram", hist},
                         {"bound_log10", log10_json(r.bound.value)},
                         {"pairs", pairs}});
        }
        std::vector<std::vector<std::string>> rows;
        for (auto& [k, v] : r.histogram) rows.push_back({std::to_string(k), std::to_string(v)});
        o.csv({"abs_delta", "pairs"}, rows);
      };
    });
  }
  {
    auto* s = leaf(rig, "limit-pair", "Least imaginary fields with equal splitting at all p <= m");
    s->add_option("--m", limit_m, "Agreement bound m")->required();
    s->callback([&] {
      action = [&](const Output& o) {
        auto p = limit_pair(limit_m);
        if (o.json()) return o.emit({{"m", limit_m}, {"delta1", p.delta1}, {"delta2", p.delta2}, {"p1", p.p1}, {"p2", p.p2}});
        o.csv({"m", "delta1", "delta2", "p1", "p2"},
              {{std::to_string(limit_m), std::to_string(p.delta1), std::to_string(p.delta2), std::to_string(p.p1),
                std::to_string(p.p2)}});
      };
    });
  }
  {
    auto* s = leaf(rig, "family", "Algebras with enlarged ramification admitting the same real fields");
    s->add_option("--b", b_text, "Base ramification set")->required();
    s->add_option("--fields", fields_text, "Comma-separated positive fundamental discriminants")->required();
    s->add_option("--count", count, "Family size");
    s->callback([&] {
      action = [&](const Output& o) {
        auto fam = length_preserving_family(parse_quaternion_q(b_text), parse_deltas(fields_text), count);
        if (o.json()) {
          Json arr = Json::array();
          for (auto& b : fam) arr.push_back(format_ramification(b));
          return o.emit({{"family", arr}});
        }
        std::vector<std::vector<std::string>> rows;
        for (auto& b : fam) rows.push_back({quote_csv(format_ramification(b))});
        o.csv({"ram_set"}, rows);
      };
    });
  }

  // ---- bounds ----
  auto* bounds = app.add_subcommand("bounds", "Explicit bound calculators with user constants");
  bounds->require_subcommand(1);
  bounds->fallthrough();
  {
    auto* s = leaf(bounds, "recognizing", "64^{n^3} d^n e^{2n(21x/log^3 x + x)}");
    s->add_option("--n-k", n_k, "Degree of k");
    s->add_option("--d-k", d_k, "Absolute discriminant of k");
    s->add_option("--x", x_real, "Prime bound x")->required();
    s->callback([&] { action = [&](const Output& o) { emit_bound(o, recognizing_bound(n_k, d_k, x_real)); }; });
  }
  {
    auto* s = leaf(bounds, "chlr", "Length-spectrum agreement bound");
    s->add_option("--volume", volume, "Volume V")->required();
    s->add_option("--dim", dim, "Dimension 2 or 3");
    s->add_option("--const-c1", c1, "Constant c1");
    s->add_option("--const-c2", c2, "Constant c2");
    s->add_option("--const-c3", c3, "Constant c3");
    s->callback([&] { action = [&](const Output& o) { emit_bound(o, chlr_length_bound(volume, dim, c1, c2, c3)); }; });
  }
  {
    auto* s = leaf(bounds, "mcreid", "Area bound e^{cV} for totally geodesic surfaces");
    s->add_option("--volume", volume, "Volume V")->required();
    s->add_option("--const-c", const_c, "Constant c");
    s->callback([&] { action = [&](const Output& o) { emit_bound(o, mcreid_area_bound(volume, const_c)); }; });
  }
  {
    auto* s = leaf(bounds, "brauer", "Recognition bound for algebras over quadratic subfields");
    s->add_option("--d-base", d_base, "Discriminant of the base field");
    s->add_option("--const-C", const_C, "Constant C");
    s->add_option("--disc1", disc1, "|disc B1|")->required();
    s->add_option("--disc2", disc2, "|disc B2|")->required();
    s->callback([&] {
      action = [&](const Output& o) { emit_bound(o, brauer_rigidity_bound(d_base, const_C, disc1, disc2)); };
    });
  }
  {
    auto* s = leaf(bounds, "gw", "Conductor bound 32^{n^2} B (prod_{p<=x} p)^{2n}");
    s->add_option("--n-k", n_k, "Degree of k");
    s->add_option("--basis-bound", basis_bound, "Basis bound B(Omega)");
    s->add_option("--x", x_real, "Prime bound x")->required();
    s->callback([&] {
      action = [&](const Output& o) { emit_bound(o, grunwald_wang_conductor_bound(n_k, basis_bound, x_real)); };
    });
  }
  {
    auto* s = leaf(bounds, "theta", "Upper bound 21x/log^3 x + x for the Chebyshev theta function");
    s->add_option("--x", x_real, "x")->required();
    s->callback([&] { action = [&](const Output& o) { emit_bound(o, theta_bound(x_real)); }; });
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kValidation;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kValidation;
  }

  try {
    if (opt.precision != 64)
      throw ValidationError("precision " + std::to_string(opt.precision) + " is not supported; only 64 bits is available");
    if (!action) throw ValidationError("no command given");
    std::string fmt = opt.format;
    if (fmt == "auto") fmt = rig->parsed() ? "json" : "csv";
    std::ostringstream buffer;
    action(Output{fmt, &buffer});
    if (opt.out_path.empty()) {
      out << buffer.str();
    } else {
      std::ofstream f(opt.out_path, std::ios::binary);
      if (!f) throw ResourceError("cannot open output file " + opt.out_path);
      f << buffer.str();
    }
    return kOk;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kValidation;
  } catch (const InvariantViolation& e) {
    err << "invariant violation: " << e.what() << "\n";
    return kInvariant;
  } catch (const NotFoundWithinBound& e) {
    err << "not found within bound: " << e.what() << "\n";
    return kNotFound;
  } catch (const ResourceError& e) {
    err << "resource error: " << e.what() << "\n";
    return kResource;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "resource error: " << e.what() << "\n";
    return kResource;
  }
}

inline int run(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  return run(std::vector<std::string>(argv + 1, argv + argc), out, err);
}

}  // namespace hasse::cli
