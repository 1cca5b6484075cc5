#pragma once

#include <openssl/evp.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "hasse/census.hpp"

namespace hasse {

inline constexpr const char* kCacheVersion = "hasse-census-cache-1";

inline std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr))
    throw ResourceError("sha256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

inline nlohmann::ordered_json spec_json(const CensusSpec& spec) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (auto& [k, v] : spec) j[k] = v;
  return j;
}

// One CSV file per census spec: a JSON header line, then `x,count` rows.
class CensusCache {
 public:
  explicit CensusCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  std::filesystem::path path_for(const CensusSpec& spec) const {
    return dir_ / (sha256_hex(std::string(kCacheVersion) + "\n" + spec_json(spec).dump()) + ".csv");
  }

  std::map<u64, BigInt> load(const CensusSpec& spec) const {
    std::map<u64, BigInt> rows;
    auto path = path_for(spec);
    std::ifstream in(path);
    if (!in) return rows;
    std::string header;
    std::getline(in, header);
    std::stringstream rest;
    rest << in.rdbuf();
    const std::string body = rest.str();
    nlohmann::ordered_json h;
    try {
      h = nlohmann::ordered_json::parse(header);
    } catch (const nlohmann::json::exception&) {
      throw ValidationError("cache corruption: unreadable header in " + path.string());
    }
    if (!h.is_object() || h.value("version", "") != kCacheVersion) return rows;
    if (h.value("sha256", "") != sha256_hex(body))
      throw ValidationError("cache corruption: content hash mismatch in " + path.string());
    if (h["spec"] != spec_json(spec)) throw ValidationError("cache corruption: spec mismatch in " + path.string());
    std::istringstream lines(body);
    std::string line;
    std::getline(lines, line);
    while (std::getline(lines, line)) {
      auto comma = line.find(',');
      if (comma == std::string::npos) throw ValidationError("cache corruption: bad row in " + path.string());
      rows[std::stoull(line.substr(0, comma))] = BigInt(line.substr(comma + 1));
    }
    return rows;
  }

  void store(const CensusSpec& spec, const std::map<u64, BigInt>& rows) const {
    std::filesystem::create_directories(dir_);
    std::string body = "x,count\n";
    for (auto& [x, c] : rows) body += std::to_string(x) + "," + c.str() + "\n";
    nlohmann::ordered_json h;
    h["version"] = kCacheVersion;
    h["spec"] = spec_json(spec);
    h["sha256"] = sha256_hex(body);
    auto path = path_for(spec);
    auto tmp = path;
    tmp += ".tmp";
    {
      std::ofstream out(tmp, std::ios::binary);
      if (!out) throw ResourceError("cannot write cache file " + tmp.string());
      out << h.dump() << "\n" << body;
    }
    std::filesystem::rename(tmp, path);
  }

 private:
  std::filesystem::path dir_;
};

// Table for `thresholds`, served from the cache when every threshold is present.
inline CountTable cached_census(const CensusCache* cache, const CensusSpec& spec, const std::vector<u64>& thresholds,
                                const std::function<CountTable(const std::vector<u64>&)>& compute) {
  validate_thresholds(thresholds);
  std::map<u64, BigInt> rows;
  if (cache) {
    rows = cache->load(spec);
    bool complete = true;
    for (u64 x : thresholds) complete = complete && rows.count(x);
    if (complete) {
      CountTable t{thresholds, {}, spec};
      for (u64 x : thresholds) t.counts.push_back(rows.at(x));
      return t;
    }
  }
  CountTable t = compute(thresholds);
  t.spec = spec;
  if (cache) {
    for (std::size_t i = 0; i < thresholds.size(); ++i) rows[thresholds[i]] = t.counts[i];
    cache->store(spec, rows);
  }
  return t;
}

}  // namespace hasse
