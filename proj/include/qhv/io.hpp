#pragma once

// JSON reports and the point-set cache file. Requires nlohmann/json.
//
// Cache layout: one line holding the JSON header, then the payload. With
// payload "json" the payload is a JSON array of ascending point indices on
// the next line; with "raw64" it is the bitset as little-endian 64-bit words.

#include <bit>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qhv/classify.hpp"
#include "qhv/error.hpp"
#include "qhv/field.hpp"
#include "qhv/graph.hpp"
#include "qhv/lines.hpp"
#include "qhv/pointset.hpp"
#include "qhv/projgeom.hpp"
#include "qhv/variety.hpp"

namespace qhv::io {

using json = nlohmann::ordered_json;

inline constexpr int format_version = 1;

inline json to_json(const FieldSpec& s) { return {{"p", s.p}, {"n", s.n}, {"modulus", s.modulus}}; }

inline FieldSpec field_spec_from_json(const json& j) {
  try {
    return FieldSpec{j.at("p").get<int>(), j.at("n").get<int>(), j.at("modulus").get<std::vector<int>>()};
  } catch (const json::exception& e) {
    throw IoError(std::string("bad field spec: ") + e.what());
  }
}

inline json to_json(const SpectrumReport& r) {
  json h = json::object();
  for (const auto& [size, count] : r.histogram) h[std::to_string(size)] = count;
  return {{"histogram", h}, {"two_character", r.two_character}, {"expected", {r.secant, r.tangent}}};
}

inline json to_json(const LineCensus& c) {
  json prof = json::object();
  for (const auto& [label, hist] : c.profile) {
    json bars = json::array();
    for (const auto& [k, m] : hist) bars.push_back({{"lines_through", k}, {"points", m}});
    prof[label] = bars;
  }
  return {{"lines", c.line_count}, {"profile", prof}, {"double_count_ok", c.double_count_ok}};
}

inline json to_json(const CollinearityGraph& g, const DiameterReport& d) {
  json j = {{"vertices", g.vertex_count()}, {"edges", g.edge_count()}, {"components", d.components}};
  j["diameter"] = d.diameter ? json(*d.diameter) : json("infinity");
  j["diameter_sources"] = d.sources;
  j["exhaustive"] = d.exhaustive;
  return j;
}

inline json to_json(const GaloisField& f, const Collineation& k) {
  json m = json::array();
  for (const auto& row : k.matrix) {
    json r = json::array();
    for (Fe e : row) r.push_back(f.format(e));
    m.push_back(r);
  }
  return {{"sigma_exp", k.sigma_exp}, {"matrix", m}};
}

inline Collineation collineation_from_json(const GaloisField& f, const json& j) {
  Collineation k;
  try {
    k.sigma_exp = j.at("sigma_exp").get<int>();
    const auto& m = j.at("matrix");
    if (m.size() != 4) throw IoError("matrix must be 4x4");
    for (int r = 0; r < 4; ++r) {
      if (m[r].size() != 4) throw IoError("matrix must be 4x4");
      for (int c = 0; c < 4; ++c) k.matrix[r][c] = f.parse(m[r][c].get<std::string>());
    }
  } catch (const json::exception& e) {
    throw IoError(std::string("bad collineation: ") + e.what());
  }
  if (k.sigma_exp < 0 || k.sigma_exp >= f.degree()) throw IoError("sigma_exp out of range");
  return k;
}

inline json params_json(const BMParams& prm) {
  return {{"alpha", prm.f().format(prm.alpha)}, {"beta", prm.f().format(prm.beta)}};
}

inline json to_json(const GaloisField& f, const ClassInfo& c) {
  return {{"delta_canonical", f.format(c.delta_canonical)},
          {"representative", {{"alpha", f.format(c.alpha)}, {"beta", f.format(c.beta)}}},
          {"size", c.size}};
}

struct CacheHeader {
  FieldSpec spec;
  std::optional<std::string> alpha, beta;  // canonical element text
  SetKind set = SetKind::other;
  std::uint64_t count = 0;
  std::string payload = "json";
};

inline json to_json(const CacheHeader& h) {
  json j = {{"format_version", format_version}, {"p", h.spec.p}, {"n", h.spec.n}, {"modulus", h.spec.modulus}};
  j["alpha"] = h.alpha ? json(*h.alpha) : json(nullptr);
  j["beta"] = h.beta ? json(*h.beta) : json(nullptr);
  j["set"] = std::string(to_string(h.set));
  j["count"] = h.count;
  j["payload"] = h.payload;
  return j;
}

inline void write_cache(std::ostream& os, const CacheHeader& header, const PointSet& s) {
  CacheHeader h = header;
  h.count = s.size();
  os << to_json(h).dump() << '\n';
  if (h.payload == "json") {
    os << json(s.indices()).dump() << '\n';
  } else if (h.payload == "raw64") {
    for (std::uint64_t w : s.words()) {
      if constexpr (std::endian::native == std::endian::big) w = __builtin_bswap64(w);
      os.write(reinterpret_cast<const char*>(&w), sizeof w);
    }
  } else {
    throw UsageError("unknown payload kind: " + h.payload);
  }
  if (!os) throw IoError("write failed");
}

struct CacheContents {
  CacheHeader header;
  PointSet set;
};

inline CacheContents read_cache(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw IoError("empty cache file");
  json j;
  try {
    j = json::parse(line);
  } catch (const json::exception& e) {
    throw IoError(std::string("bad cache header: ") + e.what());
  }
  CacheContents out;
  auto& h = out.header;
  try {
    if (j.at("format_version").get<int>() != format_version) throw IoError("unsupported cache format version");
    h.spec = field_spec_from_json(j);
    if (!j.at("alpha").is_null()) h.alpha = j["alpha"].get<std::string>();
    if (!j.at("beta").is_null()) h.beta = j["beta"].get<std::string>();
    h.set = set_kind_from_string(j.at("set").get<std::string>());
    h.count = j.at("count").get<std::uint64_t>();
    h.payload = j.at("payload").get<std::string>();
  } catch (const json::exception& e) {
    throw IoError(std::string("bad cache header: ") + e.what());
  }
  if (h.spec.p < 3 || h.spec.n < 1 || h.spec.order() > GaloisField::max_order) throw IoError("bad field in cache header");
  const std::uint64_t s = h.spec.order();
  const std::uint64_t universe = ((s + 1) * s + 1) * s + 1;
  if (h.payload == "json") {
    std::vector<std::uint64_t> idx;
    try {
      std::string body((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
      idx = json::parse(body).get<std::vector<std::uint64_t>>();
    } catch (const json::exception& e) {
      throw IoError(std::string("bad cache payload: ") + e.what());
    }
    out.set = PointSet(static_cast<PointIndex>(universe), h.set);
    for (std::size_t k = 0; k < idx.size(); ++k) {
      if (idx[k] >= universe) throw IoError("point index out of range in cache");
      if (k > 0 && idx[k] <= idx[k - 1]) throw IoError("cache indices not strictly ascending");
      out.set.insert(static_cast<PointIndex>(idx[k]));
    }
  } else if (h.payload == "raw64") {
    std::vector<std::uint64_t> words((universe + 63) / 64);
    for (auto& w : words) {
      if (!is.read(reinterpret_cast<char*>(&w), sizeof w)) throw IoError("truncated bitset block");
      if constexpr (std::endian::native == std::endian::big) w = __builtin_bswap64(w);
    }
    out.set = PointSet::from_words(static_cast<PointIndex>(universe), h.set, std::move(words));
  } else {
    throw IoError("unknown payload kind: " + h.payload);
  }
  if (out.set.size() != h.count) throw IoError("cache count does not match payload");
  return out;
}

}  // namespace qhv::io
