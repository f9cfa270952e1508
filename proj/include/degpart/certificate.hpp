#pragma once

#include <algorithm>
#include <climits>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "degpart/graph.hpp"

namespace degpart {

inline constexpr const char* kLibraryVersion = "degpart-1.0";

enum class ClaimKind { own_degree, cross_degree, degree_into_part, part_size, balanced, cut_edges };

inline const char* to_string(ClaimKind k) {
  switch (k) {
    case ClaimKind::own_degree: return "own_degree";
    case ClaimKind::cross_degree: return "cross_degree";
    case ClaimKind::degree_into_part: return "degree_into_part";
    case ClaimKind::part_size: return "part_size";
    case ClaimKind::balanced: return "balanced";
    case ClaimKind::cut_edges: return "cut_edges";
  }
  return "?";
}

inline ClaimKind claim_kind_from_string(const std::string& s) {
  for (auto k : {ClaimKind::own_degree, ClaimKind::cross_degree, ClaimKind::degree_into_part, ClaimKind::part_size,
                 ClaimKind::balanced, ClaimKind::cut_edges})
    if (s == to_string(k)) return k;
  throw std::invalid_argument("unknown claim kind '" + s + "'");
}

/// One re-checkable statement about (G, P).
///
/// Degree claims quantify over vertices whose part is in `scope` and compare a
/// per-vertex statistic with a threshold: `constant` if set, otherwise
/// `by_degree[d(v)]` (absent degrees are unconstrained). With `min_count` set the
/// claim is "at least min_count scoped vertices meet the threshold" instead of all.
struct Claim {
  ClaimKind kind = ClaimKind::own_degree;
  std::string name;
  std::vector<int> scope;
  int target_part = -1;
  std::optional<long long> constant;
  std::map<int, long long> by_degree;
  std::optional<long long> min_count;
  long long lo = 0, hi = LLONG_MAX;  ///< part_size bounds
  Vertex witness = -1;               ///< extremal vertex as seen by the producer

  long long threshold_for(int degree) const {
    if (constant) return *constant;
    auto it = by_degree.find(degree);
    return it == by_degree.end() ? 0 : it->second;
  }
};

struct Certificate {
  std::string graph_hash;
  std::size_t n = 0;
  int r = 2;
  nlohmann::json environment = nlohmann::json::object();  ///< params, seed, constant used, version
  std::vector<Claim> claims;
};

enum class VerifyStatus { pass, fail, refused };

struct VerifyResult {
  VerifyStatus status = VerifyStatus::refused;
  int failing_claim = -1;
  Vertex witness = -1;
  std::string message;
  bool pass() const { return status == VerifyStatus::pass; }
};

namespace detail {

inline bool in_scope(const Claim& c, int part) {
  return std::find(c.scope.begin(), c.scope.end(), part) != c.scope.end();
}

struct ClaimCheck {
  bool holds = true;
  Vertex witness = -1;       ///< first violating vertex, or the minimum-slack vertex
  long long slack = LLONG_MAX;
};

inline ClaimCheck check_claim(const Graph& g, const LabeledPartition& p, const Claim& c, const std::vector<std::size_t>& sizes) {
  ClaimCheck out;
  switch (c.kind) {
    case ClaimKind::part_size: {
      if (c.target_part < 0 || c.target_part >= p.r) return {false, -1, -1};
      auto s = static_cast<long long>(sizes[static_cast<std::size_t>(c.target_part)]);
      out.slack = std::min(s - c.lo, c.hi - s);
      out.holds = s >= c.lo && s <= c.hi;
      return out;
    }
    case ClaimKind::balanced: {
      if (p.r != 2) return {false, -1, -1};
      auto a = static_cast<long long>(sizes[0]), b = static_cast<long long>(sizes[1]);
      out.slack = 1 - std::abs(a - b);
      out.holds = out.slack >= 0;
      return out;
    }
    case ClaimKind::cut_edges: {
      auto cut = static_cast<long long>(cut_edge_count(g, p));
      long long need = c.constant.value_or(0);
      out.slack = cut - need;
      out.holds = cut >= need;
      return out;
    }
    default: break;
  }
  if (c.kind == ClaimKind::degree_into_part && (c.target_part < 0 || c.target_part >= p.r)) return {false, -1, -1};
  long long meeting = 0;
  for (Vertex v = 0; v < g.n(); ++v) {
    if (!in_scope(c, p[v])) continue;
    int own = 0, into = 0;
    for (Vertex u : g.neighbors(v)) {
      own += p[u] == p[v] ? 1 : 0;
      into += p[u] == c.target_part ? 1 : 0;
    }
    long long stat = c.kind == ClaimKind::own_degree ? own : c.kind == ClaimKind::cross_degree ? g.degree(v) - own : into;
    long long slack = stat - c.threshold_for(g.degree(v));
    if (slack >= 0) ++meeting;
    if (c.min_count) continue;
    if (slack < out.slack) {
      out.slack = slack;
      out.witness = v;
    }
    if (slack < 0) {
      out.holds = false;
      return out;
    }
  }
  if (c.min_count) {
    out.slack = meeting - *c.min_count;
    out.holds = meeting >= *c.min_count;
  }
  return out;
}

}  // namespace detail

/// Recomputes every claim from (G, P) alone. Refuses when the certificate is
/// bound to a different graph or partition shape.
inline VerifyResult verify_certificate(const Graph& g, const LabeledPartition& p, const Certificate& cert) {
  VerifyResult res;
  if (cert.graph_hash != g.hash()) {
    res.message = "graph hash mismatch: certificate " + cert.graph_hash + ", graph " + g.hash();
    return res;
  }
  if (p.n() != static_cast<std::size_t>(g.n()) || cert.n != p.n() || cert.r != p.r) {
    res.message = "partition shape does not match certificate";
    return res;
  }
  auto sizes = p.sizes();
  for (std::size_t i = 0; i < cert.claims.size(); ++i) {
    auto chk = detail::check_claim(g, p, cert.claims[i], sizes);
    if (!chk.holds) {
      res.status = VerifyStatus::fail;
      res.failing_claim = static_cast<int>(i);
      res.witness = chk.witness;
      res.message = "claim " + std::to_string(i) + " (" + cert.claims[i].name + ") fails" +
                    (chk.witness >= 0 ? " at vertex " + std::to_string(chk.witness) : std::string());
      return res;
    }
  }
  res.status = VerifyStatus::pass;
  res.message = "all " + std::to_string(cert.claims.size()) + " claims hold";
  return res;
}

/// Fills in each degree claim's minimum-slack vertex.
inline void annotate_witnesses(const Graph& g, const LabeledPartition& p, Certificate& cert) {
  auto sizes = p.sizes();
  for (auto& c : cert.claims) c.witness = detail::check_claim(g, p, c, sizes).witness;
}

inline Certificate make_certificate(const Graph& g, int r, nlohmann::json environment) {
  Certificate cert;
  cert.graph_hash = g.hash();
  cert.n = static_cast<std::size_t>(g.n());
  cert.r = r;
  cert.environment = std::move(environment);
  cert.environment["version"] = kLibraryVersion;
  return cert;
}

// ---------------------------------------------------------------------------
// JSON.

inline nlohmann::json to_json(const Claim& c) {
  nlohmann::json j;
  j["kind"] = to_string(c.kind);
  j["name"] = c.name;
  j["scope"] = c.scope;
  if (c.target_part >= 0) j["target_part"] = c.target_part;
  if (c.constant) j["threshold"] = *c.constant;
  if (!c.by_degree.empty()) {
    nlohmann::json tbl = nlohmann::json::array();
    for (auto [d, t] : c.by_degree) tbl.push_back({d, t});
    j["threshold_by_degree"] = tbl;
  }
  if (c.min_count) j["min_count"] = *c.min_count;
  if (c.kind == ClaimKind::part_size) {
    j["lo"] = c.lo;
    j["hi"] = c.hi;
  }
  j["witness"] = c.witness;
  return j;
}

inline Claim claim_from_json(const nlohmann::json& j) {
  Claim c;
  c.kind = claim_kind_from_string(j.at("kind").get<std::string>());
  c.name = j.value("name", "");
  c.scope = j.value("scope", std::vector<int>{});
  c.target_part = j.value("target_part", -1);
  if (j.contains("threshold")) c.constant = j["threshold"].get<long long>();
  if (j.contains("threshold_by_degree"))
    for (const auto& e : j["threshold_by_degree"]) c.by_degree[e.at(0).get<int>()] = e.at(1).get<long long>();
  if (j.contains("min_count")) c.min_count = j["min_count"].get<long long>();
  c.lo = j.value("lo", 0LL);
  c.hi = j.value("hi", LLONG_MAX);
  c.witness = j.value("witness", -1);
  return c;
}

inline nlohmann::json to_json(const Certificate& cert) {
  nlohmann::json j;
  j["graph_hash"] = cert.graph_hash;
  j["n"] = cert.n;
  j["r"] = cert.r;
  j["environment"] = cert.environment;
  j["claims"] = nlohmann::json::array();
  for (const auto& c : cert.claims) j["claims"].push_back(to_json(c));
  return j;
}

inline Certificate certificate_from_json(const nlohmann::json& j) {
  Certificate cert;
  cert.graph_hash = j.at("graph_hash").get<std::string>();
  cert.n = j.at("n").get<std::size_t>();
  cert.r = j.at("r").get<int>();
  cert.environment = j.value("environment", nlohmann::json::object());
  for (const auto& c : j.at("claims")) cert.claims.push_back(claim_from_json(c));
  return cert;
}

}  // namespace degpart
