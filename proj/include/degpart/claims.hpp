#pragma once

#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "degpart/certificate.hpp"
#include "degpart/graph.hpp"

namespace degpart {

/// Degree claim whose per-degree threshold is `floor_of(d)` for each degree d present in G.
template <typename FloorFn>
Claim degree_claim(ClaimKind kind, std::string name, std::vector<int> scope, const Graph& g, FloorFn floor_of,
                   int target_part = -1) {
  Claim c;
  c.kind = kind;
  c.name = std::move(name);
  c.scope = std::move(scope);
  c.target_part = target_part;
  std::set<int> degrees;
  for (Vertex v = 0; v < g.n(); ++v) degrees.insert(g.degree(v));
  for (int d : degrees) {
    long long t = floor_of(d);
    if (t > 0) c.by_degree[d] = t;
  }
  return c;
}

inline Claim constant_claim(ClaimKind kind, std::string name, std::vector<int> scope, long long k, int target_part = -1) {
  Claim c;
  c.kind = kind;
  c.name = std::move(name);
  c.scope = std::move(scope);
  c.target_part = target_part;
  c.constant = k;
  return c;
}

/// |V_part| in [ceil(lo_frac n), floor(hi_frac n)].
inline Claim size_window_claim(std::string name, int part, double lo_frac, double hi_frac, std::size_t n) {
  Claim c;
  c.kind = ClaimKind::part_size;
  c.name = std::move(name);
  c.target_part = part;
  c.lo = static_cast<long long>(std::ceil(lo_frac * static_cast<double>(n) - 1e-9));
  c.hi = static_cast<long long>(std::floor(hi_frac * static_cast<double>(n) + 1e-9));
  return c;
}

inline Claim balanced_claim() {
  Claim c;
  c.kind = ClaimKind::balanced;
  c.name = "bisection balance";
  return c;
}

}  // namespace degpart
