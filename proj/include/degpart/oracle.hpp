#pragma once

#include <bit>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "degpart/dense_extract.hpp"
#include "degpart/generators.hpp"
#include "degpart/graph.hpp"

namespace degpart {

enum class Objective { min_own_degree, min_cross_degree, min_own_ratio, min_cross_ratio };

inline const char* to_string(Objective o) {
  switch (o) {
    case Objective::min_own_degree: return "min-own-degree";
    case Objective::min_cross_degree: return "min-cross-degree";
    case Objective::min_own_ratio: return "min-own-ratio";
    case Objective::min_cross_ratio: return "min-cross-ratio";
  }
  return "?";
}

inline Objective objective_from_string(const std::string& s) {
  for (auto o : {Objective::min_own_degree, Objective::min_cross_degree, Objective::min_own_ratio, Objective::min_cross_ratio})
    if (s == to_string(o)) return o;
  throw std::invalid_argument("unknown objective '" + s + "'");
}

/// Exact non-negative fraction num/den. Degree objectives use den = 1.
struct Fraction {
  long long num = 0, den = 1;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator<(const Fraction& a, const Fraction& b) { return a.num * b.den < b.num * a.den; }
  friend bool operator==(const Fraction& a, const Fraction& b) { return a.num * b.den == b.num * a.den; }
};

inline constexpr int kOracleMaxVertices = 24;

namespace detail {

inline std::vector<std::uint32_t> adjacency_masks(const Graph& g) {
  std::vector<std::uint32_t> adj(static_cast<std::size_t>(g.n()), 0);
  for (Vertex v = 0; v < g.n(); ++v)
    for (Vertex u : g.neighbors(v)) adj[static_cast<std::size_t>(v)] |= std::uint32_t{1} << u;
  return adj;
}

/// Calls f(mask) for every k-subset of {0..n-1} (Gosper's hack).
template <typename F>
void for_each_subset(int n, int k, F&& f) {
  if (k < 0 || k > n) return;
  if (k == 0) {
    f(std::uint32_t{0});
    return;
  }
  const std::uint64_t limit = std::uint64_t{1} << n;
  std::uint64_t s = (std::uint64_t{1} << k) - 1;
  while (s < limit) {
    f(static_cast<std::uint32_t>(s));
    std::uint64_t c = s & (~s + 1), r = s + c;
    s = (((r ^ s) >> 2) / c) | r;
  }
}

/// Objective value of the bipartition (side, complement); isolated vertices are skipped by ratios.
inline Fraction bisection_value(const std::vector<std::uint32_t>& adj, int n, std::uint32_t side, Objective obj) {
  const std::uint32_t all = n == 32 ? ~0u : ((std::uint32_t{1} << n) - 1);
  Fraction best{std::numeric_limits<int>::max(), 1};
  bool ratio = obj == Objective::min_own_ratio || obj == Objective::min_cross_ratio;
  if (ratio) best = {1, 1};
  for (int v = 0; v < n; ++v) {
    std::uint32_t own_side = (side >> v) & 1u ? side : (all & ~side);
    auto d = std::popcount(adj[static_cast<std::size_t>(v)]);
    auto own = std::popcount(adj[static_cast<std::size_t>(v)] & own_side);
    long long stat = (obj == Objective::min_own_degree || obj == Objective::min_own_ratio) ? own : d - own;
    Fraction f = ratio ? Fraction{stat, d} : Fraction{stat, 1};
    if (ratio && d == 0) continue;
    if (f < best) best = f;
  }
  return best;
}

}  // namespace detail

struct OracleResult {
  Fraction value;
  LabeledPartition witness;
  std::uint64_t bisections = 0;
};

/// Exact maximin of the objective over all bisections (n <= 24).
inline OracleResult best_bisection(const Graph& g, Objective obj) {
  const int n = g.n();
  if (n > kOracleMaxVertices)
    throw std::invalid_argument("oracle refuses n=" + std::to_string(n) + " (bound " + std::to_string(kOracleMaxVertices) + ")");
  auto adj = detail::adjacency_masks(g);
  OracleResult out;
  bool have = false;
  std::uint32_t best_mask = 0;
  detail::for_each_subset(n, n / 2, [&](std::uint32_t s) {
    ++out.bisections;
    auto v = detail::bisection_value(adj, n, s, obj);
    if (!have || out.value < v) {
      out.value = v;
      best_mask = s;
      have = true;
    }
  });
  std::vector<int> label(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) label[static_cast<std::size_t>(v)] = (best_mask >> v) & 1u ? 0 : 1;
  out.witness = LabeledPartition(2, std::move(label));
  return out;
}

/// Maximin value of one given bisection under the oracle's conventions.
inline Fraction objective_value(const Graph& g, const LabeledPartition& p, Objective obj) {
  bool ratio = obj == Objective::min_own_ratio || obj == Objective::min_cross_ratio;
  Fraction best = ratio ? Fraction{1, 1} : Fraction{std::numeric_limits<int>::max(), 1};
  for (Vertex v = 0; v < g.n(); ++v) {
    int d = g.degree(v), own = own_degree(g, p, v);
    long long stat = (obj == Objective::min_own_degree || obj == Objective::min_own_ratio) ? own : d - own;
    if (ratio && d == 0) continue;
    Fraction f = ratio ? Fraction{stat, d} : Fraction{stat, 1};
    if (f < best) best = f;
  }
  if (!ratio && g.n() == 0) best = {0, 1};
  return best;
}

struct KoResult {
  bool exists = false;
  std::optional<LabeledPartition> witness;  ///< part 0 is A
  std::uint64_t checked = 0;                ///< bisections refuted before the answer
  int vertices = 0;
};

/// Whether some bisection (A, B) of `g` has every vertex with >= k own-part
/// neighbors and every A-vertex with >= k neighbors in B. Both |A| = floor and
/// ceil of N/2 are tried.
inline KoResult ko_requirement_search(const Graph& g, int k) {
  const int n = g.n();
  if (n > kOracleMaxVertices)
    throw std::invalid_argument("oracle refuses " + std::to_string(n) + " vertices (bound " + std::to_string(kOracleMaxVertices) + ")");
  auto adj = detail::adjacency_masks(g);
  const std::uint32_t all = (std::uint32_t{1} << n) - 1;
  KoResult out;
  out.vertices = n;
  std::optional<std::uint32_t> found;
  auto test = [&](std::uint32_t a) {
    if (found) return;
    std::uint32_t b = all & ~a;
    for (int v = 0; v < n; ++v) {
      std::uint32_t nv = adj[static_cast<std::size_t>(v)];
      bool in_a = (a >> v) & 1u;
      if (std::popcount(nv & (in_a ? a : b)) < k) { ++out.checked; return; }
      if (in_a && std::popcount(nv & b) < k) { ++out.checked; return; }
    }
    found = a;
  };
  detail::for_each_subset(n, n / 2, test);
  if (n % 2) detail::for_each_subset(n, n / 2 + 1, test);
  if (found) {
    out.exists = true;
    std::vector<int> label(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) label[static_cast<std::size_t>(v)] = (*found >> v) & 1u ? 0 : 1;
    out.witness = LabeledPartition(2, std::move(label));
  }
  return out;
}

/// The requirement above on the Kuhn-Osthus graph for (n, l).
inline KoResult ko_bisection_exists(int n, int l, int k) {
  if (n < 1 || l < 1 || l > n) throw std::invalid_argument("need 1 <= l <= n");
  std::uint64_t total = static_cast<std::uint64_t>(n) + binomial(n, l);
  if (total > kOracleMaxVertices)
    throw std::invalid_argument("n + C(n,l) = " + std::to_string(total) + " exceeds " + std::to_string(kOracleMaxVertices));
  return ko_requirement_search(gen_kuhn_osthus(n, l), k);
}

/// Maximal S within the host with d_S(v) >= a_i for every v in S ∩ A_i, by
/// scanning all host subsets (host size <= 15). Feasible sets are closed under
/// union, so the maximal one is the union of all feasible subsets.
inline std::vector<char> maximal_dense_subset(const Graph& g, const ClassFamily& f) {
  f.validate(g);
  std::vector<Vertex> host;
  for (Vertex v = 0; v < g.n(); ++v)
    if (f.host[static_cast<std::size_t>(v)]) host.push_back(v);
  if (host.size() > 15) throw std::invalid_argument("fixed-point check refuses host size " + std::to_string(host.size()) + " (bound 15)");
  const int h = static_cast<int>(host.size());
  std::vector<long long> need(static_cast<std::size_t>(h), 0);
  std::vector<std::uint32_t> adj(static_cast<std::size_t>(h), 0);
  std::vector<int> local(static_cast<std::size_t>(g.n()), -1);
  for (int k = 0; k < h; ++k) local[static_cast<std::size_t>(host[static_cast<std::size_t>(k)])] = k;
  for (const auto& cls : f.classes)
    for (Vertex v : cls.members) need[static_cast<std::size_t>(local[static_cast<std::size_t>(v)])] = cls.target;
  for (int k = 0; k < h; ++k)
    for (Vertex u : g.neighbors(host[static_cast<std::size_t>(k)]))
      if (local[static_cast<std::size_t>(u)] >= 0) adj[static_cast<std::size_t>(k)] |= std::uint32_t{1} << local[static_cast<std::size_t>(u)];
  std::uint32_t uni = 0;
  for (std::uint32_t s = 0; s < (std::uint32_t{1} << h); ++s) {
    bool ok = true;
    for (int k = 0; k < h && ok; ++k)
      if ((s >> k) & 1u) ok = std::popcount(adj[static_cast<std::size_t>(k)] & s) >= need[static_cast<std::size_t>(k)];
    if (ok) uni |= s;
  }
  std::vector<char> out(static_cast<std::size_t>(g.n()), 0);
  for (int k = 0; k < h; ++k)
    if ((uni >> k) & 1u) out[static_cast<std::size_t>(host[static_cast<std::size_t>(k)])] = 1;
  return out;
}

/// True when greedy extraction survives exactly the maximal dense subset.
inline bool dense_fixed_point_check(const Graph& g, const ClassFamily& f) {
  return extract_dense(g, f).surviving == maximal_dense_subset(g, f);
}

}  // namespace degpart
