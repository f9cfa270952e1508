#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "degpart/graph.hpp"

namespace degpart {

/// G(n, p): each unordered pair independently with probability p.
inline Graph gen_gnp(int n, double p, std::uint64_t seed) {
  if (n < 0) throw std::invalid_argument("n must be non-negative");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0,1]");
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  std::vector<std::pair<Vertex, Vertex>> e;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (coin(rng)) e.emplace_back(u, v);
  return Graph(n, e);
}

inline std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    if (r > (std::uint64_t{1} << 40)) throw std::overflow_error("binomial coefficient too large");
  }
  return r;
}

inline constexpr std::uint64_t kMaxKuhnOsthusSets = 5'000'000;

/// Bipartite graph on X = {0..n-1} and one vertex per l-subset F of X (in
/// lexicographic order, ids n, n+1, ...); i ~ v_F iff i in F.
inline Graph gen_kuhn_osthus(int n, int l) {
  if (n < 1 || l < 1 || l > n) throw std::invalid_argument("need 1 <= l <= n");
  std::uint64_t sets = binomial(n, l);
  if (sets > kMaxKuhnOsthusSets) throw std::invalid_argument("C(n,l) = " + std::to_string(sets) + " exceeds the size budget");
  std::vector<std::pair<Vertex, Vertex>> e;
  std::vector<int> f(static_cast<std::size_t>(l));
  for (int i = 0; i < l; ++i) f[static_cast<std::size_t>(i)] = i;
  Vertex y = n;
  while (true) {
    for (int x : f) e.emplace_back(x, y);
    ++y;
    int i = l - 1;
    while (i >= 0 && f[static_cast<std::size_t>(i)] == n - l + i) --i;
    if (i < 0) break;
    ++f[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < l; ++j) f[static_cast<std::size_t>(j)] = f[static_cast<std::size_t>(j - 1)] + 1;
  }
  return Graph(y, e);
}

/// K_{d,n}: parts {0..d-1} and {d..d+n-1}.
inline Graph gen_complete_bipartite(int d, int n) {
  if (d < 1 || n < 1) throw std::invalid_argument("both parts need at least one vertex");
  std::vector<std::pair<Vertex, Vertex>> e;
  for (Vertex u = 0; u < d; ++u)
    for (Vertex v = 0; v < n; ++v) e.emplace_back(u, d + v);
  return Graph(d + n, e);
}

inline Graph gen_complete(int n) { return gen_gnp(n, 1.0, 0); }

inline Graph gen_cycle(int n) {
  if (n < 3) throw std::invalid_argument("cycle needs n >= 3");
  std::vector<std::pair<Vertex, Vertex>> e;
  for (Vertex v = 0; v < n; ++v) e.emplace_back(v, (v + 1) % n);
  return Graph(n, e);
}

inline Graph gen_petersen() {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (Vertex i = 0; i < 5; ++i) {
    e.emplace_back(i, (i + 1) % 5);
    e.emplace_back(i, i + 5);
    e.emplace_back(5 + i, 5 + (i + 2) % 5);
  }
  return Graph(10, e);
}

/// Parses "gnp:n=100,p=0.5", "ko:n=4,l=2", "kbip:d=3,n=5", "complete:n=5", "cycle:n=5", "petersen".
/// `seed` is used by random families.
inline Graph generate(const std::string& spec, std::uint64_t seed) {
  auto colon = spec.find(':');
  std::string family = spec.substr(0, colon);
  std::vector<std::pair<std::string, std::string>> kv;
  if (colon != std::string::npos) {
    std::string rest = spec.substr(colon + 1);
    std::size_t pos = 0;
    while (pos <= rest.size()) {
      auto comma = rest.find(',', pos);
      std::string item = rest.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      auto eq = item.find('=');
      if (eq == std::string::npos) throw std::invalid_argument("bad generator argument '" + item + "'");
      kv.emplace_back(item.substr(0, eq), item.substr(eq + 1));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
  }
  auto get = [&](const std::string& key) -> std::string {
    for (auto& [k, v] : kv)
      if (k == key) return v;
    throw std::invalid_argument("generator '" + family + "' needs '" + key + "'");
  };
  auto geti = [&](const std::string& key) { return std::stoi(get(key)); };
  if (family == "gnp") return gen_gnp(geti("n"), std::stod(get("p")), seed);
  if (family == "ko") return gen_kuhn_osthus(geti("n"), geti("l"));
  if (family == "kbip") return gen_complete_bipartite(geti("d"), geti("n"));
  if (family == "complete") return gen_complete(geti("n"));
  if (family == "cycle") return gen_cycle(geti("n"));
  if (family == "petersen") return gen_petersen();
  throw std::invalid_argument("unknown generator family '" + family + "'");
}

}  // namespace degpart
