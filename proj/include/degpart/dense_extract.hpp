#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "degpart/graph.hpp"

namespace degpart {

/// One class A_i with integer target a_i and slack eta_i.
struct VertexClass {
  std::vector<Vertex> members;
  long long target = 1;
  double eta = 1.0;
};

/// Disjoint classes inside a host vertex set. Degrees are counted in the
/// subgraph of `graph` induced by the host.
struct ClassFamily {
  std::vector<VertexClass> classes;
  std::vector<char> host;  ///< membership mask over V(graph)

  void validate(const Graph& g) const {
    if (host.size() != static_cast<std::size_t>(g.n())) throw std::invalid_argument("host mask size mismatch");
    std::vector<char> seen(host.size(), 0);
    for (const auto& cls : classes) {
      if (cls.target < 1) throw std::invalid_argument("class target must be a positive integer");
      if (!(cls.eta > 0.0)) throw std::invalid_argument("class eta must be positive");
      for (Vertex v : cls.members) {
        if (v < 0 || v >= g.n()) throw std::invalid_argument("class member out of range");
        if (!host[static_cast<std::size_t>(v)]) throw std::invalid_argument("class member outside host");
        if (seen[static_cast<std::size_t>(v)]++) throw std::invalid_argument("classes are not disjoint");
      }
    }
  }

  double min_eta() const {
    double eta = std::numeric_limits<double>::infinity();
    for (const auto& cls : classes) eta = std::min(eta, cls.eta);
    return eta;
  }

  std::size_t host_size() const {
    std::size_t s = 0;
    for (char h : host) s += h ? 1 : 0;
    return s;
  }
};

inline int host_degree(const Graph& g, const std::vector<char>& host, Vertex v) { return degree_in_mask(g, v, host); }

/// Floor of 2(1+eta_i) a_i, the A_i^+ membership threshold.
inline long long plus_threshold(const VertexClass& cls) {
  return static_cast<long long>(std::floor(2.0 * (1.0 + cls.eta) * static_cast<double>(cls.target)));
}

/// A_i^+ = { v in A_i : d_H(v) >= floor(2(1+eta_i) a_i) } for every class.
inline std::vector<std::vector<Vertex>> compute_A_plus(const Graph& g, const ClassFamily& f) {
  f.validate(g);
  std::vector<std::vector<Vertex>> out(f.classes.size());
  for (std::size_t i = 0; i < f.classes.size(); ++i) {
    const auto thr = plus_threshold(f.classes[i]);
    for (Vertex v : f.classes[i].members)
      if (host_degree(g, f.host, v) >= thr) out[i].push_back(v);
  }
  return out;
}

struct KeyCondition {
  bool satisfied = false;
  double lhs = 0.0;           ///< (1 + 1/eta) sum a_i |A_i \ A_i^+|
  long long deficit_sum = 0;  ///< sum a_i |A_i \ A_i^+|
  std::size_t rhs = 0;        ///< |V(H)|
};

inline KeyCondition check_key_condition(const Graph& g, const ClassFamily& f) {
  auto plus = compute_A_plus(g, f);
  KeyCondition kc;
  for (std::size_t i = 0; i < f.classes.size(); ++i) {
    const auto& cls = f.classes[i];
    kc.deficit_sum += cls.target * static_cast<long long>(cls.members.size() - plus[i].size());
  }
  kc.lhs = kc.deficit_sum == 0 ? 0.0 : (1.0 + 1.0 / f.min_eta()) * static_cast<double>(kc.deficit_sum);
  kc.rhs = f.host_size();
  kc.satisfied = kc.lhs < static_cast<double>(kc.rhs);
  return kc;
}

struct Deletion {
  Vertex vertex = -1;
  int class_id = -1;
  int degree_at_deletion = 0;
};

struct ExtractBudget {
  std::size_t deleted = 0;     ///< |V(H) \ V(H')|
  long long weighted = 0;      ///< sum a_i |A_i \ V(H')|
  double bound = 0.0;          ///< (1 + 1/eta) sum a_i |A_i \ A_i^+|

  /// deleted <= weighted <= bound. The second comparison carries a 1e-9
  /// relative guard for the floating (1 + 1/eta) factor.
  bool chain_holds() const {
    return static_cast<long long>(deleted) <= weighted &&
           static_cast<double>(weighted) <= bound + 1e-9 * std::max(1.0, bound);
  }
};

struct ExtractResult {
  std::vector<char> surviving;  ///< mask over V(graph); subset of host
  std::vector<Deletion> deleted;
  ExtractBudget budget;
  KeyCondition key;
  bool guaranteed = false;  ///< the key condition held, so survival is non-empty

  std::size_t surviving_count() const {
    std::size_t s = 0;
    for (char c : surviving) s += c ? 1 : 0;
    return s;
  }
};

struct ExtractOptions {
  /// When set, each step deletes a uniformly random deficient vertex instead of
  /// the queue order. Survivors do not depend on the order.
  std::optional<std::uint64_t> shuffle_seed;
};

/// Greedy deletion: while some classed vertex has fewer than a_i neighbors in
/// the surviving set, delete it.
inline ExtractResult extract_dense(const Graph& g, const ClassFamily& f, const ExtractOptions& opt = {}) {
  f.validate(g);
  const auto n = static_cast<std::size_t>(g.n());
  ExtractResult res;
  res.key = check_key_condition(g, f);
  res.guaranteed = res.key.satisfied;
  res.surviving = f.host;

  std::vector<int> class_of(n, -1);
  std::vector<long long> target(n, 0);
  for (std::size_t i = 0; i < f.classes.size(); ++i)
    for (Vertex v : f.classes[i].members) {
      class_of[static_cast<std::size_t>(v)] = static_cast<int>(i);
      target[static_cast<std::size_t>(v)] = f.classes[i].target;
    }
  std::vector<int> deg(n, 0);
  for (Vertex v = 0; v < g.n(); ++v)
    if (f.host[static_cast<std::size_t>(v)]) deg[static_cast<std::size_t>(v)] = host_degree(g, f.host, v);

  auto deficient = [&](Vertex v) {
    auto s = static_cast<std::size_t>(v);
    return res.surviving[s] && class_of[s] >= 0 && deg[s] < target[s];
  };

  std::vector<Vertex> pending;
  std::vector<char> queued(n, 0);
  for (Vertex v = 0; v < g.n(); ++v)
    if (deficient(v)) {
      pending.push_back(v);
      queued[static_cast<std::size_t>(v)] = 1;
    }

  std::optional<std::mt19937_64> rng;
  if (opt.shuffle_seed) rng.emplace(*opt.shuffle_seed);
  std::size_t head = 0;
  while (true) {
    Vertex v = -1;
    if (rng) {
      if (pending.empty()) break;
      std::uniform_int_distribution<std::size_t> pick(0, pending.size() - 1);
      std::size_t k = pick(*rng);
      v = pending[k];
      pending[k] = pending.back();
      pending.pop_back();
    } else {
      if (head == pending.size()) break;
      v = pending[head++];
    }
    queued[static_cast<std::size_t>(v)] = 0;
    if (!deficient(v)) continue;
    auto s = static_cast<std::size_t>(v);
    res.deleted.push_back({v, class_of[s], deg[s]});
    res.surviving[s] = 0;
    for (Vertex u : g.neighbors(v)) {
      auto t = static_cast<std::size_t>(u);
      if (!res.surviving[t]) continue;
      --deg[t];
      if (!queued[t] && deficient(u)) {
        queued[t] = 1;
        pending.push_back(u);
      }
    }
  }

  res.budget.deleted = res.deleted.size();
  for (const auto& cls : f.classes) {
    long long gone = 0;
    for (Vertex v : cls.members) gone += res.surviving[static_cast<std::size_t>(v)] ? 0 : 1;
    res.budget.weighted += cls.target * gone;
  }
  res.budget.bound = res.key.lhs;
  if (res.guaranteed && res.surviving_count() == 0)
    throw std::logic_error("dense extraction emptied the host although the key condition held");
  return res;
}

}  // namespace degpart
