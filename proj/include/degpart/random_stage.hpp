#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "degpart/graph.hpp"
#include "degpart/thresholds.hpp"

namespace degpart {

/// splitmix64 step; derives independent per-attempt seeds from one user seed.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Per-vertex S-goodness against the two sides of a tripartition.
struct GoodnessMap {
  std::vector<char> good_a, good_b;
  long long weight = 0;  ///< sum over active v of d(v) * [v not (A-good and B-good)]

  bool good_both(Vertex v) const { return good_a[static_cast<std::size_t>(v)] && good_b[static_cast<std::size_t>(v)]; }
};

/// Goodness of every vertex with respect to parts `side_a` and `side_b`.
/// Inactive vertices count as good.
inline GoodnessMap compute_goodness(const Graph& g, const LabeledPartition& tri, const ThresholdTable& t,
                                    int side_a = kPartA, int side_b = kPartB) {
  const auto n = static_cast<std::size_t>(g.n());
  GoodnessMap gm;
  gm.good_a.assign(n, 1);
  gm.good_b.assign(n, 1);
  for (Vertex v = 0; v < g.n(); ++v) {
    int i = g.degree(v);
    if (!t.active(i)) continue;
    long long thr = t.good_floor(i);
    int da = 0, db = 0;
    for (Vertex u : g.neighbors(v)) {
      da += tri[u] == side_a ? 1 : 0;
      db += tri[u] == side_b ? 1 : 0;
    }
    auto s = static_cast<std::size_t>(v);
    gm.good_a[s] = da >= thr;
    gm.good_b[s] = db >= thr;
    if (!(gm.good_a[s] && gm.good_b[s])) gm.weight += i;
  }
  return gm;
}

/// Sum over active v in `part` of d(v) * [v not part-good]: the refinement precondition weight.
inline long long side_weight(const Graph& g, const LabeledPartition& tri, const ThresholdTable& t, int part) {
  long long w = 0;
  for (Vertex v = 0; v < g.n(); ++v) {
    if (tri[v] != part) continue;
    int i = g.degree(v);
    if (!t.active(i)) continue;
    if (degree_into_part(g, tri, v, part) < t.good_floor(i)) w += i;
  }
  return w;
}

struct PlacementProbabilities {
  double a = 0, b = 0, c = 0;
};

inline PlacementProbabilities placement_probabilities(const ParamSet& p) {
  PlacementProbabilities pr{(1.0 - p.c) / 2.0 - p.eps, (1.0 - p.c) / 2.0 - p.eps, p.c + 2.0 * p.eps};
  if (!(pr.a > 0.0) || !(pr.c >= 0.0 && pr.c < 1.0))
    throw std::invalid_argument("placement probabilities (" + std::to_string(pr.a) + ", " + std::to_string(pr.b) + ", " +
                                std::to_string(pr.c) + ") leave a part with no mass");
  return pr;
}

/// Independent placement into A, B, C with probabilities ((1-c)/2-eps, (1-c)/2-eps, c+2eps).
inline LabeledPartition random_tripartition(const Graph& g, const ParamSet& p, std::uint64_t seed) {
  auto pr = placement_probabilities(p);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<int> label(static_cast<std::size_t>(g.n()));
  for (auto& l : label) {
    double u = unit(rng);
    l = u < pr.a ? kPartA : (u < pr.a + pr.b ? kPartB : kPartC);
  }
  return LabeledPartition(3, std::move(label));
}

struct Relocation {
  LabeledPartition tri;
  std::vector<Vertex> moved;
};

/// Moves every C-vertex that is not both A-good and B-good (per `gm`, computed
/// against the input) into A or B, each to the currently smaller side (ties to A).
inline Relocation relocate_bad_from_C(const LabeledPartition& tri, const GoodnessMap& gm) {
  Relocation out{tri, {}};
  auto sizes = tri.sizes();
  for (std::size_t v = 0; v < tri.n(); ++v) {
    if (tri.label[v] != kPartC || gm.good_both(static_cast<Vertex>(v))) continue;
    int dest = sizes[kPartA] <= sizes[kPartB] ? kPartA : kPartB;
    out.tri.label[v] = dest;
    ++sizes[static_cast<std::size_t>(dest)];
    --sizes[kPartC];
    out.moved.push_back(static_cast<Vertex>(v));
  }
  return out;
}

struct StageWindows {
  double size_lo = 0.0;  ///< |A|,|B| >= size_lo * n
  double size_hi = 1.0;  ///< |A|,|B| <= size_hi * n
  double weight_budget = std::numeric_limits<double>::infinity();

  /// Size window and weight budget of the randomized stage for the given mode.
  static StageWindows defaults(const ParamSet& p, std::size_t n) {
    StageWindows w;
    double half = (1.0 - p.c) / 2.0;
    w.size_lo = half - 1.1 * p.eps;
    w.size_hi = half - 0.9 * p.eps;
    double base = p.eps * p.eps * static_cast<double>(n) / 1e4;
    w.weight_budget = p.mode == Mode::internal ? base : (1.0 - p.c) * base;
    return w;
  }
  static StageWindows vacuous() { return {}; }
};

struct StageAttempt {
  int attempt = 0;
  std::uint64_t seed = 0;
  std::size_t size_a = 0, size_b = 0, size_c = 0;
  std::size_t moved = 0;
  long long weight = 0;
  bool size_ok = false, c_good_ok = false, weight_ok = false;
  bool ok() const { return size_ok && c_good_ok && weight_ok; }
};

struct StageOneResult {
  bool success = false;
  LabeledPartition tri;
  GoodnessMap goodness;
  int attempts = 0;
  std::vector<StageAttempt> log;
  int size_failures = 0, c_good_failures = 0, weight_failures = 0;

  std::string failure_summary() const {
    return "size window violated in " + std::to_string(size_failures) + " attempts, C-goodness in " +
           std::to_string(c_good_failures) + ", weight budget in " + std::to_string(weight_failures);
  }
};

/// Randomized tripartition plus relocation, retried until the size window,
/// C-goodness and weight budget all hold or the attempt budget runs out.
inline StageOneResult stage_one(const Graph& g, const ThresholdTable& t, std::uint64_t seed, int max_attempts,
                                const StageWindows& w) {
  if (max_attempts < 1) throw std::invalid_argument("attempt budget must be positive");
  const ParamSet& p = t.params();
  placement_probabilities(p);
  const double n = static_cast<double>(g.n());
  StageOneResult out;
  int best_score = -1;
  double best_excess = std::numeric_limits<double>::infinity();
  for (int a = 0; a < max_attempts; ++a) {
    StageAttempt at;
    at.attempt = a;
    at.seed = derive_seed(seed, static_cast<std::uint64_t>(a));
    auto tri = random_tripartition(g, p, at.seed);
    auto gm = compute_goodness(g, tri, t);
    auto rel = relocate_bad_from_C(tri, gm);
    auto gm2 = compute_goodness(g, rel.tri, t);
    auto sizes = rel.tri.sizes();
    at.size_a = sizes[kPartA];
    at.size_b = sizes[kPartB];
    at.size_c = sizes[kPartC];
    at.moved = rel.moved.size();
    at.weight = gm2.weight;
    auto in_window = [&](std::size_t s) {
      double x = static_cast<double>(s);
      return x >= w.size_lo * n && x <= w.size_hi * n;
    };
    at.size_ok = in_window(at.size_a) && in_window(at.size_b);
    at.c_good_ok = true;
    for (Vertex v = 0; v < g.n(); ++v)
      if (rel.tri[v] == kPartC && !gm2.good_both(v)) at.c_good_ok = false;
    at.weight_ok = static_cast<double>(at.weight) <= w.weight_budget;
    out.size_failures += at.size_ok ? 0 : 1;
    out.c_good_failures += at.c_good_ok ? 0 : 1;
    out.weight_failures += at.weight_ok ? 0 : 1;
    out.log.push_back(at);
    out.attempts = a + 1;

    int score = (at.size_ok ? 1 : 0) + (at.c_good_ok ? 1 : 0) + (at.weight_ok ? 1 : 0);
    double excess = static_cast<double>(at.weight) - w.weight_budget;
    if (score > best_score || (score == best_score && excess < best_excess)) {
      best_score = score;
      best_excess = excess;
      out.tri = rel.tri;
      out.goodness = gm2;
    }
    if (at.ok()) {
      out.success = true;
      out.tri = std::move(rel.tri);
      out.goodness = std::move(gm2);
      break;
    }
  }
  return out;
}

}  // namespace degpart
