#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "degpart/certificate.hpp"
#include "degpart/claims.hpp"
#include "degpart/cut_refine.hpp"
#include "degpart/external_refine.hpp"
#include "degpart/graph.hpp"
#include "degpart/internal_refine.hpp"
#include "degpart/outcome.hpp"
#include "degpart/thresholds.hpp"

namespace degpart {

struct PartitionStats {
  int min_own = 0, min_cross = 0;
  double min_own_ratio = 0.0, min_cross_ratio = 0.0;  ///< over non-isolated vertices; 1 if none
  std::size_t cut_edges = 0;
  double avg_cut_degree = 0.0;  ///< 2 * cut / n
  std::vector<std::size_t> sizes;
};

/// Per-vertex statistics of any labeled partition. Cross degree counts every
/// neighbor outside the vertex's own part.
inline PartitionStats partition_stats(const Graph& g, const LabeledPartition& p) {
  PartitionStats s;
  s.sizes = p.sizes();
  s.min_own = s.min_cross = std::numeric_limits<int>::max();
  s.min_own_ratio = s.min_cross_ratio = 1.0;
  for (Vertex v = 0; v < g.n(); ++v) {
    int own = own_degree(g, p, v), d = g.degree(v);
    s.min_own = std::min(s.min_own, own);
    s.min_cross = std::min(s.min_cross, d - own);
    if (d == 0) continue;
    s.min_own_ratio = std::min(s.min_own_ratio, static_cast<double>(own) / d);
    s.min_cross_ratio = std::min(s.min_cross_ratio, static_cast<double>(d - own) / d);
  }
  if (g.n() == 0) s.min_own = s.min_cross = 0;
  s.cut_edges = cut_edge_count(g, p);
  s.avg_cut_degree = g.n() ? 2.0 * static_cast<double>(s.cut_edges) / g.n() : 0.0;
  return s;
}

inline nlohmann::json to_json(const PartitionStats& s) {
  return {{"min_own", s.min_own},
          {"min_cross", s.min_cross},
          {"min_own_ratio", s.min_own_ratio},
          {"min_cross_ratio", s.min_cross_ratio},
          {"cut_edges", s.cut_edges},
          {"avg_cut_degree", s.avg_cut_degree},
          {"sizes", s.sizes}};
}

struct PipelineOptions {
  std::uint64_t seed = 1;
  int attempts = 64;
  std::optional<StageWindows> windows;
  bool apply_patch = true;
  bool skip_maxcut = false;
  /// Size thresholds past which the asymptotic statements are taken to apply.
  /// Unset means unknown, and no run is reported as guaranteed.
  std::optional<std::size_t> n0;
  std::optional<int> k0;
};

struct PipelineReport {
  std::string operation;
  Mode mode = Mode::internal;
  nlohmann::json params = nlohmann::json::object();
  LabeledPartition partition;
  Certificate certificate;
  PartitionStats stats;
  bool guaranteed = false;
  std::optional<Failure> failure;
  nlohmann::json diagnostics = nlohmann::json::object();
  /// r_partition: certificate for the biased cut before size repair.
  std::optional<Certificate> pre_repair_certificate;
  std::optional<LabeledPartition> pre_repair_partition;

  bool ok() const { return !failure.has_value(); }
};

inline nlohmann::json to_json(const PipelineReport& r) {
  nlohmann::json j;
  j["operation"] = r.operation;
  j["mode"] = to_string(r.mode);
  j["params"] = r.params;
  j["labels"] = r.partition.label;
  j["r"] = r.partition.r;
  j["stats"] = to_json(r.stats);
  j["guaranteed"] = r.guaranteed;
  j["ok"] = r.ok();
  if (r.failure) j["failure"] = {{"stage", r.failure->stage}, {"reason", r.failure->reason}, {"witness", r.failure->witness}};
  j["certificate"] = to_json(r.certificate);
  if (r.pre_repair_certificate) {
    j["pre_repair"] = {{"labels", r.pre_repair_partition->label}, {"certificate", to_json(*r.pre_repair_certificate)}};
  }
  j["diagnostics"] = r.diagnostics;
  return j;
}

namespace detail {

inline TripartitionOptions tri_options(const PipelineOptions& o) {
  TripartitionOptions t;
  t.seed = o.seed;
  t.attempts = o.attempts;
  t.windows = o.windows;
  t.apply_patch = o.apply_patch;
  t.skip_maxcut = o.skip_maxcut;
  return t;
}

inline bool size_hypothesis(const PipelineOptions& o, const Graph& g) {
  return o.n0.has_value() && static_cast<std::size_t>(g.n()) >= *o.n0;
}

inline bool strict_params(const ParamSet& p) { return !p.relaxed && p.uses_default_d() && p.within_hypothesis(); }

inline TripartitionResult run_tripartition(const Graph& g, const ThresholdTable& t, const TripartitionOptions& o) {
  return t.params().mode == Mode::internal ? min_indegree_tripartition(g, t, o) : min_outdegree_tripartition(g, t, o);
}

/// Splits C between A and B so that |A'| ends at `target_a`. C is ordered by
/// d_A - d_B, descending for internal mode (vertices go where they have more
/// neighbors) and ascending for external mode (where they have fewer).
inline std::optional<LabeledPartition> distribute_C(const Graph& g, const LabeledPartition& tri, Mode mode, long long target_a) {
  auto sizes = tri.sizes();
  long long need = target_a - static_cast<long long>(sizes[kPartA]);
  if (need < 0 || need > static_cast<long long>(sizes[kPartC])) return std::nullopt;
  std::vector<std::pair<int, Vertex>> order;
  for (Vertex v = 0; v < g.n(); ++v)
    if (tri[v] == kPartC) {
      int bias = degree_into_part(g, tri, v, kPartA) - degree_into_part(g, tri, v, kPartB);
      order.emplace_back(mode == Mode::internal ? -bias : bias, v);
    }
  std::sort(order.begin(), order.end());
  std::vector<int> label(tri.label);
  for (std::size_t k = 0; k < order.size(); ++k)
    label[static_cast<std::size_t>(order[k].second)] = static_cast<long long>(k) < need ? kPartA : kPartB;
  return LabeledPartition(2, std::move(label));
}

/// Bisection from a tripartition: whichever of floor(n/2), ceil(n/2) is reachable for |A'|.
inline std::optional<LabeledPartition> bisect_from(const Graph& g, const LabeledPartition& tri, Mode mode) {
  long long half = g.n() / 2;
  if (auto p = distribute_C(g, tri, mode, half)) return p;
  if (g.n() % 2) return distribute_C(g, tri, mode, half + 1);
  return std::nullopt;
}

inline void finish(PipelineReport& rep, const Graph& g) {
  rep.stats = partition_stats(g, rep.partition);
  annotate_witnesses(g, rep.partition, rep.certificate);
  auto vr = verify_certificate(g, rep.partition, rep.certificate);
  if (!vr.pass() && !rep.failure) rep.failure = Failure{"self-verification", vr.message, vr.witness};
  if (rep.failure) rep.guaranteed = false;
}

inline void absorb_tripartition(PipelineReport& rep, TripartitionResult& tr) {
  rep.diagnostics["tripartition"] = tr.trace;
  rep.diagnostics["tripartition_sizes"] = tr.tri.sizes();
  rep.diagnostics["size_window_ok"] = tr.size_window_ok;
  rep.diagnostics["preconditions_ok"] = tr.preconditions_ok;
  if (tr.failure) rep.failure = tr.failure;
}

inline PipelineReport bisect_common(const Graph& g, const ThresholdTable& t, const PipelineOptions& opt, std::string op,
                                    bool hypotheses) {
  PipelineReport rep;
  rep.operation = std::move(op);
  rep.mode = t.params().mode;
  rep.params = params_json(t, opt.seed);
  auto tr = run_tripartition(g, t, tri_options(opt));
  absorb_tripartition(rep, tr);
  rep.partition = tr.tri;
  if (rep.failure) {
    rep.stats = partition_stats(g, rep.partition);
    return rep;
  }
  auto bis = bisect_from(g, tr.tri, rep.mode);
  if (!bis) {
    rep.failure = Failure{"bisection", "C cannot balance A and B (size window violated upstream)"};
    rep.stats = partition_stats(g, rep.partition);
    return rep;
  }
  rep.partition = std::move(*bis);
  rep.certificate = make_certificate(g, 2, rep.params);
  rep.certificate.environment["construction"] = rep.operation;
  auto floor_t = [&](int d) { return t.target_floor(d); };
  if (rep.mode == Mode::internal)
    rep.certificate.claims.push_back(degree_claim(ClaimKind::own_degree, "own-part floor", {0, 1}, g, floor_t));
  else
    rep.certificate.claims.push_back(degree_claim(ClaimKind::cross_degree, "opposite-part floor", {0, 1}, g, floor_t));
  rep.certificate.claims.push_back(balanced_claim());
  rep.guaranteed = hypotheses && tr.preconditions_ok && tr.size_window_ok;
  finish(rep, g);
  return rep;
}

}  // namespace detail

/// Bisection with own-part degree at least floor(phi(d(v))) for every vertex.
inline PipelineReport bisect_internal(const Graph& g, const ParamSet& p, const PipelineOptions& opt = {}) {
  if (p.mode != Mode::internal) throw std::invalid_argument("bisect_internal needs internal mode");
  if (p.c != 0.0) throw std::invalid_argument("bisect_internal needs c = 0");
  auto t = ThresholdTable::build(p, g.max_degree());
  return detail::bisect_common(g, t, opt, "bisect_internal", detail::strict_params(p) && detail::size_hypothesis(opt, g));
}

/// Bisection with opposite-part degree at least floor(psi(d(v))) for every vertex.
inline PipelineReport bisect_external(const Graph& g, const ParamSet& p, const PipelineOptions& opt = {}) {
  if (p.mode != Mode::external) throw std::invalid_argument("bisect_external needs external mode");
  if (p.c != 0.0) throw std::invalid_argument("bisect_external needs c = 0");
  auto t = ThresholdTable::build(p, g.max_degree());
  return detail::bisect_common(g, t, opt, "bisect_external", detail::strict_params(p) && detail::size_hypothesis(opt, g));
}

/// eps' = (1-c)^2 eps / 40, the parameter handed to the tripartition theorems.
inline double exact_inner_eps(double c, double eps) { return (1.0 - c) * (1.0 - c) * eps / 40.0; }

/// Minimum-degree hypothesis (4/(1-c) + eps) k of the exact-k statements.
inline double exact_min_degree(double c, double eps, int k) { return (4.0 / (1.0 - c) + eps) * k; }

namespace detail {

struct ExactRun {
  TripartitionResult tri;
  ThresholdTable table;
  bool min_degree_ok = false;
  double min_degree_required = 0.0;
};

/// Tripartition at constant level k: floors k on A and B (own part for internal,
/// opposite part for external), 2k toward both sides on C, size window
/// [(1-c-eps)/2, (1-c)/2] n.
inline ExactRun exact_tripartition(const Graph& g, int k, const ParamSet& p, const PipelineOptions& opt) {
  if (!(p.eps > 0.0 && p.eps <= 1.0 - p.c) && !p.relaxed) throw std::invalid_argument("exact tripartition needs 0 < eps <= 1-c");
  if (k < 0) throw std::invalid_argument("k must be non-negative");
  ParamSet inner = p;
  inner.eps = exact_inner_eps(p.c, p.eps);
  ExactRun run;
  run.table = ThresholdTable::at_level(inner, k, g.max_degree());
  run.min_degree_required = exact_min_degree(p.c, p.eps, k);
  run.min_degree_ok = g.n() == 0 || static_cast<double>(g.min_degree()) >= run.min_degree_required;
  auto o = tri_options(opt);
  o.final_window = std::make_pair((1.0 - p.c - p.eps) / 2.0, (1.0 - p.c) / 2.0);
  run.tri = run_tripartition(g, run.table, o);
  return run;
}

inline bool exact_hypotheses(const ExactRun& run, const ParamSet& p, const PipelineOptions& opt, const Graph& g, int k) {
  return run.min_degree_ok && !p.relaxed && p.uses_default_d() && size_hypothesis(opt, g) && opt.k0.has_value() &&
         k >= *opt.k0 && run.tri.preconditions_ok && run.tri.size_window_ok;
}

inline nlohmann::json exact_params(const ExactRun& run, const ParamSet& p, int k, std::uint64_t seed) {
  auto j = params_json(run.table, seed);
  j["eps"] = p.eps;
  j["eps_inner"] = run.table.params().eps;
  j["k"] = k;
  j["min_degree_required"] = run.min_degree_required;
  j["min_degree_ok"] = run.min_degree_ok;
  return j;
}

}  // namespace detail

/// Tripartition at level k (internal or external per p.mode).
inline PipelineReport tripartition_exact(const Graph& g, int k, const ParamSet& p, const PipelineOptions& opt = {}) {
  auto run = detail::exact_tripartition(g, k, p, opt);
  PipelineReport rep;
  rep.operation = "tripartition_exact";
  rep.mode = p.mode;
  rep.params = detail::exact_params(run, p, k, opt.seed);
  detail::absorb_tripartition(rep, run.tri);
  rep.partition = run.tri.tri;
  rep.certificate = run.tri.certificate;
  rep.diagnostics["min_degree_ok"] = run.min_degree_ok;
  if (rep.failure) {
    rep.stats = partition_stats(g, rep.partition);
    return rep;
  }
  rep.certificate.environment = rep.params;
  rep.certificate.environment["version"] = kLibraryVersion;
  rep.certificate.environment["construction"] = rep.operation;
  rep.guaranteed = detail::exact_hypotheses(run, p, opt, g, k);
  detail::finish(rep, g);
  return rep;
}

enum class Primary { internal, external };

/// Bisection from the level-k tripartition at c = 1 - eps: every vertex meets
/// the primary constraint at level k; the secondary count is reported against
/// (1 - eps) n and certified down to |C|.
inline PipelineReport bisect_dual(const Graph& g, int k, double eps, Primary primary, const PipelineOptions& opt = {},
                                  std::optional<double> d_override = std::nullopt, bool relaxed = false) {
  ParamSet p;
  p.c = 1.0 - eps;
  p.eps = eps;
  p.mode = primary == Primary::internal ? Mode::internal : Mode::external;
  p.d_override = d_override;
  p.relaxed = relaxed;
  auto run = detail::exact_tripartition(g, k, p, opt);
  PipelineReport rep;
  rep.operation = "bisect_dual";
  rep.mode = p.mode;
  rep.params = detail::exact_params(run, p, k, opt.seed);
  detail::absorb_tripartition(rep, run.tri);
  rep.partition = run.tri.tri;
  if (rep.failure) {
    rep.stats = partition_stats(g, rep.partition);
    return rep;
  }
  auto bis = detail::bisect_from(g, run.tri.tri, p.mode);
  if (!bis) {
    rep.failure = Failure{"bisection", "C cannot balance A and B (size window violated upstream)"};
    rep.stats = partition_stats(g, rep.partition);
    return rep;
  }
  const auto c_size = static_cast<long long>(run.tri.tri.sizes()[kPartC]);
  rep.partition = std::move(*bis);
  rep.certificate = make_certificate(g, 2, rep.params);
  rep.certificate.environment["construction"] = rep.operation;
  auto prim = primary == Primary::internal ? ClaimKind::own_degree : ClaimKind::cross_degree;
  auto sec = primary == Primary::internal ? ClaimKind::cross_degree : ClaimKind::own_degree;
  rep.certificate.claims.push_back(constant_claim(prim, "primary constraint at level k", {0, 1}, k));
  Claim secondary = constant_claim(sec, "secondary constraint at level k, counted", {0, 1}, k);
  secondary.min_count = c_size;
  rep.certificate.claims.push_back(secondary);
  rep.certificate.claims.push_back(balanced_claim());
  long long count = 0;
  for (Vertex v = 0; v < g.n(); ++v) {
    int own = own_degree(g, rep.partition, v);
    count += (primary == Primary::internal ? g.degree(v) - own : own) >= k ? 1 : 0;
  }
  rep.diagnostics["secondary_count"] = count;
  rep.diagnostics["secondary_target"] = (1.0 - eps) * g.n();
  rep.diagnostics["secondary_meets_target"] = static_cast<double>(count) >= (1.0 - eps) * g.n();
  rep.guaranteed = detail::exact_hypotheses(run, p, opt, g, k);
  detail::finish(rep, g);
  return rep;
}

/// Internal bisection from the level-k tripartition at c = p.c (1/4 in the
/// statement): |C1| = floor(n/2) - |A| of C joins A. Both sides keep own-part
/// degree >= k and the cut has at least 2k|C| edges.
inline PipelineReport bisect_with_cut_average(const Graph& g, int k, const ParamSet& p, const PipelineOptions& opt = {}) {
  if (p.mode != Mode::internal) throw std::invalid_argument("bisect_with_cut_average needs internal mode");
  auto run = detail::exact_tripartition(g, k, p, opt);
  PipelineReport rep;
  rep.operation = "bisect_with_cut_average";
  rep.mode = p.mode;
  rep.params = detail::exact_params(run, p, k, opt.seed);
  detail::absorb_tripartition(rep, run.tri);
  rep.partition = run.tri.tri;
  if (rep.failure) {
    rep.stats = partition_stats(g, rep.partition);
    return rep;
  }
  auto bis = detail::distribute_C(g, run.tri.tri, Mode::internal, g.n() / 2);
  if (!bis) {
    rep.failure = Failure{"bisection", "floor(n/2) - |A| lies outside [0, |C|] (size window violated upstream)"};
    rep.stats = partition_stats(g, rep.partition);
    return rep;
  }
  const auto c_size = static_cast<long long>(run.tri.tri.sizes()[kPartC]);
  rep.partition = std::move(*bis);
  rep.certificate = make_certificate(g, 2, rep.params);
  rep.certificate.environment["construction"] = rep.operation;
  rep.certificate.claims.push_back(constant_claim(ClaimKind::own_degree, "own-part degree >= k", {0, 1}, k));
  rep.certificate.claims.push_back(constant_claim(ClaimKind::cut_edges, "cut edges >= 2k|C|", {}, 2LL * k * c_size));
  rep.certificate.claims.push_back(balanced_claim());
  rep.diagnostics["c_size"] = c_size;
  rep.diagnostics["cut_lower_bound"] = 2LL * k * c_size;
  rep.guaranteed = detail::exact_hypotheses(run, p, opt, g, k);
  detail::finish(rep, g);
  rep.diagnostics["avg_cut_degree_at_least_k"] = rep.stats.avg_cut_degree >= k;
  return rep;
}

// ---------------------------------------------------------------------------
// r-partitions with prescribed sizes.

/// floor(alpha_i n) plus one for the largest fractional parts (ties to the lower index).
inline std::vector<std::size_t> target_sizes(const BiasVector& b, std::size_t n) {
  const auto r = static_cast<std::size_t>(b.r());
  std::vector<std::size_t> out(r);
  std::vector<std::pair<std::int64_t, std::size_t>> rem;
  std::size_t used = 0;
  for (std::size_t i = 0; i < r; ++i) {
    // exact: alpha_i n = w_i n / D
    auto num = static_cast<__int128>(b.weight(static_cast<int>(i))) * static_cast<__int128>(n);
    out[i] = static_cast<std::size_t>(num / b.denominator());
    rem.emplace_back(-static_cast<std::int64_t>(num % b.denominator()), i);
    used += out[i];
  }
  std::sort(rem.begin(), rem.end());
  for (std::size_t k = 0; used < n; ++k, ++used) ++out[rem[k].second];
  for (auto s : out)
    if (s < 1) throw std::invalid_argument("alpha_i n rounds to an empty part");
  return out;
}

namespace detail {

/// Moves vertices out of oversized parts, lowest degree first, each into the
/// undersized part where it has the fewest (external) or most (internal) neighbors.
inline std::size_t repair_sizes(const Graph& g, std::vector<int>& label, const std::vector<std::size_t>& target, Mode mode) {
  const auto r = target.size();
  std::vector<std::size_t> size(r, 0);
  for (int l : label) ++size[static_cast<std::size_t>(l)];
  std::vector<Vertex> order(static_cast<std::size_t>(g.n()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return g.degree(a) < g.degree(b); });
  std::size_t moves = 0;
  for (Vertex v : order) {
    auto s = static_cast<std::size_t>(v);
    auto from = static_cast<std::size_t>(label[s]);
    if (size[from] <= target[from]) continue;
    std::vector<int> into(r, 0);
    for (Vertex u : g.neighbors(v)) ++into[static_cast<std::size_t>(label[static_cast<std::size_t>(u)])];
    std::size_t best = r;
    for (std::size_t j = 0; j < r; ++j) {
      if (size[j] >= target[j]) continue;
      if (best == r || (mode == Mode::external ? into[j] < into[best] : into[j] > into[best])) best = j;
    }
    if (best == r) break;
    label[s] = static_cast<int>(best);
    --size[from];
    ++size[best];
    ++moves;
  }
  return moves;
}

/// Pairwise swaps that raise the number of internal edges, to a local optimum or the pass cap.
inline std::size_t swap_hill_climb(const Graph& g, std::vector<int>& label, int r, int max_passes) {
  const auto n = static_cast<std::size_t>(g.n());
  const auto ru = static_cast<std::size_t>(r);
  std::vector<int> cnt(n * ru, 0);
  for (Vertex v = 0; v < g.n(); ++v)
    for (Vertex u : g.neighbors(v)) ++cnt[static_cast<std::size_t>(v) * ru + static_cast<std::size_t>(label[static_cast<std::size_t>(u)])];
  auto at = [&](Vertex v, int part) -> int& { return cnt[static_cast<std::size_t>(v) * ru + static_cast<std::size_t>(part)]; };
  auto relabel = [&](Vertex v, int to) {
    int from = label[static_cast<std::size_t>(v)];
    for (Vertex u : g.neighbors(v)) {
      --at(u, from);
      ++at(u, to);
    }
    label[static_cast<std::size_t>(v)] = to;
  };
  std::size_t swaps = 0;
  for (int pass = 0; pass < max_passes; ++pass) {
    bool changed = false;
    for (Vertex u = 0; u < g.n(); ++u) {
      int i = label[static_cast<std::size_t>(u)];
      for (int j = 0; j < r && label[static_cast<std::size_t>(u)] == i; ++j) {
        if (j == i) continue;
        int gain_u = at(u, j) - at(u, i);
        if (gain_u <= 0) continue;
        Vertex best = -1;
        int best_gain = 0;
        for (Vertex v = 0; v < g.n(); ++v) {
          if (label[static_cast<std::size_t>(v)] != j) continue;
          int gain = gain_u + at(v, i) - at(v, j) - (g.has_edge(u, v) ? 2 : 0);
          if (gain > best_gain) {
            best_gain = gain;
            best = v;
          }
        }
        if (best < 0) continue;
        relabel(u, j);
        relabel(best, i);
        ++swaps;
        changed = true;
      }
    }
    if (!changed) break;
  }
  return swaps;
}

}  // namespace detail

/// r-partition with exact sizes. External mode: biased max-r-cut local optimum
/// (certified d_{V \ U_i}(x) >= (1 - alpha_i) d(x) before repair), then size
/// repair. Internal mode: random exact-size start plus swap hill climbing.
/// Post-repair values are measured only.
inline PipelineReport r_partition(const Graph& g, const BiasVector& b, Mode mode, const PipelineOptions& opt = {}) {
  if (b.r() > g.n()) throw std::invalid_argument("more parts than vertices");
  auto target = target_sizes(b, static_cast<std::size_t>(g.n()));
  PipelineReport rep;
  rep.operation = "r_partition";
  rep.mode = mode;
  rep.params = {{"mode", to_string(mode)}, {"alpha", b.to_string()}, {"seed", opt.seed}, {"target_sizes", target}};
  const int r = b.r();
  std::vector<int> label;
  if (mode == Mode::external) {
    auto cut = biased_max_r_cut(g, b, opt.seed);
    rep.pre_repair_partition = cut.partition;
    Certificate pre = make_certificate(g, r, rep.params);
    pre.environment["construction"] = "biased_max_r_cut";
    for (int i = 0; i < r; ++i) {
      const std::int64_t keep = b.denominator() - b.weight(i);
      auto floor_fn = [&](int d) {
        // ceil((1 - alpha_i) d) in exact arithmetic
        std::int64_t num = keep * d;
        return static_cast<long long>((num + b.denominator() - 1) / b.denominator());
      };
      pre.claims.push_back(degree_claim(ClaimKind::cross_degree, "part " + std::to_string(i) + ": d_{V\\U_i} >= (1-alpha_i) d",
                                        {i}, g, floor_fn));
    }
    annotate_witnesses(g, cut.partition, pre);
    auto vr = verify_certificate(g, cut.partition, pre);
    if (!vr.pass()) rep.failure = Failure{"biased-max-r-cut", vr.message, vr.witness};
    rep.pre_repair_certificate = pre;
    rep.diagnostics["pre_repair_stats"] = to_json(partition_stats(g, cut.partition));
    rep.diagnostics["cut_moves"] = cut.moves;
    label = cut.partition.label;
  } else {
    std::vector<Vertex> order(static_cast<std::size_t>(g.n()));
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 rng(opt.seed);
    std::shuffle(order.begin(), order.end(), rng);
    label.assign(order.size(), 0);
    std::size_t k = 0;
    for (int i = 0; i < r; ++i)
      for (std::size_t c = 0; c < target[static_cast<std::size_t>(i)]; ++c) label[static_cast<std::size_t>(order[k++])] = i;
    rep.diagnostics["swaps"] = detail::swap_hill_climb(g, label, r, 50);
  }
  rep.diagnostics["repair_moves"] = detail::repair_sizes(g, label, target, mode);
  rep.partition = LabeledPartition(r, std::move(label));
  rep.certificate = make_certificate(g, r, rep.params);
  rep.certificate.environment["construction"] = "r_partition";
  for (int i = 0; i < r; ++i) {
    Claim c;
    c.kind = ClaimKind::part_size;
    c.name = "exact size of part " + std::to_string(i);
    c.target_part = i;
    c.lo = c.hi = static_cast<long long>(target[static_cast<std::size_t>(i)]);
    rep.certificate.claims.push_back(c);
  }
  // Pairwise statistics: min over v in U_i, j != i of d_{U_j}(v) / (alpha_j d(v)).
  double pair_ratio = std::numeric_limits<double>::infinity();
  double own_vs_alpha = std::numeric_limits<double>::infinity();
  for (Vertex v = 0; v < g.n(); ++v) {
    int d = g.degree(v);
    if (d == 0) continue;
    std::vector<int> into(static_cast<std::size_t>(r), 0);
    for (Vertex u : g.neighbors(v)) ++into[static_cast<std::size_t>(rep.partition[u])];
    int i = rep.partition[v];
    for (int j = 0; j < r; ++j) {
      double ratio = static_cast<double>(into[static_cast<std::size_t>(j)]) / (b.alpha(j) * d);
      if (j == i) own_vs_alpha = std::min(own_vs_alpha, ratio);
      else pair_ratio = std::min(pair_ratio, ratio);
    }
  }
  rep.diagnostics["min_pair_ratio_over_alpha_j"] = std::isfinite(pair_ratio) ? nlohmann::json(pair_ratio) : nlohmann::json();
  rep.diagnostics["min_own_ratio_over_alpha_i"] = std::isfinite(own_vs_alpha) ? nlohmann::json(own_vs_alpha) : nlohmann::json();
  rep.guaranteed = false;
  detail::finish(rep, g);
  return rep;
}

// ---------------------------------------------------------------------------
// Baseline.

/// Uniformly random bisection (first ceil(n/2) of a shuffle go to part 0).
inline LabeledPartition random_bisection(const Graph& g, std::uint64_t seed) {
  std::vector<Vertex> order(static_cast<std::size_t>(g.n()));
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<int> label(order.size(), 1);
  for (std::size_t k = 0; k < (order.size() + 1) / 2; ++k) label[static_cast<std::size_t>(order[k])] = 0;
  return LabeledPartition(2, std::move(label));
}

}  // namespace degpart
