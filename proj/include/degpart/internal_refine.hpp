#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "json.hpp"

#include "degpart/certificate.hpp"
#include "degpart/claims.hpp"
#include "degpart/dense_extract.hpp"
#include "degpart/graph.hpp"
#include "degpart/outcome.hpp"
#include "degpart/random_stage.hpp"
#include "degpart/thresholds.hpp"

namespace degpart {

struct Evacuation {
  Vertex vertex = -1;
  int degree = 0;
  int own_and_c_neighbors = 0;  ///< |N(v) ∩ (A^k ∪ C^k)| when evacuated
  std::vector<Vertex> absorbed;   ///< N(v) ∩ C^k, moved along to B
};

struct PatchEntry {
  Vertex x = -1;
  long long deficit = 0;
  std::vector<Vertex> donors;
};

/// Audit record of one deterministic internal refinement.
struct RefineTrace {
  int side_a = kPartA, side_b = kPartB;

  long long precondition_weight = 0;
  double precondition_limit = 0.0;  ///< eps^2 n / 250
  bool precondition_ok = false;

  std::vector<Vertex> a_star;
  ExtractBudget extract_budget;
  bool extract_guaranteed = false;

  std::vector<Evacuation> evacuated;
  std::vector<PatchEntry> patch;
  bool patch_applied = true;

  /// Degrees d present with i - floor(phi(i)) < 2(1+mu_i) phi(i); evacuated
  /// vertices of these degrees are not automatically B-good.
  std::vector<int> evacuation_arithmetic_failures;

  std::size_t size_a_before = 0, size_b_before = 0, size_c_before = 0;
  std::size_t size_a_after = 0, size_b_after = 0, size_c_after = 0;
  double drift_limit = 0.0;  ///< eps n / 500
  bool drift_ok = false;

  long long b_weight_before = 0, b_weight_after = 0;
  LabeledPartition result;
};

struct RefineOptions {
  bool apply_patch = true;
  /// Re-verify C-goodness after every evacuation (quadratic; for small inputs).
  bool audit_steps = false;
};

struct RefineOutcome {
  RefineTrace trace;
  std::optional<Failure> failure;
  bool ok() const { return !failure.has_value(); }
};

namespace detail {

inline bool part_good(const Graph& g, const LabeledPartition& p, const ThresholdTable& t, Vertex v, int part) {
  int i = g.degree(v);
  return !t.active(i) || degree_into_part(g, p, v, part) >= t.good_floor(i);
}

}  // namespace detail

/// One refinement pass with part `side_a` playing A and `side_b` playing B:
/// dense core A* of G[A], greedy evacuation of weak A-vertices (with their
/// C-neighbors) into B, then a patch that pulls C-neighbors into A for any
/// remaining deficit. Verifies the resulting tripartition from scratch.
inline RefineOutcome refine_internal_once(const Graph& g, const LabeledPartition& tri, const ThresholdTable& t,
                                          int side_a = kPartA, int side_b = kPartB, const RefineOptions& opt = {}) {
  const Mode mode = Mode::internal;
  const ParamSet& prm = t.params();
  const auto n = static_cast<std::size_t>(g.n());
  RefineOutcome out;
  RefineTrace& tr = out.trace;
  tr.side_a = side_a;
  tr.side_b = side_b;
  {
    auto s = tri.sizes();
    tr.size_a_before = s[static_cast<std::size_t>(side_a)];
    tr.size_b_before = s[static_cast<std::size_t>(side_b)];
    tr.size_c_before = s[kPartC];
  }
  for (Vertex v = 0; v < g.n(); ++v)
    if (tri[v] == kPartC && !(detail::part_good(g, tri, t, v, side_a) && detail::part_good(g, tri, t, v, side_b))) {
      out.failure = Failure{"internal-refine", "input C-vertex is not good toward both sides", v};
      tr.result = tri;
      return out;
    }
  tr.precondition_weight = side_weight(g, tri, t, side_a);
  tr.precondition_limit = prm.eps * prm.eps * static_cast<double>(n) / 250.0;
  tr.precondition_ok = static_cast<double>(tr.precondition_weight) <= tr.precondition_limit;
  tr.b_weight_before = side_weight(g, tri, t, side_b);

  for (int i = 1; i <= t.max_degree(); ++i) {
    if (!t.active(i, mode)) continue;
    double phi = t.row(i).phi;
    if (static_cast<double>(i) - static_cast<double>(t.target_floor(i, mode)) < 2.0 * (1.0 + t.row(i).mu) * phi)
      tr.evacuation_arithmetic_failures.push_back(i);
  }

  // Dense core of G[A] with classes A ∩ V^i, targets floor(phi(i)), slack mu_i.
  {
    ClassFamily fam;
    fam.host.assign(n, 0);
    std::vector<int> cls_of_degree(static_cast<std::size_t>(t.max_degree()) + 1, -1);
    for (Vertex v = 0; v < g.n(); ++v) {
      if (tri[v] != side_a) continue;
      fam.host[static_cast<std::size_t>(v)] = 1;
      int i = g.degree(v);
      long long a = t.target_floor(i, mode);
      if (a < 1) continue;
      auto& slot = cls_of_degree[static_cast<std::size_t>(i)];
      if (slot < 0) {
        slot = static_cast<int>(fam.classes.size());
        fam.classes.push_back({{}, a, t.row(i).mu});
      }
      fam.classes[static_cast<std::size_t>(slot)].members.push_back(v);
    }
    auto ex = extract_dense(g, fam);
    tr.extract_budget = ex.budget;
    tr.extract_guaranteed = ex.guaranteed;
    for (Vertex v = 0; v < g.n(); ++v)
      if (ex.surviving[static_cast<std::size_t>(v)]) tr.a_star.push_back(v);
  }

  // Evacuation: move v in A with |N(v) ∩ (A ∪ C)| < floor(phi) to B along with N(v) ∩ C.
  std::vector<int> label = tri.label;
  std::vector<int> ac(n, 0);
  for (Vertex v = 0; v < g.n(); ++v)
    for (Vertex u : g.neighbors(v)) {
      int l = label[static_cast<std::size_t>(u)];
      ac[static_cast<std::size_t>(v)] += (l == side_a || l == kPartC) ? 1 : 0;
    }
  auto weak = [&](Vertex v) {
    auto s = static_cast<std::size_t>(v);
    return label[s] == side_a && ac[s] < t.target_floor(g.degree(v), mode);
  };
  std::priority_queue<Vertex, std::vector<Vertex>, std::greater<>> heap;
  for (Vertex v = 0; v < g.n(); ++v)
    if (weak(v)) heap.push(v);
  auto leave_ac = [&](Vertex v) {
    for (Vertex u : g.neighbors(v)) {
      --ac[static_cast<std::size_t>(u)];
      if (weak(u)) heap.push(u);
    }
  };
  while (!heap.empty()) {
    Vertex v = heap.top();
    heap.pop();
    if (!weak(v)) continue;
    Evacuation ev{v, g.degree(v), ac[static_cast<std::size_t>(v)], {}};
    label[static_cast<std::size_t>(v)] = side_b;
    for (Vertex u : g.neighbors(v))
      if (label[static_cast<std::size_t>(u)] == kPartC) {
        label[static_cast<std::size_t>(u)] = side_b;
        ev.absorbed.push_back(u);
      }
    leave_ac(v);
    for (Vertex u : ev.absorbed) leave_ac(u);
    tr.evacuated.push_back(std::move(ev));
    if (opt.audit_steps) {
      LabeledPartition step(3, label);
      for (Vertex z = 0; z < g.n(); ++z)
        if (label[static_cast<std::size_t>(z)] == kPartC &&
            !(detail::part_good(g, step, t, z, side_a) && detail::part_good(g, step, t, z, side_b))) {
          out.failure = Failure{"internal-refine", "C-vertex lost goodness during evacuation", z};
          tr.result = step;
          return out;
        }
    }
  }
  {
    std::vector<char> in_a1(n, 0);
    for (std::size_t v = 0; v < n; ++v) in_a1[v] = label[v] == side_a;
    for (Vertex v : tr.a_star)
      if (!in_a1[static_cast<std::size_t>(v)]) {
        out.failure = Failure{"internal-refine", "dense core vertex was evacuated", v};
        tr.result = LabeledPartition(3, label);
        return out;
      }
  }

  // Patch: each x in A_1 short of floor(phi) takes exactly the deficit from its
  // lowest-id C_1 neighbors. Deficits and donors are read from A_1, C_1.
  tr.patch_applied = opt.apply_patch;
  if (opt.apply_patch) {
    std::vector<Vertex> donors_all;
    for (Vertex x = 0; x < g.n(); ++x) {
      if (label[static_cast<std::size_t>(x)] != side_a) continue;
      long long need = t.target_floor(g.degree(x), mode);
      long long have = 0;
      for (Vertex u : g.neighbors(x)) have += label[static_cast<std::size_t>(u)] == side_a ? 1 : 0;
      if (have >= need) continue;
      PatchEntry pe{x, need - have, {}};
      for (Vertex u : g.neighbors(x)) {
        if (static_cast<long long>(pe.donors.size()) == pe.deficit) break;
        if (label[static_cast<std::size_t>(u)] == kPartC) pe.donors.push_back(u);
      }
      if (static_cast<long long>(pe.donors.size()) < pe.deficit) {
        out.failure = Failure{"internal-refine", "patch infeasible: not enough C-neighbors to cover the deficit", x};
        tr.result = LabeledPartition(3, label);
        return out;
      }
      donors_all.insert(donors_all.end(), pe.donors.begin(), pe.donors.end());
      tr.patch.push_back(std::move(pe));
    }
    for (Vertex u : donors_all) label[static_cast<std::size_t>(u)] = side_a;
  }
  tr.result = LabeledPartition(3, std::move(label));
  const LabeledPartition& res = tr.result;
  {
    auto s = res.sizes();
    tr.size_a_after = s[static_cast<std::size_t>(side_a)];
    tr.size_b_after = s[static_cast<std::size_t>(side_b)];
    tr.size_c_after = s[kPartC];
    tr.drift_limit = prm.eps * static_cast<double>(n) / 500.0;
    auto diff = [](std::size_t a, std::size_t b) { return static_cast<double>(a > b ? a - b : b - a); };
    tr.drift_ok = diff(tr.size_a_after, tr.size_a_before) <= tr.drift_limit &&
                  diff(tr.size_b_after, tr.size_b_before) <= tr.drift_limit &&
                  diff(tr.size_c_after, tr.size_c_before) <= tr.drift_limit;
  }
  tr.b_weight_after = side_weight(g, res, t, side_b);

  // From-scratch checks of the refinement's structural properties.
  for (Vertex v = 0; v < g.n(); ++v) {
    int before = tri[v], after = res[v];
    if (before == side_b && after != side_b) { out.failure = Failure{"internal-refine", "B is not contained in B'", v}; return out; }
    if (after == kPartC && before != kPartC) { out.failure = Failure{"internal-refine", "C' is not contained in C", v}; return out; }
    if (after == kPartC && !(detail::part_good(g, res, t, v, side_a) && detail::part_good(g, res, t, v, side_b))) {
      out.failure = Failure{"internal-refine", "C'-vertex is not good toward both sides", v};
      return out;
    }
    if (after == side_a && degree_into_part(g, res, v, side_a) < t.target_floor(g.degree(v), mode)) {
      out.failure = Failure{"internal-refine", "A'-vertex below its own-degree floor", v};
      return out;
    }
    if (after == side_b && before != side_b && !detail::part_good(g, res, t, v, side_b)) {
      out.failure = Failure{"internal-refine", "vertex of B' \\ B is not B'-good", v};
      return out;
    }
  }
  for (const auto& ev : tr.evacuated)
    if (ev.own_and_c_neighbors >= t.target_floor(ev.degree, mode)) {
      out.failure = Failure{"internal-refine", "evacuation record does not witness a deficit", ev.vertex};
      return out;
    }
  if (tr.b_weight_after > tr.b_weight_before) {
    out.failure = Failure{"internal-refine", "B-side weight increased"};
    return out;
  }
  return out;
}

inline nlohmann::json to_json(const RefineTrace& tr) {
  nlohmann::json j;
  j["side_a"] = tr.side_a;
  j["side_b"] = tr.side_b;
  j["precondition"] = {{"weight", tr.precondition_weight}, {"limit", tr.precondition_limit}, {"ok", tr.precondition_ok}};
  j["a_star_size"] = tr.a_star.size();
  j["extract"] = {{"deleted", tr.extract_budget.deleted}, {"weighted", tr.extract_budget.weighted},
                  {"bound", tr.extract_budget.bound}, {"guaranteed", tr.extract_guaranteed}};
  nlohmann::json ev = nlohmann::json::array();
  for (const auto& e : tr.evacuated)
    ev.push_back({{"v", e.vertex}, {"degree", e.degree}, {"a_c_neighbors", e.own_and_c_neighbors}, {"absorbed", e.absorbed}});
  j["evacuated"] = ev;
  nlohmann::json pt = nlohmann::json::array();
  for (const auto& p : tr.patch) pt.push_back({{"x", p.x}, {"deficit", p.deficit}, {"donors", p.donors}});
  j["patch"] = pt;
  j["patch_applied"] = tr.patch_applied;
  j["evacuation_arithmetic_failures"] = tr.evacuation_arithmetic_failures;
  j["sizes_before"] = {tr.size_a_before, tr.size_b_before, tr.size_c_before};
  j["sizes_after"] = {tr.size_a_after, tr.size_b_after, tr.size_c_after};
  j["drift"] = {{"limit", tr.drift_limit}, {"ok", tr.drift_ok}};
  j["b_weight"] = {tr.b_weight_before, tr.b_weight_after};
  return j;
}

// ---------------------------------------------------------------------------
// Two-sided construction.

struct TripartitionOptions {
  std::uint64_t seed = 1;
  int attempts = 64;
  std::optional<StageWindows> windows;  ///< empty: the mode's defaults
  /// Final size window (fractions of n); empty: the theorem's window for the mode.
  std::optional<std::pair<double, double>> final_window;
  bool apply_patch = true;
  bool skip_maxcut = false;
  bool audit_steps = false;
};

struct TripartitionResult {
  std::optional<Failure> failure;
  StageOneResult stage;
  LabeledPartition tri;
  Certificate certificate;
  bool size_window_ok = false;
  std::pair<double, double> size_window{0.0, 1.0};
  bool preconditions_ok = false;  ///< every lemma precondition checked along the way held
  nlohmann::json trace = nlohmann::json::object();

  bool ok() const { return !failure.has_value(); }
};

namespace detail {

inline nlohmann::json params_json(const ThresholdTable& t, std::uint64_t seed) {
  const auto& p = t.params();
  nlohmann::json j{{"mode", to_string(p.mode)}, {"c", p.c}, {"eps", p.eps}, {"d_constant", t.d_constant()},
                   {"d_source", p.uses_default_d() ? "paper" : "override"}, {"relaxed", p.relaxed}, {"seed", seed}};
  if (t.level()) j["level_k"] = *t.level();
  return j;
}

inline std::pair<double, double> theorem_window(const ParamSet& p) {
  return {(1.0 - p.c - 3.0 * p.eps) / 2.0, (1.0 - p.c - p.eps) / 2.0};
}

}  // namespace detail

/// Stage one, refinement on the A-side, then refinement with A and B swapped.
/// The certificate carries own-degree floors on A and B, goodness and
/// factor-2 floors for C, and the size window when it holds.
inline TripartitionResult min_indegree_tripartition(const Graph& g, const ThresholdTable& t,
                                                    const TripartitionOptions& opt = {}) {
  if (t.params().mode != Mode::internal) throw std::invalid_argument("internal tripartition needs an internal-mode table");
  if (t.max_degree() < g.max_degree()) throw std::invalid_argument("threshold table does not cover the maximum degree");
  TripartitionResult out;
  out.size_window = opt.final_window.value_or(detail::theorem_window(t.params()));
  auto windows = opt.windows.value_or(StageWindows::defaults(t.params(), static_cast<std::size_t>(g.n())));
  out.stage = stage_one(g, t, opt.seed, opt.attempts, windows);
  out.trace["stage_one"] = {{"success", out.stage.success}, {"attempts", out.stage.attempts},
                            {"weight", out.stage.goodness.weight}, {"summary", out.stage.failure_summary()}};
  out.tri = out.stage.tri;
  if (!out.stage.success) {
    out.failure = Failure{"stage-one", out.stage.failure_summary()};
    return out;
  }
  RefineOptions ro{opt.apply_patch, opt.audit_steps};
  auto first = refine_internal_once(g, out.stage.tri, t, kPartA, kPartB, ro);
  out.trace["refine_a"] = to_json(first.trace);
  if (!first.ok()) {
    out.tri = first.trace.result;
    out.failure = first.failure;
    return out;
  }
  auto second = refine_internal_once(g, first.trace.result, t, kPartB, kPartA, ro);
  out.trace["refine_b"] = to_json(second.trace);
  out.tri = second.trace.result;
  if (!second.ok()) {
    out.failure = second.failure;
    return out;
  }
  out.preconditions_ok = first.trace.precondition_ok && second.trace.precondition_ok && first.trace.drift_ok &&
                         second.trace.drift_ok && first.trace.evacuation_arithmetic_failures.empty() &&
                         second.trace.evacuation_arithmetic_failures.empty();

  auto floor_phi = [&](int d) { return t.target_floor(d); };
  auto good = [&](int d) { return t.good_floor(d); };
  auto twice = [&](int d) { return 2 * t.target_floor(d); };
  auto& cert = out.certificate;
  cert = make_certificate(g, 3, detail::params_json(t, opt.seed));
  cert.environment["construction"] = "min_indegree_tripartition";
  cert.claims.push_back(degree_claim(ClaimKind::own_degree, "own-degree floor on A and B", {kPartA, kPartB}, g, floor_phi));
  cert.claims.push_back(degree_claim(ClaimKind::degree_into_part, "C-vertices: d_A >= 2 floor(phi)", {kPartC}, g, twice, kPartA));
  cert.claims.push_back(degree_claim(ClaimKind::degree_into_part, "C-vertices: d_B >= 2 floor(phi)", {kPartC}, g, twice, kPartB));
  cert.claims.push_back(degree_claim(ClaimKind::degree_into_part, "C-vertices are A-good", {kPartC}, g, good, kPartA));
  cert.claims.push_back(degree_claim(ClaimKind::degree_into_part, "C-vertices are B-good", {kPartC}, g, good, kPartB));
  auto sizes = out.tri.sizes();
  const double nn = static_cast<double>(g.n());
  auto in_window = [&](std::size_t s) {
    double x = static_cast<double>(s);
    return x >= out.size_window.first * nn - 1e-9 && x <= out.size_window.second * nn + 1e-9;
  };
  out.size_window_ok = in_window(sizes[kPartA]) && in_window(sizes[kPartB]);
  if (out.size_window_ok) {
    cert.claims.push_back(size_window_claim("size window on A", kPartA, out.size_window.first, out.size_window.second, static_cast<std::size_t>(g.n())));
    cert.claims.push_back(size_window_claim("size window on B", kPartB, out.size_window.first, out.size_window.second, static_cast<std::size_t>(g.n())));
  }
  annotate_witnesses(g, out.tri, cert);
  auto vr = verify_certificate(g, out.tri, cert);
  if (!vr.pass()) out.failure = Failure{"self-verification", vr.message, vr.witness};
  return out;
}

}  // namespace degpart
