#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "degpart/certificate.hpp"
#include "degpart/claims.hpp"
#include "degpart/cut_refine.hpp"
#include "degpart/dense_extract.hpp"
#include "degpart/graph.hpp"
#include "degpart/internal_refine.hpp"
#include "degpart/outcome.hpp"
#include "degpart/random_stage.hpp"
#include "degpart/thresholds.hpp"

namespace degpart {

struct Absorption {
  Vertex vertex = -1;
  int destination = kPartA;
  int witnessed = 0;  ///< neighbors on the opposite side at absorption time
};

/// Audit record of the external refinement. X, Y, Z are stage one's A, B, C.
struct ExternalTrace {
  std::size_t h_vertices = 0, h_edges = 0;
  KeyCondition key;
  ExtractBudget extract_budget;
  std::vector<Vertex> h_deleted;  ///< V(H \ H')
  std::vector<Vertex> w1, w2;
  std::vector<Absorption> absorbed;
  std::vector<char> w_plus;  ///< mask over V: W+ (rest of W2 is W-)
  bool maxcut_skipped = false;

  double stage_weight_budget = 0.0;
  long long stage_weight = 0;
  double eta_min = 0.0;
  bool eta_ok = false;        ///< min eta >= eps/5 over active degrees present
  bool psi_star_ok = false;   ///< i <= 8 psi*(i)/(1-c) for every active i
  bool w1_accounting_ok = false;
  long long w1_accounting_rhs = 0;

  LabeledPartition result;
};

struct ExternalOutcome {
  ExternalTrace trace;
  std::optional<Failure> failure;
  bool ok() const { return !failure.has_value(); }
};

/// Induced bipartite subgraph (X, Y)_G on the same vertex ids: X-Y edges only.
inline Graph cross_subgraph(const Graph& g, const LabeledPartition& p, int x, int y) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (auto [u, v] : g.edges()) {
    int a = p[u], b = p[v];
    if ((a == x && b == y) || (a == y && b == x)) e.emplace_back(u, v);
  }
  return Graph(g.n(), e);
}

/// Deterministic refinement of a stage-one tripartition (X, Y, Z) in external mode.
inline ExternalOutcome refine_external(const Graph& g, const LabeledPartition& tri, const ThresholdTable& t,
                                       std::uint64_t seed, bool skip_maxcut = false) {
  const Mode mode = Mode::external;
  const ParamSet& prm = t.params();
  const auto n = static_cast<std::size_t>(g.n());
  ExternalOutcome out;
  ExternalTrace& tr = out.trace;
  tr.result = tri;
  auto fail = [&](std::string why, Vertex w = -1) {
    out.failure = Failure{"external-refine", std::move(why), w};
    return out;
  };

  for (Vertex v = 0; v < g.n(); ++v)
    if (tri[v] == kPartC && !(detail::part_good(g, tri, t, v, kPartA) && detail::part_good(g, tri, t, v, kPartB)))
      return fail("input Z-vertex is not good toward both sides", v);

  tr.psi_star_ok = true;
  tr.eta_min = std::numeric_limits<double>::infinity();
  for (int i = 1; i <= t.max_degree(); ++i) {
    if (!t.active(i, mode)) continue;
    const auto& row = t.row(i);
    if (static_cast<double>(i) > 8.0 * row.psi_star / (1.0 - prm.c) * (1.0 + 1e-12)) tr.psi_star_ok = false;
  }
  if (!tr.psi_star_ok) return fail("i <= 8 psi*(i)/(1-c) violated for an active degree");
  for (Vertex v = 0; v < g.n(); ++v)
    if (t.active(g.degree(v), mode)) tr.eta_min = std::min(tr.eta_min, t.row(g.degree(v)).eta);
  tr.eta_ok = tr.eta_min >= prm.eps / 5.0 * (1.0 - 1e-12);
  tr.stage_weight = compute_goodness(g, tri, t).weight;
  tr.stage_weight_budget = (1.0 - prm.c) * prm.eps * prm.eps * static_cast<double>(n) / 1e4;

  // Dense core of H = (X,Y)_G, classes V^i ∩ V(H), targets floor(psi*), slack eta_i.
  Graph h = cross_subgraph(g, tri, kPartA, kPartB);
  std::vector<char> in_h(n, 0);
  {
    ClassFamily fam;
    fam.host.assign(n, 0);
    std::vector<int> slot(static_cast<std::size_t>(t.max_degree()) + 1, -1);
    for (Vertex v = 0; v < g.n(); ++v) {
      if (tri[v] == kPartC) continue;
      fam.host[static_cast<std::size_t>(v)] = 1;
      int i = g.degree(v);
      long long a = t.psi_star_floor(i);
      if (a < 1) continue;
      auto& s = slot[static_cast<std::size_t>(i)];
      if (s < 0 && !(t.row(i).eta > 0.0)) return fail("slack eta is zero at degree " + std::to_string(i) + " (d = 0)", v);
      if (s < 0) {
        s = static_cast<int>(fam.classes.size());
        fam.classes.push_back({{}, a, t.row(i).eta});
      }
      fam.classes[static_cast<std::size_t>(s)].members.push_back(v);
    }
    in_h = fam.host;
    tr.h_vertices = fam.host_size();
    tr.h_edges = h.m();
    auto ex = extract_dense(h, fam);
    tr.key = ex.key;
    tr.extract_budget = ex.budget;
    for (const auto& d : ex.deleted) tr.h_deleted.push_back(d.vertex);
    std::sort(tr.h_deleted.begin(), tr.h_deleted.end());
  }

  // W1 = V(H \ H') ∪ (N(V(H \ H')) ∩ Z); X1 = X', Y1 = Y', Z1 = Z \ W1.
  std::vector<int> label = tri.label;
  constexpr int kW = 3;
  std::vector<char> in_w1(n, 0);
  for (Vertex v : tr.h_deleted) {
    in_w1[static_cast<std::size_t>(v)] = 1;
    for (Vertex u : g.neighbors(v))
      if (tri[u] == kPartC) in_w1[static_cast<std::size_t>(u)] = 1;
  }
  for (std::size_t v = 0; v < n; ++v)
    if (in_w1[v]) {
      label[v] = kW;
      tr.w1.push_back(static_cast<Vertex>(v));
    }
  {
    long long rhs = static_cast<long long>(tr.h_deleted.size());
    for (Vertex v : tr.h_deleted) rhs += g.degree(v);
    tr.w1_accounting_rhs = rhs;
    tr.w1_accounting_ok = static_cast<long long>(tr.w1.size()) <= rhs;
    if (!tr.w1_accounting_ok) return fail("W1 size accounting violated");
  }
  for (Vertex z = 0; z < g.n(); ++z) {
    if (label[static_cast<std::size_t>(z)] != kPartC) continue;
    for (Vertex u : g.neighbors(z))
      if (tri[u] != kPartC && label[static_cast<std::size_t>(u)] == kW) return fail("Z1 vertex has a neighbor in X or Y outside X1 or Y1", z);
  }

  // Absorption: move x in W2 with d_{X2}(x) >= floor(psi) to Y2, or with d_{Y2}(x) >= floor(psi) to X2.
  // Passes alternate X-side and Y-side checks in vertex-id order until nothing moves.
  auto count_into = [&](Vertex v, int part) {
    int c = 0;
    for (Vertex u : g.neighbors(v)) c += label[static_cast<std::size_t>(u)] == part ? 1 : 0;
    return c;
  };
  std::size_t w_left = tr.w1.size();
  for (bool moved = true; moved;) {
    moved = false;
    for (Vertex x : tr.w1) {
      auto s = static_cast<std::size_t>(x);
      if (label[s] != kW) continue;
      long long need = t.target_floor(g.degree(x), mode);
      int dx = count_into(x, kPartA);
      if (dx >= need) {
        label[s] = kPartB;
        tr.absorbed.push_back({x, kPartB, dx});
      } else {
        int dy = count_into(x, kPartB);
        if (dy < need) continue;
        label[s] = kPartA;
        tr.absorbed.push_back({x, kPartA, dy});
      }
      --w_left;
      moved = true;
    }
  }
  if (tr.w1.size() - w_left != tr.absorbed.size()) return fail("absorption log out of step with W2");
  for (Vertex x : tr.w1)
    if (label[static_cast<std::size_t>(x)] == kW) tr.w2.push_back(x);

  // Pre-cut assertions at absorption exit.
  for (Vertex x : tr.w2) {
    long long f = t.target_floor(g.degree(x), mode);
    if (count_into(x, kPartA) >= f) return fail("pre-cut: d_X2 >= floor(psi) at absorption exit", x);
    if (count_into(x, kPartB) >= f) return fail("pre-cut: d_Y2 >= floor(psi) at absorption exit", x);
    if (count_into(x, kW) < 2 * f) return fail("pre-cut: d_W2 < 2 floor(psi) at absorption exit", x);
  }

  // Cut of G[W2]: W+ joins X3, W- joins Y3.
  tr.w_plus.assign(n, 0);
  tr.maxcut_skipped = skip_maxcut;
  if (!tr.w2.empty()) {
    std::vector<char> mask(n, 0);
    for (Vertex x : tr.w2) mask[static_cast<std::size_t>(x)] = 1;
    if (skip_maxcut) {
      for (Vertex x : tr.w2) tr.w_plus[static_cast<std::size_t>(x)] = 1;
    } else {
      auto cut = local_maxcut(g, mask, seed);
      for (Vertex x : tr.w2) tr.w_plus[static_cast<std::size_t>(x)] = cut.side[static_cast<std::size_t>(x)] == 0;
    }
    for (Vertex x : tr.w2) label[static_cast<std::size_t>(x)] = tr.w_plus[static_cast<std::size_t>(x)] ? kPartA : kPartB;
  }
  tr.result = LabeledPartition(3, std::move(label));
  const auto& res = tr.result;

  // Sandwich X \ W1 ⊆ X1 ⊆ X3 ⊆ X ∪ W1 (same for Y), and Z3 = Z1.
  for (Vertex v = 0; v < g.n(); ++v) {
    auto s = static_cast<std::size_t>(v);
    bool w = in_w1[s];
    bool deleted_h = in_h[s] && w;
    for (int side : {kPartA, kPartB}) {
      bool in_x = tri[v] == side, in_x3 = res[v] == side;
      bool in_x1 = in_x && !deleted_h;
      if (in_x && !w && !in_x1) return fail("sandwich: X \\ W1 not inside X1", v);
      if (in_x1 && !in_x3) return fail("sandwich: X1 not inside X3", v);
      if (in_x3 && !(in_x || w)) return fail("sandwich: X3 not inside X ∪ W1", v);
    }
    if ((res[v] == kPartC) != (tri[v] == kPartC && !w)) return fail("Z3 differs from Z1", v);
  }
  return out;
}

inline nlohmann::json to_json(const ExternalTrace& tr) {
  nlohmann::json j;
  j["h"] = {{"vertices", tr.h_vertices}, {"edges", tr.h_edges}};
  j["key_condition"] = {{"satisfied", tr.key.satisfied}, {"lhs", tr.key.lhs}, {"rhs", tr.key.rhs}};
  j["extract"] = {{"deleted", tr.extract_budget.deleted}, {"weighted", tr.extract_budget.weighted}, {"bound", tr.extract_budget.bound}};
  j["h_deleted"] = tr.h_deleted;
  j["w1"] = tr.w1;
  j["w2"] = tr.w2;
  nlohmann::json ab = nlohmann::json::array();
  for (const auto& a : tr.absorbed) ab.push_back({{"v", a.vertex}, {"to", a.destination == kPartA ? "X" : "Y"}, {"witnessed", a.witnessed}});
  j["absorbed"] = ab;
  std::vector<Vertex> wp;
  for (Vertex x : tr.w2)
    if (!tr.w_plus.empty() && tr.w_plus[static_cast<std::size_t>(x)]) wp.push_back(x);
  j["w_plus"] = wp;
  j["maxcut_skipped"] = tr.maxcut_skipped;
  j["stage_weight"] = {{"value", tr.stage_weight}, {"budget", tr.stage_weight_budget}};
  j["eta_min"] = std::isfinite(tr.eta_min) ? nlohmann::json(tr.eta_min) : nlohmann::json();
  j["eta_ok"] = tr.eta_ok;
  j["w1_accounting"] = {{"w1", tr.w1.size()}, {"rhs", tr.w1_accounting_rhs}, {"ok", tr.w1_accounting_ok}};
  return j;
}

/// Stage one followed by the external refinement. The certificate carries the
/// cross-degree floors on A and B, goodness and factor-2 floors for C, and the
/// size window when it holds.
inline TripartitionResult min_outdegree_tripartition(const Graph& g, const ThresholdTable& t,
                                                     const TripartitionOptions& opt = {}) {
  if (t.params().mode != Mode::external) throw std::invalid_argument("external tripartition needs an external-mode table");
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
  auto ref = refine_external(g, out.stage.tri, t, derive_seed(opt.seed, 0xc0ffee), opt.skip_maxcut);
  out.trace["refine"] = to_json(ref.trace);
  out.tri = ref.trace.result;
  if (!ref.ok()) {
    out.failure = ref.failure;
    return out;
  }
  out.preconditions_ok = ref.trace.key.satisfied && ref.trace.eta_ok &&
                         static_cast<double>(ref.trace.stage_weight) <= ref.trace.stage_weight_budget;

  auto floor_psi = [&](int d) { return t.target_floor(d); };
  auto good = [&](int d) { return t.good_floor(d); };
  auto twice = [&](int d) { return 2 * t.target_floor(d); };
  auto& cert = out.certificate;
  cert = make_certificate(g, 3, detail::params_json(t, opt.seed));
  cert.environment["construction"] = "min_outdegree_tripartition";
  cert.claims.push_back(degree_claim(ClaimKind::degree_into_part, "A-vertices: d_B >= floor(psi)", {kPartA}, g, floor_psi, kPartB));
  cert.claims.push_back(degree_claim(ClaimKind::degree_into_part, "B-vertices: d_A >= floor(psi)", {kPartB}, g, floor_psi, kPartA));
  cert.claims.push_back(degree_claim(ClaimKind::degree_into_part, "C-vertices: d_A >= 2 floor(psi)", {kPartC}, g, twice, kPartA));
  cert.claims.push_back(degree_claim(ClaimKind::degree_into_part, "C-vertices: d_B >= 2 floor(psi)", {kPartC}, g, twice, kPartB));
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
