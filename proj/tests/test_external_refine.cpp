#include <gtest/gtest.h>

#include "degpart/external_refine.hpp"
#include "degpart/generators.hpp"

using namespace degpart;

namespace {

ParamSet external(double eps, double d) {
  ParamSet p;
  p.mode = Mode::external;
  p.eps = eps;
  p.d_override = d;
  return p;
}

void expect_pre_cut(const Graph& g, const ThresholdTable& t, const ExternalTrace& tr) {
  // Labels before the cut: W2 unplaced, everything else as in the result.
  std::vector<char> in_w2(static_cast<std::size_t>(g.n()), 0);
  for (Vertex x : tr.w2) in_w2[static_cast<std::size_t>(x)] = 1;
  for (Vertex x : tr.w2) {
    long long f = t.target_floor(g.degree(x), Mode::external);
    int dx = 0, dy = 0, dw = 0;
    for (Vertex u : g.neighbors(x)) {
      if (in_w2[static_cast<std::size_t>(u)]) ++dw;
      else if (tr.result[u] == kPartA) ++dx;
      else if (tr.result[u] == kPartB) ++dy;
    }
    EXPECT_LT(dx, f) << x;
    EXPECT_LT(dy, f) << x;
    EXPECT_GE(dw, 2 * f) << x;
  }
}

}  // namespace

TEST(ExternalRefine, CrossSubgraphKeepsOnlyXY) {
  auto g = gen_complete(4);
  LabeledPartition p(3, {0, 0, 1, 2});
  auto h = cross_subgraph(g, p, kPartA, kPartB);
  EXPECT_EQ(h.n(), 4);
  EXPECT_EQ(h.m(), 2u);
  EXPECT_TRUE(h.has_edge(0, 2));
  EXPECT_TRUE(h.has_edge(1, 2));
  EXPECT_FALSE(h.has_edge(0, 1));
}

// K_{3,3} split across X and Y plus a pendant X-vertex 6 tied to 0 only.
// Level 1 (d = 0, eps = 0.05): floor(psi) = 1 and psi* = max(1, i/8).
TEST(ExternalRefine, PendantIsDeletedAndAbsorbed) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (Vertex a = 0; a < 3; ++a)
    for (Vertex b = 3; b < 6; ++b) e.emplace_back(a, b);
  e.emplace_back(0, 6);
  Graph g(7, e);
  auto t = ThresholdTable::at_level(external(0.05, 0.0), 1, g.max_degree());
  LabeledPartition tri(3, {0, 0, 0, 1, 1, 1, 0});
  auto out = refine_external(g, tri, t, 1);
  ASSERT_TRUE(out.ok()) << out.failure->describe();
  const auto& tr = out.trace;
  EXPECT_EQ(tr.h_deleted, (std::vector<Vertex>{6}));
  EXPECT_EQ(tr.w1, (std::vector<Vertex>{6}));
  ASSERT_EQ(tr.absorbed.size(), 1u);
  EXPECT_EQ(tr.absorbed[0].vertex, 6);
  EXPECT_EQ(tr.absorbed[0].destination, kPartB);
  EXPECT_TRUE(tr.w2.empty());
  EXPECT_EQ(tr.result.label, (std::vector<int>{0, 0, 0, 1, 1, 1, 1}));
  EXPECT_TRUE(tr.w1_accounting_ok);
  EXPECT_EQ(tr.w1_accounting_rhs, 2);
}

TEST(ExternalRefine, RejectsBadZ) {
  auto g = gen_complete(4);
  auto t = ThresholdTable::at_level(external(0.05, 0.0), 1, 3);
  LabeledPartition tri(3, {0, 0, 2, 1});
  auto out = refine_external(g, tri, t, 1);
  ASSERT_FALSE(out.ok());
  EXPECT_EQ(out.failure->witness, 2);
}

TEST(ExternalRefine, RandomGraphsKeepCutInvariants) {
  for (std::uint64_t s = 1; s <= 4; ++s) {
    auto g = gen_gnp(600, 0.08, s);
    auto t = ThresholdTable::at_level(external(0.05, 0.01), 3, g.max_degree());
    TripartitionOptions o;
    o.seed = s;
    o.windows = StageWindows::vacuous();
    for (bool skip : {false, true}) {
      o.skip_maxcut = skip;
      auto res = min_outdegree_tripartition(g, t, o);
      ASSERT_TRUE(res.ok()) << res.failure->describe();
      EXPECT_TRUE(verify_certificate(g, res.tri, res.certificate).pass());
      auto ref = refine_external(g, res.stage.tri, t, derive_seed(s, 0xc0ffee), skip);
      ASSERT_TRUE(ref.ok());
      EXPECT_EQ(ref.trace.result.label, res.tri.label);
      expect_pre_cut(g, t, ref.trace);
      EXPECT_EQ(ref.trace.maxcut_skipped, skip);
      EXPECT_LE(ref.trace.extract_budget.deleted, static_cast<std::size_t>(ref.trace.extract_budget.weighted));
    }
  }
}

TEST(ExternalRefine, ModeMismatchThrows) {
  auto g = gen_cycle(5);
  ParamSet p;
  p.d_override = 1.0;
  auto t = ThresholdTable::build(p, 2);
  EXPECT_THROW(min_outdegree_tripartition(g, t), std::invalid_argument);
}

TEST(ExternalRefine, ZeroSlackIsDiagnosed) {
  auto g = gen_complete(20);
  auto t = ThresholdTable::at_level(external(0.05, 0.0), 1, g.max_degree());
  std::vector<int> label(20);
  for (int v = 0; v < 20; ++v) label[static_cast<std::size_t>(v)] = v % 2;
  auto out = refine_external(g, LabeledPartition(3, label), t, 1);
  ASSERT_FALSE(out.ok());
  EXPECT_NE(out.failure->reason.find("eta is zero"), std::string::npos);
}

// A K5 inside X with no edges to Y is deleted from H, cannot be absorbed and
// goes through the cut; K_{3,3} between X and Y stays.
TEST(ExternalRefine, CliqueReachesTheCut) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (Vertex a = 0; a < 3; ++a)
    for (Vertex b = 3; b < 6; ++b) e.emplace_back(a, b);
  for (Vertex u = 6; u < 11; ++u)
    for (Vertex v = u + 1; v < 11; ++v) e.emplace_back(u, v);
  Graph g(11, e);
  auto t = ThresholdTable::at_level(external(0.05, 1.0), 1, g.max_degree());
  LabeledPartition tri(3, {0, 0, 0, 1, 1, 1, 0, 0, 0, 0, 0});
  auto out = refine_external(g, tri, t, 7);
  ASSERT_TRUE(out.ok()) << out.failure->describe();
  const auto& tr = out.trace;
  EXPECT_EQ(tr.w2, (std::vector<Vertex>{6, 7, 8, 9, 10}));
  EXPECT_TRUE(tr.absorbed.empty());
  expect_pre_cut(g, t, tr);
  int plus = 0;
  for (Vertex x : tr.w2) plus += tr.w_plus[static_cast<std::size_t>(x)];
  EXPECT_TRUE(plus == 2 || plus == 3);
  for (Vertex x : tr.w2) EXPECT_GE(cross_degree(g, LabeledPartition(2, std::vector<int>(tr.result.label.begin(), tr.result.label.end())), x), 2);
  auto skipped = refine_external(g, tri, t, 7, true);
  ASSERT_TRUE(skipped.ok());
  for (Vertex x : tr.w2) EXPECT_EQ(skipped.trace.result[x], kPartA);
}
