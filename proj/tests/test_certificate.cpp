#include <gtest/gtest.h>

#include "degpart/claims.hpp"
#include "degpart/certificate.hpp"
#include "degpart/generators.hpp"

using namespace degpart;

namespace {

Certificate k4_certificate(const Graph& g) {
  auto cert = make_certificate(g, 2, {{"seed", 1}});
  cert.claims.push_back(constant_claim(ClaimKind::own_degree, "own >= 1", {0, 1}, 1));
  cert.claims.push_back(constant_claim(ClaimKind::cross_degree, "cross >= 2", {0, 1}, 2));
  cert.claims.push_back(balanced_claim());
  return cert;
}

}  // namespace

TEST(Certificate, PassesOnK4Bisection) {
  auto g = gen_complete(4);
  LabeledPartition p(2, {0, 0, 1, 1});
  auto cert = k4_certificate(g);
  auto r = verify_certificate(g, p, cert);
  EXPECT_TRUE(r.pass()) << r.message;
  EXPECT_EQ(cert.environment["version"], kLibraryVersion);
}

TEST(Certificate, FailsWithWitness) {
  auto g = gen_complete(4);
  LabeledPartition p(2, {0, 0, 0, 1});
  auto r = verify_certificate(g, p, k4_certificate(g));
  EXPECT_EQ(r.status, VerifyStatus::fail);
  EXPECT_EQ(r.failing_claim, 0);
  EXPECT_EQ(r.witness, 3);
}

TEST(Certificate, RefusesOtherGraphOrShape) {
  auto g = gen_complete(4);
  auto cert = k4_certificate(g);
  EXPECT_EQ(verify_certificate(gen_cycle(4), LabeledPartition(2, {0, 0, 1, 1}), cert).status, VerifyStatus::refused);
  EXPECT_EQ(verify_certificate(g, LabeledPartition(3, {0, 0, 1, 2}), cert).status, VerifyStatus::refused);
  EXPECT_EQ(verify_certificate(g, LabeledPartition(2, {0, 1, 1}), cert).status, VerifyStatus::refused);
}

TEST(Certificate, DegreeTableClaim) {
  // K_{3,5}: degrees 5 on {0,1,2}, 3 on the rest.
  auto g = gen_complete_bipartite(3, 5);
  LabeledPartition p(2, {0, 0, 0, 1, 1, 1, 1, 1});
  auto c = degree_claim(ClaimKind::cross_degree, "cross", {0, 1}, g, [](int d) { return d == 5 ? 5LL : 3LL; });
  EXPECT_EQ(c.by_degree.size(), 2u);
  EXPECT_EQ(c.threshold_for(4), 0);
  auto cert = make_certificate(g, 2, nlohmann::json::object());
  cert.claims.push_back(c);
  EXPECT_TRUE(verify_certificate(g, p, cert).pass());
  p.label[0] = 1;
  EXPECT_FALSE(verify_certificate(g, p, cert).pass());
}

TEST(Certificate, CountedClaim) {
  auto g = gen_cycle(6);
  LabeledPartition p(2, {0, 0, 0, 1, 1, 1});
  Claim c = constant_claim(ClaimKind::own_degree, "own 2, counted", {0, 1}, 2);
  c.min_count = 2;
  auto cert = make_certificate(g, 2, nlohmann::json::object());
  cert.claims.push_back(c);
  EXPECT_TRUE(verify_certificate(g, p, cert).pass());
  cert.claims[0].min_count = 3;
  EXPECT_FALSE(verify_certificate(g, p, cert).pass());
}

TEST(Certificate, SizeAndCutClaims) {
  auto g = gen_cycle(6);
  LabeledPartition p(3, {0, 0, 1, 1, 2, 2});
  auto cert = make_certificate(g, 3, nlohmann::json::object());
  cert.claims.push_back(size_window_claim("part 0", 0, 0.3, 0.34, 6));
  cert.claims.push_back(constant_claim(ClaimKind::cut_edges, "cut", {}, 3));
  EXPECT_EQ(cert.claims[0].lo, 2);
  EXPECT_EQ(cert.claims[0].hi, 2);
  EXPECT_TRUE(verify_certificate(g, p, cert).pass());
  cert.claims[1].constant = 4;
  EXPECT_FALSE(verify_certificate(g, p, cert).pass());
  cert.claims[1].constant = 3;
  cert.claims.push_back(balanced_claim());
  EXPECT_FALSE(verify_certificate(g, p, cert).pass());
}

TEST(Certificate, IntoPartClaimNeedsValidTarget) {
  auto g = gen_cycle(4);
  LabeledPartition p(2, {0, 1, 0, 1});
  auto cert = make_certificate(g, 2, nlohmann::json::object());
  cert.claims.push_back(constant_claim(ClaimKind::degree_into_part, "into 5", {0}, 1, 5));
  EXPECT_FALSE(verify_certificate(g, p, cert).pass());
}

TEST(Certificate, JsonRoundTrip) {
  auto g = gen_complete_bipartite(3, 5);
  auto cert = make_certificate(g, 2, {{"eps", 0.25}});
  cert.claims.push_back(degree_claim(ClaimKind::cross_degree, "cross", {0, 1}, g, [](int d) { return d / 2; }));
  Claim counted = constant_claim(ClaimKind::own_degree, "counted", {1}, 1);
  counted.min_count = 3;
  cert.claims.push_back(counted);
  cert.claims.push_back(size_window_claim("size", 1, 0.1, 0.9, 8));
  auto back = certificate_from_json(nlohmann::json::parse(to_json(cert).dump()));
  EXPECT_EQ(back.graph_hash, cert.graph_hash);
  EXPECT_EQ(back.n, 8u);
  ASSERT_EQ(back.claims.size(), 3u);
  EXPECT_EQ(back.claims[0].by_degree, cert.claims[0].by_degree);
  EXPECT_EQ(back.claims[1].min_count, 3);
  EXPECT_EQ(back.claims[2].lo, cert.claims[2].lo);
  EXPECT_EQ(back.claims[2].hi, cert.claims[2].hi);
  EXPECT_EQ(back.environment["eps"], 0.25);
  EXPECT_THROW(claim_kind_from_string("nope"), std::invalid_argument);
}

TEST(Certificate, WitnessIsMinimumSlack) {
  auto g = gen_complete_bipartite(1, 3);
  LabeledPartition p(2, {0, 1, 1, 1});
  auto cert = make_certificate(g, 2, nlohmann::json::object());
  cert.claims.push_back(constant_claim(ClaimKind::cross_degree, "cross", {0, 1}, 1));
  annotate_witnesses(g, p, cert);
  EXPECT_EQ(cert.claims[0].witness, 1);
}
