#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "degpart/graph.hpp"

namespace degpart {

// ---------------------------------------------------------------------------
// Unbiased flip local search.

/// side[v] in {0,1} for v in S, -1 elsewhere.
struct SubsetCut {
  std::vector<int> side;
  std::size_t flips = 0;
};

/// Flip local optimum of max-cut on G[S]: every x in S ends with at least as
/// many neighbors across as on its own side (within S).
inline SubsetCut local_maxcut(const Graph& g, const std::vector<char>& in_subset, std::uint64_t seed) {
  const auto n = static_cast<std::size_t>(g.n());
  if (in_subset.size() != n) throw std::invalid_argument("subset mask size mismatch");
  SubsetCut out;
  out.side.assign(n, -1);
  std::mt19937_64 rng(seed);
  for (std::size_t v = 0; v < n; ++v)
    if (in_subset[v]) out.side[v] = static_cast<int>(rng() >> 63);

  std::vector<int> same(n, 0), other(n, 0);
  for (Vertex v = 0; v < g.n(); ++v) {
    auto s = static_cast<std::size_t>(v);
    if (!in_subset[s]) continue;
    for (Vertex u : g.neighbors(v)) {
      auto t = static_cast<std::size_t>(u);
      if (!in_subset[t]) continue;
      (out.side[t] == out.side[s] ? same[s] : other[s])++;
    }
  }
  std::deque<Vertex> work;
  std::vector<char> queued(n, 0);
  for (Vertex v = 0; v < g.n(); ++v)
    if (in_subset[static_cast<std::size_t>(v)]) {
      work.push_back(v);
      queued[static_cast<std::size_t>(v)] = 1;
    }
  while (!work.empty()) {
    Vertex v = work.front();
    work.pop_front();
    auto s = static_cast<std::size_t>(v);
    queued[s] = 0;
    if (same[s] <= other[s]) continue;
    // Each flip raises the cut by same - other >= 1, so the loop terminates.
    out.side[s] ^= 1;
    std::swap(same[s], other[s]);
    ++out.flips;
    for (Vertex u : g.neighbors(v)) {
      auto t = static_cast<std::size_t>(u);
      if (!in_subset[t]) continue;
      if (out.side[t] == out.side[s]) { ++same[t]; --other[t]; }
      else { --same[t]; ++other[t]; }
      if (!queued[t] && same[t] > other[t]) {
        queued[t] = 1;
        work.push_back(u);
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Biased max-r-cut.

/// Bias weights alpha_i = weight_i / denominator, held as exact rationals.
class BiasVector {
 public:
  BiasVector() = default;

  /// From (numerator, denominator) pairs. Entries must be in (0,1) and sum to exactly 1.
  static BiasVector from_rationals(const std::vector<std::pair<std::int64_t, std::int64_t>>& fracs) {
    if (fracs.size() < 2) throw std::invalid_argument("bias vector needs r >= 2 entries");
    std::int64_t den = 1;
    for (auto [p, q] : fracs) {
      if (q <= 0 || p <= 0) throw std::invalid_argument("bias entries must be positive fractions");
      if (p >= q) throw std::invalid_argument("bias entries must be below 1");
      std::int64_t gq = q / std::gcd(p, q);
      den = std::lcm(den, gq);
      if (den > (std::int64_t{1} << 40)) throw std::invalid_argument("bias denominators too large");
    }
    BiasVector b;
    b.den_ = den;
    std::int64_t total = 0;
    for (auto [p, q] : fracs) {
      std::int64_t g = std::gcd(p, q);
      std::int64_t w = (p / g) * (den / (q / g));
      b.w_.push_back(w);
      total += w;
    }
    if (total != den) throw std::invalid_argument("bias entries must sum to exactly 1");
    return b;
  }

  /// Parses "1/3", "0.2", "2" style tokens as exact decimals or fractions.
  static BiasVector parse(const std::vector<std::string>& tokens) {
    std::vector<std::pair<std::int64_t, std::int64_t>> fracs;
    for (const auto& tok : tokens) fracs.push_back(parse_fraction(tok));
    return from_rationals(fracs);
  }

  /// Each double is converted to the nearest fraction with denominator <= 1e6
  /// and must match it within 1e-12.
  static BiasVector from_doubles(const std::vector<double>& alpha) {
    std::vector<std::pair<std::int64_t, std::int64_t>> fracs;
    for (double a : alpha) fracs.push_back(approximate(a));
    return from_rationals(fracs);
  }

  int r() const noexcept { return static_cast<int>(w_.size()); }
  std::int64_t weight(int i) const { return w_.at(static_cast<std::size_t>(i)); }
  std::int64_t denominator() const noexcept { return den_; }
  double alpha(int i) const { return static_cast<double>(weight(i)) / static_cast<double>(den_); }

  std::string to_string() const {
    std::string out;
    for (int i = 0; i < r(); ++i) {
      std::int64_t g = std::gcd(weight(i), den_);
      out += (i ? "," : "") + std::to_string(weight(i) / g) + "/" + std::to_string(den_ / g);
    }
    return out;
  }

 private:
  static std::pair<std::int64_t, std::int64_t> parse_fraction(const std::string& tok) {
    auto slash = tok.find('/');
    try {
      if (slash != std::string::npos) {
        std::size_t a = 0, b = 0;
        std::int64_t p = std::stoll(tok.substr(0, slash), &a);
        std::int64_t q = std::stoll(tok.substr(slash + 1), &b);
        if (a != slash || b != tok.size() - slash - 1) throw std::invalid_argument(tok);
        return {p, q};
      }
      auto dot = tok.find('.');
      std::string digits = tok;
      std::int64_t q = 1;
      if (dot != std::string::npos) {
        std::string frac = tok.substr(dot + 1);
        if (frac.size() > 12) throw std::invalid_argument(tok);
        digits = tok.substr(0, dot) + frac;
        for (std::size_t k = 0; k < frac.size(); ++k) q *= 10;
      }
      std::size_t used = 0;
      std::int64_t p = std::stoll(digits, &used);
      if (used != digits.size()) throw std::invalid_argument(tok);
      return {p, q};
    } catch (const std::exception&) {
      throw std::invalid_argument("cannot parse bias entry '" + tok + "'");
    }
  }

  static std::pair<std::int64_t, std::int64_t> approximate(double a) {
    if (!(a > 0.0 && a < 1.0)) throw std::invalid_argument("bias entries must lie in (0,1)");
    // Continued-fraction convergents.
    std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double x = a;
    for (int it = 0; it < 64; ++it) {
      double fl = std::floor(x);
      auto ai = static_cast<std::int64_t>(fl);
      std::int64_t p2 = ai * p1 + p0, q2 = ai * q1 + q0;
      if (q2 > 1000000) break;
      p0 = p1; q0 = q1; p1 = p2; q1 = q2;
      if (std::abs(static_cast<double>(p1) / static_cast<double>(q1) - a) <= 1e-15) break;
      if (x - fl < 1e-15) break;
      x = 1.0 / (x - fl);
    }
    if (q1 == 0 || std::abs(static_cast<double>(p1) / static_cast<double>(q1) - a) > 1e-12)
      throw std::invalid_argument("bias entry " + std::to_string(a) + " has no small exact fraction");
    return {p1, q1};
  }

  std::vector<std::int64_t> w_;
  std::int64_t den_ = 1;
};

struct RCutResult {
  LabeledPartition partition;
  /// Objective sum_i e(U_i) * L / w_i (L = lcm of weights) after each accepted move,
  /// starting with the initial value.
  std::vector<std::int64_t> objective_log;
  std::size_t moves = 0;
};

/// Scaled objective L * sum_i e(U_i) / w_i, an integer proportional to f.
inline std::int64_t biased_objective(const Graph& g, const LabeledPartition& p, const BiasVector& b) {
  std::int64_t L = 1;
  for (int i = 0; i < b.r(); ++i) L = std::lcm(L, b.weight(i));
  std::vector<std::int64_t> inside(static_cast<std::size_t>(b.r()), 0);
  for (auto [u, v] : g.edges())
    if (p[u] == p[v]) ++inside[static_cast<std::size_t>(p[u])];
  std::int64_t f = 0;
  for (int i = 0; i < b.r(); ++i) f += inside[static_cast<std::size_t>(i)] * (L / b.weight(i));
  return f;
}

/// Single-vertex-move local minimum of f = sum_i e(U_i)/alpha_i over
/// partitions with every part non-empty.
inline RCutResult biased_max_r_cut(const Graph& g, const BiasVector& b, std::uint64_t seed) {
  const int r = b.r();
  if (r > g.n()) throw std::invalid_argument("more parts than vertices");
  const auto n = static_cast<std::size_t>(g.n());
  const auto ru = static_cast<std::size_t>(r);

  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<int> label(n);
  for (std::size_t k = 0; k < n; ++k) label[static_cast<std::size_t>(order[k])] = static_cast<int>(k % ru);

  std::vector<int> cnt(n * ru, 0);
  std::vector<std::size_t> size(ru, 0);
  for (Vertex v = 0; v < g.n(); ++v) {
    ++size[static_cast<std::size_t>(label[static_cast<std::size_t>(v)])];
    for (Vertex u : g.neighbors(v)) ++cnt[static_cast<std::size_t>(v) * ru + static_cast<std::size_t>(label[static_cast<std::size_t>(u)])];
  }
  std::int64_t L = 1;
  for (int i = 0; i < r; ++i) L = std::lcm(L, b.weight(i));
  std::vector<std::int64_t> scale(ru);
  for (int i = 0; i < r; ++i) scale[static_cast<std::size_t>(i)] = L / b.weight(i);

  RCutResult out;
  out.partition = LabeledPartition(r, label);
  std::int64_t f = biased_objective(g, out.partition, b);
  out.objective_log.push_back(f);

  bool changed = true;
  while (changed) {
    changed = false;
    for (Vertex v = 0; v < g.n(); ++v) {
      auto s = static_cast<std::size_t>(v);
      auto i = static_cast<std::size_t>(label[s]);
      if (size[i] < 2) continue;
      // Moving v from U_i to U_j changes f by L (d_j / w_j - d_i / w_i).
      std::int64_t best_delta = 0;
      std::size_t best = i;
      for (std::size_t j = 0; j < ru; ++j) {
        if (j == i) continue;
        std::int64_t delta = cnt[s * ru + j] * scale[j] - cnt[s * ru + i] * scale[i];
        if (delta < best_delta) {
          best_delta = delta;
          best = j;
        }
      }
      if (best == i) continue;
      label[s] = static_cast<int>(best);
      --size[i];
      ++size[best];
      for (Vertex u : g.neighbors(v)) {
        auto t = static_cast<std::size_t>(u);
        --cnt[t * ru + i];
        ++cnt[t * ru + best];
      }
      f += best_delta;
      out.objective_log.push_back(f);
      ++out.moves;
      changed = true;
    }
  }
  out.partition = LabeledPartition(r, std::move(label));
  return out;
}

struct RCutViolation {
  Vertex vertex = -1;
  int own_part = -1;
  int other_part = -1;
};

/// Checks alpha_j d_{U_i}(x) <= alpha_i d_{U_j}(x) for x in non-singleton parts
/// and d_{U_i}(x) <= alpha_i d(x) for all x, with integer cross-multiplication.
inline std::optional<RCutViolation> check_biased_local_optimum(const Graph& g, const LabeledPartition& p, const BiasVector& b) {
  auto prof = cut_and_internal_profile(g, p);
  auto sizes = p.sizes();
  for (Vertex v = 0; v < g.n(); ++v) {
    int i = p[v];
    std::int64_t di = prof.into(v, i);
    if (di * b.denominator() > b.weight(i) * g.degree(v)) return RCutViolation{v, i, -1};
    if (sizes[static_cast<std::size_t>(i)] < 2) continue;
    for (int j = 0; j < p.r; ++j) {
      if (j == i) continue;
      if (b.weight(j) * di > b.weight(i) * static_cast<std::int64_t>(prof.into(v, j))) return RCutViolation{v, i, j};
    }
  }
  return std::nullopt;
}

}  // namespace degpart
