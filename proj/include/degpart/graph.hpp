#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace degpart {

using Vertex = std::int32_t;

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Immutable simple undirected graph on vertices 0..n-1 with sorted adjacency.
class Graph {
 public:
  Graph() = default;

  /// Builds from an edge list. Self-loops throw; duplicates are collapsed and
  /// counted in duplicate_count().
  Graph(Vertex n, const std::vector<std::pair<Vertex, Vertex>>& edges) : adj_(n) {
    for (auto [u, v] : edges) {
      if (u < 0 || v < 0 || u >= n || v >= n) throw std::out_of_range("edge endpoint out of range");
      if (u == v) throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
      adj_[u].push_back(v);
      adj_[v].push_back(u);
    }
    std::size_t before = 0, after = 0;
    for (auto& list : adj_) {
      before += list.size();
      std::sort(list.begin(), list.end());
      list.erase(std::unique(list.begin(), list.end()), list.end());
      after += list.size();
    }
    duplicates_ = (before - after) / 2;
    edge_count_ = after / 2;
  }

  Vertex n() const noexcept { return static_cast<Vertex>(adj_.size()); }
  std::size_t m() const noexcept { return edge_count_; }
  std::size_t duplicate_count() const noexcept { return duplicates_; }

  const std::vector<Vertex>& neighbors(Vertex v) const { return adj_.at(static_cast<std::size_t>(v)); }
  int degree(Vertex v) const { return static_cast<int>(neighbors(v).size()); }

  bool has_edge(Vertex u, Vertex v) const {
    const auto& list = neighbors(u);
    return std::binary_search(list.begin(), list.end(), v);
  }

  int min_degree() const {
    int best = n() == 0 ? 0 : degree(0);
    for (Vertex v = 0; v < n(); ++v) best = std::min(best, degree(v));
    return best;
  }
  int max_degree() const {
    int best = 0;
    for (Vertex v = 0; v < n(); ++v) best = std::max(best, degree(v));
    return best;
  }

  /// Edges with u < v, in lexicographic order.
  std::vector<std::pair<Vertex, Vertex>> edges() const {
    std::vector<std::pair<Vertex, Vertex>> out;
    out.reserve(edge_count_);
    for (Vertex u = 0; u < n(); ++u)
      for (Vertex v : adj_[u])
        if (u < v) out.emplace_back(u, v);
    return out;
  }

  /// Order-independent FNV-1a hash over n and the sorted edge set.
  std::string hash() const {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&h](std::uint64_t x) {
      for (int b = 0; b < 8; ++b) {
        h ^= (x >> (8 * b)) & 0xffU;
        h *= 1099511628211ULL;
      }
    };
    mix(static_cast<std::uint64_t>(n()));
    for (auto [u, v] : edges()) {
      mix(static_cast<std::uint64_t>(u));
      mix(static_cast<std::uint64_t>(v));
    }
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = digits[h & 0xfU];
    return out;
  }

 private:
  std::vector<std::vector<Vertex>> adj_;
  std::size_t edge_count_ = 0;
  std::size_t duplicates_ = 0;
};

/// Vertex -> part index for r parts.
struct LabeledPartition {
  int r = 2;
  std::vector<int> label;

  LabeledPartition() = default;
  LabeledPartition(int parts, std::vector<int> labels) : r(parts), label(std::move(labels)) {
    if (r < 1) throw std::invalid_argument("partition needs at least one part");
    for (int l : label)
      if (l < 0 || l >= r) throw std::invalid_argument("label out of range");
  }

  std::size_t n() const noexcept { return label.size(); }
  int operator[](Vertex v) const { return label[static_cast<std::size_t>(v)]; }

  std::vector<std::size_t> sizes() const {
    std::vector<std::size_t> out(static_cast<std::size_t>(r), 0);
    for (int l : label) ++out[static_cast<std::size_t>(l)];
    return out;
  }

  bool is_bisection() const {
    if (r != 2) return false;
    auto s = sizes();
    return (s[0] > s[1] ? s[0] - s[1] : s[1] - s[0]) <= 1;
  }

  std::vector<Vertex> members(int part) const {
    std::vector<Vertex> out;
    for (std::size_t v = 0; v < label.size(); ++v)
      if (label[v] == part) out.push_back(static_cast<Vertex>(v));
    return out;
  }
};

/// Part indices used by every tripartition in the library.
enum TriPart : int { kPartA = 0, kPartB = 1, kPartC = 2 };

/// |N(v) ∩ S| where S is given as a sorted vertex list.
inline int degree_in_set(const Graph& g, Vertex v, const std::vector<Vertex>& sorted_set) {
  if (v < 0 || v >= g.n()) throw std::domain_error("vertex out of range");
  const auto& nb = g.neighbors(v);
  int count = 0;
  auto i = nb.begin();
  auto j = sorted_set.begin();
  while (i != nb.end() && j != sorted_set.end()) {
    if (*i < *j) ++i;
    else if (*j < *i) ++j;
    else { ++count; ++i; ++j; }
  }
  return count;
}

/// |N(v) ∩ S| where S is a membership mask over V(G).
inline int degree_in_mask(const Graph& g, Vertex v, const std::vector<char>& mask) {
  int count = 0;
  for (Vertex u : g.neighbors(v)) count += mask[static_cast<std::size_t>(u)] ? 1 : 0;
  return count;
}

/// Number of neighbors of v carrying label `part`.
inline int degree_into_part(const Graph& g, const LabeledPartition& p, Vertex v, int part) {
  int count = 0;
  for (Vertex u : g.neighbors(v)) count += p[u] == part ? 1 : 0;
  return count;
}

/// Row-major n x r table: entry (v, j) = |N(v) ∩ V_j|. Own-degree is entry (v, label(v)).
struct DegreeProfile {
  int r = 0;
  std::vector<int> counts;

  int into(Vertex v, int part) const { return counts[static_cast<std::size_t>(v) * static_cast<std::size_t>(r) + static_cast<std::size_t>(part)]; }
};

inline DegreeProfile cut_and_internal_profile(const Graph& g, const LabeledPartition& p) {
  if (p.n() != static_cast<std::size_t>(g.n())) throw std::domain_error("partition size does not match graph");
  DegreeProfile out{p.r, std::vector<int>(static_cast<std::size_t>(g.n()) * static_cast<std::size_t>(p.r), 0)};
  for (Vertex v = 0; v < g.n(); ++v)
    for (Vertex u : g.neighbors(v)) ++out.counts[static_cast<std::size_t>(v) * static_cast<std::size_t>(p.r) + static_cast<std::size_t>(p[u])];
  return out;
}

inline int own_degree(const Graph& g, const LabeledPartition& p, Vertex v) { return degree_into_part(g, p, v, p[v]); }
inline int cross_degree(const Graph& g, const LabeledPartition& p, Vertex v) { return g.degree(v) - own_degree(g, p, v); }

inline std::size_t cut_edge_count(const Graph& g, const LabeledPartition& p) {
  std::size_t cut = 0;
  for (auto [u, v] : g.edges()) cut += p[u] != p[v] ? 1 : 0;
  return cut;
}

struct LoadResult {
  Graph graph;
  std::size_t duplicates = 0;
};

namespace detail {

inline long long parse_id(const std::string& tok, std::size_t line) {
  std::size_t pos = 0;
  long long value = 0;
  try {
    value = std::stoll(tok, &pos);
  } catch (const std::exception&) {
    throw ParseError(line, "non-integer token '" + tok + "'");
  }
  if (pos != tok.size()) throw ParseError(line, "non-integer token '" + tok + "'");
  return value;
}

}  // namespace detail

/// Reads either a plain edge list ("u v" per line, '#' comments, optional
/// "# vertices N" directive) or DIMACS ("p edge n m" then "e u v", 1-indexed).
inline LoadResult load_graph(std::istream& in) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  long long declared_n = -1;
  bool dimacs = false;
  long long max_id = -1;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::istringstream ls(raw);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (tok[0][0] == '#') {
      if (tok.size() == 3 && tok[0] == "#" && tok[1] == "vertices") declared_n = detail::parse_id(tok[2], line_no);
      continue;
    }
    if (tok[0] == "c") continue;
    if (tok[0] == "p") {
      if (tok.size() < 4) throw ParseError(line_no, "malformed problem line");
      dimacs = true;
      declared_n = detail::parse_id(tok[2], line_no);
      continue;
    }
    long long u = 0, v = 0;
    if (tok[0] == "e") {
      if (!dimacs) throw ParseError(line_no, "edge line before problem line");
      if (tok.size() != 3) throw ParseError(line_no, "expected 'e u v'");
      u = detail::parse_id(tok[1], line_no) - 1;
      v = detail::parse_id(tok[2], line_no) - 1;
    } else {
      if (tok.size() != 2) throw ParseError(line_no, "expected two vertex ids");
      u = detail::parse_id(tok[0], line_no);
      v = detail::parse_id(tok[1], line_no);
    }
    if (u < 0 || v < 0) throw ParseError(line_no, "negative vertex id");
    if (u == v) throw ParseError(line_no, "self-loop at vertex " + std::to_string(dimacs ? u + 1 : u));
    if (dimacs && (u >= declared_n || v >= declared_n)) throw ParseError(line_no, "vertex id exceeds declared count");
    if (u > INT32_MAX - 1 || v > INT32_MAX - 1) throw ParseError(line_no, "vertex id too large");
    max_id = std::max({max_id, u, v});
    edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  long long n = std::max(max_id + 1, declared_n);
  if (n < 0) n = 0;
  Graph g(static_cast<Vertex>(n), edges);
  std::size_t dup = g.duplicate_count();
  return {std::move(g), dup};
}

inline LoadResult load_graph_text(const std::string& text) {
  std::istringstream in(text);
  return load_graph(in);
}

/// Plain edge-list serialization; the directive line preserves isolated tail vertices.
inline std::string to_edge_list(const Graph& g) {
  std::ostringstream out;
  out << "# vertices " << g.n() << "\n";
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
  return out.str();
}

}  // namespace degpart
