#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"

#include "degpart/generators.hpp"
#include "degpart/pipelines.hpp"

namespace degpart {

inline constexpr const char* kBenchSchema = "degpart-bench-v1";

struct BenchEntry {
  std::string generator;             ///< generator spec, see generate()
  std::string operation = "bisect_internal";  ///< bisect_internal | bisect_external
  ParamSet params;
  std::vector<std::uint64_t> seeds{1};
  std::optional<StageWindows> windows;
};

struct BenchRow {
  std::string kind;  ///< pipeline | baseline
  std::string generator, operation;
  std::uint64_t seed = 0;
  int n = 0;
  std::size_t m = 0;
  int min_degree = 0, max_degree = 0;
  std::string mode;
  double c = 0, eps = 0, d = 0;
  bool ok = true, guaranteed = false;
  std::string failure;
  PartitionStats stats;
  double runtime_ms = 0;
  std::vector<int> labels;
};

inline std::string bench_header(bool emit_labels) {
  std::string h =
      "schema,kind,generator,operation,seed,n,m,min_degree,max_degree,mode,c,eps,d,ok,guaranteed,failure,"
      "min_own,min_cross,min_own_ratio,min_cross_ratio,cut_edges,avg_cut_degree,runtime_ms";
  if (emit_labels) h += ",labels";
  return h;
}

namespace detail {

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return out + "\"";
}

}  // namespace detail

inline std::string bench_row_csv(const BenchRow& r, bool emit_labels) {
  std::ostringstream o;
  o.precision(10);
  o << kBenchSchema << ',' << r.kind << ',' << detail::csv_field(r.generator) << ',' << r.operation << ',' << r.seed << ','
    << r.n << ',' << r.m << ',' << r.min_degree << ',' << r.max_degree << ',' << r.mode << ',' << r.c << ',' << r.eps << ','
    << r.d << ',' << (r.ok ? 1 : 0) << ',' << (r.guaranteed ? 1 : 0) << ',' << detail::csv_field(r.failure) << ','
    << r.stats.min_own << ',' << r.stats.min_cross << ',' << r.stats.min_own_ratio << ',' << r.stats.min_cross_ratio << ','
    << r.stats.cut_edges << ',' << r.stats.avg_cut_degree << ',' << r.runtime_ms;
  if (emit_labels) {
    std::string lab;
    for (int l : r.labels) lab += static_cast<char>('0' + l);
    o << ',' << lab;
  }
  return o.str();
}

/// One manifest run: the pipeline row and the paired random-bisection row.
inline std::pair<BenchRow, BenchRow> bench_run(const BenchEntry& e, std::uint64_t seed) {
  BenchRow row, base;
  row.kind = "pipeline";
  base.kind = "baseline";
  for (BenchRow* r : {&row, &base}) {
    r->generator = e.generator;
    r->operation = r == &row ? e.operation : "random_bisection";
    r->seed = seed;
    r->mode = to_string(e.params.mode);
    r->c = e.params.c;
    r->eps = e.params.eps;
  }
  try {
    Graph g = generate(e.generator, seed);
    for (BenchRow* r : {&row, &base}) {
      r->n = g.n();
      r->m = g.m();
      r->min_degree = g.min_degree();
      r->max_degree = g.max_degree();
      r->d = e.params.d();
    }
    auto t0 = std::chrono::steady_clock::now();
    PipelineOptions opt;
    opt.seed = seed;
    opt.windows = e.windows;
    PipelineReport rep;
    if (e.operation == "bisect_internal") rep = bisect_internal(g, e.params, opt);
    else if (e.operation == "bisect_external") rep = bisect_external(g, e.params, opt);
    else throw std::invalid_argument("unsupported bench operation '" + e.operation + "'");
    auto t1 = std::chrono::steady_clock::now();
    row.runtime_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    row.ok = rep.ok();
    row.guaranteed = rep.guaranteed;
    if (rep.failure) row.failure = rep.failure->describe();
    row.stats = rep.stats;
    row.labels = rep.partition.label;

    auto b0 = std::chrono::steady_clock::now();
    auto rb = random_bisection(g, seed);
    base.stats = partition_stats(g, rb);
    base.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - b0).count();
    base.labels = rb.label;
  } catch (const std::exception& ex) {
    row.ok = base.ok = false;
    row.failure = base.failure = std::string("error: ") + ex.what();
  }
  return {row, base};
}

/// Worker count from DEGPART_WORKERS, else the hardware concurrency.
inline unsigned default_workers() {
  if (const char* env = std::getenv("DEGPART_WORKERS")) {
    int w = std::atoi(env);
    if (w > 0) return static_cast<unsigned>(w);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs every (entry, seed) pair on a bounded worker pool and writes the CSV
/// (header, then rows in manifest order) through one writer.
inline std::vector<BenchRow> bench_sweep(const std::vector<BenchEntry>& manifest, std::ostream* out = nullptr,
                                         unsigned workers = 0, bool emit_labels = false) {
  std::vector<std::pair<std::size_t, std::uint64_t>> jobs;
  for (std::size_t i = 0; i < manifest.size(); ++i)
    for (auto s : manifest[i].seeds) jobs.emplace_back(i, s);
  std::vector<std::pair<BenchRow, BenchRow>> results(jobs.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t j; (j = next.fetch_add(1)) < jobs.size();)
      results[j] = bench_run(manifest[jobs[j].first], jobs[j].second);
  };
  unsigned w = std::min<unsigned>(workers ? workers : default_workers(), static_cast<unsigned>(std::max<std::size_t>(1, jobs.size())));
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < w; ++k) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  std::vector<BenchRow> rows;
  for (auto& [a, b] : results) {
    rows.push_back(std::move(a));
    rows.push_back(std::move(b));
  }
  if (out) {
    *out << bench_header(emit_labels) << '\n';
    for (const auto& r : rows) *out << bench_row_csv(r, emit_labels) << '\n';
  }
  return rows;
}

/// Manifest JSON: [{"generator": "...", "operation": "...", "mode": "int", "c": 0, "eps": 0.25,
/// "d": 1 (optional), "relaxed": false, "seeds": [1,2], "vacuous_windows": false}, ...]
inline std::vector<BenchEntry> parse_manifest(const nlohmann::json& j) {
  if (!j.is_array()) throw std::invalid_argument("manifest must be a JSON array");
  std::vector<BenchEntry> out;
  for (const auto& item : j) {
    BenchEntry e;
    e.generator = item.at("generator").get<std::string>();
    e.operation = item.value("operation", "bisect_internal");
    std::string mode = item.value("mode", e.operation == "bisect_external" ? "ext" : "int");
    if (mode != "int" && mode != "ext") throw std::invalid_argument("mode must be int or ext");
    e.params.mode = mode == "int" ? Mode::internal : Mode::external;
    e.params.c = item.value("c", 0.0);
    e.params.eps = item.value("eps", 0.25);
    if (item.contains("d")) e.params.d_override = item["d"].get<double>();
    e.params.relaxed = item.value("relaxed", false);
    e.params.validate();
    if (item.contains("seeds")) e.seeds = item["seeds"].get<std::vector<std::uint64_t>>();
    if (item.value("vacuous_windows", false)) e.windows = StageWindows::vacuous();
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace degpart
