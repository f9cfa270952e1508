#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "degpart/bench.hpp"
#include "degpart/certificate.hpp"
#include "degpart/generators.hpp"
#include "degpart/graph.hpp"
#include "degpart/oracle.hpp"
#include "degpart/pipelines.hpp"
#include "degpart/thresholds.hpp"

using namespace degpart;

namespace {

constexpr int kExitVerifyFail = 1;
constexpr int kExitParam = 2;

struct ParamError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Graph read_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParamError("cannot open graph file '" + path + "'");
  auto res = load_graph(in);
  if (res.duplicates) std::cerr << "note: " << res.duplicates << " duplicate edges collapsed\n";
  return std::move(res.graph);
}

nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParamError("cannot open '" + path + "'");
  return nlohmann::json::parse(in);
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw ParamError("cannot write '" + path + "'");
  out << text;
}

Mode parse_mode(const std::string& s) {
  if (s == "int") return Mode::internal;
  if (s == "ext") return Mode::external;
  throw ParamError("mode must be int or ext");
}

std::optional<double> parse_d(const std::string& s) {
  if (s == "paper") return std::nullopt;
  try {
    std::size_t used = 0;
    double d = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return d;
  } catch (const std::exception&) {
    throw ParamError("--d-const must be 'paper' or a real number");
  }
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');) out.push_back(item);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"degree-constrained bisections and tripartitions"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate a graph as an edge list");
  std::string gen_spec, gen_out;
  std::uint64_t gen_seed = 1;
  gen->add_option("spec", gen_spec, "gnp:n=..,p=.. | ko:n=..,l=.. | kbip:d=..,n=.. | complete:n=.. | cycle:n=.. | petersen")->required();
  gen->add_option("--seed", gen_seed);
  gen->add_option("--out", gen_out);

  // partition
  auto* part = app.add_subcommand("partition", "run a construction and emit a certificate");
  std::string p_graph, p_mode = "int", p_shape = "bisect", p_alpha, p_d = "paper", p_out, p_report;
  double p_c = 0.0, p_eps = 0.25;
  std::optional<int> p_k;
  std::uint64_t p_seed = 1;
  int p_retries = 64;
  bool p_relaxed = false, p_vacuous = false, p_no_patch = false, p_skip_cut = false, p_cut_average = false;
  part->add_option("--graph", p_graph)->required();
  part->add_option("--mode", p_mode)->check(CLI::IsMember({"int", "ext"}));
  part->add_option("--shape", p_shape)->check(CLI::IsMember({"bisect", "tripart", "rpart"}));
  part->add_option("--c", p_c);
  part->add_option("--eps", p_eps);
  part->add_option("--k", p_k, "level k for the exact-k statements");
  part->add_option("--alpha", p_alpha, "comma-separated part fractions for rpart, e.g. 1/3,2/3");
  part->add_option("--d-const", p_d, "'paper' or a real override");
  part->add_option("--seed", p_seed);
  part->add_option("--retries", p_retries, "stage-one attempt budget");
  part->add_option("--out", p_out, "certificate JSON (with labels)");
  part->add_option("--report", p_report, "full report JSON including traces");
  part->add_flag("--relaxed", p_relaxed, "skip the eps hypothesis check");
  part->add_flag("--vacuous-windows", p_vacuous, "stage-one windows (0, n) and unlimited weight");
  part->add_flag("--no-patch", p_no_patch, "disable the internal patch step");
  part->add_flag("--skip-maxcut", p_skip_cut, "put all of W2 on one side (external)");
  part->add_flag("--cut-average", p_cut_average, "with --shape bisect --k: split C at floor(n/2) - |A|");

  // verify
  auto* ver = app.add_subcommand("verify", "re-check a certificate against a graph");
  std::string v_graph, v_cert, v_labels;
  ver->add_option("--graph", v_graph)->required();
  ver->add_option("--cert", v_cert)->required();
  ver->add_option("--partition", v_labels, "labels JSON; defaults to the labels stored with the certificate");

  // oracle
  auto* ora = app.add_subcommand("oracle", "exhaustive ground truth on small instances");
  std::string o_graph, o_obj = "min-own-degree", o_ko;
  ora->add_option("--graph", o_graph);
  ora->add_option("--objective", o_obj)->check(CLI::IsMember({"min-own-degree", "min-cross-degree", "min-own-ratio", "min-cross-ratio"}));
  ora->add_option("--ko", o_ko, "n,l,k for the Kuhn-Osthus existence check");

  // bench
  auto* ben = app.add_subcommand("bench", "run a manifest sweep and write CSV");
  std::string b_manifest, b_out;
  unsigned b_workers = 0;
  bool b_labels = false;
  ben->add_option("--manifest", b_manifest)->required();
  ben->add_option("--out", b_out);
  ben->add_option("--workers", b_workers, "default: DEGPART_WORKERS or hardware concurrency");
  ben->add_flag("--emit-labels", b_labels);

  // thresholds
  auto* thr = app.add_subcommand("thresholds", "dump the threshold table as CSV");
  std::string t_mode = "int", t_d = "paper", t_out;
  double t_c = 0.0, t_eps = 0.25;
  int t_max = 100;
  std::optional<int> t_level;
  bool t_relaxed = false, t_series = false;
  thr->add_option("--mode", t_mode)->check(CLI::IsMember({"int", "ext"}));
  thr->add_option("--c", t_c);
  thr->add_option("--eps", t_eps);
  thr->add_option("--d-const", t_d);
  thr->add_option("--max-degree", t_max);
  thr->add_option("--level", t_level, "constant level k");
  thr->add_option("--out", t_out);
  thr->add_flag("--relaxed", t_relaxed);
  thr->add_flag("--series", t_series, "also check the series bound for the constant");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitParam;
  }

  try {
    if (*gen) {
      write_text(gen_out, to_edge_list(generate(gen_spec, gen_seed)));
      return 0;
    }

    if (*part) {
      Graph g = read_graph(p_graph);
      PipelineOptions opt;
      opt.seed = p_seed;
      opt.attempts = p_retries;
      opt.apply_patch = !p_no_patch;
      opt.skip_maxcut = p_skip_cut;
      if (p_vacuous) opt.windows = StageWindows::vacuous();
      ParamSet prm;
      prm.c = p_c;
      prm.eps = p_eps;
      prm.d_override = parse_d(p_d);
      prm.mode = parse_mode(p_mode);
      prm.relaxed = p_relaxed;
      PipelineReport rep;
      if (p_shape == "rpart") {
        if (p_alpha.empty()) throw ParamError("--shape rpart needs --alpha");
        rep = r_partition(g, BiasVector::parse(split_commas(p_alpha)), prm.mode, opt);
      } else if (p_shape == "tripart") {
        if (p_k) {
          rep = tripartition_exact(g, *p_k, prm, opt);
        } else {
          auto t = ThresholdTable::build(prm, g.max_degree());
          TripartitionOptions to;
          to.seed = opt.seed;
          to.attempts = opt.attempts;
          to.windows = opt.windows;
          to.apply_patch = opt.apply_patch;
          to.skip_maxcut = opt.skip_maxcut;
          auto tr = prm.mode == Mode::internal ? min_indegree_tripartition(g, t, to) : min_outdegree_tripartition(g, t, to);
          rep.operation = prm.mode == Mode::internal ? "min_indegree_tripartition" : "min_outdegree_tripartition";
          rep.mode = prm.mode;
          rep.params = tr.certificate.environment;
          rep.partition = tr.tri;
          rep.certificate = tr.certificate;
          rep.failure = tr.failure;
          rep.stats = partition_stats(g, tr.tri);
          rep.diagnostics["trace"] = tr.trace;
          rep.diagnostics["preconditions_ok"] = tr.preconditions_ok;
        }
      } else if (p_k) {
        if (p_cut_average) rep = bisect_with_cut_average(g, *p_k, prm, opt);
        else rep = bisect_dual(g, *p_k, prm.eps, prm.mode == Mode::internal ? Primary::internal : Primary::external, opt,
                               prm.d_override, prm.relaxed);
      } else {
        rep = prm.mode == Mode::internal ? bisect_internal(g, prm, opt) : bisect_external(g, prm, opt);
      }
      auto cert = to_json(rep.certificate);
      cert["partition"] = {{"r", rep.partition.r}, {"labels", rep.partition.label}};
      if (!p_out.empty()) write_text(p_out, cert.dump(2) + "\n");
      if (!p_report.empty()) write_text(p_report, to_json(rep).dump(2) + "\n");
      nlohmann::json summary{{"operation", rep.operation}, {"ok", rep.ok()}, {"guaranteed", rep.guaranteed},
                             {"stats", to_json(rep.stats)}};
      if (rep.failure) summary["failure"] = rep.failure->describe();
      std::cout << summary.dump() << "\n";
      return rep.ok() ? 0 : kExitVerifyFail;
    }

    if (*ver) {
      Graph g = read_graph(v_graph);
      auto cj = read_json(v_cert);
      Certificate cert = certificate_from_json(cj);
      nlohmann::json pj = v_labels.empty() ? cj.at("partition") : read_json(v_labels);
      if (pj.is_array()) pj = nlohmann::json{{"r", cert.r}, {"labels", pj}};
      LabeledPartition p(pj.at("r").get<int>(), pj.at("labels").get<std::vector<int>>());
      auto res = verify_certificate(g, p, cert);
      std::cout << (res.status == VerifyStatus::pass ? "PASS" : res.status == VerifyStatus::fail ? "FAIL" : "REFUSED") << ": "
                << res.message << "\n";
      return res.pass() ? 0 : kExitVerifyFail;
    }

    if (*ora) {
      if (!o_ko.empty()) {
        auto v = split_commas(o_ko);
        if (v.size() != 3) throw ParamError("--ko expects n,l,k");
        auto r = ko_bisection_exists(std::stoi(v[0]), std::stoi(v[1]), std::stoi(v[2]));
        nlohmann::json j{{"exists", r.exists}, {"vertices", r.vertices}, {"refuted", r.checked}};
        if (r.witness) j["witness"] = r.witness->label;
        std::cout << j.dump() << "\n";
        return 0;
      }
      if (o_graph.empty()) throw ParamError("oracle needs --graph or --ko");
      Graph g = read_graph(o_graph);
      auto r = best_bisection(g, objective_from_string(o_obj));
      nlohmann::json j{{"objective", o_obj}, {"value", r.value.value()}, {"num", r.value.num}, {"den", r.value.den},
                       {"bisections", r.bisections}, {"witness", r.witness.label}};
      std::cout << j.dump() << "\n";
      return 0;
    }

    if (*ben) {
      auto manifest = parse_manifest(read_json(b_manifest));
      std::ostringstream csv;
      bench_sweep(manifest, &csv, b_workers, b_labels);
      write_text(b_out, csv.str());
      return 0;
    }

    if (*thr) {
      ParamSet prm;
      prm.c = t_c;
      prm.eps = t_eps;
      prm.d_override = parse_d(t_d);
      prm.mode = parse_mode(t_mode);
      prm.relaxed = t_relaxed;
      auto t = t_level ? ThresholdTable::at_level(prm, *t_level, t_max) : ThresholdTable::build(prm, t_max);
      write_text(t_out, t.to_csv());
      if (t_series) {
        auto s = verify_series_bound(t.d_constant(), prm.eps, 100000);
        std::cerr << "series bound " << (s.holds ? "holds" : "fails") << ": log(sum) <= "
                  << detail::log_add(s.log_partial_sum, s.log_tail_bound) << " vs log target " << s.log_target << "\n";
      }
      return 0;
    }
  } catch (const ParamError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParam;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParam;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParam;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParam;
  }
  return 0;
}
