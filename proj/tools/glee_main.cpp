#include <CLI11.hpp>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <string>
#include <vector>

#include "glee/bench.hpp"
#include "glee/embedding.hpp"
#include "glee/generators.hpp"
#include "glee/graph.hpp"
#include "glee/linkpred.hpp"
#include "glee/parallel.hpp"
#include "glee/reconstruction.hpp"
#include "glee/report.hpp"
#include "glee/spectral.hpp"
#include "glee/textio.hpp"
#include "glee/threshold.hpp"

namespace {

using nlohmann::ordered_json;

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void require_readable(const std::string& path) {
  if (!std::filesystem::exists(path))
    throw UsageError("input file does not exist: " + path);
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  return out;
}

void emit_error(const std::string& kind, const std::string& message) {
  ordered_json j;
  j["schema"] = "glee-error/1";
  j["error"] = {{"kind", kind}, {"message", message}};
  std::cerr << j.dump() << '\n';
}

/// Resolved-config echo; goes to stdout so every run records its inputs.
void emit_run_record(const std::string& command, const ordered_json& config) {
  ordered_json j;
  j["schema"] = "glee-run/1";
  j["command"] = command;
  j["config"] = config;
  std::cout << j.dump() << '\n';
}

std::string csv_config_line(const ordered_json& config) {
  return "# config=" + config.dump();
}

struct EmbedArgs {
  std::string in, out;
  int dim = 0;
  std::string method = "glee";
  std::uint64_t seed = 0;
};

int run_embed(const EmbedArgs& a) {
  require_readable(a.in);
  const glee::Graph g = glee::Graph::load_edge_list_file(a.in);
  glee::Embedding e;
  if (a.method == "glee")
    e = glee::glee_embed(g, a.dim, a.seed);
  else if (a.method == "le")
    e = glee::le_embed(g, a.dim);
  else
    throw UsageError("unknown embedding method: '" + a.method + "'");
  glee::write_embedding_file(a.out, e);

  ordered_json config{{"in", a.in},       {"dim", a.dim},
                      {"method", a.method}, {"seed", a.seed},
                      {"out", a.out},     {"n", g.node_count()},
                      {"m", g.edge_count()}};
  emit_run_record("embed", config);
  return 0;
}

struct ReconstructArgs {
  std::string emb, truth;
  std::string estimator = "kde";
  double bandwidth = 0.3;
  std::string m_hat = "auto";
  std::uint64_t seed = 0;
  std::uint64_t max_pairs = glee::kDefaultMaxPairs;
  std::vector<std::uint64_t> ks;
  std::string out_csv, out_json;
  bool timings = false;
};

std::vector<std::uint64_t> default_ks(std::uint64_t m, std::uint64_t cap) {
  std::vector<std::uint64_t> ks;
  for (std::uint64_t base = 1; base <= cap; base *= 10)
    for (const std::uint64_t mult : {1ULL, 2ULL, 5ULL}) {
      const std::uint64_t k = base * mult;
      if (k <= cap && k <= 2 * m) ks.push_back(k);
    }
  if (m >= 1 && m <= cap) ks.push_back(m);
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  return ks;
}

int run_reconstruct(const ReconstructArgs& a) {
  const auto t0 = std::chrono::steady_clock::now();
  require_readable(a.emb);
  require_readable(a.truth);
  const glee::Embedding e = glee::read_embedding_file(a.emb);
  const glee::Graph g = glee::Graph::load_edge_list_file(a.truth);

  const auto sample = glee::collect_dot_products(e, a.max_pairs, a.seed);
  std::uint64_t m_hat = 0;
  if (a.m_hat == "auto")
    m_hat = glee::m_hat_default(sample);
  else if (a.m_hat == "nlogn")
    m_hat = glee::m_hat_nlogn(e.node_count());
  else
    try {
      const long long v = glee::parse_int(a.m_hat);
      if (v < 0) throw std::runtime_error("negative");
      m_hat = static_cast<std::uint64_t>(v);
    } catch (const std::runtime_error&) {
      throw UsageError("--m-hat must be auto, nlogn or a nonnegative integer");
    }

  glee::ThresholdEstimate theta;
  switch (glee::theta_method_from_name(a.estimator)) {
    case glee::ThetaMethod::constant:
      theta = glee::theta_constant();
      break;
    case glee::ThetaMethod::kde:
      theta = glee::theta_kde(sample, a.bandwidth);
      break;
    case glee::ThetaMethod::gmm:
      theta = glee::theta_gmm(sample, m_hat, a.seed);
      break;
    case glee::ThetaMethod::oracle:
      theta = glee::theta_oracle(e, g);
      break;
  }

  const glee::ReconstructionResult result = glee::reconstruct(e, theta);
  const double loss = glee::reconstruction_loss(e, g, theta);

  std::vector<std::uint64_t> ks = a.ks;
  if (ks.empty())
    ks = default_ks(g.edge_count(),
                    std::min<std::uint64_t>(result.ranked_pairs.size(),
                                            glee::pair_count(g.node_count())));
  const glee::EvalReport precision = glee::precision_at_k(result, g, ks);

  ordered_json config{{"emb", a.emb},
                      {"truth", a.truth},
                      {"estimator", a.estimator},
                      {"bandwidth", a.bandwidth},
                      {"m_hat", a.m_hat},
                      {"seed", a.seed},
                      {"max_pairs", a.max_pairs}};

  // CSV: one row per k, fixed column order.
  {
    std::ostringstream csv;
    csv << "# schema=glee-precision-csv/1\n" << csv_config_line(config) << '\n';
    csv << "k,precision\n";
    for (const auto& pt : precision.series)
      csv << static_cast<std::uint64_t>(pt.x) << ','
          << glee::format_double(pt.mean) << '\n';
    if (a.out_csv.empty()) {
      std::cout << csv.str();
    } else {
      open_output(a.out_csv) << csv.str();
    }
  }

  ordered_json sidecar;
  sidecar["schema"] = "glee-reconstruct/1";
  sidecar["config"] = config;
  sidecar["theta"] = theta.theta;
  sidecar["theta_method"] = glee::theta_method_name(theta.method);
  sidecar["fallback"] = theta.fallback;
  ordered_json diag = ordered_json::object();
  for (const auto& [k, v] : theta.diagnostics) diag[k] = v;
  sidecar["diagnostics"] = diag;
  sidecar["m_hat"] = m_hat;
  sidecar["loss"] = loss;
  sidecar["predicted_count"] = result.predicted_count;
  if (a.timings)
    sidecar["runtime_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(
            std::chrono::steady_clock::now() - t0)
            .count();
  if (!a.out_json.empty()) open_output(a.out_json) << sidecar.dump(2) << '\n';

  emit_run_record("reconstruct", config);
  return 0;
}

struct LinkpredArgs {
  std::string in;
  std::string method = "cn";
  int dim = 0;
  int trials = 10;
  std::uint64_t seed = 0;
  double train_frac = 0.75;
  std::string estimator = "kde";
  double bandwidth = 0.3;
  std::uint64_t max_pairs = glee::kDefaultMaxPairs;
  bool cn_average = false;
  std::string out_csv, out_json;
};

int run_linkpred(const LinkpredArgs& a) {
  require_readable(a.in);
  const glee::Graph g =
      glee::Graph::load_edge_list_file(a.in).largest_connected_component();

  glee::LinkPredOptions options;
  options.train_fraction = a.train_frac;
  options.estimator = glee::theta_method_from_name(a.estimator);
  options.bandwidth = a.bandwidth;
  options.max_pairs = a.max_pairs;
  options.cn_average_both_sides = a.cn_average;

  const glee::EvalReport report = glee::link_prediction_experiment(
      g, a.dim, glee::linkpred_method_from_name(a.method), a.trials, a.seed,
      options);

  ordered_json config{{"in", a.in},
                      {"method", a.method},
                      {"dim", a.dim},
                      {"trials", a.trials},
                      {"seed", a.seed},
                      {"train_frac", a.train_frac},
                      {"estimator", a.estimator},
                      {"bandwidth", a.bandwidth},
                      {"max_pairs", a.max_pairs},
                      {"cn_average", a.cn_average},
                      {"n", g.node_count()},
                      {"m", g.edge_count()}};

  const auto& point = report.series.front();
  {
    std::ostringstream csv;
    csv << "# schema=glee-linkpred-csv/1\n" << csv_config_line(config) << '\n';
    csv << "trial,auc\n";
    for (std::size_t t = 0; t < point.raw.size(); ++t)
      csv << t << ',' << glee::format_double(point.raw[t]) << '\n';
    if (a.out_csv.empty()) {
      std::cout << csv.str();
    } else {
      open_output(a.out_csv) << csv.str();
    }
  }
  if (!a.out_json.empty()) {
    ordered_json j;
    j["schema"] = "glee-linkpred/1";
    j["config"] = config;
    j["mean"] = point.mean;
    j["stddev"] = point.stddev;
    j["report"] = glee::report_to_json(report);
    open_output(a.out_json) << j.dump(2) << '\n';
  }

  emit_run_record("linkpred", config);
  return 0;
}

struct GenerateArgs {
  std::string model = "er";
  int n = 0;
  double mean_degree = 0.0;
  double gamma = 2.3;
  std::uint64_t seed = 0;
  std::string out;
};

int run_generate(const GenerateArgs& a) {
  glee::GeneratorSpec spec;
  spec.model = glee::graph_model_from_name(a.model);
  spec.n = a.n;
  spec.target_mean_degree = a.mean_degree;
  spec.gamma = a.gamma;
  spec.seed = a.seed;
  const glee::Graph g = glee::generate(spec);

  ordered_json config{{"model", a.model}, {"n", a.n},
                      {"mean_degree", a.mean_degree}, {"gamma", a.gamma},
                      {"seed", a.seed},   {"out", a.out},
                      {"lcc_n", g.node_count()}, {"lcc_m", g.edge_count()}};

  auto out = open_output(a.out);
  out << "# model=" << a.model << " n=" << a.n
      << " mean_degree=" << glee::format_double(a.mean_degree);
  if (spec.model == glee::GraphModel::hg)
    out << " gamma=" << glee::format_double(a.gamma);
  out << " seed=" << a.seed << '\n';
  g.serialize(out);

  emit_run_record("generate", config);
  return 0;
}

struct BenchArgs {
  std::vector<std::string> models{"er", "ba", "hg"};
  std::vector<int> dims{32, 128, 512};
  int trials = 20;
  std::uint64_t seed = 0;
  int n = 1000;
  double mean_degree = 8.0;
  double gamma = 2.3;
  std::uint64_t max_pairs = glee::kDefaultMaxPairs;
  double bandwidth = 0.3;
  std::string out, out_csv;
};

int run_bench(const BenchArgs& a) {
  std::vector<glee::GeneratorSpec> specs;
  for (const auto& name : a.models) {
    glee::GeneratorSpec spec;
    spec.model = glee::graph_model_from_name(name);
    spec.n = a.n;
    spec.target_mean_degree = a.mean_degree;
    spec.gamma = a.gamma;
    specs.push_back(spec);
  }
  glee::BenchOptions options;
  options.max_pairs = a.max_pairs;
  options.bandwidth = a.bandwidth;
  const auto reports =
      glee::estimator_benchmark(specs, a.dims, a.trials, a.seed, options);

  ordered_json config{{"models", a.models}, {"dims", a.dims},
                      {"trials", a.trials}, {"seed", a.seed},
                      {"n", a.n},           {"mean_degree", a.mean_degree},
                      {"gamma", a.gamma},   {"max_pairs", a.max_pairs},
                      {"bandwidth", a.bandwidth}};

  ordered_json j;
  j["schema"] = "glee-estimator-bench/1";
  j["config"] = config;
  ordered_json arr = ordered_json::array();
  for (const auto& r : reports) arr.push_back(glee::report_to_json(r));
  j["reports"] = std::move(arr);
  if (a.out.empty()) {
    std::cout << j.dump(2) << '\n';
  } else {
    open_output(a.out) << j.dump(2) << '\n';
  }

  if (!a.out_csv.empty()) {
    auto csv = open_output(a.out_csv);
    csv << "# schema=glee-estimator-bench-csv/1\n"
        << csv_config_line(config) << '\n';
    csv << "model,estimator,dim,mean,stddev,normalized\n";
    for (const auto& r : reports) {
      std::string model, estimator;
      for (const auto& [k, v] : r.params) {
        if (k == "model") model = v;
        if (k == "estimator") estimator = v;
      }
      for (const auto& pt : r.series)
        csv << model << ',' << estimator << ',' << static_cast<int>(pt.x)
            << ',' << glee::format_double(pt.mean) << ','
            << glee::format_double(pt.stddev) << ','
            << glee::format_double(pt.normalized) << '\n';
    }
  }

  emit_run_record("estimator-bench", config);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral graph embedding, reconstruction and link prediction"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "worker thread cap (0 = hardware)");

  EmbedArgs embed_args;
  auto* embed = app.add_subcommand("embed", "compute a node embedding");
  embed->add_option("--in", embed_args.in, "edge list file")->required();
  embed->add_option("--dim", embed_args.dim, "embedding dimension")->required();
  embed->add_option("--method", embed_args.method, "glee or le");
  embed->add_option("--seed", embed_args.seed, "random seed");
  embed->add_option("--out", embed_args.out, "output embedding file")->required();

  ReconstructArgs rec_args;
  auto* rec = app.add_subcommand("reconstruct",
                                 "threshold reconstruction and precision@k");
  rec->add_option("--emb", rec_args.emb, "embedding file")->required();
  rec->add_option("--truth", rec_args.truth, "true edge list")->required();
  rec->add_option("--estimator", rec_args.estimator,
                  "constant, kde, gmm or oracle");
  rec->add_option("--bandwidth", rec_args.bandwidth, "kde bandwidth");
  rec->add_option("--m-hat", rec_args.m_hat,
                  "edge count estimate: auto, nlogn or an integer");
  rec->add_option("--seed", rec_args.seed, "random seed");
  rec->add_option("--max-pairs", rec_args.max_pairs,
                  "dot product sample cap");
  rec->add_option("--ks", rec_args.ks, "precision@k positions")
      ->delimiter(',');
  rec->add_option("--out-csv", rec_args.out_csv,
                  "precision CSV path (default: stdout)");
  rec->add_option("--out-json", rec_args.out_json, "JSON sidecar path");
  rec->add_flag("--timings", rec_args.timings,
                "include wall-clock runtime in the sidecar");

  LinkpredArgs lp_args;
  auto* lp = app.add_subcommand("linkpred", "link prediction AUC experiment");
  lp->add_option("--in", lp_args.in, "edge list file")->required();
  lp->add_option("--method", lp_args.method, "cn, l3 or le");
  lp->add_option("--dim", lp_args.dim, "embedding dimension")->required();
  lp->add_option("--trials", lp_args.trials, "number of trials");
  lp->add_option("--seed", lp_args.seed, "master seed");
  lp->add_option("--train-frac", lp_args.train_frac, "train edge fraction");
  lp->add_option("--estimator", lp_args.estimator,
                 "neighborhood threshold estimator");
  lp->add_option("--bandwidth", lp_args.bandwidth, "kde bandwidth");
  lp->add_option("--max-pairs", lp_args.max_pairs, "dot product sample cap");
  lp->add_flag("--cn-average", lp_args.cn_average,
               "average both one-sided cn forms");
  lp->add_option("--out-csv", lp_args.out_csv,
                 "per-trial CSV path (default: stdout)");
  lp->add_option("--out-json", lp_args.out_json, "summary JSON path");

  GenerateArgs gen_args;
  auto* gen = app.add_subcommand("generate", "random graph generation");
  gen->add_option("--model", gen_args.model, "er, ba or hg")->required();
  gen->add_option("--n", gen_args.n, "node count")->required();
  gen->add_option("--mean-degree", gen_args.mean_degree, "target mean degree")
      ->required();
  gen->add_option("--gamma", gen_args.gamma, "degree exponent (hg)");
  gen->add_option("--seed", gen_args.seed, "random seed");
  gen->add_option("--out", gen_args.out, "output edge list")->required();

  BenchArgs bench_args;
  auto* bench = app.add_subcommand("estimator-bench",
                                   "threshold estimator benchmark");
  bench->add_option("--models", bench_args.models, "graph models")
      ->delimiter(',');
  bench->add_option("--dims", bench_args.dims, "embedding dimensions")
      ->delimiter(',');
  bench->add_option("--trials", bench_args.trials, "trials per cell");
  bench->add_option("--seed", bench_args.seed, "master seed");
  bench->add_option("--n", bench_args.n, "nodes per graph");
  bench->add_option("--mean-degree", bench_args.mean_degree,
                    "target mean degree");
  bench->add_option("--gamma", bench_args.gamma, "degree exponent (hg)");
  bench->add_option("--max-pairs", bench_args.max_pairs,
                    "dot product sample cap");
  bench->add_option("--bandwidth", bench_args.bandwidth, "kde bandwidth");
  bench->add_option("--out", bench_args.out, "JSON report path");
  bench->add_option("--out-csv", bench_args.out_csv, "CSV flattening path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::ostringstream msg;
    // CLI11's own message, routed through the structured error record.
    msg << e.what();
    emit_error("usage", msg.str());
    return kExitUsage;
  }

  glee::set_max_threads(threads);
  try {
    if (embed->parsed()) return run_embed(embed_args);
    if (rec->parsed()) return run_reconstruct(rec_args);
    if (lp->parsed()) return run_linkpred(lp_args);
    if (gen->parsed()) return run_generate(gen_args);
    if (bench->parsed()) return run_bench(bench_args);
    emit_error("usage", "no subcommand given");
    return kExitUsage;
  } catch (const UsageError& e) {
    emit_error("usage", e.what());
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    emit_error("usage", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    emit_error("runtime", e.what());
    return kExitRuntime;
  }
}
