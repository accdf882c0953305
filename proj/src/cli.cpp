#include "homophily/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "homophily/experiments.hpp"
#include "homophily/generators.hpp"
#include "homophily/io.hpp"
#include "homophily/metrics.hpp"
#include "homophily/prune.hpp"
#include "homophily/serialize.hpp"
#include "homophily/verify.hpp"

namespace homophily::cli {

namespace {

namespace fs = std::filesystem;
using serialize::json;

struct GraphFlags {
  std::vector<std::string> edges;
  std::vector<std::string> attrs;
  std::string red_label = "R";
  std::string blue_label = "B";

  io::LabelNames labels() const { return {red_label, blue_label}; }
};

struct Options {
  GraphFlags graph;
  std::string backend = "exact";
  std::string prune = "none";
  std::string singular;
  std::string require = "both";
  std::string out;
  std::string format = "json";
  std::string spec;
  std::uint64_t seed = 0;
  std::size_t bins = kDefaultBins;
  std::size_t threads = 0;
  std::size_t replicates = 5;
  std::size_t random_graphs = 1000;
  std::vector<double> sigma_grid;
  std::vector<double> lambda_grid;
  double lambda = 0;
  double sigma = 0;
};

void add_graph_flags(CLI::App* cmd, GraphFlags& g, bool many) {
  auto* e = cmd->add_option("--edges", g.edges, "edge-list file")->required()->check(CLI::ExistingFile);
  auto* a = cmd->add_option("--attrs", g.attrs, "attribute CSV (node_id,type)")->required()->check(CLI::ExistingFile);
  if (!many) {
    e->expected(1);
    a->expected(1);
  }
  cmd->add_option("--red-label", g.red_label, "attribute value for red nodes")->capture_default_str();
  cmd->add_option("--blue-label", g.blue_label, "attribute value for blue nodes")->capture_default_str();
}

void add_prune_flag(CLI::App* cmd, Options& o) {
  cmd->add_option("--prune", o.prune, "none: as loaded; list: relaxed singular means; strict: prune then strict")
      ->check(CLI::IsMember({"none", "list", "strict"}))
      ->capture_default_str();
  cmd->add_option("--singular", o.singular, "override the singular-mean policy")
      ->check(CLI::IsMember({"strict", "relaxed"}));
  cmd->add_option("--require", o.require, "colors every node must neighbor when pruning")
      ->check(CLI::IsMember({"both", "red", "blue"}))
      ->capture_default_str();
}

void add_format_flag(CLI::App* cmd, Options& o) {
  cmd->add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
}

void emit(std::ostream& out, const std::string& path, const std::string& contents) {
  if (path.empty())
    out << contents;
  else
    io::write_text_file(path, contents);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void check_output_parent(const std::string& path) {
  if (path.empty()) return;
  const fs::path parent = fs::path(path).parent_path();
  if (!parent.empty() && !fs::is_directory(parent))
    throw InputError("output directory does not exist: " + parent.string());
}

std::set<NodeColor> required_colors(const std::string& require) {
  if (require == "red") return {NodeColor::Red};
  if (require == "blue") return {NodeColor::Blue};
  return {NodeColor::Red, NodeColor::Blue};
}

SingularPolicy singular_policy(const Options& o) {
  if (!o.singular.empty()) return o.singular == "strict" ? SingularPolicy::Strict : SingularPolicy::Relaxed;
  return o.prune == "list" ? SingularPolicy::Relaxed : SingularPolicy::Strict;
}

ConfigModelSpec read_spec(const std::string& path, std::uint64_t seed) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open spec file: " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("spec file " + path + " is not valid JSON: " + e.what());
  }
  ConfigModelSpec spec = serialize::config_spec(j);
  spec.seed = seed;
  return spec;
}

struct LoadedGraph {
  BuildResult built;
  std::optional<PruneResult> pruned;
  std::optional<RetentionStats> retention;

  const TypedGraph& graph() const { return pruned ? pruned->graph : built.graph; }
};

LoadedGraph load(const Options& o, bool prune) {
  LoadedGraph g{io::load_graph(o.graph.edges.front(), o.graph.attrs.front(), o.graph.labels()), {}, {}};
  if (prune) {
    g.pruned = prune_bichromatic(g.built.graph, required_colors(o.require));
    g.retention = retention_stats(g.built.graph, *g.pruned, g.built.report);
  }
  return g;
}

void fail_on_strict_undefined(const GapReport& report) {
  if (report.policy != SingularPolicy::Strict) return;
  for (NodeColor c : {NodeColor::Red, NodeColor::Blue}) {
    for (const Quantity* q : {&report.of(c).sing_same, &report.of(c).sing_other}) {
      if (!q->defined && q->reason_code == "seed_without_target_neighbor")
        throw InputError("singular mean undefined: " + q->reason +
                         " (use --prune strict to remove such nodes or --prune list to skip them)");
    }
  }
}

void check_theorem(const HomophilyProfile& profile, const GapReport& report, const BalanceCheck& balance) {
  if (report.backend == Backend::Exact) {
    for (NodeColor c : {NodeColor::Red, NodeColor::Blue}) {
      const Quantity& gap = report.of(c).gap_list;
      if (profile.stats(c).has_diversity() && gap.defined && gap.sign() <= 0)
        throw InvariantViolation(std::string("theorem violated: ") + color_name(c) + " gap " +
                                 to_fraction_string(*gap.exact) + " is not positive although sigma > 0");
    }
  }
  if (!balance.holds)
    throw InvariantViolation("balance identity violated: " + to_fraction_string(balance.lhs) +
                             " != " + to_fraction_string(balance.rhs));
}

void csv_quantity(std::ostream& out, const std::string& name, const Quantity& q) {
  out << name << ',' << (q.defined ? "defined" : "undefined") << ','
      << (q.defined && q.exact ? to_fraction_string(*q.exact) : "") << ','
      << (q.defined ? serialize::number(q.approx) : "") << ',' << q.reason_code << '\n';
}

std::string analyze_csv(const HomophilyProfile& profile, const GapReport& report) {
  std::ostringstream out;
  out << "quantity,status,exact,approx,reason\n";
  for (NodeColor c : {NodeColor::Red, NodeColor::Blue}) {
    const std::string cn = color_name(c);
    const ColorStats& s = profile.stats(c);
    if (s.defined()) {
      csv_quantity(out, "lambda_" + cn, s.lambda ? Quantity::of(*s.lambda) : Quantity::of(s.lambda_approx));
      csv_quantity(out, "sigma_" + cn, Quantity::of(s.sigma));
    } else {
      csv_quantity(out, "lambda_" + cn, Quantity::undefined("no_defined_homophily", ""));
      csv_quantity(out, "sigma_" + cn, Quantity::undefined("no_defined_homophily", ""));
    }
    const ColorGaps& g = report.of(c);
    csv_quantity(out, cn + ".list_same", g.list_same);
    csv_quantity(out, cn + ".list_other", g.list_other);
    csv_quantity(out, cn + ".sing_same", g.sing_same);
    csv_quantity(out, cn + ".sing_other", g.sing_other);
    csv_quantity(out, cn + ".gap_list", g.gap_list);
    csv_quantity(out, cn + ".gap_sing", g.gap_sing);
  }
  return out.str();
}

int cmd_analyze(const Options& o, std::ostream& out) {
  if (o.graph.edges.size() != o.graph.attrs.size())
    throw InputError("--edges and --attrs must be given the same number of times");
  check_output_parent(o.out);

  if (o.graph.edges.size() > 1) {
    std::vector<GraphInput> inputs;
    for (std::size_t i = 0; i < o.graph.edges.size(); ++i)
      inputs.push_back({fs::path(o.graph.edges[i]).stem().string(), o.graph.edges[i], o.graph.attrs[i]});
    const EmpiricalBatch batch = empirical_batch(inputs, o.graph.labels(), o.prune == "strict");
    emit(out, o.out, o.format == "csv" ? serialize::empirical_csv(batch) : dump(serialize::empirical(batch)));
    return kExitOk;
  }

  const LoadedGraph loaded = load(o, o.prune == "strict");
  const TypedGraph& graph = loaded.graph();
  const Backend backend = o.backend == "float" ? Backend::Float : Backend::Exact;
  const SingularPolicy policy = singular_policy(o);

  const HomophilyProfile profile(graph, backend);
  const GapReport report = gap_report(graph, profile, backend, policy);
  fail_on_strict_undefined(report);
  const HomophilyProfile exact_profile = backend == Backend::Exact ? profile : HomophilyProfile(graph, Backend::Exact);
  const BalanceCheck balance = balance_check(graph, exact_profile);
  check_theorem(profile, report, balance);

  if (o.format == "csv") {
    emit(out, o.out, analyze_csv(profile, report));
    return kExitOk;
  }

  json j;
  j["graph"] = {{"nodes", graph.node_count()},
                {"edges", graph.edge_count()},
                {"red_nodes", graph.color_count(NodeColor::Red)},
                {"blue_nodes", graph.color_count(NodeColor::Blue)},
                {"red_red_edges", count_edges_between(graph, NodeColor::Red, NodeColor::Red)},
                {"red_blue_edges", count_edges_between(graph, NodeColor::Red, NodeColor::Blue)},
                {"blue_blue_edges", count_edges_between(graph, NodeColor::Blue, NodeColor::Blue)}};
  j["ingestion"] = serialize::validation(loaded.built.report);
  j["pruning"] = loaded.pruned ? serialize::prune_summary(*loaded.pruned, *loaded.retention) : json(nullptr);
  j["first_order"] = {{"red", serialize::color_stats(profile.stats(NodeColor::Red))},
                      {"blue", serialize::color_stats(profile.stats(NodeColor::Blue))}};
  j["gaps"] = serialize::gap_report(report);
  j["balance"] = serialize::balance(balance);
  json versus = json::object();
  for (NodeColor c : {NodeColor::Red, NodeColor::Blue}) {
    const SecondVsFirst s = second_vs_first(graph, profile, c, backend, policy);
    versus[color_name(c)] = {{"list", serialize::quantity(s.list_version)},
                             {"singular", serialize::quantity(s.singular_version)}};
  }
  j["second_vs_first"] = versus;
  try {
    j["friendship_paradox"] = serialize::friendship(friendship_paradox_stats(graph));
  } catch (const InputError&) {
    j["friendship_paradox"] = nullptr;
  }
  emit(out, o.out, dump(j));
  return kExitOk;
}

int cmd_prune(const Options& o, std::ostream& out) {
  check_output_parent(o.out);
  const LoadedGraph loaded = load(o, true);
  std::ostringstream edges, attrs;
  io::write_edge_list(loaded.pruned->graph, edges);
  io::write_attributes(loaded.pruned->graph, o.graph.labels(), attrs);
  io::write_text_file(o.out + ".edges", edges.str());
  io::write_text_file(o.out + ".csv", attrs.str());
  const std::string summary = dump(serialize::prune_summary(*loaded.pruned, *loaded.retention));
  io::write_text_file(o.out + ".json", summary);
  out << "kept " << loaded.pruned->graph.node_count() << " of " << loaded.built.graph.node_count()
      << " nodes after " << loaded.pruned->passes << " passes\n";
  return kExitOk;
}

int cmd_generate(const Options& o, std::ostream& out) {
  check_output_parent(o.out);
  const ConfigModelSpec spec = read_spec(o.spec, o.seed);
  const GeneratedGraph generated = double_configuration_model(spec);
  std::ostringstream edges, attrs;
  io::write_edge_list(generated.graph, edges);
  io::write_attributes(generated.graph, o.graph.labels(), attrs);
  io::write_text_file(o.out + ".edges", edges.str());
  io::write_text_file(o.out + ".csv", attrs.str());
  io::write_text_file(o.out + ".json", dump(serialize::generation(spec, generated)));
  out << "generated " << generated.graph.node_count() << " nodes, " << generated.graph.edge_count()
      << " edges (blue degree " << generated.blue_degree << ", " << generated.log.erased_edges
      << " edges erased)\n";
  return kExitOk;
}

std::vector<double> default_sigma_grid() {
  std::vector<double> grid;
  for (int i = 1; i <= 16; ++i) grid.push_back(0.0125 * i);
  return grid;
}

int cmd_sweep(const Options& o, std::ostream& out) {
  check_output_parent(o.out);
  if (o.replicates == 0) throw InputError("--replicates must be at least 1");
  const ConfigModelSpec base = read_spec(o.spec, o.seed);
  const std::vector<double> sigmas = o.sigma_grid.empty() ? default_sigma_grid() : o.sigma_grid;
  for (double s : sigmas)
    if (!(s >= 0.0)) throw InputError("sigma grid values must be >= 0");
  const SweepTable table = o.lambda_grid.empty()
                               ? sweep_sigma(base, sigmas, o.replicates, o.seed, o.threads)
                               : sweep_lambda_sigma(base, o.lambda_grid, sigmas, o.replicates, o.seed, o.threads);
  emit(out, o.out, o.format == "csv" ? serialize::sweep_csv(table) : dump(serialize::sweep(table)));
  return kExitOk;
}

int cmd_predict(const Options& o, std::ostream& out) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f\n", predicted_gap(o.lambda, o.sigma));
  out << buf;
  return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  const TheoremCheckSummary s = verify_random_graphs(o.random_graphs, o.seed);
  out << s.graphs_passed << '/' << s.graphs << " positive-gap checks passed\n";
  out << "  color checks: " << s.positive_gap_checks << " positive-gap, " << s.zero_gap_checks << " zero-gap, "
      << s.equivalence_checks << " closed-form, " << s.balance_checks << " balance\n";
  for (const auto& f : s.failures) err << "violation: " << f << '\n';
  return s.ok() ? kExitOk : kExitInvariantViolation;
}

int cmd_hist(const Options& o, std::ostream& out) {
  check_output_parent(o.out);
  if (o.bins == 0) throw InputError("--bins must be at least 1");
  const LoadedGraph loaded = load(o, o.prune == "strict");
  const auto series = homophily_histograms(loaded.graph(), o.bins);
  if (o.format == "csv")
    io::write_text_file(o.out + ".csv", serialize::histograms_csv(series));
  else
    io::write_text_file(o.out + ".json", dump(serialize::histograms(series)));
  for (const auto& s : series) io::write_text_file(o.out + "_" + s.name + ".svg", histogram_svg(s.histogram, s.name));
  out << "wrote " << series.size() << " histograms\n";
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Homophily statistics for two-type graphs", "homophily"};
  app.require_subcommand(1);
  Options o;

  auto* analyze = app.add_subcommand("analyze", "first- and second-order homophily of one or more graphs");
  add_graph_flags(analyze, o.graph, true);
  analyze->add_option("--backend", o.backend, "arithmetic backend")
      ->check(CLI::IsMember({"exact", "float"}))
      ->capture_default_str();
  add_prune_flag(analyze, o);
  analyze->add_option("--out", o.out, "output file (default: stdout)");
  add_format_flag(analyze, o);

  auto* prune = app.add_subcommand("prune", "prune to nodes with neighbors of every required color");
  add_graph_flags(prune, o.graph, false);
  prune->add_option("--require", o.require, "colors every node must neighbor")
      ->check(CLI::IsMember({"both", "red", "blue"}))
      ->capture_default_str();
  prune->add_option("--out", o.out, "output prefix for .edges, .csv and .json")->required();

  auto* generate = app.add_subcommand("generate", "double configuration model graph from a JSON spec");
  generate->add_option("--spec", o.spec, "JSON spec file")->required()->check(CLI::ExistingFile);
  generate->add_option("--seed", o.seed, "master seed")->required();
  generate->add_option("--out", o.out, "output prefix for .edges, .csv and .json")->required();
  generate->add_option("--red-label", o.graph.red_label, "attribute value for red nodes")->capture_default_str();
  generate->add_option("--blue-label", o.graph.blue_label, "attribute value for blue nodes")->capture_default_str();

  auto* sweep = app.add_subcommand("sweep", "simulated versus predicted gap over a parameter grid");
  sweep->add_option("--spec", o.spec, "JSON spec file")->required()->check(CLI::ExistingFile);
  sweep->add_option("--seed", o.seed, "master seed")->required();
  sweep->add_option("--sigma-grid", o.sigma_grid, "red sigma values (default 0.0125 .. 0.2)")->delimiter(',');
  sweep->add_option("--lambda-grid", o.lambda_grid, "red lambda values; enables the 2-D grid")->delimiter(',');
  sweep->add_option("--replicates", o.replicates, "replicates per grid point")->capture_default_str();
  sweep->add_option("--threads", o.threads, "worker cap (0: available parallelism)")->capture_default_str();
  sweep->add_option("--out", o.out, "output file (default: stdout)");
  add_format_flag(sweep, o);

  auto* predict = app.add_subcommand("predict", "closed-form red gap for normal homophily");
  predict->add_option("--lambda", o.lambda, "mean red homophily")->required();
  predict->add_option("--sigma", o.sigma, "sd of red homophily")->required();

  auto* verify = app.add_subcommand("verify", "exact gap-theorem checks on random graphs");
  verify->add_option("--random-graphs", o.random_graphs, "number of graphs")->capture_default_str();
  verify->add_option("--seed", o.seed, "master seed")->required();

  auto* hist = app.add_subcommand("hist", "homophily histograms with SVG plots");
  add_graph_flags(hist, o.graph, false);
  add_prune_flag(hist, o);
  hist->add_option("--bins", o.bins, "bins on [0, 1]")->capture_default_str();
  hist->add_option("--out", o.out, "output prefix")->required();
  add_format_flag(hist, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitInputError;
  }

  try {
    if (*analyze) return cmd_analyze(o, out);
    if (*prune) return cmd_prune(o, out);
    if (*generate) return cmd_generate(o, out);
    if (*sweep) return cmd_sweep(o, out);
    if (*predict) return cmd_predict(o, out);
    if (*verify) return cmd_verify(o, out, err);
    return cmd_hist(o, out);
  } catch (const InvariantViolation& e) {
    err << "invariant violation: " << e.what() << '\n';
    return kExitInvariantViolation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
}

}  // namespace homophily::cli
