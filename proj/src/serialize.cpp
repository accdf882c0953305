#include "homophily/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace homophily::serialize {

namespace {

json optional_number(const std::optional<double>& x) { return x ? json(*x) : json(nullptr); }

std::string optional_cell(const std::optional<double>& x) { return x ? number(*x) : std::string(); }

std::string csv_text(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

json color_gaps(const ColorGaps& g) {
  return {{"list_same", quantity(g.list_same)},   {"list_other", quantity(g.list_other)},
          {"sing_same", quantity(g.sing_same)},   {"sing_other", quantity(g.sing_other)},
          {"gap_list", quantity(g.gap_list)},     {"gap_sing", quantity(g.gap_sing)},
          {"skipped_same", g.skipped_same},       {"skipped_other", g.skipped_other}};
}

template <class T>
T required(const json& j, const char* key) {
  if (!j.contains(key)) throw InputError(std::string("spec is missing '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw InputError(std::string("spec key '") + key + "' has the wrong type");
  }
}

}  // namespace

std::string number(double x) {
  if (std::isnan(x)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

json quantity(const Quantity& q) {
  if (!q.defined) return {{"status", "undefined"}, {"reason", q.reason_code}, {"detail", q.reason}};
  json j = {{"status", "defined"}};
  if (q.exact) j["exact"] = to_fraction_string(*q.exact);
  j["approx"] = q.approx;
  return j;
}

json gap_report(const GapReport& report) {
  return {{"backend", report.backend == Backend::Exact ? "exact" : "float"},
          {"singular_policy", report.policy == SingularPolicy::Strict ? "strict" : "relaxed"},
          {"red", color_gaps(report.red)},
          {"blue", color_gaps(report.blue)}};
}

json color_stats(const ColorStats& s) {
  json j = {{"nodes", s.node_count}, {"defined", s.defined_count}};
  if (!s.defined()) {
    j["lambda"] = nullptr;
    j["sigma"] = nullptr;
    return j;
  }
  j["lambda"] = s.lambda ? quantity(Quantity::of(*s.lambda)) : quantity(Quantity::of(s.lambda_approx));
  j["variance"] = s.variance ? quantity(Quantity::of(*s.variance)) : quantity(Quantity::of(s.variance_approx));
  j["sigma"] = s.sigma;
  return j;
}

json validation(const ValidationReport& r) {
  return {{"self_loops_removed", r.self_loops_removed},
          {"duplicate_edges_collapsed", r.duplicate_edges_collapsed},
          {"unlabeled_nodes_dropped", r.unlabeled_nodes_dropped},
          {"isolated_nodes", r.isolated_nodes},
          {"violations", r.violations}};
}

json balance(const BalanceCheck& b) {
  return {{"lhs", to_fraction_string(b.lhs)}, {"rhs", to_fraction_string(b.rhs)}, {"holds", b.holds}};
}

json friendship(const FriendshipParadoxStats& s) {
  return {{"nodes_included", s.nodes_included},
          {"mean_degree", quantity(Quantity::of(s.mean_degree))},
          {"mean_neighbor_degree_list", quantity(Quantity::of(s.mean_neighbor_degree_list))},
          {"mean_neighbor_degree_singular", quantity(Quantity::of(s.mean_neighbor_degree_singular))},
          {"degree_homophily_correlation_red", optional_number(s.degree_homophily_correlation_red)},
          {"degree_homophily_correlation_blue", optional_number(s.degree_homophily_correlation_blue)}};
}

json prune_summary(const PruneResult& result, const RetentionStats& retention) {
  return {{"passes", result.passes},
          {"nodes_after", result.graph.node_count()},
          {"edges_after", result.graph.edge_count()},
          {"removed_nodes", result.removed_nodes},
          {"labeled_fraction", retention.labeled_fraction},
          {"retained_fraction", retention.retained_fraction}};
}

ConfigModelSpec config_spec(const json& j) {
  if (!j.is_object()) throw InputError("spec must be a JSON object");
  ConfigModelSpec s;
  s.n = required<std::size_t>(j, "n");
  if (j.contains("k")) {
    s.k = required<std::size_t>(j, "k");
  } else if (j.contains("r")) {
    const double r = required<double>(j, "r");
    if (!(r > 0.0 && r < 1.0)) throw InputError("spec 'r' must lie in (0, 1)");
    s.k = static_cast<std::size_t>(std::llround(r * static_cast<double>(s.n)));
  } else {
    throw InputError("spec needs 'k' or 'r'");
  }
  s.d = required<std::size_t>(j, "d");
  if (j.contains("c") && !j.at("c").is_null()) s.c = required<std::size_t>(j, "c");
  s.lambda_red = required<double>(j, "lambda_r");
  s.sigma_red = required<double>(j, "sigma_r");
  s.lambda_blue = required<double>(j, "lambda_b");
  s.sigma_blue = required<double>(j, "sigma_b");
  if (j.contains("seed")) s.seed = required<std::uint64_t>(j, "seed");
  if (j.contains("max_rewire_attempts")) s.max_rewire_attempts = required<std::size_t>(j, "max_rewire_attempts");
  s.validate();
  return s;
}

json config_spec_json(const ConfigModelSpec& s) {
  json j = {{"n", s.n},
            {"k", s.k},
            {"d", s.d},
            {"lambda_r", s.lambda_red},
            {"sigma_r", s.sigma_red},
            {"lambda_b", s.lambda_blue},
            {"sigma_b", s.sigma_blue},
            {"seed", s.seed},
            {"max_rewire_attempts", s.max_rewire_attempts}};
  j["c"] = s.c ? json(*s.c) : json(nullptr);
  return j;
}

json generation(const ConfigModelSpec& spec, const GeneratedGraph& g) {
  const HomophilyProfile profile(g.graph, Backend::Float);
  auto realized = [&](NodeColor c) {
    const ColorStats& s = profile.stats(c);
    return json{{"lambda", s.lambda_approx}, {"sigma", s.sigma}, {"nodes", s.node_count}};
  };
  return {{"spec", config_spec_json(spec)},
          {"blue_degree", g.blue_degree},
          {"blue_degree_exact",
           spec.c ? static_cast<double>(*spec.c)
                  : derive_blue_degree(spec.n, spec.k, static_cast<double>(spec.d), spec.lambda_red,
                                       spec.lambda_blue)},
          {"nodes", g.graph.node_count()},
          {"edges", g.graph.edge_count()},
          {"realized", {{"red", realized(NodeColor::Red)}, {"blue", realized(NodeColor::Blue)}}},
          {"mean_abs_delta", {{"red", g.mean_abs_delta_red}, {"blue", g.mean_abs_delta_blue}}},
          {"stub_repairs", {{"red", g.red_plan.repair_log.size()}, {"blue", g.blue_plan.repair_log.size()}}},
          {"clashes", g.log.clashes},
          {"rewires", g.log.rewires},
          {"erased_edges", g.log.erased_edges},
          {"erased_stubs", g.log.erased_stubs},
          {"warnings", g.log.warnings}};
}

std::string sweep_csv(const SweepTable& table) {
  std::ostringstream out;
  out << "n,k,d,c,lambda_red,sigma_red,lambda_blue,sigma_blue,replicates,gap_list_mean,gap_list_sd,"
         "gap_sing_mean,gap_sing_sd,predicted,realized_lambda_red,realized_sigma_red,erased_edges,"
         "skipped_seeds,clipping_regime,prediction_deviates,error\n";
  for (const auto& r : table.rows) {
    out << r.n << ',' << r.k << ',' << r.d << ',' << r.c << ',' << number(r.lambda_red) << ','
        << number(r.sigma_red) << ',' << number(r.lambda_blue) << ',' << number(r.sigma_blue) << ','
        << r.replicates << ',' << number(r.gap_list_mean) << ',' << number(r.gap_list_sd) << ','
        << number(r.gap_sing_mean) << ',' << number(r.gap_sing_sd) << ',' << number(r.predicted) << ','
        << number(r.realized_lambda_red) << ',' << number(r.realized_sigma_red) << ',' << r.erased_edges
        << ',' << r.skipped_seeds << ',' << (r.clipping_regime ? 1 : 0) << ','
        << (r.prediction_deviates ? 1 : 0) << ',' << csv_text(r.error) << '\n';
  }
  return out.str();
}

json sweep(const SweepTable& table) {
  json rows = json::array();
  for (const auto& r : table.rows) {
    rows.push_back({{"n", r.n},
                    {"k", r.k},
                    {"d", r.d},
                    {"c", r.c},
                    {"lambda_red", r.lambda_red},
                    {"sigma_red", r.sigma_red},
                    {"lambda_blue", r.lambda_blue},
                    {"sigma_blue", r.sigma_blue},
                    {"replicates", r.replicates},
                    {"gap_list_mean", r.gap_list_mean},
                    {"gap_list_sd", r.gap_list_sd},
                    {"gap_sing_mean", r.gap_sing_mean},
                    {"gap_sing_sd", r.gap_sing_sd},
                    {"predicted", r.predicted},
                    {"realized_lambda_red", r.realized_lambda_red},
                    {"realized_sigma_red", r.realized_sigma_red},
                    {"erased_edges", r.erased_edges},
                    {"skipped_seeds", r.skipped_seeds},
                    {"clipping_regime", r.clipping_regime},
                    {"prediction_deviates", r.prediction_deviates},
                    {"error", r.error}});
  }
  return {{"rows", rows}};
}

std::string empirical_csv(const EmpiricalBatch& batch) {
  std::ostringstream out;
  out << "name,nodes,edges,prune_passes,retained_fraction,lambda_red,sigma_red,lambda_blue,sigma_blue,"
         "gap_red,gap_blue,gap_red_sing,gap_blue_sing\n";
  for (const auto& r : batch.rows) {
    out << csv_text(r.name) << ',' << r.nodes << ',' << r.edges << ',' << r.prune_passes << ','
        << number(r.retained_fraction) << ',' << number(r.lambda_red) << ',' << number(r.sigma_red) << ','
        << number(r.lambda_blue) << ',' << number(r.sigma_blue) << ',' << optional_cell(r.gap_red) << ','
        << optional_cell(r.gap_blue) << ',' << optional_cell(r.gap_red_sing) << ','
        << optional_cell(r.gap_blue_sing) << '\n';
  }
  return out.str();
}

json empirical(const EmpiricalBatch& batch) {
  json rows = json::array();
  for (const auto& r : batch.rows) {
    rows.push_back({{"name", r.name},
                    {"nodes", r.nodes},
                    {"edges", r.edges},
                    {"prune_passes", r.prune_passes},
                    {"retained_fraction", r.retained_fraction},
                    {"lambda_red", r.lambda_red},
                    {"sigma_red", r.sigma_red},
                    {"lambda_blue", r.lambda_blue},
                    {"sigma_blue", r.sigma_blue},
                    {"gap_red", optional_number(r.gap_red)},
                    {"gap_blue", optional_number(r.gap_blue)},
                    {"gap_red_sing", optional_number(r.gap_red_sing)},
                    {"gap_blue_sing", optional_number(r.gap_blue_sing)}});
  }
  return {{"rows", rows},
          {"failures", batch.failures},
          {"correlations",
           {{"gap_vs_sigma", optional_number(batch.gap_vs_sigma)},
            {"list_vs_singular_red", optional_number(batch.list_vs_singular_red)},
            {"list_vs_singular_blue", optional_number(batch.list_vs_singular_blue)}}}};
}

std::string histograms_csv(const std::vector<HistogramSeries>& series) {
  std::ostringstream out;
  out << "series,bin,lower,upper,count\n";
  for (const auto& s : series) {
    for (std::size_t b = 0; b < s.histogram.counts.size(); ++b)
      out << s.name << ',' << b << ',' << number(s.histogram.edges[b]) << ','
          << number(s.histogram.edges[b + 1]) << ',' << s.histogram.counts[b] << '\n';
  }
  return out.str();
}

json histograms(const std::vector<HistogramSeries>& series) {
  json out = json::object();
  for (const auto& s : series)
    out[s.name] = {{"edges", s.histogram.edges}, {"counts", s.histogram.counts}, {"values", s.values.size()}};
  return out;
}

}  // namespace homophily::serialize
