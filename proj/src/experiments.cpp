#include "homophily/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <thread>

#include "homophily/prune.hpp"

namespace homophily {

namespace {

template <class Fn>
void parallel_for(std::size_t count, std::size_t threads, Fn&& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) fn(i);
    });
}

struct ReplicateResult {
  bool ok = false;
  std::string error;
  double gap_list = 0, gap_sing = 0;
  bool sing_defined = false;
  double lambda_red = 0, sigma_red = 0;
  std::size_t erased = 0, skipped = 0;
};

ReplicateResult run_replicate(ConfigModelSpec spec, std::uint64_t master_seed, std::size_t replicate) {
  ReplicateResult r;
  try {
    spec.seed = derive_stream_seed(master_seed, replicate);
    const GeneratedGraph gen = double_configuration_model(spec);
    const HomophilyProfile profile(gen.graph, Backend::Float);
    const GapReport report = gap_report(gen.graph, profile, Backend::Float, SingularPolicy::Relaxed);
    r.erased = gen.log.erased_edges + gen.log.erased_stubs;
    r.lambda_red = profile.stats(NodeColor::Red).lambda_approx;
    r.sigma_red = profile.stats(NodeColor::Red).sigma;
    r.skipped = report.red.skipped_same + report.red.skipped_other;
    if (!report.red.gap_list.defined) {
      r.error = report.red.gap_list.reason;
      return r;
    }
    r.gap_list = report.red.gap_list.approx;
    if (report.red.gap_sing.defined) {
      r.sing_defined = true;
      r.gap_sing = report.red.gap_sing.approx;
    }
    r.ok = true;
  } catch (const std::exception& e) {
    r.error = e.what();
  }
  return r;
}

void mean_sd(const std::vector<double>& xs, double& mean, double& sd) {
  mean = 0;
  sd = 0;
  if (xs.empty()) return;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  if (xs.size() < 2) return;
  double ss = 0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  sd = std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

SweepRow assemble_row(const ConfigModelSpec& spec, const std::vector<ReplicateResult>& reps) {
  SweepRow row;
  row.n = spec.n;
  row.k = spec.k;
  row.d = spec.d;
  row.lambda_red = spec.lambda_red;
  row.sigma_red = spec.sigma_red;
  row.lambda_blue = spec.lambda_blue;
  row.sigma_blue = spec.sigma_blue;
  try {
    row.c = spec.blue_degree();
  } catch (const std::exception& e) {
    row.error = e.what();
    return row;
  }
  try {
    row.predicted = predicted_gap(spec.lambda_red, spec.sigma_red);
  } catch (const std::exception& e) {
    row.error = e.what();
    return row;
  }
  std::vector<double> gaps, sing;
  for (const auto& r : reps) {
    if (!r.ok) {
      if (row.error.empty()) row.error = r.error;
      continue;
    }
    gaps.push_back(r.gap_list);
    if (r.sing_defined) sing.push_back(r.gap_sing);
    row.realized_lambda_red += r.lambda_red;
    row.realized_sigma_red += r.sigma_red;
    row.erased_edges += r.erased;
    row.skipped_seeds += r.skipped;
  }
  row.replicates = gaps.size();
  if (gaps.empty()) return row;  // error already holds the first failure
  row.error.clear();
  mean_sd(gaps, row.gap_list_mean, row.gap_list_sd);
  mean_sd(sing, row.gap_sing_mean, row.gap_sing_sd);
  row.realized_lambda_red /= static_cast<double>(row.replicates);
  row.realized_sigma_red /= static_cast<double>(row.replicates);
  row.clipping_regime =
      spec.lambda_red - 2 * spec.sigma_red < 0.0 || spec.lambda_red + 2 * spec.sigma_red > 1.0;
  const double miss = std::abs(row.gap_list_mean - row.predicted);
  row.prediction_deviates =
      row.predicted > 0 ? miss > kPredictionBand * row.predicted : miss > 1e-3;
  return row;
}

SweepTable run_sweep(const std::vector<ConfigModelSpec>& specs, std::size_t replicates,
                     std::uint64_t master_seed, std::size_t threads) {
  if (replicates < 1) throw InputError("sweeps need at least one replicate");
  std::vector<ReplicateResult> results(specs.size() * replicates);
  parallel_for(results.size(), threads, [&](std::size_t unit) {
    results[unit] = run_replicate(specs[unit / replicates], master_seed, unit % replicates);
  });
  SweepTable table;
  for (std::size_t row = 0; row < specs.size(); ++row) {
    const std::vector<ReplicateResult> reps(results.begin() + static_cast<std::ptrdiff_t>(row * replicates),
                                            results.begin() + static_cast<std::ptrdiff_t>((row + 1) * replicates));
    table.rows.push_back(assemble_row(specs[row], reps));
  }
  return table;
}

std::optional<double> safe_pearson(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() < 2) return std::nullopt;
  return pearson(xs, ys);
}

std::optional<double> approx_if_defined(const Quantity& q) {
  if (!q.defined) return std::nullopt;
  return q.approx;
}

EmpiricalRow empirical_row(const std::string& name, const TypedGraph& source, bool prune) {
  EmpiricalRow row;
  row.name = name;
  TypedGraph graph = source;
  if (prune) {
    PruneResult pruned = prune_bichromatic(source, {NodeColor::Red, NodeColor::Blue});
    row.prune_passes = pruned.passes;
    row.retained_fraction = pruned.retained_fraction;
    graph = std::move(pruned.graph);
  }
  if (graph.node_count() == 0) throw InputError("no nodes left after pruning");
  row.nodes = graph.node_count();
  row.edges = graph.edge_count();
  const HomophilyProfile profile(graph, Backend::Float);
  row.lambda_red = profile.stats(NodeColor::Red).lambda_approx;
  row.sigma_red = profile.stats(NodeColor::Red).sigma;
  row.lambda_blue = profile.stats(NodeColor::Blue).lambda_approx;
  row.sigma_blue = profile.stats(NodeColor::Blue).sigma;
  const GapReport report = gap_report(graph, profile, Backend::Float,
                                      prune ? SingularPolicy::Strict : SingularPolicy::Relaxed);
  row.gap_red = approx_if_defined(report.red.gap_list);
  row.gap_blue = approx_if_defined(report.blue.gap_list);
  row.gap_red_sing = approx_if_defined(report.red.gap_sing);
  row.gap_blue_sing = approx_if_defined(report.blue.gap_sing);
  return row;
}

void add_correlations(EmpiricalBatch& batch) {
  std::vector<double> sigma, gap, list_r, sing_r, list_b, sing_b;
  for (const auto& row : batch.rows) {
    if (row.gap_red) {
      sigma.push_back(row.sigma_red);
      gap.push_back(*row.gap_red);
      if (row.gap_red_sing) {
        list_r.push_back(*row.gap_red);
        sing_r.push_back(*row.gap_red_sing);
      }
    }
    if (row.gap_blue) {
      sigma.push_back(row.sigma_blue);
      gap.push_back(*row.gap_blue);
      if (row.gap_blue_sing) {
        list_b.push_back(*row.gap_blue);
        sing_b.push_back(*row.gap_blue_sing);
      }
    }
  }
  batch.gap_vs_sigma = safe_pearson(sigma, gap);
  batch.list_vs_singular_red = safe_pearson(list_r, sing_r);
  batch.list_vs_singular_blue = safe_pearson(list_b, sing_b);
}

Histogram empty_histogram(std::size_t bin_count) {
  Histogram h;
  for (std::size_t b = 0; b <= bin_count; ++b)
    h.edges.push_back(static_cast<double>(b) / static_cast<double>(bin_count));
  h.counts.assign(bin_count, 0);
  return h;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

std::string fixed(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

}  // namespace

double predicted_gap(double lambda, double sigma) {
  if (!(lambda > 0.0 && lambda < 1.0)) throw InputError("predicted gap needs 0 < lambda < 1");
  const double var = sigma * sigma;
  return var / lambda + var / (1.0 - lambda);
}

SweepTable sweep_sigma(const ConfigModelSpec& base, std::span<const double> sigma_grid, std::size_t replicates,
                       std::uint64_t master_seed, std::size_t threads) {
  std::vector<ConfigModelSpec> specs;
  for (double sigma : sigma_grid) {
    if (!(sigma >= 0.0)) throw InputError("sigma grid values must be >= 0");
    ConfigModelSpec s = base;
    s.sigma_red = sigma;
    specs.push_back(s);
  }
  return run_sweep(specs, replicates, master_seed, threads);
}

SweepTable sweep_lambda_sigma(const ConfigModelSpec& base, std::span<const double> lambda_grid,
                              std::span<const double> sigma_grid, std::size_t replicates,
                              std::uint64_t master_seed, std::size_t threads) {
  std::vector<ConfigModelSpec> specs;
  for (double lambda : lambda_grid) {
    for (double sigma : sigma_grid) {
      if (!(sigma >= 0.0)) throw InputError("sigma grid values must be >= 0");
      ConfigModelSpec s = base;
      s.lambda_red = lambda;
      s.sigma_red = sigma;
      specs.push_back(s);
    }
  }
  return run_sweep(specs, replicates, master_seed, threads);
}

EmpiricalBatch empirical_batch(std::span<const GraphInput> inputs, const io::LabelNames& labels, bool prune) {
  EmpiricalBatch batch;
  for (const auto& input : inputs) {
    try {
      const BuildResult built = io::load_graph(input.edges, input.attributes, labels);
      batch.rows.push_back(empirical_row(input.name, built.graph, prune));
    } catch (const std::exception& e) {
      batch.failures.push_back(input.name + ": " + e.what());
    }
  }
  add_correlations(batch);
  return batch;
}

EmpiricalBatch empirical_batch(std::span<const NamedGraph> graphs, bool prune) {
  EmpiricalBatch batch;
  for (const auto& g : graphs) {
    try {
      batch.rows.push_back(empirical_row(g.name, g.graph, prune));
    } catch (const std::exception& e) {
      batch.failures.push_back(g.name + ": " + e.what());
    }
  }
  add_correlations(batch);
  return batch;
}

Histogram histogram(std::span<const double> values, std::size_t bin_count) {
  if (bin_count == 0) throw InputError("histogram needs at least one bin");
  if (values.empty()) throw InputError("histogram of an empty sample");
  Histogram h = empty_histogram(bin_count);
  for (double v : values) {
    if (!(v >= 0.0 && v <= 1.0)) throw InputError("histogram values must lie in [0, 1]");
    const auto bin = std::min(bin_count - 1, static_cast<std::size_t>(v * static_cast<double>(bin_count)));
    ++h.counts[bin];
  }
  return h;
}

std::vector<HistogramSeries> homophily_histograms(const TypedGraph& graph, std::size_t bin_count) {
  if (bin_count == 0) throw InputError("histogram needs at least one bin");
  const HomophilyProfile profile(graph, Backend::Float);
  std::vector<HistogramSeries> out;
  auto add = [&](std::string name, std::vector<double> values) {
    HistogramSeries s;
    s.name = std::move(name);
    s.histogram = values.empty() ? empty_histogram(bin_count) : histogram(values, bin_count);
    s.values = std::move(values);
    out.push_back(std::move(s));
  };
  for (NodeColor c : {NodeColor::Red, NodeColor::Blue}) {
    std::vector<double> values;
    for (NodeIndex i = 0; i < graph.node_count(); ++i)
      if (graph.color(i) == c && profile.defined(i)) values.push_back(profile.h_approx(i));
    add(std::string("first_order_") + color_name(c), std::move(values));
  }
  for (const char* kind : {"list", "singular"}) {
    const bool list = std::string(kind) == "list";
    for (NodeColor target : {NodeColor::Red, NodeColor::Blue}) {
      for (NodeColor seed : {target, other(target)}) {
        std::vector<double> values;
        for (NodeIndex i = 0; i < graph.node_count(); ++i) {
          if (graph.color(i) != seed) continue;
          double sum = 0;
          std::size_t count = 0;
          for (NodeIndex j : graph.neighbors(i)) {
            if (graph.color(j) != target) continue;
            if (list) values.push_back(profile.h_approx(j));
            sum += profile.h_approx(j);
            ++count;
          }
          if (!list && count > 0) values.push_back(sum / static_cast<double>(count));
        }
        add(std::string(kind) + "_" + color_name(target) + "_of_" + color_name(seed), std::move(values));
      }
    }
  }
  return out;
}

std::string histogram_svg(const Histogram& h, const std::string& title) {
  constexpr int kWidth = 640, kHeight = 320, kMargin = 40;
  const std::size_t bins = h.counts.size();
  const std::size_t peak = bins == 0 ? 0 : *std::max_element(h.counts.begin(), h.counts.end());
  const double plot_w = kWidth - 2 * kMargin;
  const double plot_h = kHeight - 2 * kMargin;
  const double bar_w = bins == 0 ? 0 : plot_w / static_cast<double>(bins);

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
      << "font-size=\"14\">" << xml_escape(title) << "</text>\n";
  for (std::size_t b = 0; b < bins; ++b) {
    const double height = peak == 0 ? 0.0 : plot_h * static_cast<double>(h.counts[b]) / static_cast<double>(peak);
    svg << "<rect x=\"" << fixed(kMargin + bar_w * static_cast<double>(b), 2) << "\" y=\""
        << fixed(kMargin + plot_h - height, 2) << "\" width=\"" << fixed(bar_w, 2) << "\" height=\""
        << fixed(height, 2) << "\" fill=\"steelblue\" stroke=\"white\" stroke-width=\"0.5\"/>\n";
  }
  const int axis_y = kMargin + static_cast<int>(plot_h);
  svg << "<line x1=\"" << kMargin << "\" y1=\"" << axis_y << "\" x2=\"" << kWidth - kMargin << "\" y2=\""
      << axis_y << "\" stroke=\"black\"/>\n";
  for (double tick : {0.0, 0.5, 1.0}) {
    svg << "<text x=\"" << fixed(kMargin + plot_w * tick, 2) << "\" y=\"" << axis_y + 16
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << fixed(tick, 1)
        << "</text>\n";
  }
  svg << "<text x=\"" << kMargin - 6 << "\" y=\"" << kMargin + 4
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << peak << "</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace homophily
