#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "homophily/generators.hpp"
#include "homophily/graph.hpp"
#include "homophily/io.hpp"
#include "homophily/metrics.hpp"

namespace homophily {

/// Closed-form list-version red gap for normally distributed red homophily
/// with uniform degrees: sigma^2 / lambda + sigma^2 / (1 - lambda).
/// Throws InputError unless 0 < lambda < 1.
double predicted_gap(double lambda, double sigma);

/// Relative band within which a simulated gap counts as matching the prediction.
inline constexpr double kPredictionBand = 0.15;

struct SweepRow {
  // Generator parameters of the row (lambda/sigma are targets, not realized).
  std::size_t n = 0, k = 0, d = 0, c = 0;
  double lambda_red = 0, sigma_red = 0, lambda_blue = 0, sigma_blue = 0;

  std::size_t replicates = 0;  // successful replicates
  double gap_list_mean = 0, gap_list_sd = 0;
  double gap_sing_mean = 0, gap_sing_sd = 0;
  double predicted = 0;
  double realized_lambda_red = 0, realized_sigma_red = 0;  // means over replicates
  std::size_t erased_edges = 0;   // summed over replicates
  std::size_t skipped_seeds = 0;  // relaxed singular policy, summed

  // Clipping expected to matter: lambda - 2 sigma < 0 or lambda + 2 sigma > 1.
  bool clipping_regime = false;
  // Simulated list gap outside kPredictionBand of the prediction.
  bool prediction_deviates = false;
  std::string error;  // non-empty when the row was skipped
};

struct SweepTable {
  std::vector<SweepRow> rows;
};

/// One row per sigma_red value. Replicate r of every row draws from
/// derive_stream_seed(master_seed, r), so rows share random streams.
/// threads == 0 means hardware concurrency.
SweepTable sweep_sigma(const ConfigModelSpec& base, std::span<const double> sigma_grid, std::size_t replicates,
                       std::uint64_t master_seed, std::size_t threads = 0);

/// Cartesian grid, lambda-major: row index = lambda_index * |sigma_grid| + sigma_index.
SweepTable sweep_lambda_sigma(const ConfigModelSpec& base, std::span<const double> lambda_grid,
                              std::span<const double> sigma_grid, std::size_t replicates,
                              std::uint64_t master_seed, std::size_t threads = 0);

struct EmpiricalRow {
  std::string name;
  std::size_t nodes = 0, edges = 0;
  std::size_t prune_passes = 0;
  double retained_fraction = 1.0;
  double lambda_red = 0, sigma_red = 0, lambda_blue = 0, sigma_blue = 0;
  std::optional<double> gap_red, gap_blue;            // list version
  std::optional<double> gap_red_sing, gap_blue_sing;  // singular version
};

struct EmpiricalBatch {
  std::vector<EmpiricalRow> rows;
  std::vector<std::string> failures;  // "<name>: <reason>" for skipped inputs
  std::optional<double> gap_vs_sigma;  // pooled over both colors, list version
  std::optional<double> list_vs_singular_red;
  std::optional<double> list_vs_singular_blue;
};

struct GraphInput {
  std::string name;
  std::filesystem::path edges;
  std::filesystem::path attributes;
};

struct NamedGraph {
  std::string name;
  TypedGraph graph;
};

/// Per-graph statistics after optional {R,B} pruning, plus correlations
/// across graphs. Inputs that fail to load are skipped and listed.
EmpiricalBatch empirical_batch(std::span<const GraphInput> inputs, const io::LabelNames& labels, bool prune);
EmpiricalBatch empirical_batch(std::span<const NamedGraph> graphs, bool prune);

struct Histogram {
  std::vector<double> edges;  // bin_count + 1 boundaries on [0, 1]
  std::vector<std::size_t> counts;
};

inline constexpr std::size_t kDefaultBins = 40;

/// Uniform bins on [0, 1], each [lo, hi) except the last, which is [lo, 1].
/// Throws InputError for empty input, zero bins, or values outside [0, 1].
Histogram histogram(std::span<const double> values, std::size_t bin_count);

struct HistogramSeries {
  std::string name;
  std::vector<double> values;
  Histogram histogram;
};

/// First-order homophily per color and second-order (list and singular)
/// values per target/seed color pair, each binned.
std::vector<HistogramSeries> homophily_histograms(const TypedGraph& graph, std::size_t bin_count);

/// Minimal standalone SVG bar chart.
std::string histogram_svg(const Histogram& histogram, const std::string& title);

}  // namespace homophily
