#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "homophily/experiments.hpp"
#include "homophily/generators.hpp"
#include "homophily/metrics.hpp"
#include "homophily/prune.hpp"

namespace homophily::serialize {

using nlohmann::json;

/// Fixed "%.12g" rendering used in every CSV cell.
std::string number(double x);

/// Defined:   {"status":"defined","exact":"num/den","approx":x}  ("exact" only in Exact mode)
/// Undefined: {"status":"undefined","reason":code,"detail":text}
json quantity(const Quantity& q);
json gap_report(const GapReport& report);
json color_stats(const ColorStats& stats);
json validation(const ValidationReport& report);
json balance(const BalanceCheck& check);
json friendship(const FriendshipParadoxStats& stats);
json prune_summary(const PruneResult& result, const RetentionStats& retention);

/// Keys: n, k or r (k = round(r n)), d, optional c, lambda_r, sigma_r,
/// lambda_b, sigma_b, optional seed and max_rewire_attempts.
ConfigModelSpec config_spec(const json& j);
json config_spec_json(const ConfigModelSpec& spec);
json generation(const ConfigModelSpec& spec, const GeneratedGraph& generated);

/// Column order: n,k,d,c,lambda_red,sigma_red,lambda_blue,sigma_blue,
/// replicates,gap_list_mean,gap_list_sd,gap_sing_mean,gap_sing_sd,predicted,
/// realized_lambda_red,realized_sigma_red,erased_edges,skipped_seeds,
/// clipping_regime,prediction_deviates,error
std::string sweep_csv(const SweepTable& table);
json sweep(const SweepTable& table);

/// Column order: name,nodes,edges,prune_passes,retained_fraction,lambda_red,
/// sigma_red,lambda_blue,sigma_blue,gap_red,gap_blue,gap_red_sing,gap_blue_sing
std::string empirical_csv(const EmpiricalBatch& batch);
json empirical(const EmpiricalBatch& batch);

/// Long format: series,bin,lower,upper,count
std::string histograms_csv(const std::vector<HistogramSeries>& series);
json histograms(const std::vector<HistogramSeries>& series);

}  // namespace homophily::serialize
