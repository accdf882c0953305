#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "homophily/graph.hpp"

namespace homophily {

using Rng = std::mt19937_64;

/// Raised when a generator cannot realize the requested structure exactly
/// (only where exactness is part of the contract, e.g. special_case_graph).
class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Seed of stream `stream` under `master`: splitmix64(master ^ splitmix64(stream)),
/// where splitmix64 is one step of Vigna's generator (add the golden gamma,
/// then the 30/27/31 xor-shift-multiply finalizer).
std::uint64_t derive_stream_seed(std::uint64_t master, std::uint64_t stream);

/// Parameters of the double configuration model. Red nodes get indices
/// 0..k-1 and degree d; blue nodes k..n-1 and degree c.
struct ConfigModelSpec {
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t d = 0;
  std::optional<std::size_t> c;  // derived from the balance equation when empty
  double lambda_red = 0.0;
  double sigma_red = 0.0;
  double lambda_blue = 0.0;
  double sigma_blue = 0.0;
  std::uint64_t seed = 0;
  std::size_t max_rewire_attempts = 1'000'000;

  /// Throws InputError on 0 < k < n, d >= 1, lambda in [0,1], sigma >= 0 violations.
  void validate() const;
  /// c if given, else the balance-derived value rounded to the nearest integer >= 1.
  std::size_t blue_degree() const;
};

/// Normal draws clamped into [0, 1]. sd == 0 yields the clamped mean exactly.
std::vector<double> sample_clipped_normal(double mean, double sd, std::size_t count, Rng& rng);

/// Blue degree solving the balance equation in expectation:
/// c = k d (1 - lambda_red) / ((n - k)(1 - lambda_blue)).
double derive_blue_degree(std::size_t n, std::size_t k, double d, double lambda_red, double lambda_blue);

/// round-half-up of h * degree, kept inside [0, degree].
std::size_t same_stub_target(double h, std::size_t degree);

struct StubAdjustment {
  std::size_t node = 0;  // position within the plan
  int same_delta = 0;    // +1 or -1; cross moves the other way
  std::string reason;
};

/// Same-color and cross-color stub counts for one color class.
struct StubPlan {
  std::vector<std::size_t> same;
  std::vector<std::size_t> cross;
  std::vector<StubAdjustment> repair_log;

  std::size_t same_total() const;
  std::size_t cross_total() const;
};

/// Per-node same = round-half-up(h_i * degree), cross = degree - same, then
/// single-stub shifts at random nodes until the same-color total is even.
StubPlan stub_counts(std::span<const double> h, std::size_t degree, Rng& rng);

struct GenerationLog {
  std::size_t clashes = 0;           // self-loops and repeated pairs after the first matching
  std::size_t rewires = 0;           // clashes repaired by re-matching
  std::size_t rewire_attempts = 0;
  std::size_t erased_edges = 0;      // clashes left after the budget ran out
  std::size_t erased_stubs = 0;      // dropped to reconcile cross-stub parity
  std::vector<std::string> warnings;
};

struct GeneratedGraph {
  TypedGraph graph;
  std::size_t blue_degree = 0;
  std::vector<double> target_h;  // sampled homophily, by node index
  StubPlan red_plan;
  StubPlan blue_plan;
  GenerationLog log;
  double mean_abs_delta_red = 0.0;   // mean |realized h - target h|
  double mean_abs_delta_blue = 0.0;
};

/// Samples homophily per color, converts it to typed stubs and matches
/// red-red, blue-blue and red-blue stubs uniformly at random. Clashes are
/// re-matched by random pair swaps within the same pool up to the attempt
/// budget; anything left is erased and reported in the log.
GeneratedGraph double_configuration_model(const ConfigModelSpec& spec, Rng& rng);
/// Same, seeded from spec.seed.
GeneratedGraph double_configuration_model(const ConfigModelSpec& spec);

/// Graph with every red degree d, every blue degree c and every blue node
/// holding round-half-up(p c) blue neighbors; red homophily starts from `h`
/// and red stubs are shifted as needed to balance cross stubs. Throws
/// InputError for infeasible parameters and GenerationError when matching
/// cannot avoid clashes.
TypedGraph special_case_graph(std::size_t n, std::size_t k, std::size_t d, std::size_t c, double p,
                              std::span<const double> h, Rng& rng, std::size_t max_rewire_attempts = 20'000);

/// Erdos-Renyi style two-color graph: each node red with probability
/// red_fraction, same-color pairs linked with p_same, others with p_cross.
TypedGraph random_typed_graph(std::size_t n, double red_fraction, double p_same, double p_cross, Rng& rng);

}  // namespace homophily
