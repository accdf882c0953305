#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "homophily/graph.hpp"
#include "homophily/rational.hpp"

namespace homophily {

enum class Backend { Exact, Float };

/// How singular-version means treat seed nodes that have no neighbor of the
/// target color: Strict makes the mean Undefined (naming the node), Relaxed
/// skips the node and counts it.
enum class SingularPolicy { Strict, Relaxed };

/// Equality band used when classifying binary64 results.
inline constexpr double kFloatTolerance = 1e-12;

/// A statistic that may be undefined. In the Exact backend both `exact` and
/// `approx` are set; in the Float backend only `approx`.
struct Quantity {
  bool defined = false;
  std::optional<Rational> exact;
  double approx = 0.0;
  std::string reason_code;
  std::string reason;

  static Quantity of(const Rational& value);
  static Quantity of(double value);
  static Quantity undefined(std::string code, std::string why);

  /// -1, 0 or +1. Exact values compare exactly; float values within
  /// kFloatTolerance of zero classify as 0. Throws if undefined.
  int sign() const;
};

/// Difference of two quantities; undefined if either operand is.
Quantity difference(const Quantity& a, const Quantity& b, const std::string& what);

/// Per-color first-order summary over nodes with degree > 0.
struct ColorStats {
  std::size_t node_count = 0;
  std::size_t defined_count = 0;
  // lambda (mean h) and population variance of h. Exact fields are empty in
  // Float mode or when defined_count == 0.
  std::optional<Rational> lambda;
  std::optional<Rational> variance;
  double lambda_approx = 0.0;
  double variance_approx = 0.0;
  double sigma = 0.0;

  bool defined() const { return defined_count > 0; }
  /// sigma > 0: exact when the exact variance is available.
  bool has_diversity() const;
};

/// Degree and first-order homophily h_i = same_i / d_i of every node.
class HomophilyProfile {
 public:
  HomophilyProfile() = default;
  HomophilyProfile(const TypedGraph& graph, Backend backend);

  std::size_t node_count() const { return degree_.size(); }
  std::size_t degree(NodeIndex i) const { return degree_.at(i); }
  /// Neighbors sharing the node's color (h_i * d_i).
  std::size_t same_count(NodeIndex i) const { return same_.at(i); }
  NodeColor color(NodeIndex i) const { return color_.at(i); }
  bool defined(NodeIndex i) const { return degree_.at(i) > 0; }

  /// Exact h_i; nullopt for degree-0 nodes.
  std::optional<Rational> h(NodeIndex i) const;
  /// h_i as binary64; NaN for degree-0 nodes.
  double h_approx(NodeIndex i) const;

  const ColorStats& stats(NodeColor c) const { return c == NodeColor::Red ? red_ : blue_; }
  Backend backend() const { return backend_; }

 private:
  std::vector<std::size_t> degree_;
  std::vector<std::size_t> same_;
  std::vector<NodeColor> color_;
  ColorStats red_;
  ColorStats blue_;
  Backend backend_ = Backend::Exact;
};

HomophilyProfile first_order_homophily(const TypedGraph& graph, Backend backend = Backend::Exact);

struct SecondOrderLists {
  std::vector<NodeIndex> seeds;                 // every node of the seed color, in index order
  std::vector<std::vector<Rational>> per_seed;  // h_j of target-color neighbors, neighbor order
  std::vector<Rational> concatenated;
};

/// List-version second-order homophily s^(target)_i for every seed-color node.
SecondOrderLists second_order_list(const TypedGraph& graph, const HomophilyProfile& profile,
                                   NodeColor seed_color, NodeColor target_color);

/// Mean of h_j over target-color neighbors of `node`; nullopt if there are none.
std::optional<Rational> second_order_singular(const TypedGraph& graph, const HomophilyProfile& profile,
                                              NodeIndex node, NodeColor target_color);

/// Second-order means and gaps for one target color C.
struct ColorGaps {
  NodeColor color = NodeColor::Red;
  Quantity list_same;   // mu^(C)_C
  Quantity list_other;  // mu^(C)_other
  Quantity sing_same;   // mu^(C,sing)_C
  Quantity sing_other;  // mu^(C,sing)_other
  Quantity gap_list;    // list_same - list_other
  Quantity gap_sing;    // sing_same - sing_other
  // Relaxed policy only: seeds skipped for lacking a C-colored neighbor.
  std::size_t skipped_same = 0;
  std::size_t skipped_other = 0;
};

struct GapReport {
  Backend backend = Backend::Exact;
  SingularPolicy policy = SingularPolicy::Strict;
  ColorGaps red;
  ColorGaps blue;

  const ColorGaps& of(NodeColor c) const { return c == NodeColor::Red ? red : blue; }
};

/// List means use the degree-weighted closed forms
///   mu_same  = sum d h^2 / sum d h,  mu_other = sum d (1-h) h / sum d (1-h)
/// over color-C nodes; singular means average per-seed neighbor means.
GapReport gap_report(const TypedGraph& graph, const HomophilyProfile& profile, Backend backend,
                     SingularPolicy policy = SingularPolicy::Strict);

struct BalanceCheck {
  Rational lhs;  // sum over red of d_i (1 - h_i)
  Rational rhs;  // sum over blue of c_j (1 - p_j)
  bool holds = false;
};

/// Both sides count red-blue edges; always exact.
BalanceCheck balance_check(const TypedGraph& graph, const HomophilyProfile& profile);

struct SecondVsFirst {
  Quantity list_version;      // mu^(C)_C - lambda_C
  Quantity singular_version;  // mu^(C,sing)_C - lambda_C
};

SecondVsFirst second_vs_first(const TypedGraph& graph, const HomophilyProfile& profile, NodeColor color,
                              Backend backend = Backend::Exact,
                              SingularPolicy policy = SingularPolicy::Strict);

struct FriendshipParadoxStats {
  std::size_t nodes_included = 0;  // nodes with degree >= 1
  Rational mean_degree;
  Rational mean_neighbor_degree_list;      // sum d^2 / sum d
  Rational mean_neighbor_degree_singular;  // mean over nodes of mean neighbor degree
  std::optional<double> degree_homophily_correlation_red;
  std::optional<double> degree_homophily_correlation_blue;
};

/// Throws InputError when no node has degree >= 1.
FriendshipParadoxStats friendship_paradox_stats(const TypedGraph& graph);

/// Sample Pearson correlation. Throws std::invalid_argument unless both
/// inputs have the same length >= 2; nullopt if either has zero variance.
std::optional<double> pearson(std::span<const double> xs, std::span<const double> ys);

}  // namespace homophily
