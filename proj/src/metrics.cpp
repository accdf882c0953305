#include "homophily/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace homophily {

namespace {

template <class Num>
Num fraction(std::size_t num, std::size_t den);

template <>
Rational fraction<Rational>(std::size_t num, std::size_t den) {
  Rational q(static_cast<unsigned long>(num), static_cast<unsigned long>(den));
  q.canonicalize();
  return q;
}

template <>
double fraction<double>(std::size_t num, std::size_t den) {
  return static_cast<double>(num) / static_cast<double>(den);
}

bool positive(const Rational& q) { return sgn(q) > 0; }
bool positive(double x) { return x > 0.0; }

template <class Num>
Num h_of(const HomophilyProfile& profile, NodeIndex i) {
  return fraction<Num>(profile.same_count(i), profile.degree(i));
}

std::string neighbor_word(NodeColor c) { return std::string(color_name(c)) + " neighbor"; }

struct ListMeans {
  Quantity same;
  Quantity other;
};

// Degree-weighted closed forms over nodes of color c.
template <class Num>
ListMeans list_means(const TypedGraph& graph, const HomophilyProfile& profile, NodeColor c) {
  Num num_same = 0, den_same = 0, num_other = 0, den_other = 0;
  for (NodeIndex i = 0; i < graph.node_count(); ++i) {
    if (graph.color(i) != c || !profile.defined(i)) continue;
    const Num d = fraction<Num>(profile.degree(i), 1);
    const Num h = h_of<Num>(profile, i);
    const Num one_minus_h = Num(1) - h;
    num_same += d * h * h;
    den_same += d * h;
    num_other += d * one_minus_h * h;
    den_other += d * one_minus_h;
  }
  const std::string cname = color_name(c);
  const std::string oname = color_name(other(c));
  ListMeans out;
  if (positive(den_same)) {
    out.same = Quantity::of(Num(num_same / den_same));
  } else {
    out.same = Quantity::undefined("no_same_color_edge", "no " + cname + "-" + cname + " edge");
  }
  if (positive(den_other)) {
    out.other = Quantity::of(Num(num_other / den_other));
  } else {
    out.other = Quantity::undefined("no_cross_color_edge", "no " + oname + "-" + cname + " edge");
  }
  return out;
}

// Mean over seed-color nodes of the mean h of their target-color neighbors.
template <class Num>
Quantity singular_mean(const TypedGraph& graph, const HomophilyProfile& profile, NodeColor seed_color,
                       NodeColor target, SingularPolicy policy, std::size_t& skipped) {
  Num total = 0;
  std::size_t used = 0;
  for (NodeIndex i = 0; i < graph.node_count(); ++i) {
    if (graph.color(i) != seed_color || !profile.defined(i)) continue;
    Num sum = 0;
    std::size_t count = 0;
    for (NodeIndex j : graph.neighbors(i)) {
      if (graph.color(j) != target) continue;
      sum += h_of<Num>(profile, j);
      ++count;
    }
    if (count == 0) {
      if (policy == SingularPolicy::Strict)
        return Quantity::undefined("seed_without_target_neighbor",
                                   "node '" + graph.id(i) + "' has no " + neighbor_word(target));
      ++skipped;
      continue;
    }
    total += Num(sum / fraction<Num>(count, 1));
    ++used;
  }
  if (used == 0)
    return Quantity::undefined("no_qualifying_seed", std::string("no ") + color_name(seed_color) +
                                                         " node with a " + neighbor_word(target));
  return Quantity::of(Num(total / fraction<Num>(used, 1)));
}

template <class Num>
ColorGaps color_gaps(const TypedGraph& graph, const HomophilyProfile& profile, NodeColor c,
                     SingularPolicy policy) {
  ColorGaps g;
  g.color = c;
  const ListMeans lists = list_means<Num>(graph, profile, c);
  g.list_same = lists.same;
  g.list_other = lists.other;
  g.sing_same = singular_mean<Num>(graph, profile, c, c, policy, g.skipped_same);
  g.sing_other = singular_mean<Num>(graph, profile, other(c), c, policy, g.skipped_other);
  g.gap_list = difference(g.list_same, g.list_other, "list gap");
  g.gap_sing = difference(g.sing_same, g.sing_other, "singular gap");
  return g;
}

Quantity lambda_quantity(const ColorStats& stats, NodeColor c, Backend backend) {
  if (!stats.defined())
    return Quantity::undefined("no_defined_homophily",
                               std::string("no ") + color_name(c) + " node with degree >= 1");
  if (backend == Backend::Exact && stats.lambda) return Quantity::of(*stats.lambda);
  return Quantity::of(stats.lambda_approx);
}

}  // namespace

Quantity Quantity::of(const Rational& value) {
  Quantity q;
  q.defined = true;
  q.exact = value;
  q.exact->canonicalize();
  q.approx = to_double(value);
  return q;
}

Quantity Quantity::of(double value) {
  Quantity q;
  q.defined = true;
  q.approx = value;
  return q;
}

Quantity Quantity::undefined(std::string code, std::string why) {
  Quantity q;
  q.approx = std::numeric_limits<double>::quiet_NaN();
  q.reason_code = std::move(code);
  q.reason = std::move(why);
  return q;
}

int Quantity::sign() const {
  if (!defined) throw std::logic_error("sign of undefined quantity: " + reason);
  if (exact) return sgn(*exact) > 0 ? 1 : (sgn(*exact) < 0 ? -1 : 0);
  if (std::abs(approx) <= kFloatTolerance) return 0;
  return approx > 0 ? 1 : -1;
}

Quantity difference(const Quantity& a, const Quantity& b, const std::string& what) {
  if (!a.defined) return Quantity::undefined("operand_undefined", what + ": " + a.reason);
  if (!b.defined) return Quantity::undefined("operand_undefined", what + ": " + b.reason);
  if (a.exact && b.exact) return Quantity::of(Rational(*a.exact - *b.exact));
  return Quantity::of(a.approx - b.approx);
}

bool ColorStats::has_diversity() const {
  if (!defined()) return false;
  if (variance) return sgn(*variance) > 0;
  return variance_approx > kFloatTolerance;
}

HomophilyProfile::HomophilyProfile(const TypedGraph& graph, Backend backend) : backend_(backend) {
  const std::size_t n = graph.node_count();
  degree_.resize(n);
  same_.resize(n);
  color_.assign(graph.colors().begin(), graph.colors().end());
  for (NodeIndex i = 0; i < n; ++i) {
    const auto nbrs = graph.neighbors(i);
    degree_[i] = nbrs.size();
    same_[i] = static_cast<std::size_t>(
        std::count_if(nbrs.begin(), nbrs.end(), [&](NodeIndex j) { return color_[j] == color_[i]; }));
  }

  for (NodeColor c : {NodeColor::Red, NodeColor::Blue}) {
    ColorStats& s = c == NodeColor::Red ? red_ : blue_;
    double sum = 0.0;
    Rational exact_sum = 0, exact_sq = 0;
    for (NodeIndex i = 0; i < n; ++i) {
      if (color_[i] != c) continue;
      ++s.node_count;
      if (degree_[i] == 0) continue;
      ++s.defined_count;
      sum += h_approx(i);
      if (backend == Backend::Exact) {
        const Rational h = fraction<Rational>(same_[i], degree_[i]);
        exact_sum += h;
        exact_sq += h * h;
      }
    }
    if (s.defined_count == 0) continue;
    const double m = static_cast<double>(s.defined_count);
    s.lambda_approx = sum / m;
    double ss = 0.0;
    for (NodeIndex i = 0; i < n; ++i) {
      if (color_[i] != c || degree_[i] == 0) continue;
      const double dev = h_approx(i) - s.lambda_approx;
      ss += dev * dev;
    }
    s.variance_approx = ss / m;
    if (backend == Backend::Exact) {
      const Rational count(static_cast<unsigned long>(s.defined_count));
      Rational mean = exact_sum / count;
      Rational var = exact_sq / count - mean * mean;
      mean.canonicalize();
      var.canonicalize();
      s.lambda = mean;
      s.variance = var;
      s.lambda_approx = to_double(mean);
      s.variance_approx = to_double(var);
    }
    s.sigma = std::sqrt(s.variance_approx);
  }
}

std::optional<Rational> HomophilyProfile::h(NodeIndex i) const {
  if (degree_.at(i) == 0) return std::nullopt;
  return fraction<Rational>(same_[i], degree_[i]);
}

double HomophilyProfile::h_approx(NodeIndex i) const {
  if (degree_.at(i) == 0) return std::numeric_limits<double>::quiet_NaN();
  return fraction<double>(same_[i], degree_[i]);
}

HomophilyProfile first_order_homophily(const TypedGraph& graph, Backend backend) {
  return HomophilyProfile(graph, backend);
}

SecondOrderLists second_order_list(const TypedGraph& graph, const HomophilyProfile& profile,
                                   NodeColor seed_color, NodeColor target_color) {
  SecondOrderLists out;
  for (NodeIndex i = 0; i < graph.node_count(); ++i) {
    if (graph.color(i) != seed_color) continue;
    std::vector<Rational> values;
    for (NodeIndex j : graph.neighbors(i))
      if (graph.color(j) == target_color) values.push_back(*profile.h(j));
    out.concatenated.insert(out.concatenated.end(), values.begin(), values.end());
    out.seeds.push_back(i);
    out.per_seed.push_back(std::move(values));
  }
  return out;
}

std::optional<Rational> second_order_singular(const TypedGraph& graph, const HomophilyProfile& profile,
                                              NodeIndex node, NodeColor target_color) {
  Rational sum = 0;
  unsigned long count = 0;
  for (NodeIndex j : graph.neighbors(node)) {
    if (graph.color(j) != target_color) continue;
    sum += *profile.h(j);
    ++count;
  }
  if (count == 0) return std::nullopt;
  Rational mean = sum / Rational(count);
  mean.canonicalize();
  return mean;
}

GapReport gap_report(const TypedGraph& graph, const HomophilyProfile& profile, Backend backend,
                     SingularPolicy policy) {
  if (profile.node_count() != graph.node_count())
    throw std::invalid_argument("profile was not computed on this graph");
  GapReport report;
  report.backend = backend;
  report.policy = policy;
  if (backend == Backend::Exact) {
    report.red = color_gaps<Rational>(graph, profile, NodeColor::Red, policy);
    report.blue = color_gaps<Rational>(graph, profile, NodeColor::Blue, policy);
  } else {
    report.red = color_gaps<double>(graph, profile, NodeColor::Red, policy);
    report.blue = color_gaps<double>(graph, profile, NodeColor::Blue, policy);
  }
  return report;
}

BalanceCheck balance_check(const TypedGraph& graph, const HomophilyProfile& profile) {
  BalanceCheck out;
  out.lhs = 0;
  out.rhs = 0;
  for (NodeIndex i = 0; i < graph.node_count(); ++i) {
    if (!profile.defined(i)) continue;
    const Rational d(static_cast<unsigned long>(profile.degree(i)));
    const Rational term = d * (Rational(1) - *profile.h(i));
    if (graph.color(i) == NodeColor::Red)
      out.lhs += term;
    else
      out.rhs += term;
  }
  out.lhs.canonicalize();
  out.rhs.canonicalize();
  out.holds = out.lhs == out.rhs;
  return out;
}

SecondVsFirst second_vs_first(const TypedGraph& graph, const HomophilyProfile& profile, NodeColor color,
                              Backend backend, SingularPolicy policy) {
  const Quantity lambda = lambda_quantity(profile.stats(color), color, backend);
  Quantity list_same, sing_same;
  std::size_t skipped = 0;
  if (backend == Backend::Exact) {
    list_same = list_means<Rational>(graph, profile, color).same;
    sing_same = singular_mean<Rational>(graph, profile, color, color, policy, skipped);
  } else {
    list_same = list_means<double>(graph, profile, color).same;
    sing_same = singular_mean<double>(graph, profile, color, color, policy, skipped);
  }
  return {difference(list_same, lambda, "list second-vs-first"),
          difference(sing_same, lambda, "singular second-vs-first")};
}

FriendshipParadoxStats friendship_paradox_stats(const TypedGraph& graph) {
  FriendshipParadoxStats out;
  Rational degree_sum = 0, degree_sq_sum = 0, singular_sum = 0;
  std::vector<double> deg[2], hom[2];
  for (NodeIndex i = 0; i < graph.node_count(); ++i) {
    const auto nbrs = graph.neighbors(i);
    if (nbrs.empty()) continue;
    ++out.nodes_included;
    const unsigned long d = nbrs.size();
    degree_sum += d;
    degree_sq_sum += Rational(d) * Rational(d);
    unsigned long nbr_degree_sum = 0;
    std::size_t same = 0;
    for (NodeIndex j : nbrs) {
      nbr_degree_sum += graph.degree(j);
      if (graph.color(j) == graph.color(i)) ++same;
    }
    singular_sum += fraction<Rational>(nbr_degree_sum, d);
    const int c = static_cast<int>(graph.color(i));
    deg[c].push_back(static_cast<double>(d));
    hom[c].push_back(static_cast<double>(same) / static_cast<double>(d));
  }
  if (out.nodes_included == 0) throw InputError("friendship paradox stats need a node with degree >= 1");
  const Rational m(static_cast<unsigned long>(out.nodes_included));
  out.mean_degree = degree_sum / m;
  out.mean_neighbor_degree_list = degree_sq_sum / degree_sum;
  out.mean_neighbor_degree_singular = singular_sum / m;
  out.mean_degree.canonicalize();
  out.mean_neighbor_degree_list.canonicalize();
  out.mean_neighbor_degree_singular.canonicalize();
  auto corr = [](const std::vector<double>& x, const std::vector<double>& y) -> std::optional<double> {
    if (x.size() < 2) return std::nullopt;
    return pearson(x, y);
  };
  out.degree_homophily_correlation_red = corr(deg[0], hom[0]);
  out.degree_homophily_correlation_blue = corr(deg[1], hom[1]);
  return out;
}

std::optional<double> pearson(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw std::invalid_argument("pearson: inputs differ in length");
  if (xs.size() < 2) throw std::invalid_argument("pearson: need at least two points");
  auto constant = [](std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [&](double x) { return x == v.front(); });
  };
  if (constant(xs) || constant(ys)) return std::nullopt;
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return std::nullopt;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

}  // namespace homophily
