#include "homophily/generators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <unordered_set>

namespace homophily {

namespace {

using Edge = std::pair<NodeIndex, NodeIndex>;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t edge_key(NodeIndex u, NodeIndex v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

std::size_t uniform_index(std::size_t size, Rng& rng) {
  return std::uniform_int_distribution<std::size_t>(0, size - 1)(rng);
}

// Random position whose predicate holds: a few blind draws, then a scan.
template <class Pred>
std::optional<std::size_t> pick_position(std::size_t size, Pred ok, Rng& rng) {
  if (size == 0) return std::nullopt;
  for (int attempt = 0; attempt < 64; ++attempt) {
    const std::size_t i = uniform_index(size, rng);
    if (ok(i)) return i;
  }
  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i < size; ++i)
    if (ok(i)) candidates.push_back(i);
  if (candidates.empty()) return std::nullopt;
  return candidates[uniform_index(candidates.size(), rng)];
}

// Moves one stub of plan position i between its pools; delta = +1 means cross -> same.
void shift_stub(StubPlan& plan, std::size_t i, int delta, std::string reason) {
  if (delta > 0) {
    ++plan.same[i];
    --plan.cross[i];
  } else {
    --plan.same[i];
    ++plan.cross[i];
  }
  plan.repair_log.push_back({i, delta, std::move(reason)});
}

bool try_shift(StubPlan& plan, int delta, const std::string& reason, Rng& rng) {
  auto can = [&](std::size_t i) { return delta > 0 ? plan.cross[i] > 0 : plan.same[i] > 0; };
  auto pos = pick_position(plan.same.size(), can, rng);
  if (!pos) return false;
  shift_stub(plan, *pos, delta, reason);
  return true;
}

std::vector<NodeIndex> expand_stubs(const std::vector<std::size_t>& counts, NodeIndex offset) {
  std::vector<NodeIndex> stubs;
  stubs.reserve(std::accumulate(counts.begin(), counts.end(), std::size_t{0}));
  for (std::size_t i = 0; i < counts.size(); ++i)
    stubs.insert(stubs.end(), counts[i], static_cast<NodeIndex>(offset + i));
  return stubs;
}

// Pairs stubs of one pool. Clashing pairs (self-loops, repeats of an accepted
// pair) are swapped against random accepted pairs of the same pool; pairs
// still clashing when the budget is spent are dropped.
class PoolMatcher {
 public:
  PoolMatcher(std::unordered_set<std::uint64_t>& accepted, GenerationLog& log, std::size_t& budget,
              Rng& rng)
      : accepted_(accepted), log_(log), budget_(budget), rng_(rng) {}

  std::vector<Edge> match_same(std::vector<NodeIndex> stubs) {
    std::shuffle(stubs.begin(), stubs.end(), rng_);
    std::vector<Edge> pairs;
    pairs.reserve(stubs.size() / 2);
    for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) pairs.emplace_back(stubs[i], stubs[i + 1]);
    resolve(pairs, false);
    return pairs;
  }

  std::vector<Edge> match_cross(const std::vector<NodeIndex>& red, std::vector<NodeIndex> blue) {
    std::shuffle(blue.begin(), blue.end(), rng_);
    std::vector<Edge> pairs;
    pairs.reserve(red.size());
    for (std::size_t i = 0; i < red.size(); ++i) pairs.emplace_back(red[i], blue[i]);
    resolve(pairs, true);
    return pairs;
  }

 private:
  void resolve(std::vector<Edge>& pairs, bool cross) {
    std::vector<char> bad(pairs.size(), 0);
    std::vector<std::size_t> queue;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const auto [u, v] = pairs[i];
      if (u == v || !accepted_.insert(edge_key(u, v)).second) {
        bad[i] = 1;
        queue.push_back(i);
      }
    }
    log_.clashes += queue.size();

    for (std::size_t b : queue) {
      bool fixed = false;
      while (!fixed && budget_ > 0 && pairs.size() > 1) {
        --budget_;
        ++log_.rewire_attempts;
        const std::size_t j = uniform_index(pairs.size(), rng_);
        if (j == b || bad[j]) continue;
        const auto [u, v] = pairs[b];
        const auto [x, y] = pairs[j];
        Edge first, second;
        if (cross || std::bernoulli_distribution(0.5)(rng_)) {
          first = {u, y};
          second = {x, v};
        } else {
          first = {u, x};
          second = {v, y};
        }
        if (first.first == first.second || second.first == second.second) continue;
        const std::uint64_t k1 = edge_key(first.first, first.second);
        const std::uint64_t k2 = edge_key(second.first, second.second);
        if (k1 == k2 || accepted_.count(k1) || accepted_.count(k2)) continue;
        accepted_.erase(edge_key(x, y));
        accepted_.insert(k1);
        accepted_.insert(k2);
        pairs[b] = first;
        pairs[j] = second;
        bad[b] = 0;
        fixed = true;
        ++log_.rewires;
      }
    }

    std::size_t erased = 0;
    std::vector<Edge> kept;
    kept.reserve(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      if (bad[i])
        ++erased;
      else
        kept.push_back(pairs[i]);
    }
    if (erased > 0) {
      log_.erased_edges += erased;
      log_.warnings.push_back("rewiring budget exhausted: erased " + std::to_string(erased) +
                              (cross ? " red-blue" : " same-color") + " clashing pair(s)");
    }
    pairs = std::move(kept);
  }

  std::unordered_set<std::uint64_t>& accepted_;
  GenerationLog& log_;
  std::size_t& budget_;
  Rng& rng_;
};

std::vector<Edge> match_all(const StubPlan& red, const StubPlan& blue, std::size_t budget,
                            GenerationLog& log, Rng& rng) {
  const auto k = static_cast<NodeIndex>(red.same.size());
  std::unordered_set<std::uint64_t> accepted;
  accepted.reserve((red.same_total() + blue.same_total()) / 2 + red.cross_total());
  PoolMatcher matcher(accepted, log, budget, rng);
  std::vector<Edge> edges = matcher.match_same(expand_stubs(red.same, 0));
  auto blue_edges = matcher.match_same(expand_stubs(blue.same, k));
  auto cross_edges = matcher.match_cross(expand_stubs(red.cross, 0), expand_stubs(blue.cross, k));
  edges.insert(edges.end(), blue_edges.begin(), blue_edges.end());
  edges.insert(edges.end(), cross_edges.begin(), cross_edges.end());
  return edges;
}

std::vector<std::string> numbered_ids(std::size_t n) {
  std::vector<std::string> ids(n);
  for (std::size_t i = 0; i < n; ++i) ids[i] = std::to_string(i);
  return ids;
}

std::vector<NodeColor> block_colors(std::size_t n, std::size_t k) {
  std::vector<NodeColor> colors(n, NodeColor::Blue);
  std::fill(colors.begin(), colors.begin() + static_cast<std::ptrdiff_t>(k), NodeColor::Red);
  return colors;
}

}  // namespace

std::uint64_t derive_stream_seed(std::uint64_t master, std::uint64_t stream) {
  return splitmix64(master ^ splitmix64(stream));
}

void ConfigModelSpec::validate() const {
  if (!(k > 0 && k < n)) throw InputError("config model needs 0 < k < n");
  if (d < 1) throw InputError("config model needs red degree d >= 1");
  if (c && *c < 1) throw InputError("config model needs blue degree c >= 1");
  for (double lambda : {lambda_red, lambda_blue})
    if (!(lambda >= 0.0 && lambda <= 1.0)) throw InputError("homophily means must lie in [0, 1]");
  for (double sigma : {sigma_red, sigma_blue})
    if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw InputError("homophily sd must be >= 0");
  if (n > std::numeric_limits<NodeIndex>::max()) throw InputError("too many nodes");
}

std::size_t ConfigModelSpec::blue_degree() const {
  if (c) return *c;
  const double exact = derive_blue_degree(n, k, static_cast<double>(d), lambda_red, lambda_blue);
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(exact)));
}

std::vector<double> sample_clipped_normal(double mean, double sd, std::size_t count, Rng& rng) {
  if (!(sd >= 0.0)) throw InputError("clipped normal needs sd >= 0");
  std::vector<double> out(count);
  if (sd == 0.0) {
    std::fill(out.begin(), out.end(), std::clamp(mean, 0.0, 1.0));
    return out;
  }
  std::normal_distribution<double> normal(mean, sd);
  for (double& x : out) x = std::clamp(normal(rng), 0.0, 1.0);
  return out;
}

double derive_blue_degree(std::size_t n, std::size_t k, double d, double lambda_red, double lambda_blue) {
  if (k >= n) throw InputError("blue degree needs k < n");
  if (lambda_blue >= 1.0)
    throw InputError("blue homophily mean 1 leaves no blue cross stubs to balance red ones");
  return static_cast<double>(k) * d * (1.0 - lambda_red) /
         (static_cast<double>(n - k) * (1.0 - lambda_blue));
}

std::size_t same_stub_target(double h, std::size_t degree) {
  const double scaled = std::floor(h * static_cast<double>(degree) + 0.5);
  return static_cast<std::size_t>(std::clamp(scaled, 0.0, static_cast<double>(degree)));
}

std::size_t StubPlan::same_total() const { return std::accumulate(same.begin(), same.end(), std::size_t{0}); }
std::size_t StubPlan::cross_total() const {
  return std::accumulate(cross.begin(), cross.end(), std::size_t{0});
}

StubPlan stub_counts(std::span<const double> h, std::size_t degree, Rng& rng) {
  if (degree == 0) throw InputError("stub plan needs degree >= 1");
  StubPlan plan;
  plan.same.reserve(h.size());
  plan.cross.reserve(h.size());
  for (double value : h) {
    if (!(value >= 0.0 && value <= 1.0)) throw InputError("homophily values must lie in [0, 1]");
    const std::size_t same = same_stub_target(value, degree);
    plan.same.push_back(same);
    plan.cross.push_back(degree - same);
  }
  if (h.empty()) return plan;
  while (plan.same_total() % 2 != 0) {
    const std::size_t i = uniform_index(plan.same.size(), rng);
    int delta;
    if (plan.same[i] == 0)
      delta = +1;
    else if (plan.same[i] == degree)
      delta = -1;
    else
      delta = std::bernoulli_distribution(0.5)(rng) ? +1 : -1;
    shift_stub(plan, i, delta, "same-color stub parity");
  }
  return plan;
}

GeneratedGraph double_configuration_model(const ConfigModelSpec& spec, Rng& rng) {
  spec.validate();
  GeneratedGraph out;
  const std::size_t n = spec.n, k = spec.k;
  out.blue_degree = spec.blue_degree();

  const auto red_h = sample_clipped_normal(spec.lambda_red, spec.sigma_red, k, rng);
  const auto blue_h = sample_clipped_normal(spec.lambda_blue, spec.sigma_blue, n - k, rng);
  out.target_h = red_h;
  out.target_h.insert(out.target_h.end(), blue_h.begin(), blue_h.end());

  out.red_plan = stub_counts(red_h, spec.d, rng);
  out.blue_plan = stub_counts(blue_h, out.blue_degree, rng);

  // Cross totals must agree. The blue side, whose degree came from rounding
  // the balance equation, absorbs the difference two stubs at a time so the
  // same-color parity stays even; red is used only if blue runs out.
  auto diff = [&] {
    return static_cast<long long>(out.red_plan.cross_total()) -
           static_cast<long long>(out.blue_plan.cross_total());
  };
  while (std::llabs(diff()) >= 2) {
    const bool need_blue_cross = diff() > 0;
    bool done = true;
    for (int step = 0; step < 2 && done; ++step)
      done = try_shift(out.blue_plan, need_blue_cross ? -1 : +1, "cross-stub balance", rng);
    if (done) continue;
    done = true;
    for (int step = 0; step < 2 && done; ++step)
      done = try_shift(out.red_plan, need_blue_cross ? +1 : -1, "cross-stub balance", rng);
    if (!done) throw InputError("cannot balance red and blue cross stubs for this spec");
  }
  if (diff() != 0) {
    // k d and (n-k) c have different parity: one stub has to go.
    StubPlan& side = diff() > 0 ? out.red_plan : out.blue_plan;
    auto pos = pick_position(side.cross.size(), [&](std::size_t i) { return side.cross[i] > 0; }, rng);
    if (!pos) throw InputError("cannot reconcile cross-stub parity for this spec");
    --side.cross[*pos];
    ++out.log.erased_stubs;
    out.log.warnings.push_back("degree sums of the two colors differ in parity: erased one cross stub");
  }

  const auto edges = match_all(out.red_plan, out.blue_plan, spec.max_rewire_attempts, out.log, rng);
  out.graph = TypedGraph::from_index_edges(numbered_ids(n), block_colors(n, k), edges);

  double delta[2] = {0.0, 0.0};
  for (NodeIndex i = 0; i < n; ++i) {
    const std::size_t deg = out.graph.degree(i);
    std::size_t same = 0;
    for (NodeIndex j : out.graph.neighbors(i))
      if (out.graph.color(j) == out.graph.color(i)) ++same;
    const double realized = deg == 0 ? 0.0 : static_cast<double>(same) / static_cast<double>(deg);
    delta[i < k ? 0 : 1] += std::abs(realized - out.target_h[i]);
  }
  out.mean_abs_delta_red = delta[0] / static_cast<double>(k);
  out.mean_abs_delta_blue = delta[1] / static_cast<double>(n - k);
  return out;
}

GeneratedGraph double_configuration_model(const ConfigModelSpec& spec) {
  Rng rng(spec.seed);
  return double_configuration_model(spec, rng);
}

TypedGraph special_case_graph(std::size_t n, std::size_t k, std::size_t d, std::size_t c, double p,
                              std::span<const double> h, Rng& rng, std::size_t max_rewire_attempts) {
  if (!(k > 0 && k < n)) throw InputError("special case needs 0 < k < n");
  if (d < 1 || c < 1) throw InputError("special case needs degrees >= 1");
  if (h.size() != k) throw InputError("special case needs one homophily value per red node");
  if (!(p >= 0.0 && p <= 1.0)) throw InputError("blue homophily must lie in [0, 1]");

  const std::size_t blue = n - k;
  const std::size_t blue_same = same_stub_target(p, c);
  if ((blue * blue_same) % 2 != 0) throw InputError("blue same-color stubs have odd total");
  const std::size_t blue_cross_total = blue * (c - blue_same);
  if (blue_cross_total > k * d) throw InputError("blue cross stubs exceed red stubs");
  const std::size_t red_same_target = k * d - blue_cross_total;
  if (red_same_target % 2 != 0) throw InputError("red same-color stubs would have odd total");

  StubPlan red;
  for (double value : h) {
    if (!(value >= 0.0 && value <= 1.0)) throw InputError("homophily values must lie in [0, 1]");
    const std::size_t same = same_stub_target(value, d);
    red.same.push_back(same);
    red.cross.push_back(d - same);
  }
  while (red.same_total() != red_same_target) {
    const int delta = red.same_total() < red_same_target ? +1 : -1;
    if (!try_shift(red, delta, "cross-stub balance", rng))
      throw InputError("cannot balance red stubs against blue cross stubs");
  }
  StubPlan blue_plan;
  blue_plan.same.assign(blue, blue_same);
  blue_plan.cross.assign(blue, c - blue_same);

  GenerationLog log;
  const auto edges = match_all(red, blue_plan, max_rewire_attempts, log, rng);
  if (log.erased_edges > 0) throw GenerationError("special case graph: unresolved stub clashes");
  return TypedGraph::from_index_edges(numbered_ids(n), block_colors(n, k), edges);
}

TypedGraph random_typed_graph(std::size_t n, double red_fraction, double p_same, double p_cross, Rng& rng) {
  std::bernoulli_distribution is_red(std::clamp(red_fraction, 0.0, 1.0));
  std::vector<NodeColor> colors(n);
  for (auto& c : colors) c = is_red(rng) ? NodeColor::Red : NodeColor::Blue;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Edge> edges;
  for (NodeIndex u = 0; u < n; ++u)
    for (NodeIndex v = u + 1; v < n; ++v)
      if (unit(rng) < (colors[u] == colors[v] ? p_same : p_cross)) edges.emplace_back(u, v);
  return TypedGraph::from_index_edges(numbered_ids(n), std::move(colors), edges);
}

}  // namespace homophily
