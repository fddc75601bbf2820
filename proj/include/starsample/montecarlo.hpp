#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <variant>
#include <vector>

#include "starsample/er_model.hpp"
#include "starsample/estimators.hpp"
#include "starsample/graph.hpp"
#include "starsample/samplers.hpp"

namespace starsample {

using GraphSource = std::variant<ErParams, std::shared_ptr<const Graph>>;

struct ExperimentSpec {
  GraphSource source;
  Variant variant = Variant::ssr;
  std::size_t n0_star = 1;
  std::size_t trials = 1000;
  std::uint64_t master_seed = 1;
  // ER sources only: draw a new graph for each trial. Otherwise one graph is
  // drawn from a dedicated stream and shared.
  bool fresh_graph_per_trial = true;
  bool fresh_target_per_trial = true;
  // 0 picks default_threads().
  unsigned threads = 0;
};

// An analytic estimate: a point (lower == upper) or a pair of bounds.
struct Estimate {
  double lower = 0.0;
  double upper = 0.0;

  static Estimate point(double x) { return {x, x}; }
  static Estimate bounds(const Bounds& b) { return {b.lower, b.upper}; }
  bool is_point() const noexcept { return lower == upper; }
};

struct CostSummary {
  double mean = 0.0;
  double sd = 0.0;  // sample standard deviation (Bessel-corrected)
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  Estimate estimate;
  // 100 |mean - estimate| / mean; for bounds, distance to the nearest bound
  // (zero inside).
  double rel_err_pct = 0.0;
  // Point outside the CI, or bounds interval disjoint from it.
  bool estimate_outside_ci = false;

  double half_width() const noexcept { return (ci_hi - ci_lo) / 2.0; }
};

struct TrialSummary {
  Variant variant = Variant::ssr;
  std::size_t n = 0;
  double s = 0.0;  // ER parameter or the loaded graph's density
  std::size_t n0_star = 0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  CostSummary unit;
  CostSummary linear;
  // SSR runs that hit the sample cap (they still count with the cap as cost).
  std::size_t truncated = 0;
  // Per-trial costs, indexed by trial.
  std::vector<std::uint64_t> unit_costs;
  std::vector<std::uint64_t> linear_costs;
};

// Mean, sample sd and the normal 95% interval mean +- 1.96 sd / sqrt(k).
CostSummary summarize(const std::vector<std::uint64_t>& costs, const Estimate& estimate);

// Closed-form estimates for a variant on ER(n, s) with target size n0*:
// SSR bounds, SSC unit bounds and linear point, SSS approximations.
// At s = 0 and s = 1 the SSS values fall back to the exact limits.
struct VariantEstimates {
  Estimate unit;
  Estimate linear;
};
VariantEstimates er_estimates(Variant v, const EstimatorInput& in);

// Estimates for one loaded graph and target: exact SSR/SSC unit costs and SSR
// linear cost, the SSC linear formula at the measured n_e and the graph's
// density, and for SSS the ER approximation at (n, |V*|, density).
VariantEstimates graph_estimates(Variant v, const Graph& g, const TargetSet& target);

// Reads STARSAMPLE_THREADS, falling back to hardware concurrency.
unsigned default_threads();

// Runs `spec.trials` independent trials. Trial i draws everything (graph,
// target, centres) from stream_seed(master_seed, i), so the per-trial costs
// do not depend on the thread count.
TrialSummary run_experiment(const ExperimentSpec& spec);

// One experiment per s value. The template's source must be ER; its s is
// replaced, the seed is kept.
std::vector<TrialSummary> sweep(const ExperimentSpec& spec_template, const std::vector<double>& s_values);

// Real-graph table: SSR, SSC and SSS summaries with a fresh uniform target of
// size n0* per trial. Estimates average the exact single-graph formulas over
// the drawn targets (SSR, SSC) and use the ER approximation at the graph's
// (n, n0*, s) for SSS.
std::vector<TrialSummary> table_experiment(std::shared_ptr<const Graph> g, std::size_t n0_star,
                                           std::size_t trials, std::uint64_t seed,
                                           unsigned threads = 0, bool fresh_target = true);

// `count` log-spaced values from lo to hi inclusive.
std::vector<double> log_space(double lo, double hi, std::size_t count);

}  // namespace starsample
