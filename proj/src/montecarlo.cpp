#include "starsample/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <mutex>
#include <optional>
#include <string>
#include <thread>

#include "starsample/error.hpp"
#include "starsample/random.hpp"

namespace starsample {

namespace {

constexpr std::uint64_t kSharedStream = std::numeric_limits<std::uint64_t>::max();
constexpr double kZ95 = 1.96;

std::size_t source_order(const GraphSource& src) {
  if (const auto* er = std::get_if<ErParams>(&src)) return er->n;
  return std::get<std::shared_ptr<const Graph>>(src)->order();
}

template <class Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, count))));
  if (threads == 1) {
    fn(0u, std::size_t{0}, count);
    return;
  }
  std::atomic<std::size_t> next{0};
  constexpr std::size_t kChunk = 16;
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex failure_mu;
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (;;) {
          const std::size_t begin = next.fetch_add(kChunk);
          if (begin >= count) break;
          fn(w, begin, std::min(count, begin + kChunk));
        }
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

CostSummary summarize(const std::vector<std::uint64_t>& costs, const Estimate& estimate) {
  CostSummary out;
  out.estimate = estimate;
  const std::size_t k = costs.size();
  if (k == 0) return out;
  CompensatedSum sum;
  for (auto c : costs) sum.add(static_cast<double>(c));
  out.mean = sum.value() / static_cast<double>(k);
  if (k > 1) {
    CompensatedSum sq;
    for (auto c : costs) {
      const double d = static_cast<double>(c) - out.mean;
      sq.add(d * d);
    }
    out.sd = std::sqrt(sq.value() / static_cast<double>(k - 1));
  }
  const double hw = kZ95 * out.sd / std::sqrt(static_cast<double>(k));
  out.ci_lo = out.mean - hw;
  out.ci_hi = out.mean + hw;

  double gap = 0.0;
  if (out.mean < estimate.lower) gap = estimate.lower - out.mean;
  if (out.mean > estimate.upper) gap = out.mean - estimate.upper;
  out.rel_err_pct = out.mean > 0.0 ? 100.0 * gap / out.mean : 0.0;
  out.estimate_outside_ci = estimate.upper < out.ci_lo || estimate.lower > out.ci_hi;
  return out;
}

VariantEstimates er_estimates(Variant v, const EstimatorInput& in) {
  in.validate();
  switch (v) {
    case Variant::ssr:
      return {Estimate::bounds(ssr_unit_bounds_er(in)), Estimate::bounds(ssr_linear_er(in))};
    case Variant::ssc:
      return {Estimate::bounds(ssc_unit_bounds_er(in)), Estimate::point(ssc_linear_er_expected(in))};
    case Variant::sss:
      if (in.s <= 0.0) {
        // Edgeless: SSS and SSC coincide and every extended degree is 1.
        const double u = urn_mean_without_replacement(in.n, in.n0_star);
        return {Estimate::point(u), Estimate::point(u)};
      }
      if (in.s >= 1.0) {
        return {Estimate::point(1.0), Estimate::point(static_cast<double>(in.n))};
      }
      return {Estimate::point(sss_schedule(in).c_u_approx), Estimate::point(sss_linear_er(in))};
  }
  return {};
}

VariantEstimates graph_estimates(Variant v, const Graph& g, const TargetSet& target) {
  const std::size_t n = g.order();
  if (v == Variant::sss) {
    return er_estimates(Variant::sss, {n, target.size(), std::clamp(g.density(), 0.0, 1.0)});
  }
  const auto ext = extended_neighborhood(g, target);
  if (v == Variant::ssr) {
    return {Estimate::point(ssr_unit_exact(n, ext.n_e_star)), Estimate::point(ssr_linear_exact(ext, n))};
  }
  return {Estimate::point(ssc_unit_exact(n, ext.n_e_star)),
          Estimate::point(ssc_linear_er(n, ext.n_e_star, g.density()))};
}

unsigned default_threads() {
  if (const char* env = std::getenv("STARSAMPLE_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

TrialSummary run_experiment(const ExperimentSpec& spec) {
  if (spec.trials == 0) throw InputError("trials must be >= 1");
  const std::size_t n = source_order(spec.source);
  if (spec.n0_star == 0 || spec.n0_star > n) {
    throw InputError("target size " + std::to_string(spec.n0_star) + " invalid for n=" +
                     std::to_string(n));
  }

  const ErParams* er = std::get_if<ErParams>(&spec.source);
  std::shared_ptr<const Graph> shared;
  if (!er) {
    shared = std::get<std::shared_ptr<const Graph>>(spec.source);
  } else if (!spec.fresh_graph_per_trial) {
    Rng rng = make_stream(spec.master_seed, kSharedStream);
    shared = std::make_shared<const Graph>(generate_er(*er, rng));
  }
  std::optional<TargetSet> fixed_target;
  if (!spec.fresh_target_per_trial) {
    Rng rng = make_stream(spec.master_seed, kSharedStream - 1);
    fixed_target = random_target(rng, n, spec.n0_star);
  }

  TrialSummary out;
  out.variant = spec.variant;
  out.n = n;
  out.s = er ? er->s : shared->density();
  out.n0_star = spec.n0_star;
  out.trials = spec.trials;
  out.seed = spec.master_seed;
  out.unit_costs.assign(spec.trials, 0);
  out.linear_costs.assign(spec.trials, 0);
  std::vector<char> truncated(spec.trials, 0);
  const bool per_target_estimate = !er && spec.variant != Variant::sss;
  std::vector<VariantEstimates> estimates(per_target_estimate ? spec.trials : 0);

  const unsigned threads = spec.threads ? spec.threads : default_threads();
  parallel_for(spec.trials, threads, [&](unsigned, std::size_t begin, std::size_t end) {
    std::optional<StarSampler> reusable;
    if (shared) reusable.emplace(*shared, spec.variant);
    for (std::size_t i = begin; i < end; ++i) {
      Rng rng = make_stream(spec.master_seed, i);
      std::optional<Graph> own;
      if (!shared) own = generate_er(*er, rng);
      const Graph& g = shared ? *shared : *own;
      const TargetSet target = fixed_target ? *fixed_target : random_target(rng, n, spec.n0_star);
      std::optional<StarSampler> local;
      StarSampler& sampler = shared ? *reusable : local.emplace(g, spec.variant);
      sampler.reset(target);
      const CostResult res = run_to_hit(sampler, rng);
      out.unit_costs[i] = res.unit_cost;
      out.linear_costs[i] = res.linear_cost;
      truncated[i] = res.terminated ? 0 : 1;
      if (per_target_estimate) estimates[i] = graph_estimates(spec.variant, g, target);
    }
  });
  out.truncated = static_cast<std::size_t>(std::count(truncated.begin(), truncated.end(), 1));

  VariantEstimates est;
  if (er) {
    est = er_estimates(spec.variant, {n, spec.n0_star, er->s});
  } else if (per_target_estimate) {
    CompensatedSum u, l;
    for (const auto& e : estimates) {
      u.add(e.unit.lower);
      l.add(e.linear.lower);
    }
    const double k = static_cast<double>(spec.trials);
    est = {Estimate::point(u.value() / k), Estimate::point(l.value() / k)};
  } else {
    est = er_estimates(Variant::sss, {n, spec.n0_star, std::clamp(out.s, 0.0, 1.0)});
  }
  out.unit = summarize(out.unit_costs, est.unit);
  out.linear = summarize(out.linear_costs, est.linear);
  return out;
}

std::vector<TrialSummary> sweep(const ExperimentSpec& spec_template, const std::vector<double>& s_values) {
  const auto* er = std::get_if<ErParams>(&spec_template.source);
  if (!er) throw InputError("sweep needs an Erdos-Renyi source");
  std::vector<TrialSummary> out;
  out.reserve(s_values.size());
  for (double s : s_values) {
    ExperimentSpec spec = spec_template;
    spec.source = ErParams(er->n, s);
    out.push_back(run_experiment(spec));
  }
  return out;
}

std::vector<TrialSummary> table_experiment(std::shared_ptr<const Graph> g, std::size_t n0_star,
                                           std::size_t trials, std::uint64_t seed, unsigned threads,
                                           bool fresh_target) {
  std::vector<TrialSummary> rows;
  for (Variant v : {Variant::ssr, Variant::ssc, Variant::sss}) {
    ExperimentSpec spec{g, v, n0_star, trials, seed, false, fresh_target, threads};
    rows.push_back(run_experiment(spec));
  }
  return rows;
}

std::vector<double> log_space(double lo, double hi, std::size_t count) {
  if (count == 0) return {};
  if (!(lo > 0.0 && hi > 0.0)) throw InputError("log_space needs positive endpoints");
  if (count == 1) return {lo};
  std::vector<double> out(count);
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1));
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

}  // namespace starsample
