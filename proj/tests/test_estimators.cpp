#include <gtest/gtest.h>

#include <cmath>

#include "oracle.hpp"
#include "starsample/er_model.hpp"
#include "starsample/error.hpp"
#include "starsample/estimators.hpp"
#include "starsample/samplers.hpp"

using namespace starsample;

namespace {

// bin(m, p) pmf by the ratio recurrence, in long double.
std::vector<double> pmf_recurrence(std::size_t m, double p) {
  std::vector<long double> w(m + 1);
  w[0] = 1;
  for (std::size_t k = 1; k <= m; ++k) w[k] = w[k - 1] * (m - k + 1) / k * p / (1 - p);
  long double total = 0;
  for (auto x : w) total += x;
  std::vector<double> out(m + 1);
  for (std::size_t k = 0; k <= m; ++k) out[k] = static_cast<double>(w[k] / total);
  return out;
}

double inverse_moment(double a, std::size_t m, double p) {
  const auto pmf = pmf_recurrence(m, p);
  double e = 0;
  for (std::size_t k = 0; k <= m; ++k) e += pmf[k] / (a + k);
  return e;
}

// Conditional means from the one-step recurrences (no closed forms):
//   watch set disjoint from draws: mu <- mu - (mu - n_z) s
//   draws inside the watch set:    mu <- mu - (1 + (mu - 1) s)
double p_tilde_by_recurrence(const EstimatorInput& in, std::size_t misses) {
  double ext = in.mean_ext_target();
  double all = static_cast<double>(in.n);
  const double n0 = static_cast<double>(in.n0_star);
  for (std::size_t k = 0; k < misses; ++k) {
    ext -= (ext - n0) * in.s;
    all -= 1.0 + (all - 1.0) * in.s;
  }
  return ext / all;
}

}  // namespace

TEST(Urn, MatchesSurvivalSum) {
  for (std::size_t n : {1u, 2u, 10u, 1000u}) {
    for (std::size_t k = 1; k <= std::min<std::size_t>(n, 5); ++k) {
      double survive = 1, sum = 0;
      for (std::size_t t = 1; t <= n - k + 1; ++t) {
        sum += survive;
        survive *= 1.0 - static_cast<double>(k) / static_cast<double>(n - t + 1);
      }
      EXPECT_NEAR(urn_mean_without_replacement(n, k), sum, 1e-9 * sum);
    }
  }
  EXPECT_NEAR(urn_mean_without_replacement(1000, 2), 1001.0 / 3.0, 1e-12);
}

TEST(ExactForms, Values) {
  EXPECT_DOUBLE_EQ(ssr_unit_exact(10, 4), 2.5);
  EXPECT_DOUBLE_EQ(ssc_unit_exact(10, 4), 11.0 / 5.0);
  EXPECT_THROW(ssr_unit_exact(10, 0), InputError);
  EXPECT_THROW(ssc_unit_exact(10, 11), InputError);
}

TEST(Binomial, PmfMatchesRecurrence) {
  for (std::size_t m : {0u, 1u, 7u, 200u}) {
    for (double p : {0.0, 1e-4, 0.3, 0.999, 1.0}) {
      const auto got = binomial_pmf(m, p);
      ASSERT_EQ(got.size(), m + 1);
      double total = 0;
      for (double x : got) total += x;
      EXPECT_NEAR(total, 1.0, 1e-12);
      if (p > 0 && p < 1) {
        const auto ref = pmf_recurrence(m, p);
        for (std::size_t k = 0; k <= m; ++k) EXPECT_NEAR(got[k], ref[k], 1e-12);
      }
    }
  }
  EXPECT_THROW(binomial_pmf(3, 1.5), InputError);
}

TEST(InverseMoment, BoundsContainExactValue) {
  for (double a : {1.0, 2.0, 3.0, 10.0}) {
    for (std::size_t m : {1u, 5u, 100u, 998u}) {
      for (double p : {1e-5, 0.01, 0.2, 0.5, 0.9}) {
        const Bounds b = inverse_moment_bounds(a, m, p);
        const double exact = inverse_moment(a, m, p);
        EXPECT_LE(b.lower, exact * (1 + 1e-12)) << a << " " << m << " " << p;
        EXPECT_GE(b.upper, exact * (1 - 1e-12)) << a << " " << m << " " << p;
      }
    }
  }
  const Bounds tight = inverse_moment_bounds(2.0, 10, 0.0);
  EXPECT_DOUBLE_EQ(tight.lower, 0.5);
  EXPECT_DOUBLE_EQ(tight.upper, 0.5);
}

TEST(ErUnit, ExpectationsInsideBounds) {
  for (double s : {1e-4, 1e-3, 1e-2, 1e-1}) {
    const EstimatorInput in{1000, 2, s};
    const double ssr = ssr_unit_er_expected(in);
    const double ssc = ssc_unit_er_expected(in);
    EXPECT_TRUE(ssr_unit_bounds_er(in).contains(ssr)) << s;
    EXPECT_TRUE(ssc_unit_bounds_er(in).contains(ssc)) << s;

    const std::size_t m = 998;
    const auto pmf = pmf_recurrence(m, ext_target_join_prob(s, 2));
    double e_ssr = 0, e_ssc = 0;
    for (std::size_t k = 0; k <= m; ++k) {
      e_ssr += pmf[k] * 1000.0 / (2.0 + k);
      e_ssc += pmf[k] * 1001.0 / (3.0 + k);
    }
    EXPECT_NEAR(ssr, e_ssr, 1e-9 * e_ssr);
    EXPECT_NEAR(ssc, e_ssc, 1e-9 * e_ssc);
  }
}

TEST(ErUnit, EdgeCases) {
  const EstimatorInput edgeless{50, 2, 0.0};
  EXPECT_DOUBLE_EQ(ssr_unit_bounds_er(edgeless).lower, 25.0);
  EXPECT_DOUBLE_EQ(ssr_unit_bounds_er(edgeless).upper, 25.0);
  EXPECT_NEAR(ssc_unit_bounds_er(edgeless).lower, 17.0, 1e-12);
  const EstimatorInput complete{50, 2, 1.0};
  EXPECT_NEAR(ssr_unit_er_expected(complete), 1.0, 1e-12);
  EXPECT_THROW((EstimatorInput{5, 6, 0.1}.validate()), InputError);
  EXPECT_THROW((EstimatorInput{5, 0, 0.1}.validate()), InputError);
  EXPECT_THROW((EstimatorInput{5, 1, 1.1}.validate()), InputError);
}

class SssGrid : public ::testing::TestWithParam<double> {};

TEST_P(SssGrid, ScheduleIsAProbabilityLaw) {
  const EstimatorInput in{1000, 2, GetParam()};
  const auto sch = sss_schedule(in);
  ASSERT_EQ(sch.horizon, sch.p_tilde.size());
  EXPECT_EQ(sch.horizon, sss_horizon_samples(in));
  EXPECT_EQ(sch.clamped, 0u);
  double total = 0;
  for (double q : sch.q_tilde) total += q;
  EXPECT_NEAR(total, 1.0, 1e-9);
  EXPECT_DOUBLE_EQ(sch.p_tilde.front(), in.mean_ext_target() / 1000.0);
  EXPECT_DOUBLE_EQ(sch.p_tilde.back(), 1.0);
  for (double p : sch.p_tilde) {
    EXPECT_GE(p, 0.0);
    EXPECT_LE(p, 1.0);
  }
  EXPECT_LT(sch.t1, sch.t2);
  double cost = 0;
  for (std::size_t t = 0; t < sch.horizon; ++t) cost += (t + 1) * sch.q_tilde[t];
  EXPECT_NEAR(sch.c_u_approx, cost, 1e-9 * cost);
}

TEST_P(SssGrid, ConditionalProbabilitiesMatchRecurrences) {
  const EstimatorInput in{1000, 2, GetParam()};
  const std::size_t horizon = sss_horizon_samples(in);
  for (std::size_t t = 1; t < horizon; t += std::max<std::size_t>(1, horizon / 50)) {
    const double ref = p_tilde_by_recurrence(in, t - 1);
    EXPECT_NEAR(sss_conditional_hit_prob(in, t), ref, 1e-9 * ref + 1e-12) << "t=" << t;
  }
  EXPECT_DOUBLE_EQ(sss_conditional_hit_prob(in, horizon), 1.0);
  EXPECT_THROW(sss_conditional_hit_prob(in, horizon + 1), RangeError);
  EXPECT_THROW(sss_conditional_hit_prob(in, 0), RangeError);
}

TEST_P(SssGrid, HorizonsSolveTheirEquations) {
  const EstimatorInput in{1000, 2, GetParam()};
  const auto h = sss_horizons(in);
  const double s = in.s, sb = in.s_bar(), n = 1000.0, n0 = 2.0;
  auto num = [&](double k) { return (in.mean_ext_target() - n0) * std::pow(sb, k) + n0; };
  auto den = [&](double k) { return n * std::pow(sb, k) - sb / s * (1 - std::pow(sb, k)); };
  EXPECT_NEAR(num(h.t1) / den(h.t1), 1.0, 1e-7);
  EXPECT_NEAR(den(h.t2) / n, 0.0, 1e-9);
}

TEST_P(SssGrid, ErrorBoundShape) {
  const EstimatorInput in{1000, 2, GetParam()};
  EXPECT_DOUBLE_EQ(sss_error_bound(in, 0), 0.0);
  const std::size_t horizon = sss_horizon_samples(in);
  if (horizon > 2) EXPECT_GT(sss_error_bound(in, 1), 0.0);
  EXPECT_THROW(sss_error_bound(in, horizon), RangeError);
}

INSTANTIATE_TEST_SUITE_P(LogGrid, SssGrid, ::testing::Values(1e-4, 3e-4, 1e-3, 3e-3, 1e-2, 3e-2, 1e-1));

TEST(Sss, RejectsDegenerateDensity) {
  EXPECT_THROW(sss_schedule({100, 2, 0.0}), DomainError);
  EXPECT_THROW(sss_schedule({100, 2, 1.0}), DomainError);
  EXPECT_THROW(sss_horizons({100, 2, 0.0}), DomainError);
}

TEST(Sss, ConditionalHitRateWithinErrorBound) {
  // Empirical P(hit at t | t-1 misses) on fresh ER graphs versus p_tilde. The
  // gap must stay within the first-order error bound plus sampling noise.
  const EstimatorInput in{300, 2, 0.01};
  const std::size_t horizon = sss_horizon_samples(in);
  const std::size_t tmax = std::min<std::size_t>(8, horizon - 1);
  std::vector<double> reached(tmax + 1, 0), hits(tmax + 1, 0);
  Rng rng(2);
  for (int i = 0; i < 60000; ++i) {
    const Graph g = generate_er(ErParams(in.n, in.s), rng);
    const auto r = run_sss(g, random_target(rng, in.n, in.n0_star), rng);
    for (std::size_t t = 1; t <= std::min<std::uint64_t>(r.unit_cost, tmax); ++t) reached[t] += 1;
    if (r.unit_cost <= tmax) hits[r.unit_cost] += 1;
  }
  for (std::size_t t = 1; t <= tmax; ++t) {
    const double p = sss_conditional_hit_prob(in, t);
    const double emp = hits[t] / reached[t];
    const double se = std::sqrt(p * (1 - p) / reached[t]);
    EXPECT_LE(std::fabs(emp - p), sss_error_bound(in, t - 1) + 4 * se) << "t=" << t;
  }
}

TEST(WatchDraw, ClosedFormsMatchRecurrences) {
  for (double s : {0.01, 0.1, 0.5}) {
    double mu = 50, var = 0;
    double mu_i = 50, var_i = 0;
    for (std::size_t t = 1; t <= 20; ++t) {
      // subset case: n_t = n_{t-1} - 1 - bin(n_{t-1} - 1, s)
      var = (1 - s) * (1 - s) * var + s * (1 - s) * (mu - 1);
      mu = (1 - s) * (mu - 1);
      // disjoint case with 10 immune vertices: binomial thinning of 40
      var_i = (1 - s) * (1 - s) * var_i + s * (1 - s) * (mu_i - 10);
      mu_i = mu_i - (mu_i - 10) * s;
      if (mu <= 1) break;
      const auto ii = watch_draw_moments(50, 0, s, t, WatchDrawCase::subset);
      const auto i = watch_draw_moments(50, 10, s, t, WatchDrawCase::disjoint);
      EXPECT_NEAR(ii.mean, mu, 1e-9 * 50);
      EXPECT_NEAR(ii.variance, var, 1e-9 * 50);
      EXPECT_NEAR(i.mean, mu_i, 1e-9 * 50);
      EXPECT_NEAR(i.variance, var_i, 1e-9 * 50);
    }
  }
}

TEST(WatchDraw, DirectSimulation) {
  const std::size_t nw = 50, nz = 10;
  const double s = 0.1;
  std::mt19937_64 rng(6);
  std::bernoulli_distribution edge(s);
  for (std::size_t t : {1u, 3u, 6u}) {
    std::vector<double> disj, sub;
    for (int run = 0; run < 20000; ++run) {
      std::size_t exposed = nw - nz;
      for (std::size_t k = 0; k < t; ++k) {
        std::size_t keep = 0;
        for (std::size_t v = 0; v < exposed; ++v) keep += edge(rng) ? 0 : 1;
        exposed = keep;
      }
      disj.push_back(static_cast<double>(exposed + nz));
      std::size_t alive = nw;
      for (std::size_t k = 0; k < t && alive > 0; ++k) {
        std::size_t keep = 0;
        for (std::size_t v = 1; v < alive; ++v) keep += edge(rng) ? 0 : 1;
        alive = keep;
      }
      sub.push_back(static_cast<double>(alive));
    }
    const auto d = oracle::mean_se(disj);
    const auto sb = oracle::mean_se(sub);
    const auto ed = watch_draw_moments(nw, nz, s, t, WatchDrawCase::disjoint);
    const auto es = watch_draw_moments(nw, 0, s, t, WatchDrawCase::subset);
    EXPECT_NEAR(d.mean, ed.mean, 4 * d.se);
    EXPECT_NEAR(sb.mean, es.mean, 4 * sb.se);
    EXPECT_NEAR(sb.se * sb.se * sub.size(), es.variance, 0.06 * es.variance + 1e-9);
    EXPECT_NEAR(d.se * d.se * disj.size(), ed.variance, 0.06 * ed.variance + 1e-9);
  }
}

TEST(WatchDraw, InputChecks) {
  EXPECT_THROW(watch_draw_moments(5, 6, 0.1, 1, WatchDrawCase::disjoint), InputError);
  EXPECT_THROW(watch_draw_moments(5, 1, 0.1, 1, WatchDrawCase::subset), InputError);
  EXPECT_THROW(watch_draw_moments(5, 0, 1.5, 1, WatchDrawCase::subset), InputError);
  const auto zero = watch_draw_moments(50, 0, 0.1, 0, WatchDrawCase::subset);
  EXPECT_DOUBLE_EQ(zero.mean, 50.0);
  EXPECT_DOUBLE_EQ(zero.variance, 0.0);
}

TEST(VariantRatios, ConvergeMonotonically) {
  for (std::size_t t : {2u, 8u}) {
    double prev[3] = {1e9, 1e9, 1e9};
    for (std::size_t n : {100u, 1000u, 10000u, 100000u}) {
      const auto r = variant_ratio_check(n, 1.0, 2, t);
      const double gap[3] = {std::fabs(r.r1 - 1), std::fabs(r.r2 - 1), std::fabs(r.r3 - 1)};
      for (int k = 0; k < 3; ++k) {
        EXPECT_LT(gap[k], prev[k]);
        prev[k] = gap[k];
      }
      EXPECT_NEAR(r.r2, static_cast<double>(n - t + 1) / n, 1e-12);
      EXPECT_NEAR(r.r3, r.r1 * r.r2, 1e-12);
    }
    for (double g : prev) EXPECT_LT(g, 0.05);
  }
  EXPECT_THROW(variant_ratio_check(10, 1.0, 2, 10), InputError);
}

TEST(Linear, SsrExactLimits) {
  ExtendedTarget full;
  full.n_e_star = 10;
  full.d_in = 3.0;
  EXPECT_DOUBLE_EQ(ssr_linear_exact(full, 10), 4.0);
  ExtendedTarget part;
  part.n_e_star = 2;
  part.d_in = 1.0;
  part.d_out = 0.0;
  EXPECT_DOUBLE_EQ(ssr_linear_exact(part, 10), 4.0 + 2.0);
}

TEST(Linear, SsrErScalesUnitBounds) {
  const EstimatorInput in{1000, 2, 0.01};
  const auto u = ssr_unit_bounds_er(in);
  const auto l = ssr_linear_er(in);
  EXPECT_NEAR(l.lower, u.lower * (1 + 999 * 0.01), 1e-9);
  EXPECT_NEAR(l.upper, u.upper * (1 + 999 * 0.01), 1e-9);
}

TEST(Linear, SscLimits) {
  EXPECT_NEAR(ssc_linear_er(100, 3, 0.0), 101.0 / 4.0, 1e-9);
  EXPECT_NEAR(ssc_linear_er(100, 100, 0.2), 1.0 + 99 * 0.2, 1e-12);
  EXPECT_THROW(ssc_linear_er(100, 0, 0.1), InputError);
}

TEST(Linear, SssSmallDensityApproachesUnit) {
  const EstimatorInput in{1000, 2, 1e-6};
  EXPECT_NEAR(sss_linear_er(in), sss_schedule(in).c_u_approx, 0.01 * sss_schedule(in).c_u_approx);
}

TEST(Linear, ApproximationsTrackSimulation) {
  const EstimatorInput in{300, 2, 0.02};
  const ErParams params(in.n, in.s);
  std::vector<double> ssc, sss;
  Rng rng(3);
  for (int i = 0; i < 6000; ++i) {
    const Graph g = generate_er(params, rng);
    const TargetSet target = random_target(rng, in.n, in.n0_star);
    ssc.push_back(static_cast<double>(run_ssc(g, target, rng).linear_cost));
    sss.push_back(static_cast<double>(run_sss(g, target, rng).linear_cost));
  }
  const double a = oracle::mean_se(ssc).mean;
  const double b = oracle::mean_se(sss).mean;
  EXPECT_NEAR(ssc_linear_er_expected(in) / a, 1.0, 0.1);
  EXPECT_NEAR(sss_linear_er(in) / b, 1.0, 0.1);
}
