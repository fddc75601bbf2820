#include "starsample/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "starsample/er_model.hpp"
#include "starsample/error.hpp"

namespace starsample {

namespace {

void check_ext(std::size_t n, std::size_t n_e) {
  if (n_e == 0 || n_e > n) {
    throw InputError("extended target order " + std::to_string(n_e) + " invalid for n=" +
                     std::to_string(n));
  }
}

// s_bar^k and 1 - s_bar^k without cancellation.
struct Power {
  double value;
  double complement;
};

Power sbar_power(double s, double k) {
  if (s >= 1.0) return k == 0.0 ? Power{1.0, 0.0} : Power{0.0, 1.0};
  const double l = k * std::log1p(-s);
  return {std::exp(l), -std::expm1(l)};
}

// Raw p_tilde after `misses` misses. Numerator and denominator are returned so
// callers can check the sign of the denominator.
struct Ratio {
  double num;
  double den;
};

Ratio p_tilde_parts(const EstimatorInput& in, double misses) {
  const double n = static_cast<double>(in.n);
  const double n0 = static_cast<double>(in.n0_star);
  const double ne_minus_n0 = (n - n0) * ext_target_join_prob(in.s, in.n0_star);
  const auto pw = sbar_power(in.s, misses);
  return {ne_minus_n0 * pw.value + n0, n * pw.value - (in.s_bar() / in.s) * pw.complement};
}

// E[f(n_e)] with n_e = n0* + bin(n - n0*, p); the pmf is only evaluated where
// it is not negligible.
template <class F>
double expect_ext_target(const EstimatorInput& in, F&& f) {
  const std::size_t m = in.n - in.n0_star;
  const double p = ext_target_join_prob(in.s, in.n0_star);
  if (m == 0 || p <= 0.0) return f(in.n0_star);
  if (p >= 1.0) return f(in.n);
  const double mean = static_cast<double>(m) * p;
  const double sd = std::sqrt(static_cast<double>(m) * p * (1.0 - p));
  const double span = 40.0 + 12.0 * sd;
  const auto lo = static_cast<std::size_t>(std::max(0.0, std::floor(mean - span)));
  const auto hi = static_cast<std::size_t>(std::min(static_cast<double>(m), std::ceil(mean + span)));
  const double lp = std::log(p);
  const double lq = std::log1p(-p);
  const double lgm = std::lgamma(static_cast<double>(m) + 1.0);
  CompensatedSum acc;
  CompensatedSum mass;
  for (std::size_t k = lo; k <= hi; ++k) {
    const double kd = static_cast<double>(k);
    const double lpmf = lgm - std::lgamma(kd + 1.0) - std::lgamma(static_cast<double>(m) - kd + 1.0) +
                        kd * lp + (static_cast<double>(m) - kd) * lq;
    const double w = std::exp(lpmf);
    if (w == 0.0) continue;
    mass.add(w);
    acc.add(w * f(in.n0_star + k));
  }
  return acc.value() / mass.value();
}

}  // namespace

void EstimatorInput::validate() const {
  if (n0_star == 0 || n0_star > n) {
    throw InputError("target size " + std::to_string(n0_star) + " invalid for n=" +
                     std::to_string(n));
  }
  if (!(s >= 0.0 && s <= 1.0)) throw InputError("edge probability must lie in [0, 1]");
}

void EstimatorInput::validate_sss() const {
  validate();
  if (!(s > 0.0 && s < 1.0)) {
    throw DomainError(
        "SSS approximations need 0 < s < 1 (use the SSC formulas at s = 0; one sample at s = 1)");
  }
}

double EstimatorInput::mean_ext_target() const {
  return ext_target_moments(ErParams(n, s), n0_star).mean;
}

double urn_mean_without_replacement(std::size_t n, std::size_t n_star) {
  if (n_star == 0 || n_star > n) {
    throw InputError("marked count " + std::to_string(n_star) + " invalid for n=" +
                     std::to_string(n));
  }
  return (static_cast<double>(n) + 1.0) / (static_cast<double>(n_star) + 1.0);
}

double ssr_unit_exact(std::size_t n, std::size_t n_e_star) {
  check_ext(n, n_e_star);
  return static_cast<double>(n) / static_cast<double>(n_e_star);
}

double ssc_unit_exact(std::size_t n, std::size_t n_e_star) {
  check_ext(n, n_e_star);
  return (static_cast<double>(n) + 1.0) / (static_cast<double>(n_e_star) + 1.0);
}

Bounds inverse_moment_bounds(double a, std::size_t m, double p) {
  if (!(a > 0.0)) throw InputError("inverse moment bounds need a > 0");
  if (!(p >= 0.0 && p <= 1.0)) throw InputError("probability must lie in [0, 1]");
  const double md = static_cast<double>(m);
  const double lower = 1.0 / (a + md * p);
  const double upper = (a + 1.0 - p) / (a * (a + 1.0 + (md - 1.0) * p));
  return {lower, upper};
}

Bounds ssr_unit_bounds_er(const EstimatorInput& in) {
  in.validate();
  const double p = ext_target_join_prob(in.s, in.n0_star);
  const auto b = inverse_moment_bounds(static_cast<double>(in.n0_star), in.n - in.n0_star, p);
  const double n = static_cast<double>(in.n);
  return {n * b.lower, n * b.upper};
}

Bounds ssc_unit_bounds_er(const EstimatorInput& in) {
  in.validate();
  const double p = ext_target_join_prob(in.s, in.n0_star);
  const auto b = inverse_moment_bounds(static_cast<double>(in.n0_star) + 1.0, in.n - in.n0_star, p);
  const double n1 = static_cast<double>(in.n) + 1.0;
  return {n1 * b.lower, n1 * b.upper};
}

double ssr_unit_er_expected(const EstimatorInput& in) {
  in.validate();
  return expect_ext_target(in, [&](std::size_t ne) { return ssr_unit_exact(in.n, ne); });
}

double ssc_unit_er_expected(const EstimatorInput& in) {
  in.validate();
  return expect_ext_target(in, [&](std::size_t ne) { return ssc_unit_exact(in.n, ne); });
}

SssHorizons sss_horizons(const EstimatorInput& in) {
  in.validate_sss();
  const double n = static_cast<double>(in.n);
  const double n0 = static_cast<double>(in.n0_star);
  const double s = in.s;
  const double log_inv_sbar = -std::log1p(-s);
  // n - E[n_e] = (n - n0*) s_bar^{n0*}
  const double outside = (n - n0) * sbar_power(s, n0).value;
  const double t1 = (std::log1p(s * (n0 - 1.0 + outside)) - std::log1p(s * (n0 - 1.0))) / log_inv_sbar;
  const double t2 = std::log1p(n * s / in.s_bar()) / log_inv_sbar;
  return {std::max(0.0, t1), t2};
}

std::size_t sss_horizon_samples(const EstimatorInput& in) {
  return static_cast<std::size_t>(std::floor(sss_horizons(in).t1)) + 1;
}

double sss_conditional_hit_prob(const EstimatorInput& in, std::size_t t) {
  const std::size_t horizon = sss_horizon_samples(in);
  if (t == 0 || t > horizon) {
    throw RangeError("sample index " + std::to_string(t) + " outside [1, " +
                     std::to_string(horizon) + "]");
  }
  if (t == horizon) return 1.0;
  const auto r = p_tilde_parts(in, static_cast<double>(t - 1));
  return std::clamp(r.num / r.den, 0.0, 1.0);
}

WatchDrawMoments watch_draw_moments(std::size_t n_w0, std::size_t n_z0, double s, std::size_t t,
                                    WatchDrawCase which) {
  if (!(s >= 0.0 && s <= 1.0)) throw InputError("edge probability must lie in [0, 1]");
  if (n_z0 > n_w0) throw InputError("immune set larger than watch set");
  const double nw = static_cast<double>(n_w0);
  const double nz = static_cast<double>(n_z0);
  const auto pw = sbar_power(s, static_cast<double>(t));
  const double mean_i = (nw - nz) * pw.value + nz;
  const double var_i = (nw - nz) * pw.value * pw.complement;
  if (which == WatchDrawCase::disjoint) return {mean_i, var_i, which};

  if (n_z0 != 0) throw InputError("subset draw case requires an empty immune set");
  if (!(s > 0.0)) throw InputError("subset draw case requires s > 0");
  const double sbar = 1.0 - s;
  const double mean = mean_i - (sbar / s) * pw.complement;
  // Solution of var_t = s_bar^2 var_{t-1} + s mean_t with var_0 = 0.
  const double next = sbar_power(s, static_cast<double>(t) + 1.0).complement;
  const double var = var_i - sbar * pw.complement * next / (s * (1.0 + sbar));
  return {mean, std::max(0.0, var), which};
}

double sss_error_bound(const EstimatorInput& in, std::size_t misses) {
  const std::size_t horizon = sss_horizon_samples(in);
  if (misses + 1 > horizon) {
    throw RangeError("miss count " + std::to_string(misses) + " outside [0, " +
                     std::to_string(horizon - 1) + "]");
  }
  if (misses == 0) return 0.0;
  const auto r = p_tilde_parts(in, static_cast<double>(misses));
  const double var = watch_draw_moments(in.n, 0, in.s, misses, WatchDrawCase::subset).variance;
  return var * r.num / (r.den * r.den * r.den);
}

SssSchedule sss_schedule(const EstimatorInput& in) {
  const auto h = sss_horizons(in);
  SssSchedule sch;
  sch.t1 = h.t1;
  sch.t2 = h.t2;
  sch.horizon = static_cast<std::size_t>(std::floor(h.t1)) + 1;
  sch.p_tilde.reserve(sch.horizon);
  sch.q_tilde.reserve(sch.horizon);
  double survive = 1.0;  // P(c >= t)
  CompensatedSum cost;
  for (std::size_t t = 1; t <= sch.horizon; ++t) {
    double p = 1.0;
    if (t < sch.horizon) {
      const auto r = p_tilde_parts(in, static_cast<double>(t - 1));
      p = r.num / r.den;
      if (!(p >= 0.0 && p <= 1.0)) {
        if (t + 1 < sch.horizon) ++sch.clamped;
        p = std::clamp(std::isnan(p) ? 1.0 : p, 0.0, 1.0);
      }
    }
    sch.p_tilde.push_back(p);
    sch.q_tilde.push_back(p * survive);
    cost.add(survive);
    survive *= 1.0 - p;
  }
  sch.c_u_approx = cost.value();
  return sch;
}

VariantRatios variant_ratio_check(std::size_t n, double c, std::size_t n0_star, std::size_t t) {
  if (!(c > 0.0)) throw InputError("c must be positive");
  if (t == 0 || t >= n) throw InputError("sample index must satisfy 1 <= t < n");
  const EstimatorInput in{n, n0_star, c / static_cast<double>(n)};
  in.validate_sss();
  const auto r = p_tilde_parts(in, static_cast<double>(t - 1));
  if (!(r.den > 0.0)) throw RangeError("sample index beyond the approximation's range");
  const double p_sss = r.num / r.den;
  const double ne = in.mean_ext_target();
  const double p_ssr = ne / static_cast<double>(n);
  const double p_ssc = ne / static_cast<double>(n - t + 1);
  return {p_sss / p_ssr, p_ssr / p_ssc, p_sss / p_ssc};
}

double ssr_linear_exact(const ExtendedTarget& ext, std::size_t n) {
  check_ext(n, ext.n_e_star);
  const double hit = ext.d_in + 1.0;
  if (!ext.d_out) return hit;
  return (*ext.d_out + 1.0) * (static_cast<double>(n) / static_cast<double>(ext.n_e_star) - 1.0) + hit;
}

Bounds ssr_linear_er(const EstimatorInput& in) {
  const auto b = ssr_unit_bounds_er(in);
  const double deg = 1.0 + (static_cast<double>(in.n) - 1.0) * in.s;
  return {deg * b.lower, deg * b.upper};
}

double ssc_linear_er(std::size_t n, std::size_t n_e_star, double s) {
  check_ext(n, n_e_star);
  if (!(s >= 0.0 && s <= 1.0)) throw InputError("edge probability must lie in [0, 1]");
  const double nd = static_cast<double>(n);
  const double ne = static_cast<double>(n_e_star);
  CompensatedSum acc;
  double survive = 1.0;
  const std::size_t last = n - n_e_star + 1;
  for (std::size_t t = 1; t <= last; ++t) {
    const double td = static_cast<double>(t);
    acc.add((1.0 + (nd - td) * s) * survive);
    survive *= 1.0 - ne / (nd - td + 1.0);
    if (survive <= 0.0) break;
  }
  return acc.value();
}

double ssc_linear_er_expected(const EstimatorInput& in) {
  in.validate();
  return expect_ext_target(in, [&](std::size_t ne) { return ssc_linear_er(in.n, ne, in.s); });
}

double sss_linear_er(const EstimatorInput& in) {
  const auto sch = sss_schedule(in);
  const double deg0 = (static_cast<double>(in.n) - 1.0) * in.s + 1.0;
  CompensatedSum acc;
  double survive = 1.0;
  double decay = 1.0;  // s_bar^{t-1}
  for (std::size_t t = 1; t <= sch.horizon; ++t) {
    acc.add(deg0 * decay * survive);
    survive *= 1.0 - sch.p_tilde[t - 1];
    decay *= in.s_bar();
  }
  return acc.value();
}

std::vector<double> binomial_pmf(std::size_t m, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw InputError("probability must lie in [0, 1]");
  std::vector<double> pmf(m + 1, 0.0);
  if (p == 0.0) {
    pmf[0] = 1.0;
    return pmf;
  }
  if (p == 1.0) {
    pmf[m] = 1.0;
    return pmf;
  }
  const double md = static_cast<double>(m);
  const double lgm = std::lgamma(md + 1.0);
  for (std::size_t k = 0; k <= m; ++k) {
    const double kd = static_cast<double>(k);
    pmf[k] = std::exp(lgm - std::lgamma(kd + 1.0) - std::lgamma(md - kd + 1.0) + kd * std::log(p) +
                      (md - kd) * std::log1p(-p));
  }
  return pmf;
}

}  // namespace starsample
