#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "starsample/graph.hpp"

namespace starsample {

// Closed-form, bound and approximate expected costs of star sampling.
//
// Conventions used throughout:
//  * n      graph order
//  * n0*    target size |V*|
//  * n_e    |N^e(V*)|, the extended target order
//  * s      ER edge probability, s_bar = 1 - s
//  * Sample indices t are 1-based: p_tilde(t) is the hit probability of the
//    t-th star given that stars 1..t-1 missed, so it uses s_bar^{t-1}.

// Neumaier compensated summation. Horizons reach ~1e5 terms at small s.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

struct Bounds {
  double lower;
  double upper;

  bool contains(double x) const noexcept { return lower <= x && x <= upper; }
};

struct EstimatorInput {
  std::size_t n;
  std::size_t n0_star;
  double s;

  // Throws InputError unless 1 <= n0* <= n and s in [0, 1].
  void validate() const;
  // Additionally requires 0 < s < 1 (DomainError otherwise).
  void validate_sss() const;
  double s_bar() const noexcept { return 1.0 - s; }
  // E[n_e] = n0* + (n - n0*)(1 - s_bar^{n0*}).
  double mean_ext_target() const;
};

// Urn with n balls, n* marked, drawn without replacement until a marked ball:
// expected draws (n + 1)/(n* + 1).
double urn_mean_without_replacement(std::size_t n, std::size_t n_star);

// Any graph: SSR unit cost is geometric with success n_e/n.
double ssr_unit_exact(std::size_t n, std::size_t n_e_star);
// Any graph: SSC reduces to the urn, (n + 1)/(n_e + 1).
double ssc_unit_exact(std::size_t n, std::size_t n_e_star);

// Bounds on E[1/(a + x)] for x ~ bin(m, p), a > 0:
//   1/(a + mp) <= E[1/(a + x)] <= (a + 1 - p) / (a (a + 1 + (m - 1) p)).
Bounds inverse_moment_bounds(double a, std::size_t m, double p);

// ER(n, s) bounds on the expected unit cost of SSR and SSC, averaging over
// the graph as well as the sampling.
Bounds ssr_unit_bounds_er(const EstimatorInput& in);
Bounds ssc_unit_bounds_er(const EstimatorInput& in);

// E[n/n_e] and E[(n+1)/(n_e+1)] under the binomial law of n_e, by direct
// pmf summation. Exact references for the bounds above.
double ssr_unit_er_expected(const EstimatorInput& in);
double ssc_unit_er_expected(const EstimatorInput& in);

// --- SSS unit cost approximation ------------------------------------------

struct SssHorizons {
  double t1;  // misses after which p_tilde reaches 1
  double t2;  // misses at which the p_tilde denominator vanishes
};

SssHorizons sss_horizons(const EstimatorInput& in);

// Number of samples in the approximate SSS law: floor(t1) + 1. The last
// sample uses s_bar^{floor(t1)}, the largest exponent where p_tilde <= 1.
std::size_t sss_horizon_samples(const EstimatorInput& in);

// Approximate conditional hit probability of sample t, 1 <= t <= horizon.
// Equals 1 at the horizon sample. Throws RangeError past it.
double sss_conditional_hit_prob(const EstimatorInput& in, std::size_t t);

// Upper bound on the first-order error of p_tilde after `misses` misses
// (i.e. for sample misses + 1). Zero at misses = 0.
double sss_error_bound(const EstimatorInput& in, std::size_t misses);

struct SssSchedule {
  std::vector<double> p_tilde;  // p_tilde[t-1] for t = 1..T
  std::vector<double> q_tilde;  // approximate P(first hit at t)
  std::size_t horizon = 0;      // T
  double t1 = 0.0;
  double t2 = 0.0;
  double c_u_approx = 0.0;      // sum_t P(c >= t) = sum_t t q_tilde_t
  // Number of formula values clamped into [0, 1] before T-1. Non-zero means
  // the parameters are outside the approximation's useful range.
  std::size_t clamped = 0;
};

SssSchedule sss_schedule(const EstimatorInput& in);

// Ratios of conditional hit probabilities at sample t for s = c/n:
//   r1 = p_sss/p_ssr, r2 = p_ssr/p_ssc, r3 = p_sss/p_ssc
// with p_ssr = E[n_e]/n and p_ssc = E[n_e]/(n - t + 1).
struct VariantRatios {
  double r1;
  double r2;
  double r3;
};

VariantRatios variant_ratio_check(std::size_t n, double c, std::size_t n0_star, std::size_t t);

// --- Linear cost -----------------------------------------------------------

// Any graph, SSR: (d_out + 1)(n/n_e - 1) + (d_in + 1). Extended degrees are
// degree + 1; the first term vanishes when N^e(V*) = V.
double ssr_linear_exact(const ExtendedTarget& ext, std::size_t n);

// ER: (1 + (n - 1)s) times the SSR unit-cost bounds.
Bounds ssr_linear_er(const EstimatorInput& in);

// ER, SSC, conditioned on n_e:
//   sum_{t=1}^{n-n_e+1} (1 + (n - t)s) prod_{u<t} (1 - n_e/(n - u + 1)).
double ssc_linear_er(std::size_t n, std::size_t n_e_star, double s);

// ssc_linear_er averaged over the binomial law of n_e.
double ssc_linear_er_expected(const EstimatorInput& in);

// ER, SSS: sum_{t=1}^{T} ((n - 1)s + 1) s_bar^{t-1} prod_{u<t} (1 - p_tilde_u).
double sss_linear_er(const EstimatorInput& in);

// --- Watch/draw moments ------------------------------------------------------

// Size of a watched vertex set W under SSS when every star centre is drawn
// from a draw set D, after t samples.
//   disjoint: D and W disjoint; n_z0 vertices of W have no edge into D.
//   subset:   D inside W, no immune vertices.
enum class WatchDrawCase { disjoint, subset };

struct WatchDrawMoments {
  double mean;
  double variance;
  WatchDrawCase which;
};

WatchDrawMoments watch_draw_moments(std::size_t n_w0, std::size_t n_z0, double s, std::size_t t,
                                    WatchDrawCase which);

// --- helpers ---------------------------------------------------------------

// pmf of bin(m, p) over 0..m.
std::vector<double> binomial_pmf(std::size_t m, double p);

}  // namespace starsample
