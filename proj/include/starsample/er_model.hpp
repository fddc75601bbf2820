#pragma once

#include <cstddef>

#include "starsample/graph.hpp"
#include "starsample/random.hpp"

namespace starsample {

// Erdős–Rényi parameters (n, s). s = 0 and s = 1 are accepted here; the SSS
// estimators reject them separately.
struct ErParams {
  std::size_t n;
  double s;

  ErParams(std::size_t n, double s);

  double s_bar() const noexcept { return 1.0 - s; }
};

// Each of the binom(n,2) pairs independently with probability s. Uses
// geometric skips over the pair index, so the work is O(n + m).
Graph generate_er(const ErParams& params, Rng& rng);

// Expected number of edges in the extended edge neighbourhood of a uniformly
// chosen star centre: (n-1)s(1 + (n/2 - 1)(2 - s)s).
double expected_star_edges(const ErParams& params);

// Large-n limit of expected_star_edges / (binom(n,2) s), i.e. (2 - s)s.
double asymptotic_star_edge_fraction(double s);

// Law of |N^e(V*)| in ER(n, s) for a fixed target of size n0*:
// n0* + bin(n - n0*, 1 - (1-s)^{n0*}).
struct ExtTargetMoments {
  double mean;
  double variance;
};

ExtTargetMoments ext_target_moments(const ErParams& params, std::size_t n0_star);

// Probability that a vertex outside the target is adjacent to it:
// 1 - (1-s)^{n0*}, computed without cancellation for small s.
double ext_target_join_prob(double s, std::size_t n0_star);

// One draw of |N^e(V*)| from the law above.
std::size_t sample_ext_target_order(const ErParams& params, std::size_t n0_star, Rng& rng);

}  // namespace starsample
