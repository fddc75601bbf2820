#include "starsample/er_model.hpp"

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "starsample/error.hpp"

namespace starsample {

ErParams::ErParams(std::size_t n_, double s_) : n(n_), s(s_) {
  if (n == 0) throw InputError("ER order must be >= 1");
  if (!(s >= 0.0 && s <= 1.0)) throw InputError("edge probability must lie in [0, 1]");
}

Graph generate_er(const ErParams& params, Rng& rng) {
  const std::size_t n = params.n;
  std::vector<Edge> edges;
  if (params.s <= 0.0 || n < 2) return Graph::from_unique_edges(n, edges);

  const double pairs = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
  edges.reserve(static_cast<std::size_t>(pairs * params.s * 1.05 + 16));

  if (params.s >= 1.0) {
    for (Vertex v = 1; v < n; ++v) {
      for (Vertex w = 0; w < v; ++w) edges.emplace_back(w, v);
    }
    return Graph::from_unique_edges(n, edges);
  }

  // Walk the lower triangle row by row; `w` is the column inside row `v` and
  // each jump skips a geometric number of absent pairs.
  std::geometric_distribution<std::uint64_t> gap(params.s);
  std::uint64_t v = 1;
  std::uint64_t w = 0;
  bool first = true;
  while (v < n) {
    const std::uint64_t skip = gap(rng);
    w += first ? skip : skip + 1;
    first = false;
    while (w >= v && v < n) {
      w -= v;
      ++v;
    }
    if (v < n) edges.emplace_back(static_cast<Vertex>(w), static_cast<Vertex>(v));
  }
  return Graph::from_unique_edges(n, edges);
}

double expected_star_edges(const ErParams& params) {
  const double n = static_cast<double>(params.n);
  const double s = params.s;
  return (n - 1.0) * s * (1.0 + (n / 2.0 - 1.0) * (2.0 - s) * s);
}

double asymptotic_star_edge_fraction(double s) {
  if (!(s >= 0.0 && s <= 1.0)) throw InputError("edge probability must lie in [0, 1]");
  return (2.0 - s) * s;
}

double ext_target_join_prob(double s, std::size_t n0_star) {
  if (s >= 1.0) return 1.0;
  return -std::expm1(static_cast<double>(n0_star) * std::log1p(-s));
}

ExtTargetMoments ext_target_moments(const ErParams& params, std::size_t n0_star) {
  if (n0_star == 0 || n0_star > params.n) {
    throw InputError("target size " + std::to_string(n0_star) + " invalid for n=" +
                     std::to_string(params.n));
  }
  const double p = ext_target_join_prob(params.s, n0_star);
  const double rest = static_cast<double>(params.n - n0_star);
  return {static_cast<double>(n0_star) + rest * p, rest * p * (1.0 - p)};
}

std::size_t sample_ext_target_order(const ErParams& params, std::size_t n0_star, Rng& rng) {
  if (n0_star == 0 || n0_star > params.n) {
    throw InputError("target size " + std::to_string(n0_star) + " invalid for n=" +
                     std::to_string(params.n));
  }
  const double p = ext_target_join_prob(params.s, n0_star);
  const auto rest = params.n - n0_star;
  if (p <= 0.0 || rest == 0) return n0_star;
  if (p >= 1.0) return params.n;
  std::binomial_distribution<std::size_t> bin(rest, p);
  return n0_star + bin(rng);
}

}  // namespace starsample
