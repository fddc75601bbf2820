#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "starsample/graph.hpp"
#include "starsample/random.hpp"

namespace starsample {

// SSR: centres drawn with replacement, the graph never changes.
// SSC: after a miss the centre and its incident edges are deleted.
// SSS: after a miss the whole star and every edge touching it are deleted.
enum class Variant { ssr, ssc, sss };

std::string_view to_string(Variant v) noexcept;
// Accepts "ssr", "ssc", "sss" in any case. Throws InputError otherwise.
Variant parse_variant(std::string_view text);

struct SampleRecord {
  std::size_t t = 0;           // 1-based sample index
  Vertex center = 0;
  std::size_t ext_degree = 0;  // 1 + surviving degree of the centre
  std::size_t order_before = 0;  // surviving vertex count n_{t-1}
  bool hit = false;
};

struct CostResult {
  std::uint64_t unit_cost = 0;
  std::uint64_t linear_cost = 0;
  // False only when an SSR run reached its sample cap without a hit.
  bool terminated = true;
  std::vector<SampleRecord> trace;  // filled when trace retention is on
};

struct RunOptions {
  bool keep_trace = false;
  // SSR only. Zero selects 100 * n / max(1, |N^e(V*)|).
  std::uint64_t cap = 0;
};

// Per-trial sampling state over a shared read-only Graph. Deletions live in
// an alive mask plus a compact alive list (swap-remove), so drawing a
// surviving centre is O(1) and removing a star is O(sum of degrees).
// Reusable across trials through reset().
class StarSampler {
 public:
  StarSampler(const Graph& g, Variant variant);

  // Restores the full graph and installs a new target set.
  void reset(const TargetSet& target);

  // Draws one star. On a miss under SSC/SSS the deletion is applied before
  // returning. Must not be called after a hit.
  SampleRecord step(Rng& rng);

  bool finished() const noexcept { return finished_; }
  std::size_t steps() const noexcept { return steps_; }
  std::size_t order() const noexcept { return alive_count_; }
  bool alive(Vertex v) const noexcept { return pos_[v] < alive_count_; }
  // Surviving vertices in unspecified order.
  std::span<const Vertex> survivors() const noexcept { return {list_.data(), alive_count_}; }
  Variant variant() const noexcept { return variant_; }
  // |N^e(V*)| in the initial graph.
  std::size_t ext_target_order() const noexcept { return ext_count_; }
  const Graph& graph() const noexcept { return *graph_; }

 private:
  void remove(Vertex v);

  const Graph* graph_;
  Variant variant_;
  std::vector<Vertex> list_;     // alive vertices occupy [0, alive_count_)
  std::vector<std::size_t> pos_;  // index of each vertex inside list_
  std::size_t alive_count_ = 0;
  std::vector<char> is_target_;
  std::vector<Vertex> target_;
  std::size_t ext_count_ = 0;
  std::size_t steps_ = 0;
  bool finished_ = false;
};

// Runs until the first hit (or the SSR cap) on an already reset sampler.
CostResult run_to_hit(StarSampler& sampler, Rng& rng, const RunOptions& opts = {});

CostResult run_ssr(const Graph& g, const TargetSet& target, Rng& rng, const RunOptions& opts = {});
CostResult run_ssc(const Graph& g, const TargetSet& target, Rng& rng, const RunOptions& opts = {});
CostResult run_sss(const Graph& g, const TargetSet& target, Rng& rng, const RunOptions& opts = {});
CostResult run_variant(Variant v, const Graph& g, const TargetSet& target, Rng& rng,
                       const RunOptions& opts = {});

// Default SSR cap for a target whose extended neighbourhood has n_e vertices.
std::uint64_t default_ssr_cap(std::size_t n, std::size_t n_e_star);

}  // namespace starsample
