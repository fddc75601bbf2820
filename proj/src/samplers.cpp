#include "starsample/samplers.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <string>

#include "starsample/error.hpp"

namespace starsample {

std::string_view to_string(Variant v) noexcept {
  switch (v) {
    case Variant::ssr: return "ssr";
    case Variant::ssc: return "ssc";
    case Variant::sss: return "sss";
  }
  return "?";
}

Variant parse_variant(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "ssr") return Variant::ssr;
  if (lower == "ssc") return Variant::ssc;
  if (lower == "sss") return Variant::sss;
  throw InputError("unknown variant '" + std::string(text) + "'");
}

std::uint64_t default_ssr_cap(std::size_t n, std::size_t n_e_star) {
  return 100 * static_cast<std::uint64_t>(n) / std::max<std::uint64_t>(1, n_e_star) + 1;
}

StarSampler::StarSampler(const Graph& g, Variant variant)
    : graph_(&g),
      variant_(variant),
      list_(g.order()),
      pos_(g.order()),
      is_target_(g.order(), 0) {}

void StarSampler::reset(const TargetSet& target) {
  const std::size_t n = graph_->order();
  if (target.members().back() >= n) throw InputError("target set not valid for graph");
  for (Vertex v : target_) is_target_[v] = 0;
  target_.assign(target.members().begin(), target.members().end());
  for (Vertex v : target_) is_target_[v] = 1;

  // |N^e(V*)| in the initial graph, marking through pos_ before it is rebuilt.
  ext_count_ = 0;
  for (std::size_t i = 0; i < n; ++i) pos_[i] = 0;
  auto mark = [&](Vertex u) {
    if (pos_[u] == 0) {
      pos_[u] = 1;
      ++ext_count_;
    }
  };
  for (Vertex v : target_) {
    mark(v);
    for (Vertex u : graph_->neighbors(v)) mark(u);
  }
  for (std::size_t i = 0; i < n; ++i) {
    list_[i] = static_cast<Vertex>(i);
    pos_[i] = i;
  }
  alive_count_ = n;
  steps_ = 0;
  finished_ = false;
}

void StarSampler::remove(Vertex v) {
  const std::size_t i = pos_[v];
  assert(i < alive_count_);
  const std::size_t last = --alive_count_;
  const Vertex moved = list_[last];
  list_[i] = moved;
  pos_[moved] = i;
  list_[last] = v;
  pos_[v] = last;
}

SampleRecord StarSampler::step(Rng& rng) {
  assert(!finished_);
  // A target vertex only leaves the graph in a hitting sample, so survivors
  // can never run out before a hit.
  assert(alive_count_ > 0);
  SampleRecord rec;
  rec.t = ++steps_;
  rec.order_before = alive_count_;
  const Vertex v = list_[uniform_vertex(rng, alive_count_)];
  rec.center = v;

  std::size_t deg = 0;
  bool hit = is_target_[v] != 0;
  for (Vertex u : graph_->neighbors(v)) {
    if (!alive(u)) continue;
    ++deg;
    hit = hit || is_target_[u] != 0;
  }
  rec.ext_degree = deg + 1;
  rec.hit = hit;
  if (hit) {
    finished_ = true;
    return rec;
  }

  switch (variant_) {
    case Variant::ssr:
      break;
    case Variant::ssc:
      remove(v);
      break;
    case Variant::sss:
      remove(v);
      for (Vertex u : graph_->neighbors(v)) {
        if (alive(u)) remove(u);
      }
      break;
  }
  return rec;
}

CostResult run_to_hit(StarSampler& sampler, Rng& rng, const RunOptions& opts) {
  CostResult res;
  std::uint64_t cap = opts.cap;
  if (cap == 0) cap = default_ssr_cap(sampler.graph().order(), sampler.ext_target_order());
  while (!sampler.finished()) {
    if (sampler.variant() == Variant::ssr && res.unit_cost >= cap) {
      res.terminated = false;
      break;
    }
    const SampleRecord rec = sampler.step(rng);
    ++res.unit_cost;
    res.linear_cost += rec.ext_degree;
    if (opts.keep_trace) res.trace.push_back(rec);
  }
  return res;
}

CostResult run_variant(Variant v, const Graph& g, const TargetSet& target, Rng& rng,
                       const RunOptions& opts) {
  StarSampler sampler(g, v);
  sampler.reset(target);
  return run_to_hit(sampler, rng, opts);
}

CostResult run_ssr(const Graph& g, const TargetSet& target, Rng& rng, const RunOptions& opts) {
  return run_variant(Variant::ssr, g, target, rng, opts);
}

CostResult run_ssc(const Graph& g, const TargetSet& target, Rng& rng, const RunOptions& opts) {
  return run_variant(Variant::ssc, g, target, rng, opts);
}

CostResult run_sss(const Graph& g, const TargetSet& target, Rng& rng, const RunOptions& opts) {
  return run_variant(Variant::sss, g, target, rng, opts);
}

}  // namespace starsample
