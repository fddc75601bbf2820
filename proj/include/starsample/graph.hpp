#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace starsample {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

// Immutable simple undirected graph in CSR form. Vertices are 0..n-1 and
// every neighbor list is sorted.
class Graph {
 public:
  Graph() = default;

  std::size_t order() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t size() const noexcept { return neighbors_.size() / 2; }

  std::span<const Vertex> neighbors(Vertex v) const noexcept {
    return {neighbors_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }
  std::size_t degree(Vertex v) const noexcept { return offsets_[v + 1] - offsets_[v]; }
  std::size_t ext_degree(Vertex v) const noexcept { return degree(v) + 1; }

  bool has_edge(Vertex u, Vertex v) const;

  // m / binom(n, 2); zero for n < 2.
  double density() const noexcept;

  // Every undirected edge once, as (u, v) with u < v.
  std::vector<Edge> edges() const;

  // Builds from pairs already known to be unique, loop-free and in range.
  // Used by generators that can guarantee this; skips the normalisation pass.
  static Graph from_unique_edges(std::size_t n, std::span<const Edge> edges);

 private:
  friend Graph build_graph(std::span<const Edge>, std::size_t);

  std::vector<std::size_t> offsets_{0};
  std::vector<Vertex> neighbors_;
};

// Drops self-loops, collapses duplicate and reversed pairs.
// Throws InputError when an id is >= n.
Graph build_graph(std::span<const Edge> pairs, std::size_t n);

struct DegreeStats {
  std::map<std::size_t, std::size_t> degree_counts;  // k -> |V(k)|
  std::map<std::size_t, double> w;                   // k -> |V(k)| / n
  double d_avg = 0.0;
  std::size_t d_max = 0;
  // Pearson correlation of endpoint degrees over both orientations of every
  // edge. Empty when that degree variance is zero (regular or edgeless graphs).
  std::optional<double> assortativity;
};

DegreeStats degree_stats(const Graph& g);

// Target vertex set V*. Members are sorted and unique.
class TargetSet {
 public:
  // Throws InputError when empty or when a member is not a vertex of a graph
  // of order n.
  TargetSet(std::vector<Vertex> members, std::size_t n);

  std::span<const Vertex> members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool contains(Vertex v) const;

 private:
  std::vector<Vertex> members_;
};

// N^e(V*) with the average degree inside it and in its complement.
struct ExtendedTarget {
  std::vector<Vertex> vertices;  // sorted
  std::size_t n_e_star = 0;
  double d_in = 0.0;
  std::optional<double> d_out;  // empty when N^e(V*) = V
};

ExtendedTarget extended_neighborhood(const Graph& g, const TargetSet& target);

}  // namespace starsample
