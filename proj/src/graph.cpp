#include "starsample/graph.hpp"

#include <algorithm>
#include <string>

#include "starsample/error.hpp"

namespace starsample {

namespace {

// CSR from a list of normalised (u < v) unique edges.
void fill_csr(std::size_t n, std::span<const Edge> edges, std::vector<std::size_t>& offsets,
              std::vector<Vertex>& neighbors) {
  offsets.assign(n + 1, 0);
  for (const auto& [u, v] : edges) {
    ++offsets[u + 1];
    ++offsets[v + 1];
  }
  for (std::size_t i = 0; i < n; ++i) offsets[i + 1] += offsets[i];
  neighbors.resize(offsets[n]);
  std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
  for (const auto& [u, v] : edges) {
    neighbors[cursor[u]++] = v;
    neighbors[cursor[v]++] = u;
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::sort(neighbors.begin() + static_cast<std::ptrdiff_t>(offsets[i]),
              neighbors.begin() + static_cast<std::ptrdiff_t>(offsets[i + 1]));
  }
}

}  // namespace

bool Graph::has_edge(Vertex u, Vertex v) const {
  if (u >= order() || v >= order()) return false;
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

double Graph::density() const noexcept {
  const auto n = static_cast<double>(order());
  if (n < 2) return 0.0;
  return static_cast<double>(size()) / (n * (n - 1) / 2.0);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(size());
  for (Vertex u = 0; u < order(); ++u) {
    for (Vertex v : neighbors(u)) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

Graph Graph::from_unique_edges(std::size_t n, std::span<const Edge> edges) {
  Graph g;
  fill_csr(n, edges, g.offsets_, g.neighbors_);
  return g;
}

Graph build_graph(std::span<const Edge> pairs, std::size_t n) {
  std::vector<Edge> norm;
  norm.reserve(pairs.size());
  for (auto [u, v] : pairs) {
    if (u >= n || v >= n) {
      throw InputError("vertex id " + std::to_string(std::max(u, v)) + " out of range for n=" +
                       std::to_string(n));
    }
    if (u == v) continue;
    if (u > v) std::swap(u, v);
    norm.emplace_back(u, v);
  }
  std::sort(norm.begin(), norm.end());
  norm.erase(std::unique(norm.begin(), norm.end()), norm.end());
  Graph g;
  fill_csr(n, norm, g.offsets_, g.neighbors_);
  return g;
}

DegreeStats degree_stats(const Graph& g) {
  DegreeStats st;
  const std::size_t n = g.order();
  if (n == 0) return st;
  std::size_t total = 0;
  for (Vertex v = 0; v < n; ++v) {
    const auto d = g.degree(v);
    ++st.degree_counts[d];
    total += d;
    st.d_max = std::max(st.d_max, d);
  }
  for (const auto& [k, c] : st.degree_counts) {
    st.w[k] = static_cast<double>(c) / static_cast<double>(n);
  }
  st.d_avg = static_cast<double>(total) / static_cast<double>(n);

  // Each vertex of degree d is the first endpoint of d ordered edges, so the
  // marginal moments are degree-weighted sums.
  if (total == 0) return st;
  long double sx = 0, sxx = 0, sxy = 0;
  for (Vertex u = 0; u < n; ++u) {
    const auto du = static_cast<long double>(g.degree(u));
    sx += du * du;
    sxx += du * du * du;
    for (Vertex v : g.neighbors(u)) sxy += du * static_cast<long double>(g.degree(v));
  }
  const auto cnt = static_cast<long double>(total);
  const long double mean = sx / cnt;
  const long double var = sxx / cnt - mean * mean;
  if (var <= 1e-12L * std::max(1.0L, mean * mean)) return st;
  st.assortativity = static_cast<double>((sxy / cnt - mean * mean) / var);
  return st;
}

TargetSet::TargetSet(std::vector<Vertex> members, std::size_t n) : members_(std::move(members)) {
  if (members_.empty()) throw InputError("target set is empty");
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  if (members_.back() >= n) {
    throw InputError("target vertex " + std::to_string(members_.back()) +
                     " out of range for n=" + std::to_string(n));
  }
}

bool TargetSet::contains(Vertex v) const {
  return std::binary_search(members_.begin(), members_.end(), v);
}

ExtendedTarget extended_neighborhood(const Graph& g, const TargetSet& target) {
  const std::size_t n = g.order();
  if (target.members().back() >= n) throw InputError("target set not valid for graph");
  std::vector<char> in(n, 0);
  for (Vertex v : target.members()) {
    in[v] = 1;
    for (Vertex u : g.neighbors(v)) in[u] = 1;
  }
  ExtendedTarget ext;
  std::size_t deg_in = 0, deg_out = 0;
  for (Vertex v = 0; v < n; ++v) {
    if (in[v]) {
      ext.vertices.push_back(v);
      deg_in += g.degree(v);
    } else {
      deg_out += g.degree(v);
    }
  }
  ext.n_e_star = ext.vertices.size();
  ext.d_in = static_cast<double>(deg_in) / static_cast<double>(ext.n_e_star);
  if (ext.n_e_star < n) {
    ext.d_out = static_cast<double>(deg_out) / static_cast<double>(n - ext.n_e_star);
  }
  return ext;
}

}  // namespace starsample
