#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "starsample/graph.hpp"

namespace starsample {

using Rng = std::mt19937_64;

// splitmix64 finaliser; good avalanche, used to decorrelate derived seeds.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seed for stream `index` under `master`. Trial i always gets the same stream
// regardless of which worker runs it.
constexpr std::uint64_t stream_seed(std::uint64_t master, std::uint64_t index) noexcept {
  return mix64(mix64(master) ^ mix64(index + 0x632be59bd9b4e019ULL));
}

inline Rng make_stream(std::uint64_t master, std::uint64_t index) {
  return Rng{stream_seed(master, index)};
}

inline Vertex uniform_vertex(Rng& rng, std::size_t n) {
  return static_cast<Vertex>(std::uniform_int_distribution<std::size_t>(0, n - 1)(rng));
}

// Uniformly random k-subset of 0..n-1 (Floyd's algorithm).
TargetSet random_target(Rng& rng, std::size_t n, std::size_t k);

}  // namespace starsample
