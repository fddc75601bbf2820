#include "starsample/random.hpp"

#include <algorithm>
#include <string>

#include "starsample/error.hpp"

namespace starsample {

TargetSet random_target(Rng& rng, std::size_t n, std::size_t k) {
  if (k == 0 || k > n) {
    throw InputError("target size " + std::to_string(k) + " invalid for n=" + std::to_string(n));
  }
  std::vector<Vertex> chosen;
  chosen.reserve(k);
  // Linear membership scan for the usual tiny targets; a mark array otherwise.
  const bool use_marks = k > 32;
  std::vector<char> marked(use_marks ? n : 0, 0);
  auto taken = [&](Vertex v) {
    return use_marks ? marked[v] != 0 : std::find(chosen.begin(), chosen.end(), v) != chosen.end();
  };
  for (std::size_t j = n - k; j < n; ++j) {
    auto t = uniform_vertex(rng, j + 1);
    if (taken(t)) t = static_cast<Vertex>(j);
    chosen.push_back(t);
    if (use_marks) marked[t] = 1;
  }
  return TargetSet(std::move(chosen), n);
}

}  // namespace starsample
