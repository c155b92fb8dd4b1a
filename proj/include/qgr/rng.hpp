#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

#include "qgr/error.hpp"

namespace qgr {

// splitmix64 finalizer, used to spread seed material.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Derives an independent sub-stream seed from a base seed and a lane path
// (e.g. {node_count, run_index, purpose}). Pure function of its arguments.
inline std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> lane) {
  std::uint64_t h = mix64(base);
  std::uint64_t i = 1;
  for (std::uint64_t v : lane) {
    h = mix64(h ^ mix64(v + i));
    ++i;
  }
  return h;
}

// mt19937_64 with hand-rolled distributions. The engine's output sequence is
// pinned by the standard; std::*_distribution is not, and would break
// cross-platform reproducibility of seeded runs.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // [0,1)
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // [lo,hi)
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // [0,n), unbiased
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) fail(Errc::invalid_config, "Rng::below(0)");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

  bool chance(double p) { return uniform01() < p; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace qgr
