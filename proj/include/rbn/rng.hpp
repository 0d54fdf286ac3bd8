#pragma once

#include <cstdint>
#include <random>

namespace rbn {

// Seeded random stream. The engine is mt19937_64 (fully specified by the
// standard); the integer mappings are done here so that streams are
// identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 1) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  // Uniform in [0, n). n must be > 0.
  std::uint64_t below(std::uint64_t n);
  // Uniform in [lo, hi].
  int between(int lo, int hi);
  bool coin() { return (next() >> 63) != 0; }

 private:
  std::mt19937_64 engine_;
};

// Child seed for run `index` of an experiment: splitmix64 finaliser applied
// to the master seed combined with the index.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

}  // namespace rbn
