#pragma once

#include <cstdint>
#include <string>

namespace toposm {

// splitmix64 stream. Hand-rolled instead of <random> distributions so that
// identical seeds give identical streams on every platform and compiler;
// report determinism depends on this.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [0, 1)
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // uniform in [lo, hi)
  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  // uniform integer in [0, n); n > 0
  std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

  int next_int(int lo, int hi) {  // inclusive range
    return lo + static_cast<int>(next_below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  bool next_bool() { return (next_u64() & 1) != 0; }

  // dyadic rational in (0, 1], multiples of 1/64; sums and products with small
  // integers stay exact in double arithmetic
  double next_dyadic() {
    return static_cast<double>(next_int(1, 64)) / 64.0;
  }

  // Independent deterministic substream; safe to hand to parallel trials.
  Rng fork(std::uint64_t stream) const {
    Rng r(state_ ^ (0x9e3779b97f4a7c15ULL * (stream + 0x632be59bd9b4e019ULL)));
    r.next_u64();
    return r;
  }

 private:
  std::uint64_t state_;
};

}  // namespace toposm
