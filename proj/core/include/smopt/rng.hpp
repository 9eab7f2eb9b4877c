#pragma once

#include <cmath>
#include <cstdint>

namespace smopt {

// Counter-free splittable RNG. State advances with splitmix64; substreams are
// derived by mixing a stream id into the seed, so the sequence for a given
// (seed, stream) pair is identical regardless of thread count or call order
// elsewhere in the program.
class RNGStream {
 public:
  explicit RNGStream(uint64_t seed, uint64_t stream = 0)
      : state_(mix(seed + 0x9e3779b97f4a7c15ull * (stream + 1))) {}

  RNGStream substream(uint64_t id) const {
    return RNGStream(state_, 0x632be59bd9b4e019ull ^ id);
  }

  uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    return mix(state_);
  }

  // uniform in [0, 1)
  double uniform() { return (next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // uniform integer in [0, n)
  int uniform_int(int n) { return static_cast<int>(next_u64() % static_cast<uint64_t>(n)); }

  // standard normal via Box-Muller (polar-free form; deterministic, portable)
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform(), u2 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double theta = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

  double normal(double mean, double stddev) { return mean + stddev * normal(); }

 private:
  static uint64_t mix(uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ull;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebull;
    z ^= z >> 31;
    return z;
  }
  uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0;
};

}  // namespace smopt
