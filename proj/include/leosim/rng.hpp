// SPDX-License-Identifier: Apache-2.0
#ifndef LEOSIM_RNG_HPP
#define LEOSIM_RNG_HPP

#include <cstdint>

namespace leosim {

/**
 * Counter-based random stream.
 *
 * Each draw hashes (key, counter) through the splitmix64 finalizer, so a
 * stream is a pure function of its key and every substream derived from a
 * parent key is statistically independent of its siblings. Streams can be
 * handed to concurrent workers without shared state, and results do not
 * depend on evaluation order as long as each worker owns its own substream.
 */
class RandomStream {
 public:
  explicit RandomStream(uint64_t seed) : key_(mix(seed ^ 0x9e3779b97f4a7c15ull)) {}

  /// Derive an independent child stream; `tag` identifies the purpose or index.
  RandomStream substream(uint64_t tag) const {
    return RandomStream(mix(key_ ^ mix(tag + 0x632be59bd9b4e019ull)), 0);
  }

  uint64_t next_u64() { return mix(key_ + 0x9e3779b97f4a7c15ull * ++counter_); }

  /// Uniform double in [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform double in (0, 1].
  double uniform_open() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  /// Uniform integer in [0, n). Requires n > 0.
  long uniform_int(long n) {
    long v = static_cast<long>(uniform() * static_cast<double>(n));
    return v >= n ? n - 1 : v;
  }

  /// Standard normal via Box-Muller (consumes two uniforms per draw).
  double normal();

  /// Poisson draw; exact inversion below lambda = 50, rounded normal above.
  long poisson(double lambda);

 private:
  RandomStream(uint64_t key, int) : key_(key) {}

  static uint64_t mix(uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ull;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebull;
    z ^= z >> 31;
    return z;
  }

  uint64_t key_;
  uint64_t counter_ = 0;
};

} // namespace leosim

#endif // LEOSIM_RNG_HPP
