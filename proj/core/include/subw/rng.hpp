#pragma once

#include <cstdint>

namespace subw {

// Identifies one reproducible stream of draws. Distinct stream_ids (or
// substreams) give statistically independent sequences; parallel callers and
// per-replicate work use their own substream and never share state.
struct RngStream {
  uint64_t seed = 0;
  uint64_t stream_id = 0;
  uint64_t substream = 0;
};

// Counter-based generator: output i is splitmix64_fin(key + (i+1)*GOLDEN),
// i.e. the splitmix64 sequence started at a key derived from
// (seed, stream_id, substream). Random access, no carried state beyond the
// counter, so draws are independent of evaluation order and schedule.
class CounterRng {
 public:
  static constexpr uint64_t kGolden = 0x9E3779B97F4A7C15ull;

  static uint64_t fin(uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
  }

  static uint64_t stream_key(const RngStream& s) {
    return fin(fin(fin(s.seed) ^ s.stream_id) ^ s.substream);
  }

  explicit CounterRng(const RngStream& s) : key_(stream_key(s)) {}

  uint64_t next_u64() { return fin(key_ + (++i_) * kGolden); }

  // uniform on [0, 1), 53-bit resolution
  double next_halfopen() { return double(next_u64() >> 11) * 0x1.0p-53; }

  // uniform on (0, 1): never 0, safe under log
  double next_open() { return double(next_u64() >> 11) * 0x1.0p-53 + 0x1.0p-54; }

 private:
  uint64_t key_;
  uint64_t i_ = 0;
};

// Inverse normal CDF (Acklam's rational approximation, max relative error
// ~1.2e-9). Used for Gaussian sampling by inversion so that each variate
// consumes exactly one uniform and streams stay aligned. Throws DomainError
// unless p is strictly inside (0, 1).
double probit(double p);

}  // namespace subw
