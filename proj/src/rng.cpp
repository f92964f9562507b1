#include "rzlab/rng.hpp"

#include <cmath>

namespace rzlab {

uint64_t mix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

uint64_t derive_trial_seed(uint64_t master_seed, uint64_t trial_index) {
  return mix64(mix64(master_seed) ^ mix64(trial_index + 0x632BE59BD9B4E019ull));
}

static inline uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

TrialRng::TrialRng(uint64_t master_seed, uint64_t trial_index) {
  uint64_t a = mix64(master_seed);
  uint64_t b = mix64(trial_index ^ 0xD1B54A32D192ED03ull);
  s_[0] = mix64(a + b);
  s_[1] = mix64(s_[0] ^ a);
  s_[2] = mix64(s_[1] + b);
  s_[3] = mix64(s_[2] ^ (a + 0x2545F4914F6CDD1Dull));
  if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;  // all-zero state is invalid
}

uint64_t TrialRng::next_u64() {
  // xoshiro256**
  uint64_t result = rotl(s_[1] * 5, 7) * 9;
  uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double TrialRng::next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double TrialRng::next_gaussian() {
  if (have_cache_) {
    have_cache_ = false;
    return cache_;
  }
  double u, v, s;
  do {
    u = 2.0 * next_unit() - 1.0;
    v = 2.0 * next_unit() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  double f = std::sqrt(-2.0 * std::log(s) / s);
  cache_ = v * f;
  have_cache_ = true;
  return u * f;
}

}  // namespace rzlab
