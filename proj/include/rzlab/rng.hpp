#pragma once
#include <cstdint>

namespace rzlab {

/// 64-bit finalizer (splitmix64 style); bijective on uint64.
uint64_t mix64(uint64_t x);

/// Per-trial seed derivation; trials are reproducible and order-independent.
uint64_t derive_trial_seed(uint64_t master_seed, uint64_t trial_index);

/// Counter-derived per-trial random stream.
///
/// The stream is a xoshiro256** generator whose state is derived from
/// (master_seed, trial_index) through independent mix64 passes, so any trial
/// can be regenerated in isolation and trials can run in any order on any
/// number of workers with identical results.
class TrialRng {
 public:
  TrialRng(uint64_t master_seed, uint64_t trial_index);

  uint64_t next_u64();

  /// Uniform on [0,1) with 53 random bits.
  double next_unit();

  /// Standard normal via the Marsaglia polar transform of the unit stream.
  /// Deterministic given the stream; the second variate of each accepted
  /// pair is cached.
  double next_gaussian();

 private:
  uint64_t s_[4];
  double cache_ = 0.0;
  bool have_cache_ = false;
};

}  // namespace rzlab
