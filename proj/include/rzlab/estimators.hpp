#pragma once
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rzlab/ensemble.hpp"
#include "rzlab/polycore.hpp"
#include "rzlab/rootcount.hpp"

namespace rzlab {

struct EventSpec {
  enum class Kind { NoRealZeros, ExactlyJSimpleZeros, AtMostJZeros, ExceedsThreshold };

  Kind kind = Kind::NoRealZeros;
  int j = 0;
  ThresholdFamily gamma;

  static EventSpec no_real_zeros();
  static EventSpec exactly_j_simple(int j);
  static EventSpec at_most_j(int j);
  static EventSpec exceeds(ThresholdFamily gamma);

  std::string name() const;
};

/// The exact-j event is parity-constrained; violation is legal but the
/// estimate is identically zero for continuous laws.
bool parity_mismatch(const EventSpec& event, int n);

enum class TrialOutcome { Success, Failure, Undecided };

struct EstimateOptions {
  enum class Mode { Exact, FastAudited };
  Mode mode = Mode::Exact;
  int workers = 1;
  double audit_rate = 0.01;
  double threshold_resolution = 1.0 / 4096;
};

struct EstimateRecord {
  std::string spec_id;
  int n = 0;
  EventSpec event;
  uint64_t trials = 0;
  uint64_t successes = 0;
  uint64_t failures = 0;
  uint64_t undecided = 0;
  double p_hat = 0;
  double ci_low = 0;
  double ci_high = 1;
  uint64_t master_seed = 0;
  int workers = 1;
  double wall_time_s = 0;
};

/// Raised when a spot audit of the fast path disagrees with the exact count;
/// the whole batch aborts rather than report biased statistics.
struct AuditMismatch : std::runtime_error {
  explicit AuditMismatch(const std::string& w) : std::runtime_error(w) {}
};

/// Deterministic single-trial classification; trial outcomes depend only on
/// (spec, event, master_seed, trial_index, options.mode).
TrialOutcome classify_trial(const EnsembleSpec& spec, const EventSpec& event, uint64_t master_seed,
                            uint64_t trial_index, const EstimateOptions& opt = {});

/// Monte Carlo estimate with a Wilson 95% interval. Trials are independent
/// and mergeable; any worker count produces the identical record apart from
/// wall_time_s. Per-trial evaluation errors mark the trial undecided.
EstimateRecord estimate_probability(const EnsembleSpec& spec, const EventSpec& event,
                                    uint64_t trials, uint64_t master_seed,
                                    const EstimateOptions& opt = {});

/// Brute-force oracle: iterates every coefficient assignment of a finite
/// discrete law (Rademacher included) and returns the exact probability.
/// Throws Err::BudgetExceeded when atoms^slots exceeds the budget.
Rational enumerate_exact(const EnsembleSpec& spec, const EventSpec& event,
                         uint64_t budget = uint64_t(1) << 24);

struct ExponentFit {
  double b_hat = 0;
  double stderr_b = 0;
  std::vector<std::pair<int, double>> points;  // (n, p_hat)
  std::vector<double> weights;
};

/// Weighted least squares of log p_hat against log n (inverse delta-method
/// variance weights); returns the slope magnitude.
ExponentFit fit_exponent(const std::vector<EstimateRecord>& records);

/// Binomial bootstrap percentile interval for p_hat. Boundary records use
/// rule-of-three continuity handling.
std::pair<double, double> bootstrap_ci(const EstimateRecord& record, int resamples);

/// Wilson score interval at 95%.
std::pair<double, double> wilson_interval(uint64_t successes, uint64_t trials);

/// Default worker count: RZLAB_WORKERS environment variable, else 1.
int default_workers();

}  // namespace rzlab
