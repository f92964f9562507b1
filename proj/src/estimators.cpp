#include "rzlab/estimators.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <thread>

#include "rzlab/error.hpp"

namespace rzlab {

EventSpec EventSpec::no_real_zeros() { return EventSpec{}; }

EventSpec EventSpec::exactly_j_simple(int j) {
  EventSpec e;
  e.kind = Kind::ExactlyJSimpleZeros;
  e.j = j;
  return e;
}

EventSpec EventSpec::at_most_j(int j) {
  EventSpec e;
  e.kind = Kind::AtMostJZeros;
  e.j = j;
  return e;
}

EventSpec EventSpec::exceeds(ThresholdFamily gamma) {
  EventSpec e;
  e.kind = Kind::ExceedsThreshold;
  e.gamma = std::move(gamma);
  return e;
}

std::string EventSpec::name() const {
  switch (kind) {
    case Kind::NoRealZeros: return "no-real-zeros";
    case Kind::ExactlyJSimpleZeros: return "exactly-" + std::to_string(j) + "-simple-zeros";
    case Kind::AtMostJZeros: return "at-most-" + std::to_string(j) + "-zeros";
    case Kind::ExceedsThreshold: return "exceeds-threshold";
  }
  return "?";
}

bool parity_mismatch(const EventSpec& event, int n) {
  if (event.kind != EventSpec::Kind::ExactlyJSimpleZeros) return false;
  return ((event.j - (n - 1)) % 2) != 0;
}

namespace {

constexpr uint64_t kAuditSalt = 0x5851F42D4C957F2Dull;

bool audit_selected(uint64_t trial_seed, double rate) {
  if (rate <= 0) return false;
  if (rate >= 1) return true;
  double u = static_cast<double>(mix64(trial_seed ^ kAuditSalt) >> 11) * 0x1.0p-53;
  return u < rate;
}

int exact_distinct_count(const Polynomial& f) { return count_distinct_real_roots_isolation(f); }

TrialOutcome classify_poly(const EnsembleSpec& spec, const EventSpec& event, const Polynomial& f,
                           uint64_t trial_seed, const EstimateOptions& opt) {
  if (f.is_zero()) return TrialOutcome::Failure;  // identically zero: roots everywhere

  switch (event.kind) {
    case EventSpec::Kind::NoRealZeros:
    case EventSpec::Kind::AtMostJZeros:
    case EventSpec::Kind::ExactlyJSimpleZeros: {
      int target_max = event.kind == EventSpec::Kind::AtMostJZeros ? event.j : 0;
      if (opt.mode == EstimateOptions::Mode::FastAudited) {
        FastCount fast;
        bool fast_ok = true;
        try {
          fast = count_real_roots_fast(f);
        } catch (const Error&) {
          fast_ok = false;
        }
        if (fast_ok && fast.trusted) {
          if (audit_selected(trial_seed, opt.audit_rate)) {
            int exact = exact_distinct_count(f);
            if (exact != fast.count)
              throw AuditMismatch("fast count " + std::to_string(fast.count) +
                                  " != exact count " + std::to_string(exact));
          }
          switch (event.kind) {
            case EventSpec::Kind::NoRealZeros:
              return fast.count == 0 ? TrialOutcome::Success : TrialOutcome::Failure;
            case EventSpec::Kind::AtMostJZeros:
              return fast.count <= target_max ? TrialOutcome::Success : TrialOutcome::Failure;
            case EventSpec::Kind::ExactlyJSimpleZeros:
              // trusted counts certify simple, pairwise-distinct real roots
              return fast.count == event.j ? TrialOutcome::Success : TrialOutcome::Failure;
            default:
              break;
          }
        }
        // fall through to the exact path on untrusted or failed fast counts
      }
      RootCountReport rep = count_real_roots(f);
      switch (event.kind) {
        case EventSpec::Kind::NoRealZeros:
          return rep.total == 0 ? TrialOutcome::Success : TrialOutcome::Failure;
        case EventSpec::Kind::AtMostJZeros:
          return rep.total <= event.j ? TrialOutcome::Success : TrialOutcome::Failure;
        case EventSpec::Kind::ExactlyJSimpleZeros:
          return rep.simple == event.j ? TrialOutcome::Success : TrialOutcome::Failure;
        default:
          break;
      }
      return TrialOutcome::Undecided;
    }
    case EventSpec::Kind::ExceedsThreshold: {
      ThresholdCheck chk =
          exceeds_threshold_everywhere(spec, f, event.gamma, opt.threshold_resolution);
      if (chk.verdict == ThresholdVerdict::Yes) return TrialOutcome::Success;
      if (chk.verdict == ThresholdVerdict::No) return TrialOutcome::Failure;
      return TrialOutcome::Undecided;
    }
  }
  return TrialOutcome::Undecided;
}

}  // namespace

TrialOutcome classify_trial(const EnsembleSpec& spec, const EventSpec& event, uint64_t master_seed,
                            uint64_t trial_index, const EstimateOptions& opt) {
  uint64_t seed = derive_trial_seed(master_seed, trial_index);
  Polynomial f = sample_polynomial(spec, seed);
  return classify_poly(spec, event, f, seed, opt);
}

std::pair<double, double> wilson_interval(uint64_t successes, uint64_t trials) {
  if (trials == 0) return {0.0, 1.0};
  const double z = 1.959963984540054;
  double n = static_cast<double>(trials);
  double p = static_cast<double>(successes) / n;
  double z2 = z * z;
  double denom = 1.0 + z2 / n;
  double center = (p + z2 / (2 * n)) / denom;
  double half = z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / denom;
  double lo = std::max(0.0, center - half);
  double hi = std::min(1.0, center + half);
  if (successes == 0) lo = 0.0;  // boundary cases are exact
  if (successes == trials) hi = 1.0;
  return {lo, hi};
}

int default_workers() {
  if (const char* env = std::getenv("RZLAB_WORKERS")) {
    int w = std::atoi(env);
    if (w >= 1) return w;
  }
  return 1;
}

EstimateRecord estimate_probability(const EnsembleSpec& spec, const EventSpec& event,
                                    uint64_t trials, uint64_t master_seed,
                                    const EstimateOptions& opt) {
  auto errs = validate_spec(spec);
  if (!errs.empty()) throw Error(Err::BadConfig, "invalid ensemble spec");
  if (trials < 1) throw Error(Err::BadParams, "trials must be >= 1");

  auto t0 = std::chrono::steady_clock::now();
  int workers = std::max(1, opt.workers);

  std::atomic<uint64_t> next_chunk{0};
  constexpr uint64_t kChunk = 64;
  std::vector<std::array<uint64_t, 3>> tallies(workers, {0, 0, 0});
  std::mutex err_mutex;
  std::exception_ptr first_error;
  std::atomic<int> logged_errors{0};

  auto work = [&](int w) {
    try {
      for (;;) {
        uint64_t chunk = next_chunk.fetch_add(1);
        uint64_t lo = chunk * kChunk;
        if (lo >= trials) break;
        uint64_t hi = std::min(trials, lo + kChunk);
        for (uint64_t t = lo; t < hi; ++t) {
          TrialOutcome o;
          try {
            o = classify_trial(spec, event, master_seed, t, opt);
          } catch (const AuditMismatch&) {
            throw;  // aborts the batch
          } catch (const Error& e) {
            o = TrialOutcome::Undecided;
            if (logged_errors.fetch_add(1) < 5)
              std::fprintf(stderr, "trial %llu undecided: %s\n",
                           static_cast<unsigned long long>(t), e.what());
          }
          tallies[w][static_cast<int>(o)] += 1;
        }
      }
    } catch (...) {
      std::lock_guard<std::mutex> lk(err_mutex);
      if (!first_error) first_error = std::current_exception();
    }
  };

  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  EstimateRecord rec;
  rec.spec_id = spec.id;
  rec.n = spec.n;
  rec.event = event;
  rec.trials = trials;
  for (const auto& t : tallies) {
    rec.successes += t[static_cast<int>(TrialOutcome::Success)];
    rec.failures += t[static_cast<int>(TrialOutcome::Failure)];
    rec.undecided += t[static_cast<int>(TrialOutcome::Undecided)];
  }
  uint64_t effective = trials - rec.undecided;
  rec.p_hat = effective ? static_cast<double>(rec.successes) / effective : 0.0;
  std::tie(rec.ci_low, rec.ci_high) = wilson_interval(rec.successes, effective);
  rec.master_seed = master_seed;
  rec.workers = workers;
  rec.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rec;
}

Rational enumerate_exact(const EnsembleSpec& spec, const EventSpec& event, uint64_t budget) {
  auto errs = validate_spec(spec);
  if (!errs.empty()) throw Error(Err::BadConfig, "invalid ensemble spec");

  std::vector<Atom> atoms;
  switch (spec.law.kind()) {
    case LawKind::Rademacher:
      atoms = {{Rational(-1), Rational(1, 2)}, {Rational(1), Rational(1, 2)}};
      break;
    case LawKind::FiniteDiscrete:
      atoms = spec.law.atoms();
      break;
    default:
      throw Error(Err::BadParams, "exact enumeration requires a finite discrete law");
  }

  FixedCoeffSpec fixed = spec.effective_fixed();
  std::vector<int> random_slots;
  for (int i = 1; i <= spec.n; ++i)
    if (!fixed.S.count(i)) random_slots.push_back(i);

  size_t m = atoms.size();
  double combos = std::pow(static_cast<double>(m), static_cast<double>(random_slots.size()));
  if (combos > static_cast<double>(budget))
    throw Error(Err::BudgetExceeded, "enumeration needs " + std::to_string(combos) + " cases");

  EstimateOptions exact_opt;  // Mode::Exact
  std::vector<size_t> odometer(random_slots.size(), 0);
  Rational prob = 0;
  bool done = random_slots.empty();
  for (;;) {
    std::vector<Rational> coeffs(spec.n, Rational(0));
    for (int i = 1; i <= spec.n; ++i)
      if (fixed.S.count(i)) coeffs[spec.n - i] = fixed.value_of(i);
    Rational weight = 1;
    for (size_t s = 0; s < random_slots.size(); ++s) {
      coeffs[spec.n - random_slots[s]] = atoms[odometer[s]].value;
      weight *= atoms[odometer[s]].prob;
    }
    Polynomial f = Polynomial::from_exact(std::move(coeffs));
    TrialOutcome o = classify_poly(spec, event, f, /*trial_seed=*/0, exact_opt);
    if (o == TrialOutcome::Undecided)
      throw Error(Err::BadParams, "event not exactly decidable for enumeration");
    if (o == TrialOutcome::Success) prob += weight;

    if (done) break;
    size_t pos = 0;
    while (pos < odometer.size() && ++odometer[pos] == m) {
      odometer[pos] = 0;
      ++pos;
    }
    if (pos == odometer.size()) break;
  }
  return prob;
}

ExponentFit fit_exponent(const std::vector<EstimateRecord>& records) {
  std::vector<int> ns;
  for (const auto& r : records) ns.push_back(r.n);
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  if (ns.size() < 3) throw Error(Err::DegenerateDesign, "need >= 3 distinct n");

  ExponentFit fit;
  std::vector<double> xs, ys, ws;
  for (const auto& r : records) {
    uint64_t effective = r.trials - r.undecided;
    if (r.successes == 0 || effective == 0)
      throw Error(Err::ZeroSuccessRecord, "n = " + std::to_string(r.n));
    double p = static_cast<double>(r.successes) / effective;
    double var_log = std::max((1.0 - p) / (p * static_cast<double>(effective)), 1e-300);
    xs.push_back(std::log(static_cast<double>(r.n)));
    ys.push_back(std::log(p));
    ws.push_back(1.0 / var_log);
    fit.points.emplace_back(r.n, p);
    fit.weights.push_back(1.0 / var_log);
  }
  double sw = 0, swx = 0, swy = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    sw += ws[i];
    swx += ws[i] * xs[i];
    swy += ws[i] * ys[i];
  }
  double xbar = swx / sw, ybar = swy / sw;
  double sxx = 0, sxy = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    sxx += ws[i] * (xs[i] - xbar) * (xs[i] - xbar);
    sxy += ws[i] * (xs[i] - xbar) * (ys[i] - ybar);
  }
  if (sxx <= 0) throw Error(Err::DegenerateDesign, "no spread in log n");
  double slope = sxy / sxx;
  fit.b_hat = -slope;
  fit.stderr_b = std::sqrt(1.0 / sxx);
  return fit;
}

std::pair<double, double> bootstrap_ci(const EstimateRecord& record, int resamples) {
  if (resamples < 100) throw Error(Err::BadParams, "resamples must be >= 100");
  uint64_t n = record.trials - record.undecided;
  if (n == 0) return {0.0, 1.0};
  if (record.successes >= n) return {1.0, 1.0};
  if (record.successes == 0) return {0.0, 3.0 / static_cast<double>(n)};

  double p = static_cast<double>(record.successes) / static_cast<double>(n);
  TrialRng rng(record.master_seed ^ 0xB00757A9ull, 0);
  std::vector<double> ps(resamples);
  for (int r = 0; r < resamples; ++r) {
    uint64_t k;
    if (n < 4096) {
      k = 0;
      for (uint64_t t = 0; t < n; ++t)
        if (rng.next_unit() < p) ++k;
    } else {
      // normal approximation of the binomial resample
      double z = rng.next_gaussian();
      double kk = std::round(n * p + z * std::sqrt(n * p * (1 - p)));
      k = static_cast<uint64_t>(std::clamp(kk, 0.0, static_cast<double>(n)));
    }
    ps[r] = static_cast<double>(k) / static_cast<double>(n);
  }
  std::sort(ps.begin(), ps.end());
  auto quantile = [&](double q) {
    double idx = q * (resamples - 1);
    size_t lo = static_cast<size_t>(idx);
    double frac = idx - lo;
    return ps[lo] * (1 - frac) + ps[std::min(ps.size() - 1, lo + 1)] * frac;
  };
  double low = std::min(quantile(0.025), p);
  double high = std::max(quantile(0.975), p);
  return {low, high};
}

}  // namespace rzlab
