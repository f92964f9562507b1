// Parameter search for the conditioned zero-pattern profiles.
//
// The generator-pair construction leaves the sign convention and the window
// parameters (s, alpha, beta, r, m, epsilon, flips) open; this tool scans a
// candidate grid, estimates the success rate of the claimed pattern on a
// small conditioned sample, refines the survivors, and prints the best
// profile in the committed config format. The committed profiles under
// data/profiles were produced by this tool; seeds are recorded in the
// profile files.
//
// Usage: pattern_search odd|even [quick_trials refine_trials]

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "rzlab/config.hpp"
#include "rzlab/constructions.hpp"
#include "rzlab/error.hpp"

using namespace rzlab;

namespace {

constexpr uint64_t kSearchSeed = 20240817;

struct OddCandidate {
  OddPatternParams p;
  double rate = -1;
};

double odd_rate(const OddPatternParams& params, const EnsembleSpec& spec, uint64_t trials,
                uint64_t seed) {
  try {
    PatternReport rep = verify_odd_pattern(params, spec, trials, seed, 400000);
    return static_cast<double>(rep.successes) / static_cast<double>(rep.trials);
  } catch (const Error&) {
    return -1;
  }
}

int search_odd(uint64_t quick, uint64_t refine) {
  EnsembleSpec spec = monic_spec(200, CoefficientLaw::gaussian());
  spec.id = "gauss-monic-200";

  std::vector<OddCandidate> candidates;
  for (bool flip_a : {true, false})
    for (bool flip_b : {false, true})
      for (double alpha : {-1.0, -0.6, -0.4, -0.25})
        for (double beta_frac : {0.15, 0.4, 0.8})  // beta as a fraction of |alpha|/(s-1)
          for (int r1 : {4, 8, 12, 20})
            for (int mk : {1, 2, 3, 5}) {
              OddPatternParams p;
              p.j = 1;
              p.s = 4;
              p.alpha = rational_from_double(alpha);
              p.beta = rational_from_double(beta_frac * (-alpha) / (p.s - 1));
              p.r = r1;
              p.r_list = {r1};
              p.m = r1 + 4 * mk;
              p.delta = 0.1;
              p.epsilon = 0.05;
              p.cap_M = 3.0;
              p.flip_a = flip_a;
              p.flip_b = flip_b;
              if (p.m * 2 + 2 >= spec.n - 4) continue;
              candidates.push_back({p, -1});
            }
  std::printf("odd case: %zu candidates, quick pass %llu trials each\n", candidates.size(),
              static_cast<unsigned long long>(quick));
  std::fflush(stdout);

  for (auto& c : candidates) {
    c.rate = odd_rate(c.p, spec, quick, kSearchSeed);
    if (c.rate >= 0.95) {
      std::printf("  rate %.3f  flips=%d%d alpha=%.3f beta=%.4f r=%d m=%d\n", c.rate, c.p.flip_a,
                  c.p.flip_b, to_double_nearest(c.p.alpha), to_double_nearest(c.p.beta), c.p.r,
                  c.p.m);
      std::fflush(stdout);
    }
  }

  std::sort(candidates.begin(), candidates.end(),
            [](const OddCandidate& a, const OddCandidate& b) { return a.rate > b.rate; });
  size_t keep = std::min<size_t>(24, candidates.size());
  std::printf("refining top %zu with %llu trials\n", keep,
              static_cast<unsigned long long>(refine));
  std::fflush(stdout);
  OddCandidate best;
  for (size_t i = 0; i < keep; ++i) {
    if (candidates[i].rate < 0.9) break;
    double rate = odd_rate(candidates[i].p, spec, refine, kSearchSeed + 1);
    std::printf("  refine: rate %.4f  flips=%d%d alpha=%.3f beta=%.4f r=%d m=%d\n", rate,
                candidates[i].p.flip_a, candidates[i].p.flip_b,
                to_double_nearest(candidates[i].p.alpha), to_double_nearest(candidates[i].p.beta),
                candidates[i].p.r, candidates[i].p.m);
    std::fflush(stdout);
    if (rate > best.rate) {
      best = candidates[i];
      best.rate = rate;
    }
  }
  if (best.rate < 0) {
    std::printf("no viable odd profile found\n");
    return 1;
  }

  PatternProfile profile;
  profile.odd_case = true;
  profile.odd = best.p;
  profile.spec = spec;
  profile.trials = 1000;
  profile.master_seed = 20240901;
  profile.provenance = "tools/pattern_search odd, search seed " + std::to_string(kSearchSeed) +
                       ", refined rate " + std::to_string(best.rate);
  std::printf("---- best odd profile (rate %.4f) ----\n%s", best.rate,
              profile_to_config(profile).c_str());
  return 0;
}

int search_even(uint64_t quick, uint64_t refine) {
  EnsembleSpec spec = monic_spec(199, CoefficientLaw::gaussian());
  spec.id = "gauss-monic-199";

  struct EvenCandidate {
    EvenPatternParams p;
    Rational alpha, beta;
    int s = 4;
    double rate = -1;
  };
  std::vector<EvenCandidate> candidates;
  for (int m : {16, 24, 32, 40})
    for (double alpha : {-1.0, -0.5})
      for (double eps : {0.05, 0.1}) {
        EvenCandidate c;
        c.p.j = 0;
        c.p.m = m;
        c.p.epsilon = eps;
        c.p.cap_M = 3.0;
        c.alpha = rational_from_double(alpha);
        c.beta = rational_from_double(-alpha / 4.0);
        candidates.push_back(c);
      }
  std::printf("even case: %zu candidates, quick pass %llu trials each\n", candidates.size(),
              static_cast<unsigned long long>(quick));
  std::fflush(stdout);

  EvenCandidate best;
  for (auto& c : candidates) {
    Polynomial pattern = build_even_pattern_template(c.p.m, c.s, c.alpha, c.beta);
    try {
      PatternReport rep = verify_even_pattern(pattern, c.p, spec, quick, kSearchSeed, 400000);
      c.rate = static_cast<double>(rep.successes) / rep.trials;
    } catch (const Error&) {
      c.rate = -1;
    }
    std::printf("  rate %.3f  m=%d alpha=%.3f eps=%.2f\n", c.rate, c.p.m,
                to_double_nearest(c.alpha), c.p.epsilon);
    std::fflush(stdout);
    if (c.rate > best.rate) best = c;
  }
  if (best.rate < 0) {
    std::printf("no viable even profile found\n");
    return 1;
  }
  Polynomial pattern = build_even_pattern_template(best.p.m, best.s, best.alpha, best.beta);
  PatternReport rep = verify_even_pattern(pattern, best.p, spec, refine, kSearchSeed + 1, 400000);
  double rate = static_cast<double>(rep.successes) / rep.trials;

  PatternProfile profile;
  profile.odd_case = false;
  profile.even = best.p;
  profile.even_pattern = pattern;
  profile.spec = spec;
  profile.trials = 1000;
  profile.master_seed = 20240902;
  profile.provenance = "tools/pattern_search even, search seed " + std::to_string(kSearchSeed) +
                       ", refined rate " + std::to_string(rate);
  std::printf("---- best even profile (rate %.4f) ----\n%s", rate,
              profile_to_config(profile).c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  uint64_t quick = 24, refine = 200;
  if (argc >= 4) {
    quick = std::strtoull(argv[2], nullptr, 10);
    refine = std::strtoull(argv[3], nullptr, 10);
  }
  if (argc >= 2 && std::strcmp(argv[1], "odd") == 0) return search_odd(quick, refine);
  if (argc >= 2 && std::strcmp(argv[1], "even") == 0) return search_even(quick, refine);
  std::printf("usage: pattern_search odd|even [quick_trials refine_trials]\n");
  return 1;
}
