#pragma once
#include <cstdint>
#include <map>
#include <string>

#include "rzlab/constructions.hpp"
#include "rzlab/ensemble.hpp"
#include "rzlab/polycore.hpp"

namespace rzlab {

/// Flat "key = value" text, one pair per line, '#' comments.
using KeyValues = std::map<std::string, std::string>;

KeyValues parse_config_text(const std::string& text);
KeyValues load_config_file(const std::string& path);  // Err::IoFailure

/// Keys: id, n, law, law_param, law_atoms, S, c_values, growth_mode.
/// Fixed values accept exact decimal or "p/q" literals.
EnsembleSpec spec_from_config(const KeyValues& kv);
std::string spec_to_config(const EnsembleSpec& spec);

/// Keys: threshold (zero | constant | grid), threshold_value,
/// threshold_knots ("x:y, x:y, ..."), threshold_tail.
ThresholdFamily threshold_from_config(const KeyValues& kv);
std::string threshold_to_config(const ThresholdFamily& t);

/// Committed tuned profile for the pattern verifications. Carries its own
/// ensemble plus either the odd-case parameters or an even-case pattern.
struct PatternProfile {
  bool odd_case = true;
  OddPatternParams odd;
  EvenPatternParams even;
  Polynomial even_pattern;
  EnsembleSpec spec;
  uint64_t trials = 1000;
  uint64_t master_seed = 1;
  std::string provenance;  // free-form note (search tool + seed)
};

PatternProfile profile_from_config(const KeyValues& kv);
std::string profile_to_config(const PatternProfile& p);

struct ExperimentManifest {
  std::string subcommand;
  std::string spec_path;
  std::string event;
  std::string params;  // event/module specific flags, canonical form
  uint64_t trials = 0;
  uint64_t master_seed = 0;
  int workers = 1;
  std::string out_csv, out_json;

  std::string canonical_text() const;
  uint64_t hash() const;
};

uint64_t fnv1a64(const std::string& s);

}  // namespace rzlab
