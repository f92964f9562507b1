#include "rzlab/config.hpp"

#include <fstream>
#include <sstream>

#include "rzlab/error.hpp"

namespace rzlab {

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string tok;
  while (std::getline(is, tok, sep)) {
    tok = trim(tok);
    if (!tok.empty()) out.push_back(tok);
  }
  return out;
}

std::string get_or(const KeyValues& kv, const std::string& key, const std::string& def) {
  auto it = kv.find(key);
  return it == kv.end() ? def : it->second;
}

std::string require(const KeyValues& kv, const std::string& key) {
  auto it = kv.find(key);
  if (it == kv.end()) throw Error(Err::BadConfig, "missing key '" + key + "'");
  return it->second;
}

}  // namespace

KeyValues parse_config_text(const std::string& text) {
  KeyValues kv;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos) throw Error(Err::BadConfig, "expected key = value: " + line);
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

KeyValues load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Err::IoFailure, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

EnsembleSpec spec_from_config(const KeyValues& kv) {
  EnsembleSpec spec;
  spec.id = get_or(kv, "id", "");
  spec.n = std::stoi(require(kv, "n"));

  std::string law = require(kv, "law");
  if (law == "gaussian") {
    spec.law = CoefficientLaw::gaussian();
  } else if (law == "uniform") {
    double hw = std::stod(get_or(kv, "law_param", "1.7320508075688772"));
    spec.law = CoefficientLaw::uniform_symmetric(hw);
  } else if (law == "rademacher") {
    spec.law = CoefficientLaw::rademacher();
  } else if (law == "discrete") {
    std::vector<Atom> atoms;
    for (const std::string& item : split(require(kv, "law_atoms"), ',')) {
      size_t colon = item.find(':');
      if (colon == std::string::npos)
        throw Error(Err::BadConfig, "law_atoms entries are value:prob");
      atoms.push_back({parse_rational(item.substr(0, colon)),
                       parse_rational(item.substr(colon + 1))});
    }
    spec.law = CoefficientLaw::finite_discrete(std::move(atoms));
  } else {
    throw Error(Err::BadConfig, "unknown law '" + law + "'");
  }

  std::vector<std::string> s_items = split(get_or(kv, "S", ""), ',');
  std::vector<std::string> c_items = split(get_or(kv, "c_values", ""), ',');
  if (!s_items.empty()) {
    if (c_items.size() != s_items.size())
      throw Error(Err::BadConfig, "c_values must align with S");
    int kmax = 0;
    for (size_t i = 0; i < s_items.size(); ++i) {
      int idx = std::stoi(s_items[i]);
      spec.fixed.S.insert(idx);
      spec.fixed.values[idx] = parse_rational(c_items[i]);
      kmax = std::max(kmax, idx);
    }
    spec.fixed.k = kmax;
  }

  std::string growth = get_or(kv, "growth_mode", "");
  if (!growth.empty()) {
    size_t colon = growth.find(':');
    std::string kind = colon == std::string::npos ? growth : growth.substr(0, colon);
    double a = colon == std::string::npos ? 1.0 : std::stod(growth.substr(colon + 1));
    if (kind == "log")
      spec.growth = {GrowthMode::Kind::LogK, a};
    else if (kind == "pow")
      spec.growth = {GrowthMode::Kind::PowK, a};
    else
      throw Error(Err::BadConfig, "growth_mode must be log:a or pow:a");
  }
  return spec;
}

std::string spec_to_config(const EnsembleSpec& spec) {
  std::ostringstream os;
  if (!spec.id.empty()) os << "id = " << spec.id << "\n";
  os << "n = " << spec.n << "\n";
  switch (spec.law.kind()) {
    case LawKind::Gaussian:
      os << "law = gaussian\n";
      break;
    case LawKind::UniformSymmetric: {
      os << "law = uniform\n";
      os.precision(17);
      os << "law_param = " << spec.law.half_width() << "\n";
      break;
    }
    case LawKind::Rademacher:
      os << "law = rademacher\n";
      break;
    case LawKind::FiniteDiscrete: {
      os << "law = discrete\nlaw_atoms = ";
      bool first = true;
      for (const auto& a : spec.law.atoms()) {
        if (!first) os << ", ";
        os << format_rational(a.value) << ":" << format_rational(a.prob);
        first = false;
      }
      os << "\n";
      break;
    }
  }
  if (!spec.fixed.S.empty()) {
    os << "S = ";
    bool first = true;
    for (int i : spec.fixed.S) {
      if (!first) os << ", ";
      os << i;
      first = false;
    }
    os << "\nc_values = ";
    first = true;
    for (int i : spec.fixed.S) {
      if (!first) os << ", ";
      os << format_rational(spec.fixed.value_of(i));
      first = false;
    }
    os << "\n";
  }
  if (spec.growth.enabled()) {
    os << "growth_mode = " << (spec.growth.kind == GrowthMode::Kind::LogK ? "log" : "pow") << ":"
       << spec.growth.a << "\n";
  }
  return os.str();
}

ThresholdFamily threshold_from_config(const KeyValues& kv) {
  std::string kind = get_or(kv, "threshold", "zero");
  if (kind == "zero") return ThresholdFamily::zero();
  if (kind == "constant")
    return ThresholdFamily::constant_value(parse_rational(require(kv, "threshold_value")));
  if (kind == "grid") {
    std::vector<std::pair<Rational, Rational>> knots;
    for (const std::string& item : split(require(kv, "threshold_knots"), ',')) {
      size_t colon = item.find(':');
      if (colon == std::string::npos)
        throw Error(Err::BadConfig, "threshold_knots entries are x:y");
      knots.emplace_back(parse_rational(item.substr(0, colon)),
                         parse_rational(item.substr(colon + 1)));
    }
    return ThresholdFamily::grid(std::move(knots),
                                 parse_rational(get_or(kv, "threshold_tail", "0")));
  }
  throw Error(Err::BadConfig, "unknown threshold kind '" + kind + "'");
}

std::string threshold_to_config(const ThresholdFamily& t) {
  std::ostringstream os;
  switch (t.kind) {
    case ThresholdFamily::Kind::Zero:
      os << "threshold = zero\n";
      break;
    case ThresholdFamily::Kind::Constant:
      os << "threshold = constant\nthreshold_value = " << format_rational(t.constant) << "\n";
      break;
    case ThresholdFamily::Kind::Grid: {
      os << "threshold = grid\nthreshold_knots = ";
      bool first = true;
      for (const auto& [x, y] : t.knots) {
        if (!first) os << ", ";
        os << format_rational(x) << ":" << format_rational(y);
        first = false;
      }
      os << "\nthreshold_tail = " << format_rational(t.tail_value) << "\n";
      break;
    }
  }
  return os.str();
}

PatternProfile profile_from_config(const KeyValues& kv) {
  PatternProfile p;
  p.odd_case = get_or(kv, "case", "odd") == "odd";
  p.spec = spec_from_config(kv);
  p.trials = std::stoull(get_or(kv, "trials", "1000"));
  p.master_seed = std::stoull(get_or(kv, "seed", "1"));
  p.provenance = get_or(kv, "provenance", "");
  if (p.odd_case) {
    p.odd.j = std::stoi(get_or(kv, "j", "1"));
    p.odd.s = std::stoi(get_or(kv, "s", "4"));
    p.odd.alpha = parse_rational(get_or(kv, "alpha", "-1"));
    p.odd.beta = parse_rational(get_or(kv, "beta", "1/4"));
    p.odd.delta = std::stod(get_or(kv, "delta", "0.1"));
    p.odd.r = std::stoi(get_or(kv, "r", "8"));
    p.odd.epsilon = std::stod(get_or(kv, "epsilon", "0.05"));
    p.odd.cap_M = std::stod(get_or(kv, "cap_M", "3"));
    p.odd.flip_a = get_or(kv, "flip_a", "0") == "1";
    p.odd.flip_b = get_or(kv, "flip_b", "0") == "1";
    for (const std::string& item : split(get_or(kv, "r_list", ""), ','))
      p.odd.r_list.push_back(std::stoi(item));
    p.odd.m = std::stoi(get_or(kv, "m", "0"));
  } else {
    p.even.j = std::stoi(get_or(kv, "j", "0"));
    p.even.m = std::stoi(get_or(kv, "m", "0"));
    p.even.epsilon = std::stod(get_or(kv, "epsilon", "0.05"));
    p.even.cap_M = std::stod(get_or(kv, "cap_M", "3"));
    std::string pattern = get_or(kv, "pattern_coeffs", "");
    if (!pattern.empty()) {
      p.even_pattern = Polynomial::parse(pattern);
    } else {
      int s = std::stoi(get_or(kv, "s", "4"));
      p.even_pattern = build_even_pattern_template(p.even.m, s,
                                                   parse_rational(get_or(kv, "alpha", "-1")),
                                                   parse_rational(get_or(kv, "beta", "1/4")));
    }
  }
  return p;
}

std::string profile_to_config(const PatternProfile& p) {
  std::ostringstream os;
  os << "case = " << (p.odd_case ? "odd" : "even") << "\n";
  os << spec_to_config(p.spec);
  os << "trials = " << p.trials << "\nseed = " << p.master_seed << "\n";
  if (!p.provenance.empty()) os << "provenance = " << p.provenance << "\n";
  if (p.odd_case) {
    const auto& o = p.odd;
    os << "j = " << o.j << "\ns = " << o.s << "\nalpha = " << format_rational(o.alpha)
       << "\nbeta = " << format_rational(o.beta) << "\ndelta = " << o.delta << "\nr = " << o.r
       << "\nepsilon = " << o.epsilon << "\ncap_M = " << o.cap_M << "\nflip_a = " << o.flip_a
       << "\nflip_b = " << o.flip_b << "\nm = " << o.m << "\n";
    if (!o.r_list.empty()) {
      os << "r_list = ";
      for (size_t i = 0; i < o.r_list.size(); ++i) os << (i ? ", " : "") << o.r_list[i];
      os << "\n";
    }
  } else {
    os << "j = " << p.even.j << "\nm = " << p.even.m << "\nepsilon = " << p.even.epsilon
       << "\ncap_M = " << p.even.cap_M << "\n";
    os << "pattern_coeffs = " << p.even_pattern.to_string() << "\n";
  }
  return os.str();
}

uint64_t fnv1a64(const std::string& s) {
  uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string ExperimentManifest::canonical_text() const {
  std::ostringstream os;
  os << "subcommand = " << subcommand << "\n";
  if (!spec_path.empty()) os << "spec = " << spec_path << "\n";
  if (!event.empty()) os << "event = " << event << "\n";
  if (!params.empty()) os << "params = " << params << "\n";
  os << "trials = " << trials << "\nseed = " << master_seed << "\nworkers = " << workers << "\n";
  if (!out_csv.empty()) os << "csv = " << out_csv << "\n";
  if (!out_json.empty()) os << "json = " << out_json << "\n";
  return os.str();
}

uint64_t ExperimentManifest::hash() const { return fnv1a64(canonical_text()); }

}  // namespace rzlab
