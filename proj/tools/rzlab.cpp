// rzlab: command-line laboratory for real-zero statistics of random
// polynomials with fixed coefficients.
//
// Subcommands: estimate, enumerate-exact, fit, cov-check, construct-verify,
// niceness, algint. Every run writes machine-readable outputs stamped with
// the manifest hash and prints the manifest path on completion.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "rzlab/config.hpp"
#include "rzlab/error.hpp"
#include "rzlab/report_io.hpp"

using namespace rzlab;

namespace {

EventSpec event_from_flags(const std::string& event, int j, const std::string& gamma_path) {
  if (event == "no-real-zeros") return EventSpec::no_real_zeros();
  if (event == "exactly-j-simple-zeros") return EventSpec::exactly_j_simple(j);
  if (event == "at-most-j-zeros") return EventSpec::at_most_j(j);
  if (event == "exceeds-threshold") {
    ThresholdFamily gamma = gamma_path.empty()
                                ? ThresholdFamily::zero()
                                : threshold_from_config(load_config_file(gamma_path));
    return EventSpec::exceeds(std::move(gamma));
  }
  throw Error(Err::BadConfig, "unknown event '" + event + "'");
}

void write_manifest(const ExperimentManifest& m, const std::string& path) {
  write_text_file(path, m.canonical_text());
  std::cout << "manifest: " << path << "\n";
}

void require_valid(const EnsembleSpec& spec) {
  auto errs = validate_spec(spec);
  if (errs.empty()) return;
  std::ostringstream os;
  os << "invalid spec:";
  for (auto e : errs) os << ' ' << to_string(e);
  throw Error(Err::BadConfig, os.str());
}

std::vector<EstimateRecord> read_records_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Err::IoFailure, "cannot open " + path);
  std::vector<EstimateRecord> records;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (first) {
      first = false;
      continue;  // header
    }
    if (line.empty()) continue;
    std::vector<std::string> cols;
    std::istringstream is(line);
    std::string tok;
    while (std::getline(is, tok, ',')) cols.push_back(tok);
    if (cols.size() < 14) throw Error(Err::BadConfig, "short CSV row: " + line);
    EstimateRecord r;
    r.spec_id = cols[0];
    r.n = std::stoi(cols[1]);
    r.event.j = std::stoi(cols[3]);
    r.trials = std::stoull(cols[4]);
    r.successes = std::stoull(cols[5]);
    r.failures = std::stoull(cols[6]);
    r.undecided = std::stoull(cols[7]);
    r.p_hat = std::stod(cols[8]);
    r.ci_low = std::stod(cols[9]);
    r.ci_high = std::stod(cols[10]);
    r.master_seed = std::stoull(cols[11]);
    r.workers = std::stoi(cols[12]);
    records.push_back(std::move(r));
  }
  return records;
}

int run(int argc, char** argv) {
  CLI::App app{"real-zero statistics laboratory"};
  app.require_subcommand(1);

  // ---- estimate -----------------------------------------------------------
  auto* est = app.add_subcommand("estimate", "Monte Carlo probability estimate");
  std::string spec_path, event_name = "no-real-zeros", gamma_path, out_prefix = "estimate";
  int j = 0, n_override = 0, workers = default_workers();
  uint64_t trials = 10000, seed = 1;
  std::string mode = "exact";
  est->add_option("--spec", spec_path, "ensemble config file")->required();
  est->add_option("--event", event_name, "no-real-zeros | exactly-j-simple-zeros | at-most-j-zeros | exceeds-threshold");
  est->add_option("--j", j, "zero count for the j events");
  est->add_option("--gamma", gamma_path, "threshold config for exceeds-threshold");
  est->add_option("--n", n_override, "override the spec's n");
  est->add_option("--trials", trials, "number of trials")->required();
  est->add_option("--seed", seed, "master seed");
  est->add_option("--workers", workers, "worker threads");
  est->add_option("--mode", mode, "exact | fast-audited");
  est->add_option("--out", out_prefix, "output path prefix");

  // ---- enumerate-exact ----------------------------------------------------
  auto* enu = app.add_subcommand("enumerate-exact", "exact probability by enumeration");
  std::string e_spec, e_event = "no-real-zeros", e_out = "enumerate";
  int e_j = 0, e_n = 0;
  uint64_t e_budget = uint64_t(1) << 24;
  enu->add_option("--spec", e_spec)->required();
  enu->add_option("--event", e_event);
  enu->add_option("--j", e_j);
  enu->add_option("--n", e_n, "override the spec's n");
  enu->add_option("--budget", e_budget);
  enu->add_option("--out", e_out);

  // ---- fit ----------------------------------------------------------------
  auto* fit_cmd = app.add_subcommand("fit", "exponent fit over estimate records");
  std::string fit_input, fit_out = "fit";
  fit_cmd->add_option("--input", fit_input, "CSV produced by estimate")->required();
  fit_cmd->add_option("--out", fit_out);

  // ---- cov-check ----------------------------------------------------------
  auto* cov = app.add_subcommand("cov-check", "covariance dominance mesh check");
  int cov_n = 200, cov_mesh = 100;
  double cov_delta = 0.3, cov_alpha = -1;
  std::string cov_spec_path, cov_out = "cov";
  std::string cov_region = "full";
  bool cov_search = false;
  cov->add_option("--n", cov_n);
  cov->add_option("--delta", cov_delta);
  cov->add_option("--mesh", cov_mesh);
  cov->add_option("--alpha", cov_alpha, "default n^{-delta/2}");
  cov->add_option("--spec", cov_spec_path, "defaults to k=2, S={2}, c_2=0");
  cov->add_option("--region", cov_region, "full | inner | outer");
  cov->add_flag("--search-least-alpha", cov_search);
  std::string cov_mesh_csv;
  cov->add_option("--mesh-csv", cov_mesh_csv, "dump the evaluated mesh for plotting");
  cov->add_option("--out", cov_out);

  // ---- construct-verify ---------------------------------------------------
  auto* cons = app.add_subcommand("construct-verify", "conditioned zero-pattern verification");
  std::string cons_profile, cons_out = "construct";
  uint64_t cons_trials = 0;
  cons->add_option("--profile", cons_profile, "tuned profile config")->required();
  cons->add_option("--trials", cons_trials, "override profile trials");
  cons->add_option("--out", cons_out);

  // ---- niceness -----------------------------------------------------------
  auto* nice = app.add_subcommand("niceness", "witness search: no real roots outside the unit disk");
  std::string nice_spec, nice_out = "niceness";
  int nice_smax = 8;
  uint64_t nice_trials = 100000, nice_seed = 1;
  nice->add_option("--spec", nice_spec)->required();
  nice->add_option("--s-max", nice_smax);
  nice->add_option("--trials-per-s", nice_trials);
  nice->add_option("--seed", nice_seed);
  nice->add_option("--out", nice_out);

  // ---- algint -------------------------------------------------------------
  auto* alg = app.add_subcommand("algint", "height-ordered census of monic integer polynomials");
  int alg_n = 3;
  double alg_h = 2;
  bool alg_irr = false, alg_listing = false;
  uint64_t alg_budget = uint64_t(1) << 24;
  std::string alg_out = "algint";
  alg->add_option("--n", alg_n);
  alg->add_option("--H", alg_h);
  alg->add_flag("--irreducible", alg_irr);
  alg->add_flag("--listing", alg_listing, "write the full classified listing (small boxes)");
  alg->add_option("--budget", alg_budget);
  alg->add_option("--out", alg_out);

  CLI11_PARSE(app, argc, argv);

  if (est->parsed()) {
    EnsembleSpec spec = spec_from_config(load_config_file(spec_path));
    if (n_override > 0) spec.n = n_override;
    require_valid(spec);
    EventSpec event = event_from_flags(event_name, j, gamma_path);
    if (parity_mismatch(event, spec.n))
      std::cerr << "warning: j has the wrong parity for n; the estimate is 0 for continuous laws\n";
    EstimateOptions opt;
    opt.workers = workers;
    opt.mode = mode == "fast-audited" ? EstimateOptions::Mode::FastAudited
                                      : EstimateOptions::Mode::Exact;
    ExperimentManifest man{"estimate", spec_path, event.name(),
                           "mode=" + mode + ";j=" + std::to_string(j), trials, seed, workers,
                           out_prefix + ".csv", out_prefix + ".json"};
    EstimateRecord rec = estimate_probability(spec, event, trials, seed, opt);
    if (rec.spec_id.empty()) rec.spec_id = spec_path;
    emit_report({rec}, man.out_csv, man.out_json, man.hash(), out_prefix + ".loglog.txt");
    write_manifest(man, out_prefix + ".manifest.cfg");
    std::cout << "p_hat = " << rec.p_hat << " [" << rec.ci_low << ", " << rec.ci_high << "]\n";
    return 0;
  }

  if (enu->parsed()) {
    EnsembleSpec spec = spec_from_config(load_config_file(e_spec));
    if (e_n > 0) spec.n = e_n;
    require_valid(spec);
    EventSpec event = event_from_flags(e_event, e_j, "");
    ExperimentManifest man{"enumerate-exact", e_spec, event.name(), "", 0, 0, 1, "",
                           e_out + ".json"};
    Rational p = enumerate_exact(spec, event, e_budget);
    std::ostringstream os;
    os << "{\n  \"probability\": \"" << format_rational(p) << "\",\n  \"value\": "
       << to_double_nearest(p) << ",\n  \"manifest_hash\": " << man.hash() << "\n}\n";
    write_text_file(man.out_json, os.str());
    write_manifest(man, e_out + ".manifest.cfg");
    std::cout << "probability = " << format_rational(p) << "\n";
    return 0;
  }

  if (fit_cmd->parsed()) {
    std::vector<EstimateRecord> records = read_records_csv(fit_input);
    ExperimentManifest man{"fit", fit_input, "", "", 0, 0, 1, "", fit_out + ".json"};
    ExponentFit fit = fit_exponent(records);
    write_text_file(man.out_json, to_json(fit, man.hash()) + "\n");
    write_manifest(man, fit_out + ".manifest.cfg");
    std::cout << "b_hat = " << fit.b_hat << " +- " << fit.stderr_b << "\n";
    return 0;
  }

  if (cov->parsed()) {
    EnsembleSpec spec;
    if (!cov_spec_path.empty()) {
      spec = spec_from_config(load_config_file(cov_spec_path));
    } else {
      spec.id = "cov-default";
      spec.law = CoefficientLaw::gaussian();
      spec.fixed.k = 2;
      spec.fixed.S = {2};
      spec.fixed.values[2] = 0;
    }
    spec.n = cov_n;
    require_valid(spec);
    if (cov_alpha < 0) cov_alpha = std::pow(cov_n, -cov_delta / 2);
    IntervalSystem sys = IntervalSystem::make(cov_delta, cov_n);
    MeshRegion region = cov_region == "inner"   ? MeshRegion::InnerPosSquare
                        : cov_region == "outer" ? MeshRegion::OuterPosSquare
                                                : MeshRegion::FullV2;
    ExperimentManifest man{"cov-check", cov_spec_path, "",
                           "delta=" + std::to_string(cov_delta) + ";region=" + cov_region,
                           static_cast<uint64_t>(cov_mesh), 0, 1, "", cov_out + ".json"};
    std::vector<MeshPoint> mesh_points;
    DominanceReport rep =
        check_covariance_dominance(spec, sys, cov_alpha, cov_mesh, region, cov_search,
                                   cov_mesh_csv.empty() ? nullptr : &mesh_points);
    if (!cov_mesh_csv.empty()) {
      std::ostringstream mc;
      mc.precision(17);
      mc << "x,y,covariance,kernel,in_u,violation\n";
      for (const auto& pt : mesh_points)
        mc << pt.x << ',' << pt.y << ',' << pt.cov << ',' << pt.kernel << ',' << pt.in_u << ','
           << pt.violation << "\n";
      write_text_file(cov_mesh_csv, mc.str());
    }
    double case2 = max_kernel_covariance_product(spec, sys, cov_mesh);
    std::string js = to_json(rep, man.hash());
    js.pop_back();  // strip '}'
    std::ostringstream os;
    os << js << ",\"outer_product_max\":" << std::setprecision(17) << case2 << "}\n";
    write_text_file(man.out_json, os.str());
    write_manifest(man, cov_out + ".manifest.cfg");
    std::cout << "max_violation = " << rep.max_violation
              << ", diagonal_max_error = " << rep.diagonal_max_error
              << ", outer_product_max = " << case2 << "\n";
    return 0;
  }

  if (cons->parsed()) {
    PatternProfile profile = profile_from_config(load_config_file(cons_profile));
    if (cons_trials > 0) profile.trials = cons_trials;
    require_valid(profile.spec);
    ExperimentManifest man{"construct-verify", cons_profile, "", profile.odd_case ? "odd" : "even",
                           profile.trials, profile.master_seed, 1, "", cons_out + ".json"};
    PatternReport rep;
    if (profile.odd_case)
      rep = verify_odd_pattern(profile.odd, profile.spec, profile.trials, profile.master_seed);
    else
      rep = verify_even_pattern(profile.even_pattern, profile.even, profile.spec, profile.trials,
                                profile.master_seed);
    write_text_file(man.out_json, to_json(rep, man.hash()) + "\n");
    write_manifest(man, cons_out + ".manifest.cfg");
    std::cout << "successes = " << rep.successes << "/" << rep.trials << "\n";
    return 0;
  }

  if (nice->parsed()) {
    EnsembleSpec spec = spec_from_config(load_config_file(nice_spec));
    ExperimentManifest man{"niceness", nice_spec, "", "s_max=" + std::to_string(nice_smax),
                           nice_trials, nice_seed, 1, "", nice_out + ".json"};
    WitnessResult w = find_no_outside_root_witness(spec.fixed, spec.law, nice_smax, nice_trials,
                                                   nice_seed);
    write_text_file(man.out_json, to_json(w, man.hash()) + "\n");
    write_manifest(man, nice_out + ".manifest.cfg");
    std::cout << (w.found ? "witness found at s = " + std::to_string(w.s) : "none found") << "\n";
    return 0;
  }

  if (alg->parsed()) {
    ExperimentManifest man{"algint", "", "", "H=" + std::to_string(alg_h),
                           static_cast<uint64_t>(alg_n), 0, 1, alg_out + ".csv",
                           alg_out + ".json"};
    CensusRecord rec = enumerate_census(alg_n, alg_h, alg_irr, alg_budget, alg_listing);
    write_text_file(man.out_json, to_json(rec, man.hash()) + "\n");
    if (alg_listing) {
      std::ostringstream lc;
      lc << "coefficients,j,manifest_hash\n";
      for (const auto& [coeffs, j] : rec.listing)
        lc << coeffs << ',' << j << ',' << std::hex << man.hash() << std::dec << "\n";
      write_text_file(alg_out + ".listing.csv", lc.str());
    }
    std::ostringstream csv;
    csv << "j,count,squarefree,irreducible,manifest_hash\n";
    for (const auto& [jj, cnt] : rec.by_j) {
      uint64_t sq = rec.squarefree_by_j.count(jj) ? rec.squarefree_by_j.at(jj) : 0;
      uint64_t ir = rec.irreducible_by_j.count(jj) ? rec.irreducible_by_j.at(jj) : 0;
      csv << jj << ',' << cnt << ',' << sq << ',' << ir << ',' << std::hex << man.hash()
          << std::dec << "\n";
    }
    write_text_file(man.out_csv, csv.str());
    write_manifest(man, alg_out + ".manifest.cfg");
    std::cout << "total = " << rec.total << "\n";
    return 0;
  }

  throw Error(Err::UnknownSubcommand, "no subcommand");
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.code()) {
      case Err::UnknownSubcommand:
      case Err::BadConfig:
      case Err::BadParams:
      case Err::DegreeTooSmall:
        return 1;
      default:
        return 2;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
