#include "rzlab/report_io.hpp"

#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "rzlab/error.hpp"

namespace rzlab {

using nlohmann::json;

std::string estimate_csv_header() {
  return "spec_id,n,event,j,trials,successes,failures,undecided,p_hat,ci_low,ci_high,"
         "master_seed,workers,wall_time_s,manifest_hash";
}

std::string estimate_csv_row(const EstimateRecord& rec, uint64_t manifest_hash) {
  std::ostringstream os;
  os.precision(17);
  os << rec.spec_id << ',' << rec.n << ',' << rec.event.name() << ',' << rec.event.j << ','
     << rec.trials << ',' << rec.successes << ',' << rec.failures << ',' << rec.undecided << ','
     << rec.p_hat << ',' << rec.ci_low << ',' << rec.ci_high << ',' << rec.master_seed << ','
     << rec.workers << ',' << rec.wall_time_s << ',' << std::hex << manifest_hash;
  return os.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(Err::IoFailure, "cannot write " + path);
  out << text;
  if (!out) throw Error(Err::IoFailure, "write failed for " + path);
}

void emit_report(const std::vector<EstimateRecord>& records, const std::string& csv_path,
                 const std::string& json_path, uint64_t manifest_hash,
                 const std::string& loglog_path) {
  if (records.empty()) throw Error(Err::IoFailure, "no records to emit");

  std::vector<EstimateRecord> sorted = records;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const EstimateRecord& a, const EstimateRecord& b) {
                     return a.event.name() < b.event.name();
                   });

  bool fresh = !std::filesystem::exists(csv_path);
  std::ofstream csv(csv_path, std::ios::app);
  if (!csv) throw Error(Err::IoFailure, "cannot write " + csv_path);
  if (fresh) csv << estimate_csv_header() << "\n";
  for (const auto& rec : sorted) csv << estimate_csv_row(rec, manifest_hash) << "\n";
  if (!csv) throw Error(Err::IoFailure, "write failed for " + csv_path);

  json arr = json::array();
  for (const auto& rec : sorted) arr.push_back(json::parse(to_json(rec, manifest_hash)));
  write_text_file(json_path, arr.dump(2) + "\n");

  write_text_file(loglog_path.empty() ? csv_path + ".loglog.txt" : loglog_path,
                  loglog_table(sorted, manifest_hash));
}

std::string to_json(const EstimateRecord& rec, uint64_t manifest_hash) {
  json j{{"spec_id", rec.spec_id},
         {"n", rec.n},
         {"event", rec.event.name()},
         {"j", rec.event.j},
         {"trials", rec.trials},
         {"successes", rec.successes},
         {"failures", rec.failures},
         {"undecided", rec.undecided},
         {"p_hat", rec.p_hat},
         {"ci_low", rec.ci_low},
         {"ci_high", rec.ci_high},
         {"master_seed", rec.master_seed},
         {"workers", rec.workers},
         {"wall_time_s", rec.wall_time_s},
         {"manifest_hash", manifest_hash}};
  return j.dump();
}

std::string to_json(const RootCountReport& rep) {
  const char* method = rep.method == RootCountReport::Method::ExactSturm    ? "ExactSturm"
                       : rep.method == RootCountReport::Method::FastEigen   ? "FastEigen"
                                                                            : "FastThenExact";
  json intervals = json::array();
  for (const auto& [iv, cnt] : rep.per_interval)
    intervals.push_back({{"lo", format_rational(iv.first)},
                         {"hi", format_rational(iv.second)},
                         {"count", cnt}});
  json j{{"total", rep.total},        {"simple", rep.simple}, {"per_interval", intervals},
         {"all_simple", rep.all_simple}, {"method", method},  {"certified", rep.certified}};
  return j.dump();
}

std::string to_json(const DominanceReport& rep, uint64_t manifest_hash) {
  json j{{"mesh", rep.mesh},
         {"alpha_n", rep.alpha_n},
         {"max_violation", rep.max_violation},
         {"worst_x", rep.worst.first},
         {"worst_y", rep.worst.second},
         {"diagonal_max_error", rep.diagonal_max_error},
         {"least_alpha", rep.least_alpha},
         {"note", "grid evidence only; nothing is claimed off-mesh"},
         {"manifest_hash", manifest_hash}};
  return j.dump();
}

std::string to_json(const PatternReport& rep, uint64_t manifest_hash) {
  json hist = json::object();
  for (const auto& [k, v] : rep.zero_histogram) hist[std::to_string(k)] = v;
  json fails = json::array();
  for (const auto& f : rep.failure_details)
    fails.push_back({{"trial", f.trial_index},
                     {"seed", f.seed},
                     {"reason", f.reason},
                     {"coeffs", f.sample_coeffs},
                     {"zeros_in_unit", f.zeros_in_unit},
                     {"all_simple", f.all_simple},
                     {"sign_ok", f.sign_ok}});
  json j{{"trials", rep.trials},
         {"successes", rep.successes},
         {"failures", rep.failures},
         {"zero_histogram", hist},
         {"failures_detail", fails},
         {"rejected_draws", rep.rejected_draws},
         {"wall_time_s", rep.wall_time_s},
         {"manifest_hash", manifest_hash}};
  return j.dump();
}

std::string to_json(const CensusRecord& rec, uint64_t manifest_hash) {
  auto map_to_json = [](const std::map<int, uint64_t>& m) {
    json j = json::object();
    for (const auto& [k, v] : m) j[std::to_string(k)] = v;
    return j;
  };
  json dens = json::object();
  for (const auto& [k, v] : rec.density_by_j) dens[std::to_string(k)] = v;
  json j{{"n", rec.n},
         {"height_bound", rec.height_bound},
         {"total", rec.total},
         {"by_j", map_to_json(rec.by_j)},
         {"squarefree_by_j", map_to_json(rec.squarefree_by_j)},
         {"irreducible_by_j", map_to_json(rec.irreducible_by_j)},
         {"squarefree_total", rec.squarefree_total},
         {"density_by_j", dens},
         {"manifest_hash", manifest_hash}};
  if (rec.reducible_fraction_lower_estimate >= 0)
    j["reducible_fraction_lower_estimate"] = rec.reducible_fraction_lower_estimate;
  return j.dump();
}

std::string to_json(const ExponentFit& fit, uint64_t manifest_hash) {
  json pts = json::array();
  for (const auto& [n, p] : fit.points) pts.push_back({{"n", n}, {"p_hat", p}});
  json j{{"b_hat", fit.b_hat},
         {"stderr", fit.stderr_b},
         {"points", pts},
         {"weights", fit.weights},
         {"manifest_hash", manifest_hash}};
  return j.dump();
}

std::string to_json(const WitnessResult& w, uint64_t manifest_hash) {
  json per_s = json::object();
  for (const auto& [s, t] : w.trials_per_s) per_s[std::to_string(s)] = t;
  json j{{"found", w.found},
         {"s", w.s},
         {"seed", w.seed},
         {"witness_coeffs", w.found ? w.witness.to_string() : ""},
         {"trials_per_s", per_s},
         {"note", "a none-found result is evidence, not proof of nonexistence"},
         {"manifest_hash", manifest_hash}};
  return j.dump();
}

std::string loglog_table(const std::vector<EstimateRecord>& records, uint64_t manifest_hash) {
  std::ostringstream os;
  os << "# manifest_hash = " << std::hex << manifest_hash << std::dec << "\n";
  os << "# n  p_hat  ci_low  ci_high  log_n  log_p\n";
  os.precision(10);
  for (const auto& r : records) {
    if (r.p_hat <= 0) continue;
    os << r.n << "  " << r.p_hat << "  " << r.ci_low << "  " << r.ci_high << "  "
       << std::log(static_cast<double>(r.n)) << "  " << std::log(r.p_hat) << "\n";
  }
  return os.str();
}

}  // namespace rzlab
