#pragma once
#include <string>
#include <vector>

#include "rzlab/algint.hpp"
#include "rzlab/config.hpp"
#include "rzlab/constructions.hpp"
#include "rzlab/covariance.hpp"
#include "rzlab/estimators.hpp"
#include "rzlab/rootcount.hpp"

namespace rzlab {

std::string estimate_csv_header();
std::string estimate_csv_row(const EstimateRecord& rec, uint64_t manifest_hash);

/// Appends stable-column CSV rows (header written once per file, records
/// grouped by event), writes the JSON mirror and a log-log summary table for
/// external plotting. Throws Err::IoFailure on an empty record list or on
/// write failure; no file is created in that case. The default log-log path
/// is csv_path + ".loglog.txt".
void emit_report(const std::vector<EstimateRecord>& records, const std::string& csv_path,
                 const std::string& json_path, uint64_t manifest_hash,
                 const std::string& loglog_path = "");

std::string to_json(const EstimateRecord& rec, uint64_t manifest_hash);
std::string to_json(const RootCountReport& rep);
std::string to_json(const DominanceReport& rep, uint64_t manifest_hash);
std::string to_json(const PatternReport& rep, uint64_t manifest_hash);
std::string to_json(const CensusRecord& rec, uint64_t manifest_hash);
std::string to_json(const ExponentFit& fit, uint64_t manifest_hash);
std::string to_json(const WitnessResult& w, uint64_t manifest_hash);

/// Log-log summary table (n, p_hat, ci) for external plotting.
std::string loglog_table(const std::vector<EstimateRecord>& records, uint64_t manifest_hash);

void write_text_file(const std::string& path, const std::string& text);  // Err::IoFailure

}  // namespace rzlab
