#ifndef AMPQED_REPORT_HPP
#define AMPQED_REPORT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include <json.hpp>

namespace ampqed {

struct ResidualRow {
    double omega = 0.0;
    std::string quantity;
    double value = 0.0;
};

/// Dense complex kernel snapshot attached to a report for export: one array
/// per frequency, with the node coordinates that label rows and columns.
struct KernelTable {
    std::string name;
    std::vector<double> nodes;
    std::vector<double> omegas;
    std::vector<Eigen::MatrixXcd> arrays;
};

struct SuiteResult {
    std::string name;
    std::string status; ///< "pass" | "fail" | "skipped"
    std::string reason; ///< machine-readable code for non-pass outcomes
    std::vector<ResidualRow> residuals;
    std::vector<std::string> flags;
    nlohmann::json details = nlohmann::json::object();

    bool passed() const { return status == "pass"; }
};

/// Full scenario run outcome: per-suite status, residual tables, flags and
/// provenance. Serialization is deterministic (sorted keys, no timestamps),
/// so identical configs re-export byte-identically.
struct Report {
    std::string version = "0.1.0";
    std::string scenario;
    std::string config_hash;
    std::uint64_t seed = 0;
    nlohmann::json gate = nlohmann::json::object(); ///< analyticity gate summary
    std::vector<SuiteResult> suites;
    std::vector<KernelTable> kernels;

    bool all_pass() const;

    nlohmann::json to_json() const;
    static Report from_json(const nlohmann::json& j);
};

void write_report_json(const Report& report, const std::string& path);
Report read_report_json(const std::string& path);

/// Flat-table export: <prefix>_summary.csv, <prefix>_residuals.csv and one
/// <prefix>_kernel_<name>.csv per attached kernel (omega-major, row-major;
/// interleaved real/imaginary columns; layout documented in the header
/// lines). Files carry no timestamps and are byte-stable.
void export_report_csv(const Report& report, const std::string& prefix);

} // namespace ampqed

#endif
