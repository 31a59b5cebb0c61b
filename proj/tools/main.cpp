// Command-line front end: scenario ingestion, suite orchestration and report
// emission. Exit code 0 means every requested suite passed.

#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "ampqed/errors.hpp"
#include "ampqed/report.hpp"
#include "ampqed/scenario.hpp"
#include "ampqed/suites.hpp"

namespace {

void print_suite_lines(const ampqed::Report& report) {
    for (const ampqed::SuiteResult& s : report.suites) {
        std::printf("%-18s %s%s%s\n", s.name.c_str(), s.status.c_str(),
                    s.reason.empty() ? "" : "  ", s.reason.c_str());
        for (const std::string& f : s.flags) std::printf("    %s\n", f.c_str());
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantized-field kernel verification engine for stratified media"};
    app.require_subcommand(1);

    std::string config_path;
    std::string report_path = "report.json";
    std::string export_prefix;
    std::string format = "json";

    CLI::App* run = app.add_subcommand("run", "run the requested analysis suites");
    run->add_option("config", config_path, "scenario config file")->required();
    run->add_option("--out", report_path, "report output path (JSON)");
    run->add_option("--export-prefix", export_prefix, "also export flat tables to this prefix");

    CLI::App* validate = app.add_subcommand("validate", "check a scenario config");
    validate->add_option("config", config_path, "scenario config file")->required();

    CLI::App* exp = app.add_subcommand("export", "re-emit a stored report");
    exp->add_option("report", report_path, "report JSON produced by run")->required();
    exp->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    exp->add_option("--out-prefix", export_prefix, "output path prefix")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            const ampqed::ScenarioConfig cfg = ampqed::load_scenario(config_path);
            const ampqed::Report report = ampqed::run_scenario(cfg);
            ampqed::write_report_json(report, report_path);
            if (!export_prefix.empty()) ampqed::export_report_csv(report, export_prefix);
            print_suite_lines(report);
            std::printf("report written to %s\n", report_path.c_str());
            return report.all_pass() ? 0 : 1;
        }
        if (validate->parsed()) {
            const ampqed::ScenarioConfig cfg = ampqed::load_scenario(config_path);
            std::printf("config ok: scenario '%s', %zu layer(s), %d nodes, %d band samples\n",
                        cfg.name.c_str(), cfg.model.layers.size(), cfg.nodes, cfg.band_count);
            return 0;
        }
        if (exp->parsed()) {
            const ampqed::Report report = ampqed::read_report_json(report_path);
            if (format == "json") {
                ampqed::write_report_json(report, export_prefix + ".json");
            } else {
                ampqed::export_report_csv(report, export_prefix);
            }
            return 0;
        }
    } catch (const ampqed::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}
