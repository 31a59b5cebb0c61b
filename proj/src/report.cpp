#include "ampqed/report.hpp"

#include <cstdio>
#include <fstream>

#include "ampqed/errors.hpp"

namespace ampqed {

using nlohmann::json;

bool Report::all_pass() const {
    for (const SuiteResult& s : suites)
        if (!s.passed()) return false;
    return true;
}

json Report::to_json() const {
    json j;
    j["version"] = version;
    j["scenario"] = scenario;
    j["config_hash"] = config_hash;
    j["seed"] = seed;
    j["gate"] = gate;

    json suites_j = json::array();
    for (const SuiteResult& s : suites) {
        json sj;
        sj["name"] = s.name;
        sj["status"] = s.status;
        sj["reason"] = s.reason;
        json rows = json::array();
        for (const ResidualRow& r : s.residuals)
            rows.push_back({{"omega", r.omega}, {"quantity", r.quantity}, {"value", r.value}});
        sj["residuals"] = rows;
        sj["flags"] = s.flags;
        sj["details"] = s.details;
        suites_j.push_back(sj);
    }
    j["suites"] = suites_j;

    json kernels_j = json::array();
    for (const KernelTable& t : kernels) {
        json tj;
        tj["name"] = t.name;
        tj["nodes"] = t.nodes;
        tj["omegas"] = t.omegas;
        json arrays = json::array();
        for (const Eigen::MatrixXcd& a : t.arrays) {
            json flat = json::array();
            for (Eigen::Index r = 0; r < a.rows(); ++r)
                for (Eigen::Index c = 0; c < a.cols(); ++c) {
                    flat.push_back(a(r, c).real());
                    flat.push_back(a(r, c).imag());
                }
            arrays.push_back(std::move(flat));
        }
        tj["arrays"] = arrays;
        kernels_j.push_back(tj);
    }
    j["kernels"] = kernels_j;
    return j;
}

Report Report::from_json(const json& j) {
    Report rep;
    rep.version = j.at("version").get<std::string>();
    rep.scenario = j.at("scenario").get<std::string>();
    rep.config_hash = j.at("config_hash").get<std::string>();
    rep.seed = j.at("seed").get<std::uint64_t>();
    rep.gate = j.value("gate", json::object());
    for (const json& sj : j.at("suites")) {
        SuiteResult s;
        s.name = sj.at("name").get<std::string>();
        s.status = sj.at("status").get<std::string>();
        s.reason = sj.value("reason", "");
        for (const json& rj : sj.value("residuals", json::array()))
            s.residuals.push_back({rj.at("omega").get<double>(),
                                   rj.at("quantity").get<std::string>(),
                                   rj.at("value").get<double>()});
        s.flags = sj.value("flags", std::vector<std::string>{});
        s.details = sj.value("details", json::object());
        rep.suites.push_back(std::move(s));
    }
    for (const json& tj : j.value("kernels", json::array())) {
        KernelTable t;
        t.name = tj.at("name").get<std::string>();
        t.nodes = tj.at("nodes").get<std::vector<double>>();
        t.omegas = tj.at("omegas").get<std::vector<double>>();
        const json& arrays = tj.at("arrays");
        const auto n = static_cast<Eigen::Index>(t.nodes.size());
        for (const json& flat : arrays) {
            Eigen::MatrixXcd a(n, n);
            Eigen::Index pos = 0;
            for (Eigen::Index r = 0; r < n; ++r)
                for (Eigen::Index c = 0; c < n; ++c) {
                    a(r, c) = std::complex<double>(flat.at(pos).get<double>(),
                                                   flat.at(pos + 1).get<double>());
                    pos += 2;
                }
            t.arrays.push_back(std::move(a));
        }
        rep.kernels.push_back(std::move(t));
    }
    return rep;
}

void write_report_json(const Report& report, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write report to '" + path + "'");
    out << report.to_json().dump(2) << "\n";
    if (!out) throw IoError("failed writing report to '" + path + "'");
}

Report read_report_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open report '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw IoError("malformed report JSON in '" + path + "': " + e.what());
    }
    return Report::from_json(j);
}

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write '" + path + "'");
    return out;
}

} // namespace

void export_report_csv(const Report& report, const std::string& prefix) {
    {
        std::ofstream out = open_out(prefix + "_summary.csv");
        out << "# scenario " << report.scenario << " config " << report.config_hash << "\n";
        out << "suite,status,reason\n";
        for (const SuiteResult& s : report.suites)
            out << s.name << "," << s.status << "," << s.reason << "\n";
    }
    {
        std::ofstream out = open_out(prefix + "_residuals.csv");
        out << "# scenario " << report.scenario << " config " << report.config_hash << "\n";
        out << "suite,omega,quantity,value\n";
        for (const SuiteResult& s : report.suites)
            for (const ResidualRow& r : s.residuals)
                out << s.name << "," << fmt(r.omega) << "," << r.quantity << ","
                    << fmt(r.value) << "\n";
    }
    for (const KernelTable& t : report.kernels) {
        std::ofstream out = open_out(prefix + "_kernel_" + t.name + ".csv");
        out << "# dense complex kernel '" << t.name << "', scenario " << report.scenario
            << "\n";
        out << "# one row per (omega, z_row, z_col), omega-major then row-major;\n";
        out << "# complex values interleaved as re,im columns\n";
        out << "omega,z_row,z_col,re,im\n";
        const auto n = static_cast<Eigen::Index>(t.nodes.size());
        for (std::size_t w = 0; w < t.omegas.size(); ++w) {
            const Eigen::MatrixXcd& a = t.arrays[w];
            for (Eigen::Index r = 0; r < n; ++r)
                for (Eigen::Index c = 0; c < n; ++c)
                    out << fmt(t.omegas[w]) << "," << fmt(t.nodes[static_cast<std::size_t>(r)])
                        << "," << fmt(t.nodes[static_cast<std::size_t>(c)]) << ","
                        << fmt(a(r, c).real()) << "," << fmt(a(r, c).imag()) << "\n";
        }
    }
}

} // namespace ampqed
