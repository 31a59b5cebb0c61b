#ifndef AMPQED_SCENARIO_HPP
#define AMPQED_SCENARIO_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "ampqed/constants.hpp"
#include "ampqed/green.hpp"
#include "ampqed/grid.hpp"
#include "ampqed/media.hpp"

namespace ampqed {

/// Parsed scenario description: medium, grids, constants, tolerances and the
/// requested analysis suites. Built from a line-oriented text format (see
/// parse_scenario) so scenarios stay diff-able and hand-editable.
struct ScenarioConfig {
    std::string name;
    std::uint64_t seed = 0;
    Constants constants = Constants::natural();

    // spatial grid
    double z_min = 0.0;
    double z_max = 1.0;
    int nodes = 128;

    // frequency band sampled by the per-frequency suites
    double band_lo = 0.0;
    double band_hi = 0.0;
    int band_count = 32;

    // commutator-integral quadrature
    double cutoff_factor = 40.0; ///< Omega_max as multiple of the top resonance
    int cutoff_nodes = 385;      ///< odd; composite Simpson

    // tolerances
    double eps_reg = 1e-12;   ///< relative spectral cutoff
    double solver_tol = 1e-9; ///< dense-solve gate (rcond floor = solver_tol * 1e-4)

    MediumModel model;

    PoleScanConfig scan;
    bool scan_configured = false;

    std::vector<std::string> analyses;
    bool export_kernels = false;

    std::string raw_text; ///< original config text (hashed into reports)

    void validate() const;

    std::shared_ptr<const SpatialGrid> make_grid() const;
    std::vector<double> band_frequencies() const;
    FrequencyGrid commutator_grid() const;
    PoleScanConfig scan_region() const; ///< configured region or model default

    /// Top frequency scale of the scenario: the largest resonance, or the
    /// band top for resonance-free models.
    double top_scale() const;
};

/// Names of the suites run_scenario understands, in dependency order.
const std::vector<std::string>& known_suites();

ScenarioConfig parse_scenario(const std::string& text);
ScenarioConfig load_scenario(const std::string& path);

/// FNV-1a hash of the config text, hex-encoded; the report provenance tag.
std::string config_hash(const std::string& text);

} // namespace ampqed

#endif
