#ifndef AMPQED_SUITES_HPP
#define AMPQED_SUITES_HPP

#include "ampqed/report.hpp"
#include "ampqed/scenario.hpp"

namespace ampqed {

/// Runs the requested analysis suites in dependency order and assembles the
/// report. Suites that need an analytic upper half-plane (commutator,
/// correlations, compare-naive) run behind a pole-scan gate and are skipped
/// with reason AnalyticityViolation when the gate fails; everything is
/// deterministic for a fixed config (including the property-suite seed).
/// The AMPQED_THREADS environment variable widens the per-frequency fan-out
/// (default 1).
Report run_scenario(const ScenarioConfig& cfg);

} // namespace ampqed

#endif
