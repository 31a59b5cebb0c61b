#include "ampqed/suites.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <random>
#include <sstream>

#include "ampqed/correlations.hpp"
#include "ampqed/errors.hpp"
#include "ampqed/green.hpp"
#include "ampqed/media.hpp"
#include "ampqed/quantization.hpp"
#include "ampqed/spectral.hpp"

namespace ampqed {

namespace {

using cplx = std::complex<double>;
constexpr double pi = 3.14159265358979323846;

int env_threads() {
    const char* raw = std::getenv("AMPQED_THREADS");
    if (!raw) return 1;
    const int n = std::atoi(raw);
    return n > 0 ? n : 1;
}

std::string fmt(double v) {
    std::ostringstream s;
    s.precision(6);
    s << v;
    return s.str();
}

struct Thresholds {
    double schwarz = 1e-14;
    double kramers_kronig = 1e-3;
    double reciprocity = 1e-10;
    double spectral_identity = 1e-10;
    double integral_relation = 1e-9;
    double covariance = 1e-10;
    double fdt_reduction = 1e-9;
    double decomposition = 1e-9;
    double psd = 1e-10;
    double commutator = 2e-2;
    double high_frequency = 5e-2;
};

struct SuiteContext {
    const ScenarioConfig& cfg;
    std::shared_ptr<const SpatialGrid> grid;
    Constants k;
    std::vector<double> band;
    Thresholds thr;
    int threads = 1;

    bool gate_needed = false;
    bool gate_ran = false;
    PoleScanResult gate_scan;
};

void add_row(SuiteResult& s, double omega, const std::string& quantity, double value,
             double threshold, bool& ok) {
    s.residuals.push_back({omega, quantity, value});
    if (!(value <= threshold)) ok = false;
}

// random Hermitian kernel on a small internal grid (densities)
Kernel random_hermitian(std::mt19937_64& rng, const std::shared_ptr<const SpatialGrid>& grid,
                        double omega) {
    std::normal_distribution<double> dist(0.0, 1.0);
    const Eigen::Index n = grid->size();
    Eigen::MatrixXcd b(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) b(i, j) = cplx(dist(rng), dist(rng));
    return Kernel(grid, omega, 0.5 * (b + b.adjoint()).eval());
}

SuiteResult run_validate_kernel(SuiteContext& ctx) {
    SuiteResult s;
    s.name = "validate-kernel";
    bool ok = true;

    for (std::size_t i = 0; i < ctx.band.size(); i += std::max<std::size_t>(1, ctx.band.size() / 8)) {
        const double w = ctx.band[i];
        add_row(s, w, "schwarz", check_schwarz(ctx.cfg.model, w), ctx.thr.schwarz, ok);

        const Kernel q = build_kernel(ctx.cfg.model, ctx.grid, w, ctx.k);
        add_row(s, w, "reciprocity", q.reciprocity_defect(), 1e-15, ok);

        // gain localization: negative diagonal conductivity only within gain layers
        bool localized = true;
        for (Eigen::Index n = 0; n < ctx.grid->size(); ++n) {
            if (q.values()(n, n).real() < -1e-14) {
                const Layer* l = ctx.cfg.model.layer_at(ctx.grid->node(n));
                if (!l || !l->has_gain()) localized = false;
            }
        }
        add_row(s, w, "gain-localization", localized ? 0.0 : 1.0, 0.5, ok);
    }

    double kk = 0.0;
    if (!ctx.cfg.model.layers.empty() && ctx.cfg.model.max_resonance() > 0.0)
        kk = check_kramers_kronig(ctx.cfg.model, kramers_kronig_grid(ctx.cfg.model),
                                  ctx.thr.kramers_kronig);
    add_row(s, 0.0, "kramers-kronig", kk, ctx.thr.kramers_kronig, ok);

    s.status = ok ? "pass" : "fail";
    if (!ok) s.reason = "ResidualAboveTolerance";
    return s;
}

SuiteResult run_spectrum(SuiteContext& ctx) {
    SuiteResult s;
    s.name = "spectrum";
    bool ok = true;

    nlohmann::json census = nlohmann::json::array();
    for (double w : ctx.band) {
        const Kernel q = build_kernel(ctx.cfg.model, ctx.grid, w, ctx.k);
        const MaxwellOperator op = assemble_operator(q, ctx.k);
        const SpectralDecomposition spec = spectral_decompose(op.sigma_total());

        const Kernel sigma = op.sigma_total();
        const double recon = (spec.reconstruct() - sigma).norm() / std::max(sigma.norm(), 1e-300);
        add_row(s, w, "reconstruction", recon, ctx.thr.spectral_identity, ok);
        add_row(s, w, "orthonormality", spec.orthonormality_defect(), ctx.thr.spectral_identity, ok);
        add_row(s, w, "completeness", spec.completeness_defect(), ctx.thr.spectral_identity, ok);

        const ChannelPartition part = partition_channels(spec, ctx.cfg.eps_reg);
        census.push_back({{"omega", w},
                          {"plus", part.plus.size()},
                          {"minus", part.minus.size()},
                          {"dropped", part.dropped.size()},
                          {"dissipative", part.minus.empty()}});
    }
    s.details["channel_census"] = census;

    // seeded randomized identity trials on small Hermitian kernels
    std::mt19937_64 rng(ctx.cfg.seed);
    auto small = SpatialGrid::uniform(0.0, 1.0, 16);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const Kernel sigma = random_hermitian(rng, small, 1.0);
        const SpectralDecomposition spec = spectral_decompose(sigma);
        const Kernel id = Kernel::identity(small, 1.0);
        worst = std::max(worst, (spec.reconstruct() - sigma).norm() / sigma.norm());
        worst = std::max(worst, spec.orthonormality_defect());
        worst = std::max(worst, spec.completeness_defect());
        const InverseKernelResult inv = inverse_kernel(spec, ctx.cfg.eps_reg);
        worst = std::max(worst, (inv.rho.compose(sigma) - id).norm() / id.norm());
        worst = std::max(worst, (sigma.compose(inv.rho) - id).norm() / id.norm());
        const Kernel p = parity_kernel(spec, ctx.cfg.eps_reg);
        worst = std::max(worst, (p.compose(p) - id).norm() / id.norm());
        worst = std::max(worst, (sigma_av(spec) - p.compose(sigma)).norm() / sigma.norm());
    }
    add_row(s, 0.0, "randomized-identities", worst, ctx.thr.spectral_identity, ok);

    s.status = ok ? "pass" : "fail";
    if (!ok) s.reason = "ResidualAboveTolerance";
    return s;
}

SuiteResult run_green_identities(SuiteContext& ctx) {
    SuiteResult s;
    s.name = "green-identities";
    bool ok = true;

    for (double w : ctx.band) {
        const Kernel q = build_kernel(ctx.cfg.model, ctx.grid, w, ctx.k);
        const MaxwellOperator op = assemble_operator(q, ctx.k);
        const GreenFunction g = solve_green(op, ctx.cfg.solver_tol * 1e-4);

        add_row(s, w, "integral-relation", verify_integral_relation(g, op.sigma_total(), ctx.k),
                ctx.thr.integral_relation, ok);
        add_row(s, w, "reciprocity", g.diagnostics.reciprocity_defect, ctx.thr.reciprocity, ok);

        const MaxwellOperator op_neg =
            assemble_operator(ctx.cfg.model, ctx.grid, cplx(-w, 0.0), ctx.k);
        const GreenFunction g_neg = solve_green(op_neg, ctx.cfg.solver_tol * 1e-4);
        const double schwarz =
            kernel_norm(g_neg.values - g.values.conjugate(), *ctx.grid) /
            kernel_norm(g.values, *ctx.grid);
        add_row(s, w, "schwarz-reflection", schwarz, ctx.thr.reciprocity, ok);
    }

    // high-frequency asymptote on the imaginary axis; meaningful only when a
    // probe frequency exists that the grid resolves and the media are already
    // transparent at
    {
        const double h = ctx.grid->uniform_spacing();
        const double xi = std::min(10.0 * ctx.cfg.top_scale(), 0.4 * ctx.k.c / h);
        double opacity = 0.0;
        for (Eigen::Index i = 0; i < ctx.grid->size(); ++i)
            opacity = std::max(opacity, std::abs(permittivity(ctx.cfg.model, ctx.grid->node(i),
                                                              cplx(0.0, xi)) -
                                                 1.0));
        if (opacity <= 0.2)
            add_row(s, xi, "high-frequency",
                    high_frequency_defect(ctx.cfg.model, ctx.grid, xi, ctx.k),
                    ctx.thr.high_frequency, ok);
    }

    s.status = ok ? "pass" : "fail";
    if (!ok) s.reason = "ResidualAboveTolerance";
    return s;
}

SuiteResult run_pole_scan(SuiteContext& ctx) {
    SuiteResult s;
    s.name = "pole-scan";
    const PoleScanResult& scan = ctx.gate_scan;

    s.residuals.push_back({0.0, "median-singular-value", scan.median_singular_value});
    s.residuals.push_back({0.0, "flag-threshold", scan.threshold});
    for (const PoleFlag& f : scan.flags) {
        std::ostringstream msg;
        msg << "pole candidate at omega = (" << fmt(f.omega.real()) << ", "
            << fmt(f.omega.imag()) << "), singular value " << f.singular_value;
        s.flags.push_back(msg.str());
    }
    if (scan.round_trip.applicable) {
        s.details["round_trip"] = {{"omega", scan.round_trip.omega},
                                   {"gain", scan.round_trip.gain},
                                   {"above_unity", scan.round_trip.above_unity}};
    }
    if (scan.clean()) {
        s.status = "pass";
    } else {
        s.status = "fail";
        s.reason = "AnalyticityViolation";
    }
    return s;
}

SuiteResult run_commutator(SuiteContext& ctx) {
    SuiteResult s;
    s.name = "commutator";
    bool ok = true;

    const FrequencyGrid wg = ctx.cfg.commutator_grid();
    const CommutatorIntegralResult fine =
        commutator_integral(ctx.cfg.model, ctx.grid, wg, ctx.k, &ctx.gate_scan, ctx.threads);
    add_row(s, wg.omega_max(), "commutator-residual", fine.residual, ctx.thr.commutator, ok);

    // quadrature error estimate from a coarsened frequency grid
    const CommutatorIntegralResult coarse = commutator_integral(
        ctx.cfg.model, ctx.grid, wg.coarsened(), ctx.k, &ctx.gate_scan, ctx.threads);
    const double estimate =
        kernel_norm((fine.values - coarse.values).cast<cplx>(), *ctx.grid) /
        kernel_norm(fine.target.cast<cplx>(), *ctx.grid);
    s.residuals.push_back({wg.omega_max(), "quadrature-estimate", estimate});

    s.status = ok ? "pass" : "fail";
    if (!ok) s.reason = "ResidualAboveTolerance";
    return s;
}

SuiteResult run_correlations(SuiteContext& ctx, Report& report) {
    SuiteResult s;
    s.name = "correlations";
    bool ok = true;

    KernelTable ee_table;
    ee_table.name = "ee_spectral_density";
    ee_table.nodes.assign(ctx.grid->nodes().data(),
                          ctx.grid->nodes().data() + ctx.grid->size());

    for (double w : ctx.band) {
        const Kernel q = build_kernel(ctx.cfg.model, ctx.grid, w, ctx.k);
        const MaxwellOperator op = assemble_operator(q, ctx.k);
        const GreenFunction g = solve_green(op, ctx.cfg.solver_tol * 1e-4);
        const Kernel sigma = op.sigma_total();
        const SpectralDecomposition spec = spectral_decompose(sigma);
        const Kernel sav = sigma_av(spec);
        const ChannelPartition part = partition_channels(spec, ctx.cfg.eps_reg);
        const NoiseCovariances cov = noise_covariances(part, ctx.k);

        const double scale = ctx.k.hbar * w / pi;
        const double sig_norm = std::max(sigma.norm() * scale, 1e-300);
        add_row(s, w, "covariance-sum",
                ((cov.anti_normal + cov.normal) - sav.scaled(scale)).norm() / sig_norm,
                ctx.thr.covariance, ok);
        add_row(s, w, "covariance-difference",
                (commutator_kernel(part, ctx.k) - sigma.scaled(scale)).norm() / sig_norm,
                ctx.thr.covariance, ok);

        const CorrelationTensor ee = ee_spectral_density(g, sav, ctx.k);
        const CorrelationTensor bb = bb_spectral_density(g, sav, ctx.k);
        const CorrelationTensor naive = naive_fdt_density(g, ctx.k);
        const CorrelationTensor corr = amplification_correction(g, sigma, sav, ctx.k);

        add_row(s, w, "ee-psd", negativity(ee.values), ctx.thr.psd, ok);
        add_row(s, w, "bb-hermitian", bb.values.hermiticity_defect(), ctx.thr.psd, ok);

        const double ee_norm = std::max(ee.values.norm(), 1e-300);
        add_row(s, w, "route-decomposition",
                (ee.values - (naive.values + corr.values)).norm() / ee_norm,
                ctx.thr.decomposition, ok);
        if (part.minus.empty())
            add_row(s, w, "fdt-reduction", (ee.values - naive.values).norm() / ee_norm,
                    ctx.thr.fdt_reduction, ok);

        if (ctx.cfg.export_kernels) {
            ee_table.omegas.push_back(w);
            ee_table.arrays.push_back(ee.values.values());
        }
    }
    if (ctx.cfg.export_kernels) report.kernels.push_back(std::move(ee_table));

    s.status = ok ? "pass" : "fail";
    if (!ok) s.reason = "ResidualAboveTolerance";
    return s;
}

SuiteResult run_compare_naive(SuiteContext& ctx) {
    SuiteResult s;
    s.name = "compare-naive";
    bool ok = true;

    for (double w : ctx.band) {
        const Kernel q = build_kernel(ctx.cfg.model, ctx.grid, w, ctx.k);
        const MaxwellOperator op = assemble_operator(q, ctx.k);
        const GreenFunction g = solve_green(op, ctx.cfg.solver_tol * 1e-4);
        const Kernel sigma = op.sigma_total();
        const SpectralDecomposition spec = spectral_decompose(sigma);
        const Kernel sav = sigma_av(spec);
        const ChannelPartition part = partition_channels(spec, ctx.cfg.eps_reg);

        const CorrelationTensor ee = ee_spectral_density(g, sav, ctx.k);
        const CorrelationTensor naive = naive_fdt_density(g, ctx.k);
        const CorrelationTensor corr = amplification_correction(g, sigma, sav, ctx.k);

        // positivity measured against the density's scale: the correction is
        // numerically zero at dissipative frequencies
        const double ee_scale = std::max(ee.values.norm(), 1e-300);
        add_row(s, w, "correction-psd",
                std::max(0.0, -min_eigenvalue(corr.values)) / ee_scale, ctx.thr.psd, ok);
        add_row(s, w, "monotonicity",
                std::max(0.0, -min_eigenvalue(ee.values - naive.values)) / ee_scale,
                ctx.thr.psd, ok);

        const double rel = corr.values.norm() / ee_scale;
        s.residuals.push_back({w, "correction-relative-norm", rel});
        if (part.minus.empty()) {
            // dissipative at this frequency: the correction must vanish
            add_row(s, w, "correction-absent", rel, 1e-12, ok);
        } else {
            const double rank_defect =
                std::abs(static_cast<double>(psd_rank(corr.values)) -
                         static_cast<double>(part.minus.size()));
            add_row(s, w, "correction-rank-defect", rank_defect, 0.5, ok);
        }
    }

    s.status = ok ? "pass" : "fail";
    if (!ok) s.reason = "ResidualAboveTolerance";
    return s;
}

} // namespace

Report run_scenario(const ScenarioConfig& cfg) {
    cfg.validate();

    SuiteContext ctx{cfg,          cfg.make_grid(), cfg.constants, cfg.band_frequencies(),
                     Thresholds{}, env_threads(),   false,         false,
                     PoleScanResult{}};

    Report report;
    report.scenario = cfg.name;
    report.config_hash = config_hash(cfg.raw_text);
    report.seed = cfg.seed;

    // requested suites in dependency order
    std::vector<std::string> ordered;
    for (const std::string& name : known_suites())
        if (std::find(cfg.analyses.begin(), cfg.analyses.end(), name) != cfg.analyses.end())
            ordered.push_back(name);

    const auto needs_gate = [](const std::string& n) {
        return n == "pole-scan" || n == "commutator" || n == "correlations" ||
               n == "compare-naive";
    };
    ctx.gate_needed = std::any_of(ordered.begin(), ordered.end(), needs_gate);
    if (ctx.gate_needed) {
        ctx.gate_scan = pole_scan(cfg.model, ctx.grid, cfg.scan_region(), ctx.k);
        ctx.gate_ran = true;
        report.gate = {{"clean", ctx.gate_scan.clean()},
                       {"flag_count", ctx.gate_scan.flags.size()},
                       {"median_singular_value", ctx.gate_scan.median_singular_value}};
    }

    for (const std::string& name : ordered) {
        // fail-closed: suites that consume upper-half-plane analyticity are
        // skipped outright once the gate has flagged poles
        const bool analytic_dependent =
            name == "commutator" || name == "correlations" || name == "compare-naive";
        if (analytic_dependent && ctx.gate_ran && !ctx.gate_scan.clean()) {
            SuiteResult s;
            s.name = name;
            s.status = "skipped";
            s.reason = "AnalyticityViolation";
            report.suites.push_back(std::move(s));
            continue;
        }

        try {
            if (name == "validate-kernel") report.suites.push_back(run_validate_kernel(ctx));
            else if (name == "spectrum") report.suites.push_back(run_spectrum(ctx));
            else if (name == "green-identities") report.suites.push_back(run_green_identities(ctx));
            else if (name == "pole-scan") report.suites.push_back(run_pole_scan(ctx));
            else if (name == "commutator") report.suites.push_back(run_commutator(ctx));
            else if (name == "correlations") report.suites.push_back(run_correlations(ctx, report));
            else if (name == "compare-naive") report.suites.push_back(run_compare_naive(ctx));
        } catch (const Error& e) {
            SuiteResult s;
            s.name = name;
            s.status = "fail";
            s.reason = e.code();
            s.flags.push_back(e.what());
            report.suites.push_back(std::move(s));
        }
    }
    return report;
}

} // namespace ampqed
