// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Each criterion pins its tolerance here, in code.

#include <cmath>
#include <complex>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "ampqed/correlations.hpp"
#include "ampqed/errors.hpp"
#include "ampqed/green.hpp"
#include "ampqed/media.hpp"
#include "ampqed/quantization.hpp"
#include "ampqed/spectral.hpp"
#include "ampqed/transfer_matrix.hpp"
#include "support.hpp"

using namespace ampqed;
using cplx = std::complex<double>;

namespace {

const Constants kNat = Constants::natural();
constexpr double pi = 3.14159265358979323846;

int failures = 0;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

void report(int id, bool pass, const std::string& label, const std::string& detail) {
    std::printf("[%2d] %s  %s (%s)\n", id, pass ? "PASS" : "FAIL", label.c_str(),
                detail.c_str());
    if (!pass) ++failures;
}

std::vector<double> band_frequencies(double lo, double hi, int n) {
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        out[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
    return out;
}

// --- criterion 1: generalized integral relation ---------------------------

void criterion_integral_relation() {
    auto grid = SpatialGrid::uniform(0.0, 1.0, 128);
    double worst = 0.0;
    for (const MediumModel& m : {testing::absorbing_slab(), testing::gain_slab()}) {
        for (double w : band_frequencies(4.5, 7.5, 32)) {
            const Kernel q = build_kernel(m, grid, w, kNat);
            const MaxwellOperator op = assemble_operator(q, kNat);
            const GreenFunction g = solve_green(op);
            worst = std::max(worst, verify_integral_relation(g, op.sigma_total(), kNat));
        }
    }
    report(1, worst <= 1e-9, "generalized integral relation",
           "worst residual " + fmt(worst) + " <= 1e-9");
}

// --- criterion 2: spectral machinery on randomized kernels ----------------

void criterion_spectral_machinery() {
    std::mt19937_64 rng(0);
    auto grid = SpatialGrid::uniform(0.0, 1.0, 18);
    const Kernel id = Kernel::identity(grid, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const bool positive = trial % 3 == 0;
        const Kernel sigma = positive ? testing::random_positive(rng, grid)
                                      : testing::random_hermitian(rng, grid);
        const SpectralDecomposition spec = spectral_decompose(sigma);
        worst = std::max(worst, (spec.reconstruct() - sigma).norm() / sigma.norm());
        worst = std::max(worst, spec.orthonormality_defect());
        worst = std::max(worst, spec.completeness_defect());
        const InverseKernelResult inv = inverse_kernel(spec);
        worst = std::max(worst, (inv.rho.compose(sigma) - id).norm() / id.norm());
        worst = std::max(worst, (sigma.compose(inv.rho) - id).norm() / id.norm());
        if (is_dissipative(spec)) {
            const Kernel kf = factor_kernel(spec);
            worst = std::max(worst, (kf.compose(kf.adjoint()) - sigma).norm() / sigma.norm());
        }
        const Kernel p = parity_kernel(spec);
        worst = std::max(worst, (p.compose(p) - id).norm() / id.norm());
        const Kernel sav = sigma_av(spec);
        worst = std::max(worst, (sav - p.compose(sigma)).norm() / sav.norm());
    }
    report(2, worst <= 1e-10, "spectral machinery identities (100 randomized kernels)",
           "worst defect " + fmt(worst) + " <= 1e-10");
}

// --- criterion 3: factorization fails exactly off the dissipative set -----

void criterion_factor_gate() {
    std::mt19937_64 rng(1);
    auto grid = SpatialGrid::uniform(0.0, 1.0, 14);
    int mismatches = 0, negatives = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const Kernel sigma = (trial % 2 == 0) ? testing::random_hermitian(rng, grid)
                                              : testing::random_positive(rng, grid);
        const SpectralDecomposition spec = spectral_decompose(sigma);
        const bool dissipative = is_dissipative(spec);
        bool threw = false;
        try {
            (void)factor_kernel(spec);
        } catch (const NonPositiveSpectrum&) {
            threw = true;
        }
        if (threw == dissipative) ++mismatches;
        if (!dissipative) ++negatives;
    }
    report(3, mismatches == 0 && negatives > 0,
           "square-root factor exists iff dissipative (100 trials)",
           fmt(mismatches) + " mismatches, " + fmt(negatives) +
               " non-positive spectra exercised");
}

// --- criterion 4: covariance identities ------------------------------------

void criterion_covariances() {
    std::mt19937_64 rng(2);
    auto grid = SpatialGrid::uniform(0.0, 1.0, 16);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const Kernel sigma = testing::random_hermitian(rng, grid, 1.0 + 0.1 * trial);
        const SpectralDecomposition spec = spectral_decompose(sigma);
        const ChannelPartition part = partition_channels(spec);
        const NoiseCovariances cov = noise_covariances(part, kNat);
        const double scale = kNat.hbar * part.omega / pi;
        const Kernel sav = sigma_av(spec);
        worst = std::max(worst, ((cov.anti_normal + cov.normal) - sav.scaled(scale)).norm() /
                                    (scale * sav.norm()));
        worst = std::max(worst, ((cov.anti_normal - cov.normal) - sigma.scaled(scale)).norm() /
                                    (scale * sigma.norm()));
    }

    // absorbing medium: normally-ordered covariance must vanish identically
    auto slab_grid = SpatialGrid::uniform(0.35, 0.65, 48);
    const Kernel q = build_kernel(testing::absorbing_slab(), slab_grid, 6.0, kNat);
    const NoiseCovariances cov =
        noise_covariances(partition_channels(spectral_decompose(hermitian_split(q).first)), kNat);
    const bool absorbing_zero = cov.normal.norm() == 0.0;

    report(4, worst <= 1e-10 && absorbing_zero, "noise covariance identities",
           "worst residual " + fmt(worst) + " <= 1e-10, absorbing C_norm " +
               (absorbing_zero ? "exactly zero" : "nonzero"));
}

// --- criterion 5: fluctuation-dissipation reduction ------------------------

void criterion_fdt_reduction() {
    auto grid = SpatialGrid::uniform(0.0, 1.0, 128);
    double worst = 0.0;
    for (double w : band_frequencies(4.5, 7.5, 32)) {
        const Kernel q = build_kernel(testing::absorbing_slab(), grid, w, kNat);
        const MaxwellOperator op = assemble_operator(q, kNat);
        const GreenFunction g = solve_green(op);
        const Kernel sav = sigma_av(spectral_decompose(op.sigma_total()));
        const CorrelationTensor ee = ee_spectral_density(g, sav, kNat);
        const CorrelationTensor naive = naive_fdt_density(g, kNat);
        worst = std::max(worst, (ee.values - naive.values).norm() / ee.values.norm());
    }
    report(5, worst <= 1e-9, "fluctuation-dissipation reduction (absorbing slab)",
           "worst residual " + fmt(worst) + " <= 1e-9");
}

// --- criterion 6: amplification correction ---------------------------------

void criterion_amplification_correction() {
    auto grid = SpatialGrid::uniform(0.0, 1.0, 128);
    double worst_decomp = 0.0, worst_neg = 0.0;
    bool ranks_ok = true, nonzero = true;
    for (double w : band_frequencies(4.5, 7.5, 32)) {
        const Kernel q = build_kernel(testing::gain_slab(), grid, w, kNat);
        const MaxwellOperator op = assemble_operator(q, kNat);
        const GreenFunction g = solve_green(op);
        const Kernel sigma = op.sigma_total();
        const SpectralDecomposition spec = spectral_decompose(sigma);
        const Kernel sav = sigma_av(spec);
        const ChannelPartition part = partition_channels(spec);

        const CorrelationTensor ee = ee_spectral_density(g, sav, kNat);
        const CorrelationTensor naive = naive_fdt_density(g, kNat);
        const CorrelationTensor corr = amplification_correction(g, sigma, sav, kNat);

        worst_neg = std::max(worst_neg, negativity(corr.values));
        if (psd_rank(corr.values) != static_cast<Eigen::Index>(part.minus.size()))
            ranks_ok = false;
        if (!(corr.values.norm() > 0.0) && !part.minus.empty()) nonzero = false;
        worst_decomp = std::max(
            worst_decomp, (ee.values - (naive.values + corr.values)).norm() / ee.values.norm());
    }
    report(6, worst_decomp <= 1e-9 && worst_neg <= 1e-10 && ranks_ok && nonzero,
           "amplification correction (subthreshold gain slab)",
           "decomposition " + fmt(worst_decomp) + " <= 1e-9, negativity " +
               fmt(worst_neg) + ", ranks " + (ranks_ok ? "match" : "mismatch"));
}

// --- criterion 7: commutator integral ---------------------------------------

void criterion_commutator_integral() {
    auto grid = SpatialGrid::uniform(0.0, 1.0, 128);
    const double cap = 40.0 * 6.0;
    const FrequencyGrid wg = FrequencyGrid::simpson(cap, 385);

    double worst = 0.0;
    MediumModel vacuum;
    for (const MediumModel& m : {vacuum, testing::absorbing_slab(), testing::gain_slab()}) {
        const CommutatorIntegralResult res = commutator_integral(m, grid, wg, kNat);
        worst = std::max(worst, res.residual);
    }

    // vacuum cross-check against the closed-form cosine integral
    double cosine_defect = 0.0;
    {
        Eigen::MatrixXd numeric = Eigen::MatrixXd::Zero(grid->size(), grid->size());
        for (Eigen::Index j = 0; j < wg.size(); ++j) {
            const double w = wg.nodes()[j];
            const GreenFunction g =
                solve_green(assemble_operator(vacuum, grid, cplx(w, 0.0), kNat));
            numeric += wg.weights()[j] * 2.0 * w * g.values.imag();
        }
        for (Eigen::Index i = 0; i < grid->size(); ++i)
            for (Eigen::Index j = 0; j < grid->size(); ++j) {
                const double dz = std::abs(grid->node(i) - grid->node(j));
                const double exact = dz == 0.0
                                         ? kNat.c * cap
                                         : kNat.c * kNat.c * std::sin(cap * dz / kNat.c) / dz;
                cosine_defect =
                    std::max(cosine_defect, std::abs(numeric(i, j) - exact) / (kNat.c * cap));
            }
    }

    report(7, worst <= 0.02 && cosine_defect <= 1e-4,
           "equal-time commutator integral (vacuum, absorbing, gain)",
           "worst residual " + fmt(worst) + " <= 0.02, cosine crosscheck " +
               fmt(cosine_defect));
}

// --- criterion 8: analyticity gate at the lasing threshold ------------------

void criterion_analyticity_gate() {
    const MediumModel base = testing::gain_cavity(-0.05);
    const LasingThreshold th = lasing_threshold(base, 0.0, 1.0, 4.5, 7.5, kNat);
    if (!th.found) {
        report(8, false, "analyticity gate", "threshold oracle did not converge");
        return;
    }

    auto grid = SpatialGrid::uniform(0.0, 1.0, 128);
    const MediumModel over = scale_gain(base, 1.2 * th.scale);
    const MediumModel under = scale_gain(base, 0.5 * th.scale);
    const auto oracle = track_response_pole(over, 0.0, 1.0, 4.5, 7.5, kNat);
    if (!oracle || oracle->imag() <= 0.0) {
        report(8, false, "analyticity gate", "oracle pole not in the upper half-plane");
        return;
    }

    PoleScanConfig cfg;
    cfg.re_min = 0.8 * th.omega;
    cfg.re_max = 1.2 * th.omega;
    cfg.im_min = 0.0;
    cfg.im_max = 0.08 * th.omega;
    cfg.n_re = 41;
    cfg.n_im = 13;

    const PoleScanResult over_scan = pole_scan(over, grid, cfg, kNat);
    const PoleScanResult under_scan = pole_scan(under, grid, cfg, kNat);

    double frequency_error = 1e300;
    for (const PoleFlag& f : over_scan.flags)
        frequency_error =
            std::min(frequency_error, std::abs(f.omega.real() - oracle->real()) / oracle->real());

    const bool pass = !over_scan.clean() && frequency_error <= 0.01 && under_scan.clean();
    report(8, pass, "analyticity gate at 1.2x / 0.5x threshold",
           std::to_string(over_scan.flags.size()) + " flag(s), frequency error " +
               fmt(frequency_error) + " <= 0.01, subthreshold clean " +
               (under_scan.clean() ? "yes" : "no"));
}

// --- criterion 9: free-space Green oracle -----------------------------------

void criterion_free_space_oracle() {
    MediumModel vacuum;
    auto grid = SpatialGrid::uniform(0.0, 1.0, 128);
    double worst = 0.0;
    for (double w : {3.1, 6.0, 11.7}) {
        const GreenFunction g =
            solve_green(assemble_operator(vacuum, grid, cplx(w, 0.0), kNat));
        double rel = 0.0;
        for (Eigen::Index i = 1; i + 1 < grid->size(); ++i)
            for (Eigen::Index j = 1; j + 1 < grid->size(); ++j) {
                const cplx exact = cplx(0.0, 1.0) * kNat.c / (2.0 * w) *
                                   std::exp(cplx(0.0, 1.0) * w *
                                            std::abs(grid->node(i) - grid->node(j)) / kNat.c);
                rel = std::max(rel, std::abs(g.values(i, j) - exact) / std::abs(exact));
            }
        worst = std::max(worst, rel);
    }
    report(9, worst <= 1e-6, "free-space Green oracle (three frequencies)",
           "worst interior relative error " + fmt(worst) + " <= 1e-6");
}

// --- criterion 10: regularizer insensitivity --------------------------------

void criterion_regularizer_insensitivity() {
    auto grid = SpatialGrid::uniform(0.0, 1.0, 96);
    double worst = 0.0;
    for (double w : {5.2, 6.0, 6.8}) {
        const Kernel q = build_kernel(testing::gain_slab(), grid, w, kNat);
        const MaxwellOperator op = assemble_operator(q, kNat);
        const GreenFunction g = solve_green(op);
        const SpectralDecomposition spec = spectral_decompose(op.sigma_total());

        Eigen::MatrixXcd ee_ref, corr_ref, cov_ref;
        for (double eps_reg : {1e-14, 1e-13, 1e-12, 1e-11, 1e-10}) {
            const ChannelPartition part = partition_channels(spec, eps_reg);
            const NoiseCovariances cov = noise_covariances(part, kNat);
            const Kernel sav = sigma_av(spec);
            const CorrelationTensor ee = ee_spectral_density(g, sav, kNat);
            const CorrelationTensor corr =
                amplification_correction(g, op.sigma_total(), sav, kNat);
            const Eigen::MatrixXcd cov_sum = cov.anti_normal.values() + cov.normal.values();
            if (ee_ref.size() == 0) {
                ee_ref = ee.values.values();
                corr_ref = corr.values.values();
                cov_ref = cov_sum;
                continue;
            }
            worst = std::max(worst, kernel_norm(ee.values.values() - ee_ref, *grid) /
                                        kernel_norm(ee_ref, *grid));
            worst = std::max(worst, kernel_norm(corr.values.values() - corr_ref, *grid) /
                                        kernel_norm(corr_ref, *grid));
            worst = std::max(worst,
                             kernel_norm(cov_sum - cov_ref, *grid) / kernel_norm(cov_ref, *grid));
        }
    }
    report(10, worst <= 1e-6, "regularizer insensitivity over two decades",
           "worst relative change " + fmt(worst) + " <= 1e-6");
}

// --- criterion 11: response-function validators ------------------------------

void criterion_response_validators() {
    const MediumModel cavity = testing::gain_cavity(-0.05);
    double worst_schwarz = 0.0, worst_kk = 0.0;
    for (const MediumModel& m :
         {MediumModel{}, testing::absorbing_slab(), testing::gain_slab(), cavity}) {
        for (double w : {4.5, 6.0, 7.5})
            worst_schwarz = std::max(worst_schwarz, check_schwarz(m, w));
        worst_kk = std::max(worst_kk, check_kramers_kronig(m, kramers_kronig_grid(m), 1e-3));
    }
    report(11, worst_schwarz <= 1e-14 && worst_kk <= 1e-3,
           "response validators (Schwarz, Kramers-Kronig) for all bundled media",
           "schwarz " + fmt(worst_schwarz) + " <= 1e-14, kk " +
               fmt(worst_kk) + " <= 1e-3");
}

} // namespace

int main() {
    criterion_integral_relation();
    criterion_spectral_machinery();
    criterion_factor_gate();
    criterion_covariances();
    criterion_fdt_reduction();
    criterion_amplification_correction();
    criterion_commutator_integral();
    criterion_analyticity_gate();
    criterion_free_space_oracle();
    criterion_regularizer_insensitivity();
    criterion_response_validators();

    if (failures == 0) {
        std::printf("acceptance: all criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d criterion(s) failed\n", failures);
    return 1;
}
