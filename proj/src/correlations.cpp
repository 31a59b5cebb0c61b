#include "ampqed/correlations.hpp"

#include <cmath>
#include <thread>
#include <vector>

#include "ampqed/errors.hpp"

namespace ampqed {

using cplx = std::complex<double>;

namespace {

constexpr double pi = 3.14159265358979323846;

double real_omega(const GreenFunction& g) {
    if (g.omega.imag() != 0.0)
        throw ConfigError("correlation densities are defined at real frequency");
    return g.omega.real();
}

} // namespace

CorrelationTensor ee_spectral_density(const GreenFunction& g, const Kernel& sav,
                                      const Constants& k) {
    const double w = real_omega(g);
    const Kernel gk = g.kernel();
    Kernel values = gk.compose(sav).compose(gk.adjoint())
                        .scaled(k.hbar * k.mu0 * k.mu0 / pi * w * w * w);
    return CorrelationTensor{CorrelationKind::Electric, false, w, std::move(values)};
}

CorrelationTensor bb_spectral_density(const GreenFunction& g, const Kernel& sav,
                                      const Constants& k) {
    const double w = real_omega(g);
    const Kernel gk = g.kernel();
    const Kernel inner = gk.compose(sav).compose(gk.adjoint());
    const Eigen::MatrixXd d = derivative_matrix(*g.grid);
    Eigen::MatrixXcd v = (k.hbar * k.mu0 * k.mu0 / pi * w) *
                         (d.cast<cplx>() * inner.values() * d.transpose().cast<cplx>());
    return CorrelationTensor{CorrelationKind::Magnetic, false, w,
                             Kernel(g.grid, w, std::move(v))};
}

CorrelationTensor amplification_correction(const GreenFunction& g, const Kernel& sigma,
                                           const Kernel& sav, const Constants& k) {
    const double w = real_omega(g);
    const Kernel gk = g.kernel();
    Kernel values = gk.compose(sav - sigma).compose(gk.adjoint())
                        .scaled(k.hbar * k.mu0 * k.mu0 / pi * w * w * w);
    return CorrelationTensor{CorrelationKind::Electric, false, w, std::move(values)};
}

CorrelationTensor naive_fdt_density(const GreenFunction& g, const Constants& k) {
    const double w = real_omega(g);
    Eigen::MatrixXcd v = (k.hbar * k.mu0 / pi * w * w) * g.values.imag().cast<cplx>();
    return CorrelationTensor{CorrelationKind::Electric, false, w, Kernel(g.grid, w, std::move(v))};
}

Eigen::MatrixXd derivative_matrix(const SpatialGrid& grid) {
    const Eigen::Index n = grid.size();
    const Eigen::VectorXd& z = grid.nodes();
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (i == 0) {
            const double a = z[1] - z[0], b = z[2] - z[1];
            d(0, 0) = -(2.0 * a + b) / (a * (a + b));
            d(0, 1) = (a + b) / (a * b);
            d(0, 2) = -a / (b * (a + b));
        } else if (i == n - 1) {
            const double a = z[n - 2] - z[n - 3], b = z[n - 1] - z[n - 2];
            d(i, n - 3) = b / (a * (a + b));
            d(i, n - 2) = -(a + b) / (a * b);
            d(i, n - 1) = (a + 2.0 * b) / (b * (a + b));
        } else {
            const double a = z[i] - z[i - 1], b = z[i + 1] - z[i];
            d(i, i - 1) = -b / (a * (a + b));
            d(i, i) = (b - a) / (a * b);
            d(i, i + 1) = a / (b * (a + b));
        }
    }
    return d;
}

CommutatorIntegralResult commutator_integral(const MediumModel& model,
                                             std::shared_ptr<const SpatialGrid> grid,
                                             const FrequencyGrid& omega_grid,
                                             const Constants& k, const PoleScanResult* scan,
                                             int threads) {
    // Analyticity gate: the tail model and the medium-independence of the
    // result both assume a pole-free upper half-plane.
    PoleScanResult local_scan;
    if (!scan && !model.layers.empty()) {
        local_scan = pole_scan(model, grid, default_scan_region(model), k);
        scan = &local_scan;
    }
    if (scan && !scan->clean())
        throw AnalyticityViolation("pole scan flagged upper-half-plane singularities; the "
                                   "commutator integral is not defined for this configuration");

    const double h = grid->uniform_spacing();
    const double cap = omega_grid.omega_max();
    if (!(cap * h / k.c < pi))
        throw GridTooCoarse("frequency cutoff beyond the spatial grid's resolvable band");

    const Eigen::Index n = grid->size();
    const Eigen::Index nw = omega_grid.size();

    // per-frequency integrand samples 2 w Im G(w)
    std::vector<Eigen::MatrixXd> terms(static_cast<std::size_t>(nw));
    auto worker = [&](Eigen::Index begin, Eigen::Index stride) {
        for (Eigen::Index j = begin; j < nw; j += stride) {
            const double w = omega_grid.nodes()[j];
            const GreenFunction g = solve_green(assemble_operator(model, grid, cplx(w, 0.0), k));
            terms[static_cast<std::size_t>(j)] = 2.0 * w * g.values.imag();
        }
    };
    if (threads <= 1) {
        worker(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t, threads);
        for (std::thread& t : pool) t.join();
    }

    // compensated accumulation in ascending frequency order
    Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(n, n);
    Eigen::MatrixXd carry = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index j = 0; j < nw; ++j) {
        const Eigen::MatrixXd term =
            omega_grid.weights()[j] * terms[static_cast<std::size_t>(j)] - carry;
        const Eigen::MatrixXd next = sum + term;
        carry = (next - sum) - term;
        sum = next;
    }

    // analytic free-space tail beyond the cutoff: the delta concentration
    // lives here, the finite window carries the medium corrections
    const double c2 = k.c * k.c;
    CommutatorIntegralResult out;
    out.values = sum;
    out.target = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        out.target(i, i) = pi * c2 / grid->weight(i);
        for (Eigen::Index j = 0; j < n; ++j) {
            const double dz = std::abs(grid->node(i) - grid->node(j));
            const double partial = (i == j) ? k.c * cap : c2 * std::sin(cap * dz / k.c) / dz;
            const double full = (i == j) ? out.target(i, i) : 0.0;
            out.values(i, j) += full - partial;
        }
    }
    Eigen::MatrixXcd diff = (out.values - out.target).cast<cplx>();
    out.residual = kernel_norm(diff, *grid) / kernel_norm(out.target.cast<cplx>(), *grid);
    return out;
}

} // namespace ampqed
