#include "ampqed/media.hpp"

#include <algorithm>
#include <cmath>

#include "ampqed/errors.hpp"

namespace ampqed {

using cplx = std::complex<double>;

std::complex<double> Oscillator::susceptibility(cplx omega) const {
    return strength * plasma * plasma /
           (omega0 * omega0 - omega * omega - cplx(0.0, 1.0) * gamma * omega);
}

void Oscillator::validate() const {
    if (!(gamma > 0.0)) throw ConfigError("oscillator damping must be positive");
    if (!(omega0 >= 0.0)) throw ConfigError("oscillator resonance must be nonnegative");
    if (!(plasma > 0.0)) throw ConfigError("oscillator plasma frequency must be positive");
}

bool Layer::has_gain() const {
    return std::any_of(oscillators.begin(), oscillators.end(),
                       [](const Oscillator& o) { return o.strength < 0.0; });
}

void Layer::validate() const {
    if (!(z_min < z_max)) throw ConfigError("layer '" + name + "' needs z_min < z_max");
    if (!(nonlocal_length >= 0.0))
        throw ConfigError("layer '" + name + "' has negative nonlocal length");
    for (const Oscillator& o : oscillators) o.validate();
}

void MediumModel::validate() const {
    for (const Layer& l : layers) l.validate();
    for (std::size_t i = 0; i + 1 < layers.size(); ++i)
        if (layers[i].z_max > layers[i + 1].z_min)
            throw ConfigError("layers must be ordered and non-overlapping");
}

bool MediumModel::has_gain() const {
    return std::any_of(layers.begin(), layers.end(),
                       [](const Layer& l) { return l.has_gain(); });
}

const Layer* MediumModel::layer_at(double z) const {
    for (const Layer& l : layers)
        if (l.contains(z)) return &l;
    return nullptr;
}

double MediumModel::min_resonance() const {
    double m = 0.0;
    bool found = false;
    for (const Layer& l : layers)
        for (const Oscillator& o : l.oscillators)
            if (!found || o.omega0 < m) {
                m = o.omega0;
                found = true;
            }
    return found ? m : 0.0;
}

double MediumModel::max_resonance() const {
    double m = 0.0;
    for (const Layer& l : layers)
        for (const Oscillator& o : l.oscillators) m = std::max(m, o.omega0);
    return m;
}

std::complex<double> permittivity(const MediumModel& model, double z, cplx omega) {
    cplx eps(1.0, 0.0);
    if (const Layer* l = model.layer_at(z))
        for (const Oscillator& o : l->oscillators) eps += o.susceptibility(omega);
    return eps;
}

namespace {

void require_coverage(const MediumModel& model, const SpatialGrid& grid) {
    if (model.layers.empty()) return;
    const double tol = 1e-12 * std::max(1.0, grid.extent());
    const double lo = grid.nodes()[0], hi = grid.nodes()[grid.size() - 1];
    for (const Layer& l : model.layers) {
        if (l.z_min < lo - tol || l.z_max > hi + tol)
            throw GridMismatch("grid does not cover layer '" + l.name + "'");
        bool has_node = false;
        for (Eigen::Index i = 0; i < grid.size() && !has_node; ++i)
            has_node = l.contains(grid.node(i));
        if (!has_node)
            throw GridMismatch("layer '" + l.name + "' contains no grid node");
    }
}

} // namespace

Eigen::MatrixXcd conductivity_densities(const MediumModel& model, const SpatialGrid& grid,
                                        cplx omega, const Constants& k) {
    require_coverage(model, grid);
    const Eigen::Index n = grid.size();
    Eigen::MatrixXcd q = Eigen::MatrixXcd::Zero(n, n);

    for (const Layer& layer : model.layers) {
        std::vector<Eigen::Index> idx;
        for (Eigen::Index i = 0; i < n; ++i)
            if (layer.contains(grid.node(i))) idx.push_back(i);

        // local conductivity density at the layer nodes
        cplx chi(0.0, 0.0);
        for (const Oscillator& o : layer.oscillators) chi += o.susceptibility(omega);
        const cplx q_local = -cplx(0.0, 1.0) * k.eps0 * omega * chi;

        if (layer.nonlocal_length <= 0.0) {
            for (Eigen::Index i : idx) q(i, i) += q_local / grid.weight(i);
            continue;
        }

        // Nonlocal layer: smear the local kernel with a symmetric normalized
        // Gaussian confined to the layer, Q -> S o Q_local o S. The local
        // limit of S is the identity kernel on the layer nodes.
        const double ell = layer.nonlocal_length;
        const double cut = 6.0 * ell;
        const Eigen::Index m = static_cast<Eigen::Index>(idx.size());
        Eigen::MatrixXd g = Eigen::MatrixXd::Zero(m, m);
        for (Eigen::Index a = 0; a < m; ++a)
            for (Eigen::Index b = 0; b < m; ++b) {
                const double d = grid.node(idx[a]) - grid.node(idx[b]);
                if (std::abs(d) <= cut) g(a, b) = std::exp(-0.5 * d * d / (ell * ell));
            }
        Eigen::VectorXd norm(m);
        for (Eigen::Index a = 0; a < m; ++a) {
            double s = 0.0;
            for (Eigen::Index b = 0; b < m; ++b) s += grid.weight(idx[b]) * g(a, b);
            norm[a] = s;
        }
        for (Eigen::Index a = 0; a < m; ++a)
            for (Eigen::Index b = 0; b < m; ++b)
                g(a, b) /= std::sqrt(norm[a] * norm[b]);

        // (S o Q_local o S)_ab = sum_c S_ac S_cb q_c w_c
        for (Eigen::Index a = 0; a < m; ++a)
            for (Eigen::Index b = 0; b < m; ++b) {
                double acc = 0.0;
                for (Eigen::Index c = 0; c < m; ++c)
                    acc += g(a, c) * g(c, b) * grid.weight(idx[c]);
                q(idx[a], idx[b]) += q_local * acc;
            }
    }
    return q;
}

Kernel build_kernel(const MediumModel& model, std::shared_ptr<const SpatialGrid> grid,
                    double omega, const Constants& k) {
    if (!(omega > 0.0)) throw ConfigError("conductivity kernel requires omega > 0");
    Eigen::MatrixXcd q = conductivity_densities(model, *grid, cplx(omega, 0.0), k);
    return Kernel(std::move(grid), omega, std::move(q));
}

double check_schwarz(const MediumModel& model, double omega) {
    if (!(omega > 0.0)) throw ConfigError("check_schwarz requires omega > 0");
    double residual = 0.0;
    auto probe = [&](double z) {
        const cplx e_plus = permittivity(model, z, cplx(omega, 0.0));
        const cplx e_minus = permittivity(model, z, cplx(-omega, 0.0));
        const double defect = std::abs(e_plus - std::conj(e_minus));
        residual = std::max(residual, defect / std::max(1.0, std::abs(e_plus)));
    };
    for (const Layer& l : model.layers) {
        const int samples = 17;
        for (int i = 0; i < samples; ++i)
            probe(l.z_min + (l.z_max - l.z_min) * i / (samples - 1));
    }
    probe(model.layers.empty() ? 0.0 : model.layers.front().z_min - 1.0); // vacuum point
    return residual;
}

namespace {

// layer susceptibility and its high-frequency Im tail coefficient C3/w^3
cplx layer_chi(const Layer& l, cplx omega) {
    cplx chi(0.0, 0.0);
    for (const Oscillator& o : l.oscillators) chi += o.susceptibility(omega);
    return chi;
}

double layer_tail_coefficient(const Layer& l) {
    double c3 = 0.0;
    for (const Oscillator& o : l.oscillators) c3 += o.strength * o.plasma * o.plasma * o.gamma;
    return c3;
}

// Hilbert transform of Im chi by subtracted principal-value quadrature with
// analytic 1/w^3 tail:  H(w) = (2/pi) P Int_0^inf w' Im chi(w') / (w'^2 - w^2) dw'.
double hilbert_of_im_chi(const Layer& l, double omega, const FrequencyGrid& grid) {
    const double cap = grid.omega_max();
    auto g = [&](double w) { return w * layer_chi(l, cplx(w, 0.0)).imag(); };
    const double g0 = g(omega);

    double sum = 0.0;
    for (Eigen::Index j = 0; j < grid.size(); ++j) {
        const double w = grid.nodes()[j];
        const double denom = w * w - omega * omega;
        double phi;
        if (std::abs(denom) < 1e-14 * omega * omega) {
            const double dw = 1e-6 * omega;
            phi = (g(omega + dw) - g(omega - dw)) / (2.0 * dw) / (2.0 * omega);
        } else {
            phi = (g(w) - g0) / denom;
        }
        sum += grid.weights()[j] * phi;
    }
    // principal value of the subtracted pole over [0, cap]
    sum += g0 / (2.0 * omega) * std::log((cap - omega) / (cap + omega));

    // tail beyond the cutoff from Im chi ~ C3 / w^3
    const double c3 = layer_tail_coefficient(l);
    const double tail = c3 / (omega * omega) *
                        (std::log((cap + omega) / (cap - omega)) / (2.0 * omega) - 1.0 / cap);

    constexpr double pi = 3.14159265358979323846;
    return (2.0 / pi) * (sum + tail);
}

} // namespace

FrequencyGrid kramers_kronig_grid(const MediumModel& model) {
    double top = model.max_resonance();
    double gamma_min = 0.0;
    for (const Layer& l : model.layers)
        for (const Oscillator& o : l.oscillators) {
            top = std::max(top, o.gamma);
            gamma_min = gamma_min > 0.0 ? std::min(gamma_min, o.gamma) : o.gamma;
        }
    if (top <= 0.0) top = 1.0;
    if (gamma_min <= 0.0) gamma_min = 0.1 * top;
    const double lo = 1e-4 * top;
    const double mid = 5.0 * top;
    const double hi = 60.0 * top;
    const int n_linear =
        std::clamp(static_cast<int>(std::ceil((mid - lo) / (gamma_min / 8.0))), 2048, 65536);
    return FrequencyGrid::dense_then_log(lo, mid, hi, n_linear, 256);
}

double check_kramers_kronig(const MediumModel& model, const FrequencyGrid& grid, double tol) {
    double worst = 0.0;
    const FrequencyGrid coarse = grid.coarsened();
    double worst_estimate = 0.0;

    for (const Layer& l : model.layers) {
        if (l.oscillators.empty()) continue;
        double base = 0.0;
        for (const Oscillator& o : l.oscillators) base = std::max(base, std::max(o.omega0, o.gamma));
        const double t_lo = 0.05 * base;
        const double t_hi = std::min(2.5 * base, 0.5 * grid.omega_max());
        const int n_test = 48;

        double chi_scale = 0.0;
        std::vector<double> tests(n_test);
        for (int t = 0; t < n_test; ++t) {
            tests[t] = t_lo + (t_hi - t_lo) * t / (n_test - 1);
            chi_scale = std::max(chi_scale, std::abs(layer_chi(l, cplx(tests[t], 0.0))));
        }
        if (chi_scale == 0.0) continue;

        for (double w : tests) {
            const double re_chi = layer_chi(l, cplx(w, 0.0)).real();
            const double h_full = hilbert_of_im_chi(l, w, grid);
            const double h_half = hilbert_of_im_chi(l, w, coarse);
            worst = std::max(worst, std::abs(re_chi - h_full) / chi_scale);
            worst_estimate = std::max(worst_estimate, std::abs(h_full - h_half) / chi_scale);
        }
    }
    if (worst_estimate > tol)
        throw GridTooCoarse("estimated Kramers-Kronig quadrature error exceeds tolerance");
    return worst;
}

} // namespace ampqed
