#include "ampqed/green.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/LU>

#include "ampqed/errors.hpp"

namespace ampqed {

using cplx = std::complex<double>;

namespace {

constexpr double pi = 3.14159265358979323846;

// x / sin(x) and x * cot(x), series-stabilized near zero.
cplx x_csc(cplx x) {
    if (std::abs(x) < 1e-4) {
        const cplx x2 = x * x;
        return 1.0 + x2 / 6.0 + 7.0 * x2 * x2 / 360.0;
    }
    return x / std::sin(x);
}

cplx x_cot(cplx x) {
    if (std::abs(x) < 1e-4) {
        const cplx x2 = x * x;
        return 1.0 - x2 / 3.0 - x2 * x2 / 45.0;
    }
    return x * std::cos(x) / std::sin(x);
}

// Node matrix of the vacuum Helmholtz operator with outgoing closures: a
// three-point stencil whose coefficients are tuned so that the discrete
// resolvent equals the sampled (ic/2w) e^{i w |z - z'| / c} exactly.
Eigen::MatrixXcd vacuum_node_matrix(const SpatialGrid& grid, cplx omega, const Constants& k) {
    const double h = grid.uniform_spacing();
    const cplx x = omega * h / k.c;
    if (std::abs(x.real()) >= pi * (1.0 - 1e-9))
        throw GridTooCoarse("frequency beyond the spatial grid's resolvable band");
    if (std::abs(x) == 0.0) throw ConfigError("Maxwell operator undefined at omega = 0");

    const Eigen::Index n = grid.size();
    const cplx diag = 2.0 * x_cot(x) / h;
    const cplx off = -x_csc(x) / h;
    const cplx corner = x_cot(x) / h - cplx(0.0, 1.0) * omega / k.c;

    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        m(i, i) = (i == 0 || i == n - 1) ? corner : diag;
        if (i + 1 < n) {
            m(i, i + 1) = off;
            m(i + 1, i) = off;
        }
    }
    return m;
}

Eigen::MatrixXcd weighted_densities(const SpatialGrid& grid, const Eigen::MatrixXcd& q) {
    return grid.weights().cast<cplx>().asDiagonal() * q * grid.weights().cast<cplx>().asDiagonal();
}

} // namespace

MaxwellOperator::MaxwellOperator(std::shared_ptr<const SpatialGrid> grid, cplx omega,
                                 Constants constants, Eigen::MatrixXcd node_matrix,
                                 Eigen::MatrixXcd q_total)
    : grid_(std::move(grid)), omega_(omega), constants_(constants),
      node_matrix_(std::move(node_matrix)), q_total_(std::move(q_total)) {}

Kernel MaxwellOperator::q_total() const {
    if (omega_.imag() != 0.0)
        throw ConfigError("total conductivity kernel is defined at real frequency only");
    return Kernel(grid_, omega_.real(), q_total_);
}

Kernel MaxwellOperator::sigma_total() const {
    Kernel q = q_total();
    return Kernel(grid_, omega_.real(), 0.5 * (q.values() + q.values().adjoint()));
}

Eigen::MatrixXcd boundary_conductance(const SpatialGrid& grid, const Constants& k) {
    const Eigen::Index n = grid.size();
    Eigen::MatrixXcd q = Eigen::MatrixXcd::Zero(n, n);
    q(0, 0) = 1.0 / (k.mu0 * k.c * grid.weight(0) * grid.weight(0));
    q(n - 1, n - 1) = 1.0 / (k.mu0 * k.c * grid.weight(n - 1) * grid.weight(n - 1));
    return q;
}

namespace {

MaxwellOperator assemble(std::shared_ptr<const SpatialGrid> grid, cplx omega,
                         const Eigen::MatrixXcd& q_medium, const Constants& k) {
    if (omega.imag() < 0.0)
        throw ConfigError("Maxwell operator assembly requires Im omega >= 0");
    Eigen::MatrixXcd node = vacuum_node_matrix(*grid, omega, k);
    node -= cplx(0.0, 1.0) * k.mu0 * omega * weighted_densities(*grid, q_medium);
    Eigen::MatrixXcd q_total = q_medium + boundary_conductance(*grid, k);
    return MaxwellOperator(std::move(grid), omega, k, std::move(node), std::move(q_total));
}

} // namespace

MaxwellOperator assemble_operator(const Kernel& q_medium, const Constants& k) {
    return assemble(q_medium.grid_ptr(), cplx(q_medium.omega(), 0.0), q_medium.values(), k);
}

MaxwellOperator assemble_operator(const MediumModel& model,
                                  std::shared_ptr<const SpatialGrid> grid, cplx omega,
                                  const Constants& k) {
    const Eigen::MatrixXcd q = conductivity_densities(model, *grid, omega, k);
    return assemble(std::move(grid), omega, q, k);
}

Kernel GreenFunction::kernel() const {
    if (omega.imag() != 0.0)
        throw ConfigError("Green kernel view requires real frequency");
    return Kernel(grid, omega.real(), values);
}

GreenFunction solve_green(const MaxwellOperator& op, double rcond_min) {
    const Eigen::MatrixXcd& node = op.node_matrix();
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(node);
    // rcond alone misses exactly singular factorizations (zero pivot)
    const Eigen::VectorXcd pivots = lu.matrixLU().diagonal();
    const double pivot_min = pivots.cwiseAbs().minCoeff();
    const double pivot_max = pivots.cwiseAbs().maxCoeff();
    const double rcond = lu.rcond();
    if (!(rcond > rcond_min) || !(pivot_min > rcond_min * pivot_max)) {
        throw SingularOperator("Maxwell operator numerically singular (condition estimate " +
                               std::to_string(rcond > 0.0 ? 1.0 / rcond : 0.0) +
                               "); with Im omega >= 0 this marks an analyticity violation");
    }
    const Eigen::Index n = node.rows();
    Eigen::MatrixXcd g = lu.inverse();
    // one Newton refinement pass keeps identity residuals at rounding level
    g += lu.solve(Eigen::MatrixXcd::Identity(n, n) - node * g);

    GreenFunction out;
    out.grid = op.grid_ptr();
    out.omega = op.omega();
    out.values = std::move(g);
    out.diagnostics.condition_estimate = 1.0 / rcond;
    out.diagnostics.reciprocity_defect =
        kernel_norm(out.values - out.values.transpose(), op.grid()) /
        std::max(kernel_norm(out.values, op.grid()), 1e-300);
    return out;
}

double verify_integral_relation(const GreenFunction& g, const Kernel& sigma,
                                const Constants& k) {
    if (g.omega.imag() != 0.0)
        throw ConfigError("integral relation is evaluated at real frequency");
    const Kernel gk = g.kernel();
    const Kernel lhs = gk.compose(sigma).compose(gk.adjoint()).scaled(k.mu0 * g.omega.real());
    const Eigen::MatrixXcd im_g = g.values.imag().cast<cplx>();
    const double denom = kernel_norm(im_g, *g.grid);
    const double num = kernel_norm(lhs.values() - im_g, *g.grid);
    return denom > 0.0 ? num / denom : num;
}

namespace {

struct SingularProbe {
    double value = 0.0;        ///< smallest singular value
    Eigen::VectorXcd u_left;   ///< matching left singular vector
    Eigen::VectorXcd v_right;  ///< matching right singular vector
};

// Smallest singular value (with vectors) via LU-based power iteration on
// (N N^+)^-1, whose dominant eigenvector is the left singular vector.
SingularProbe smallest_singular_value(const Eigen::MatrixXcd& node) {
    SingularProbe out;
    const Eigen::Index n = node.rows();
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(node);
    const Eigen::VectorXcd pivots = lu.matrixLU().diagonal();
    if (!(pivots.cwiseAbs().minCoeff() > 0.0)) return out; // exactly singular

    Eigen::VectorXcd v(n);
    for (Eigen::Index i = 0; i < n; ++i)
        v[i] = cplx(std::cos(0.7 * static_cast<double>(i)) + 0.3,
                    std::sin(1.3 * static_cast<double>(i)));
    v.normalize();

    double lambda = 0.0;
    for (int it = 0; it < 14; ++it) {
        Eigen::VectorXcd t = lu.solve(v);
        Eigen::VectorXcd w = lu.adjoint().solve(t);
        const double norm = w.norm();
        if (!(norm > 0.0) || !std::isfinite(norm)) return out;
        const double prev = lambda;
        lambda = norm;
        v = w / norm;
        if (it > 2 && std::abs(lambda - prev) < 1e-4 * lambda) break;
    }
    out.value = 1.0 / std::sqrt(lambda);
    out.u_left = v;
    out.v_right = lu.solve(v).normalized();
    return out;
}

struct Mesh {
    Eigen::VectorXd re, im;
};

Mesh make_mesh(double re0, double re1, int nr, double im0, double im1, int ni) {
    Mesh m;
    m.re.resize(nr);
    m.im.resize(ni);
    for (int i = 0; i < nr; ++i)
        m.re[i] = nr > 1 ? re0 + (re1 - re0) * i / (nr - 1) : re0;
    for (int j = 0; j < ni; ++j)
        m.im[j] = ni > 1 ? im0 + (im1 - im0) * j / (ni - 1) : im0;
    return m;
}

} // namespace

double high_frequency_defect(const MediumModel& model,
                             std::shared_ptr<const SpatialGrid> grid, double xi,
                             const Constants& k) {
    const GreenFunction g = solve_green(assemble_operator(model, grid, cplx(0.0, xi), k));
    const double z0 = grid->nodes()[0];
    const double span = grid->extent();
    const double margin = 8.0 * k.c / xi;

    Eigen::VectorXd mask(grid->size());
    for (Eigen::Index i = 0; i < grid->size(); ++i) {
        const double d = std::min(grid->node(i) - z0, z0 + span - grid->node(i));
        mask[i] = d >= margin ? 1.0 : 0.0;
    }
    if (!(mask.sum() > 0.0)) throw GridMismatch("window too short for this probe frequency");

    const cplx w2c2 = -xi * xi / (k.c * k.c);
    double worst = 0.0;
    for (int mode = 0; mode < 3; ++mode) {
        Eigen::VectorXcd v(grid->size());
        for (Eigen::Index i = 0; i < grid->size(); ++i)
            v[i] = std::cos(mode * pi * (grid->node(i) - z0) / span);
        const Eigen::VectorXcd gv = g.values * grid->weights().cast<cplx>().cwiseProduct(v);
        const Eigen::VectorXcd r = w2c2 * gv + v;
        double num = 0.0, den = 0.0;
        for (Eigen::Index i = 0; i < grid->size(); ++i) {
            num += mask[i] * grid->weight(i) * std::norm(r[i]);
            den += mask[i] * grid->weight(i) * std::norm(v[i]);
        }
        worst = std::max(worst, std::sqrt(num / den));
    }
    return worst;
}

PoleScanConfig default_scan_region(const MediumModel& model) {
    // upper-half-plane poles require gain; the guard region brackets the
    // inverted oscillators' resonances, where amplification lives
    PoleScanConfig c;
    c.n_re = 29;
    c.n_im = 11;
    if (!model.has_gain()) return c; // empty region: nothing to scan
    double lo = 0.0, hi = 0.0;
    bool found = false;
    for (const Layer& l : model.layers)
        for (const Oscillator& o : l.oscillators)
            if (o.strength < 0.0) {
                lo = found ? std::min(lo, o.omega0) : o.omega0;
                hi = found ? std::max(hi, o.omega0) : o.omega0;
                found = true;
            }
    c.re_min = 0.5 * lo;
    c.re_max = 1.6 * hi;
    c.im_min = 0.0;
    c.im_max = 0.5 * hi;
    return c;
}

PoleScanResult pole_scan(const MediumModel& model, std::shared_ptr<const SpatialGrid> grid,
                         const PoleScanConfig& config, const Constants& k) {
    PoleScanResult result;
    if (config.im_min < 0.0)
        throw ConfigError("pole scan region must lie in the closed upper half-plane");
    if (!(config.re_max > config.re_min)) return result; // empty region (e.g. vacuum default)

    auto node_at = [&](cplx w) { return assemble_operator(model, grid, w, k).node_matrix(); };
    auto probe_at = [&](cplx w) -> SingularProbe {
        try {
            return smallest_singular_value(node_at(w));
        } catch (const GridTooCoarse&) {
            SingularProbe p;
            p.value = std::numeric_limits<double>::infinity();
            return p;
        }
    };

    const Mesh mesh = make_mesh(config.re_min, config.re_max, config.n_re, config.im_min,
                                config.im_max, config.n_im);
    Eigen::MatrixXd sv(config.n_re, config.n_im);
    std::vector<double> all;
    all.reserve(static_cast<std::size_t>(config.n_re) * config.n_im);
    for (int i = 0; i < config.n_re; ++i)
        for (int j = 0; j < config.n_im; ++j) {
            sv(i, j) = probe_at(cplx(mesh.re[i], mesh.im[j])).value;
            if (std::isfinite(sv(i, j))) all.push_back(sv(i, j));
        }
    if (all.empty()) return result;

    std::nth_element(all.begin(), all.begin() + all.size() / 2, all.end());
    result.median_singular_value = all[all.size() / 2];
    result.threshold = config.threshold_factor * result.median_singular_value;

    const double dre = config.n_re > 1 ? mesh.re[1] - mesh.re[0] : 1e-12;
    const double dim = config.n_im > 1 ? mesh.im[1] - mesh.im[0] : 1e-12;
    const double prefilter = 0.5 * result.median_singular_value;

    for (int i = 0; i < config.n_re; ++i)
        for (int j = 0; j < config.n_im; ++j) {
            if (!(sv(i, j) < prefilter)) continue;
            bool is_min = true;
            for (int di = -1; di <= 1 && is_min; ++di)
                for (int dj = -1; dj <= 1 && is_min; ++dj) {
                    if (di == 0 && dj == 0) continue;
                    const int ii = i + di, jj = j + dj;
                    if (ii < 0 || jj < 0 || ii >= config.n_re || jj >= config.n_im) continue;
                    if (sv(ii, jj) < sv(i, j)) is_min = false;
                }
            if (!is_min) continue;

            // localize by zoom, then polish with implicit-determinant Newton
            // on u^+ N(w) v; candidates converging below the axis are stable
            // resonances, not violations
            double cre = mesh.re[i], cim = mesh.im[j];
            double rre = dre, rim = dim;
            double best = sv(i, j);
            for (int round = 0; round < config.refine_rounds; ++round) {
                double bre = cre, bim = cim;
                for (int a = -2; a <= 2; ++a)
                    for (int b = -2; b <= 2; ++b) {
                        const double wre = cre + a * rre / 2.0;
                        const double wim = std::max(config.im_min, cim + b * rim / 2.0);
                        const double v = probe_at(cplx(wre, wim)).value;
                        if (v < best) {
                            best = v;
                            bre = wre;
                            bim = wim;
                        }
                    }
                cre = bre;
                cim = bim;
                rre /= 2.0;
                rim /= 2.0;
            }

            cplx w(cre, cim);
            bool in_region = true;
            for (int it = 0; it < 12 && in_region; ++it) {
                const SingularProbe p = probe_at(w);
                if (!std::isfinite(p.value) || p.u_left.size() == 0) break;
                best = std::min(best, p.value);
                const double step = 1e-7 * std::max(std::abs(w), 1.0);
                const cplx f = p.u_left.dot(node_at(w) * p.v_right);
                const cplx fp = (p.u_left.dot(node_at(w + step) * p.v_right) -
                                 p.u_left.dot(node_at(w - step) * p.v_right)) /
                                (2.0 * step);
                if (std::abs(fp) == 0.0) break;
                const cplx dw = f / fp;
                w -= dw;
                // descending out of the region means a stable (lower
                // half-plane) resonance, not a violation
                if (w.imag() < config.im_min) in_region = false;
                if (std::abs(dw) < 1e-13 * std::abs(w)) break;
            }
            if (in_region) {
                const SingularProbe final_probe = probe_at(w);
                if (std::isfinite(final_probe.value)) best = std::min(best, final_probe.value);
                if (best < result.threshold) result.flags.push_back({w, best});
            }
        }

    // merge candidates that collapsed onto the same pole
    std::sort(result.flags.begin(), result.flags.end(),
              [](const PoleFlag& a, const PoleFlag& b) { return a.omega.real() < b.omega.real(); });
    std::vector<PoleFlag> merged;
    for (const PoleFlag& f : result.flags) {
        if (!merged.empty() &&
            std::abs(f.omega - merged.back().omega) < 0.75 * std::hypot(dre, dim)) {
            if (f.singular_value < merged.back().singular_value) merged.back() = f;
        } else {
            merged.push_back(f);
        }
    }
    result.flags = std::move(merged);

    // transfer-matrix round-trip diagnostic for cavity-with-gain models
    const Layer* gain_layer = nullptr;
    for (const Layer& l : model.layers)
        if (l.has_gain()) {
            gain_layer = &l;
            break;
        }
    if (gain_layer && model.layers.size() >= 3 && gain_layer != &model.layers.front() &&
        gain_layer != &model.layers.back()) {
        const double z_lo = grid->nodes()[0];
        const double z_hi = grid->nodes()[grid->size() - 1];
        const double plane = gain_layer->z_min;

        // the round trip closest to unity: |1 - RT| dips to zero exactly at
        // the lasing threshold, so the gain there crossing one is the
        // threshold diagnostic
        auto rt_at = [&](double w) {
            return round_trip_gain(model, z_lo, z_hi, plane, cplx(w, 0.0), k);
        };
        const int samples = 1600;
        double best_w = config.re_min;
        double best = std::numeric_limits<double>::infinity();
        for (int s = 0; s <= samples; ++s) {
            const double w = config.re_min + (config.re_max - config.re_min) * s / samples;
            const double d = std::abs(1.0 - rt_at(w));
            if (d < best) {
                best = d;
                best_w = w;
            }
        }
        const double step = (config.re_max - config.re_min) / samples;
        const double center = best_w;
        for (int s = -20; s <= 20; ++s) {
            const double w = center + step * s / 20.0;
            if (w <= config.re_min || w >= config.re_max) continue;
            const double d = std::abs(1.0 - rt_at(w));
            if (d < best) {
                best = d;
                best_w = w;
            }
        }
        RoundTripReport rt;
        rt.applicable = true;
        rt.omega = best_w;
        rt.gain = std::abs(rt_at(best_w));
        rt.above_unity = rt.gain >= 1.0 - 1e-9;
        result.round_trip = rt;
    }
    return result;
}

} // namespace ampqed
