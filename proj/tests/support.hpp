#ifndef AMPQED_TESTS_SUPPORT_HPP
#define AMPQED_TESTS_SUPPORT_HPP

#include <complex>
#include <memory>
#include <random>

#include "ampqed/constants.hpp"
#include "ampqed/kernel.hpp"
#include "ampqed/media.hpp"

namespace ampqed::testing {

inline Kernel random_hermitian(std::mt19937_64& rng,
                               const std::shared_ptr<const SpatialGrid>& grid,
                               double omega = 1.0) {
    std::normal_distribution<double> dist(0.0, 1.0);
    const Eigen::Index n = grid->size();
    Eigen::MatrixXcd b(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            b(i, j) = std::complex<double>(dist(rng), dist(rng));
    return Kernel(grid, omega, 0.5 * (b + b.adjoint()).eval());
}

inline Kernel random_positive(std::mt19937_64& rng,
                              const std::shared_ptr<const SpatialGrid>& grid,
                              double omega = 1.0) {
    std::normal_distribution<double> dist(0.0, 1.0);
    const Eigen::Index n = grid->size();
    Eigen::MatrixXcd x(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            x(i, j) = std::complex<double>(dist(rng), dist(rng));
    // positive definite in the quadrature inner product:
    // sigma = W^{-1/2} (X X^+ + eps I) W^{-1/2}
    Eigen::MatrixXcd s = x * x.adjoint();
    s.diagonal().array() += 1e-3;
    const Eigen::VectorXd inv_sqrt_w = grid->sqrt_weights().cwiseInverse();
    Eigen::MatrixXcd v = inv_sqrt_w.cast<std::complex<double>>().asDiagonal() * s *
                         inv_sqrt_w.cast<std::complex<double>>().asDiagonal();
    return Kernel(grid, omega, std::move(v));
}

inline Kernel random_reciprocal(std::mt19937_64& rng,
                                const std::shared_ptr<const SpatialGrid>& grid,
                                double omega = 1.0) {
    std::normal_distribution<double> dist(0.0, 1.0);
    const Eigen::Index n = grid->size();
    Eigen::MatrixXcd b(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            b(i, j) = std::complex<double>(dist(rng), dist(rng));
    return Kernel(grid, omega, 0.5 * (b + b.transpose()).eval());
}

// Bundled-style media used across the tests (natural units).

inline MediumModel absorbing_slab(double f = 1.0) {
    MediumModel m;
    Layer l;
    l.name = "slab";
    l.z_min = 0.35;
    l.z_max = 0.65;
    l.oscillators.push_back({f, 6.0, 0.3, 2.0});
    m.layers.push_back(l);
    return m;
}

inline MediumModel gain_slab(double f = -0.3) { return absorbing_slab(f); }

/// Quarter-wave-ish dielectric mirrors around a gain slab. The gain strength
/// is the |f| of the inverted oscillator before any threshold scaling.
inline MediumModel gain_cavity(double f_gain = -0.05) {
    MediumModel m;
    Layer left;
    left.name = "mirror-left";
    left.z_min = 0.10;
    left.z_max = 0.15;
    left.oscillators.push_back({1.0, 30.0, 0.05, 150.0});
    Layer gain;
    gain.name = "gain";
    gain.z_min = 0.40;
    gain.z_max = 0.60;
    gain.oscillators.push_back({f_gain, 6.0, 0.3, 2.0});
    Layer right = left;
    right.name = "mirror-right";
    right.z_min = 0.85;
    right.z_max = 0.90;
    m.layers = {left, gain, right};
    return m;
}

} // namespace ampqed::testing

#endif
