#include "ampqed/quantization.hpp"

#include <cmath>

#include "ampqed/errors.hpp"

namespace ampqed {

namespace {

constexpr double pi = 3.14159265358979323846;

Kernel sector_sum(const std::vector<Channel>& sector, const ChannelPartition& part,
                  double prefactor) {
    Kernel out = Kernel::zero(part.grid, part.omega);
    for (const Channel& ch : sector)
        out.values() += (prefactor * std::abs(ch.sigma)) *
                        (ch.vector * ch.vector.adjoint());
    return out;
}

} // namespace

ChannelPartition partition_channels(const SpectralDecomposition& spec, double eps_reg) {
    if (!(spec.omega > 0.0))
        throw ConfigError("channel partition requires a positive frequency label");
    const double scale = spec.count() ? spec.eigenvalues.cwiseAbs().maxCoeff() : 0.0;
    const double cutoff = eps_reg * scale;

    ChannelPartition part;
    part.grid = spec.grid;
    part.omega = spec.omega;
    for (Eigen::Index a = 0; a < spec.count(); ++a) {
        const double s = spec.eigenvalues[a];
        if (std::abs(s) <= cutoff) {
            part.dropped.push_back(a);
            continue;
        }
        Channel ch{a, s, std::sqrt(std::abs(s)), spec.vectors.col(a)};
        (s > 0.0 ? part.plus : part.minus).push_back(std::move(ch));
    }
    return part;
}

NoiseCovariances noise_covariances(const ChannelPartition& part, const Constants& k) {
    const double prefactor = k.hbar * part.omega / pi;
    return NoiseCovariances{sector_sum(part.plus, part, prefactor),
                            sector_sum(part.minus, part, prefactor)};
}

Kernel commutator_kernel(const ChannelPartition& part, const Constants& k) {
    const NoiseCovariances cov = noise_covariances(part, k);
    return cov.anti_normal - cov.normal;
}

Kernel equal_frequency_commutator(const SpectralDecomposition& spec, double eps_reg) {
    return parity_kernel(spec, eps_reg);
}

HamiltonianSpectrum hamiltonian_spectrum(const SpectralDecomposition& spec, double eps_reg) {
    const double scale = spec.count() ? spec.eigenvalues.cwiseAbs().maxCoeff() : 0.0;
    const double cutoff = eps_reg * scale;

    HamiltonianSpectrum out;
    out.omega = spec.omega;
    std::vector<int> signs;
    for (Eigen::Index a = 0; a < spec.count(); ++a) {
        const double s = spec.eigenvalues[a];
        if (std::abs(s) <= cutoff) continue;
        signs.push_back(s > 0.0 ? 1 : -1);
        if (s < 0.0) out.unbounded_below = true;
    }
    out.signs = Eigen::Map<const Eigen::VectorXi>(signs.data(),
                                                  static_cast<Eigen::Index>(signs.size()));
    return out;
}

} // namespace ampqed
