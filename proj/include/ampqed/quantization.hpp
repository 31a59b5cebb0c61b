#ifndef AMPQED_QUANTIZATION_HPP
#define AMPQED_QUANTIZATION_HPP

#include <vector>

#include "ampqed/constants.hpp"
#include "ampqed/spectral.hpp"

namespace ampqed {

/// One spectral channel of the noise current at fixed frequency.
struct Channel {
    Eigen::Index index = 0;  ///< position in the decomposition (descending order)
    double sigma = 0.0;      ///< eigenvalue
    double amplitude = 0.0;  ///< |sigma|^(1/2)
    Eigen::VectorXcd vector; ///< eigenvector F_alpha
};

/// Sign partition of the spectral channels: positive eigenvalues feed
/// bosonic annihilation (plus) channels, negative ones feed creation
/// (minus) channels of the noise current. Channels within the
/// regularization cutoff carry no noise and are dropped symmetrically;
/// their indices are reported.
struct ChannelPartition {
    std::shared_ptr<const SpatialGrid> grid;
    double omega = 0.0; ///< positive by construction; both sectors share it
    std::vector<Channel> plus;
    std::vector<Channel> minus;
    std::vector<Eigen::Index> dropped;

    Eigen::Index total() const {
        return static_cast<Eigen::Index>(plus.size() + minus.size() + dropped.size());
    }
};

ChannelPartition partition_channels(const SpectralDecomposition& spec, double eps_reg = 1e-12);

/// Second moments of the noise current in the vacuum state.
/// anti_normal = (hbar w / pi) sum_(+) sigma_a F F^+   (from <j j^+>)
/// normal      = (hbar w / pi) sum_(-) |sigma_a| F F^+ (from <j^+ j>)
/// Their sum is (hbar w / pi) sigma_av; their difference (hbar w / pi) sigma.
struct NoiseCovariances {
    Kernel anti_normal;
    Kernel normal;
};

NoiseCovariances noise_covariances(const ChannelPartition& part, const Constants& k);

/// Equal-frequency commutator kernel of the noise current,
/// (hbar w / pi) sigma: the anti-normal minus the normal covariance. Sign
/// indefinite exactly where the medium amplifies.
Kernel commutator_kernel(const ChannelPartition& part, const Constants& k);

/// Equal-frequency commutator of the generalized field variables: the
/// parity-type kernel with eigenvalues sgn(sigma_a). For strictly local
/// media it is diagonal with entries sgn(sigma(z_i))/w_i; for positive
/// spectra it is the identity kernel. Throws ZeroEigenvalue on channels
/// within the cutoff.
Kernel equal_frequency_commutator(const SpectralDecomposition& spec, double eps_reg = 1e-12);

/// Sign spectrum of the normal-ordered Hamiltonian at this frequency: each
/// retained channel contributes energy hbar*w*sgn(sigma_a) per quantum. Any
/// negative sign means the energy spectrum is unbounded from below (no
/// ground state) while pumping is described linearly.
struct HamiltonianSpectrum {
    double omega = 0.0;
    Eigen::VectorXi signs; ///< +1 / -1 per retained channel, decomposition order
    bool unbounded_below = false;
};

HamiltonianSpectrum hamiltonian_spectrum(const SpectralDecomposition& spec,
                                         double eps_reg = 1e-12);

} // namespace ampqed

#endif
