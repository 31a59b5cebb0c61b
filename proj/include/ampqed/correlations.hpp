#ifndef AMPQED_CORRELATIONS_HPP
#define AMPQED_CORRELATIONS_HPP

#include "ampqed/constants.hpp"
#include "ampqed/green.hpp"
#include "ampqed/kernel.hpp"
#include "ampqed/quantization.hpp"

namespace ampqed {

enum class CorrelationKind { Electric, Magnetic };

/// Vacuum field correlation data on node pairs: a spectral density at fixed
/// frequency, or a frequency-integrated tensor. Hermitian as an array;
/// coincidence-limit divergences appear only as the discrete delta 1/w_i.
struct CorrelationTensor {
    CorrelationKind kind = CorrelationKind::Electric;
    bool integrated = false;
    double omega = 0.0; ///< meaningful for spectral densities
    Kernel values;
};

/// Electric-field spectral density of the vacuum state,
///     (hbar mu0^2 / pi) w^3  G o sigma_av o G^+,
/// positive semidefinite at every frequency. `sav` must be the operator
/// absolute value of the sigma the Green function was solved with.
CorrelationTensor ee_spectral_density(const GreenFunction& g, const Kernel& sav,
                                      const Constants& k);

/// Magnetic counterpart: outer derivatives applied to the electric density,
///     (hbar mu0^2 / pi) w  D [G o sigma_av o G^+] D^T,
/// with D the discrete d/dz.
CorrelationTensor bb_spectral_density(const GreenFunction& g, const Kernel& sav,
                                      const Constants& k);

/// Amplification correction (hbar mu0^2 / pi) w^3 G o (sigma_av - sigma) o G^+:
/// positive semidefinite, zero iff the medium is dissipative at this
/// frequency, with rank equal to the number of creation channels.
CorrelationTensor amplification_correction(const GreenFunction& g, const Kernel& sigma,
                                           const Kernel& sav, const Constants& k);

/// The absorbing-media fluctuation-dissipation form (hbar mu0 / pi) w^2 Im G,
/// evaluated regardless of the sign structure. For amplifying media this is
/// the known-wrong substitution and is reported for comparison only.
CorrelationTensor naive_fdt_density(const GreenFunction& g, const Constants& k);

/// Discrete first-derivative matrix on the grid (three-point stencils,
/// one-sided at the ends).
Eigen::MatrixXd derivative_matrix(const SpatialGrid& grid);

struct CommutatorIntegralResult {
    Eigen::MatrixXd values; ///< 2 Int_0^Omega dw w Im G + analytic tail
    Eigen::MatrixXd target; ///< pi c^2 times the discrete delta
    double residual = 0.0;  ///< ||values - target|| / ||target||
};

/// Equal-time field commutator as a frequency integral: quadrature of
/// 2 w Im G over the grid plus the free-space analytic tail beyond the
/// cutoff. Independent of the medium whenever the Green function is
/// analytic in the upper half-plane; the scan guard enforces exactly that
/// and throws AnalyticityViolation otherwise. Pass a precomputed scan to
/// reuse it, or nullptr to run one over the default region.
CommutatorIntegralResult commutator_integral(const MediumModel& model,
                                             std::shared_ptr<const SpatialGrid> grid,
                                             const FrequencyGrid& omega_grid,
                                             const Constants& k,
                                             const PoleScanResult* scan = nullptr,
                                             int threads = 1);

} // namespace ampqed

#endif
