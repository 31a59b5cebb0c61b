#ifndef AMPQED_MEDIA_HPP
#define AMPQED_MEDIA_HPP

#include <complex>
#include <string>
#include <vector>

#include "ampqed/constants.hpp"
#include "ampqed/kernel.hpp"

namespace ampqed {

/// Single resonance of a Drude-Lorentz stack,
///
///     chi_j(w) = f_j * wp^2 / (w0^2 - w^2 - i*gamma*w).
///
/// Real coefficients make the response analytic in the upper half-plane and
/// give the Schwarz reflection property by construction. A negative
/// strength f encodes an inverted (gain) oscillator: Im eps < 0 near the
/// resonance while causality is untouched.
struct Oscillator {
    double strength = 1.0;  ///< f, dimensionless, signed
    double omega0 = 1.0;    ///< resonance (rad/s), >= 0
    double gamma = 0.1;     ///< damping (rad/s), > 0
    double plasma = 1.0;    ///< plasma frequency (rad/s), > 0

    std::complex<double> susceptibility(std::complex<double> omega) const;
    void validate() const;
};

/// Homogeneous slab [z_min, z_max] carrying an oscillator stack. A positive
/// nonlocal_length smears the response with a normalized Gaussian of that
/// width (truncated at 6 lengths), confined to the layer.
struct Layer {
    std::string name;
    double z_min = 0.0;
    double z_max = 0.0;
    double nonlocal_length = 0.0;
    std::vector<Oscillator> oscillators;

    bool contains(double z) const { return z >= z_min && z <= z_max; }
    bool has_gain() const;
    void validate() const;
};

/// Stratified medium: ordered, non-overlapping layers embedded in vacuum.
/// The non-vacuum region always has finite extent.
struct MediumModel {
    std::vector<Layer> layers;

    void validate() const;
    bool has_gain() const;
    const Layer* layer_at(double z) const;
    double min_resonance() const; ///< smallest oscillator omega0 (0 if none)
    double max_resonance() const; ///< largest oscillator omega0 (0 if none)
};

/// Relative permittivity eps(z, w) = 1 + sum_j chi_j(w) at the layer
/// containing z (vacuum: 1). Valid for w on the real axis or in the upper
/// half-plane.
std::complex<double> permittivity(const MediumModel& model, double z,
                                  std::complex<double> omega);

/// Conductivity densities at (possibly complex) frequency; the analytic
/// continuation used by the pole scan. For real w this is the array behind
/// build_kernel.
Eigen::MatrixXcd conductivity_densities(const MediumModel& model, const SpatialGrid& grid,
                                        std::complex<double> omega, const Constants& k);

/// Reciprocal conductivity kernel Q at real frequency. Strictly local layers
/// contribute Q_ii = -i eps0 w (eps - 1) / w_i (delta as inverse weight);
/// nonlocal layers are smeared symmetrically so Q = Q^T holds exactly.
/// Throws GridMismatch when the grid does not cover the layers.
Kernel build_kernel(const MediumModel& model, std::shared_ptr<const SpatialGrid> grid,
                    double omega, const Constants& k);

/// Schwarz reflection residual max_z |eps(z,w) - conj(eps(z,-w))| relative to
/// max(1, |eps|), sampled across every layer. Real-coefficient models give
/// residuals at rounding level.
double check_schwarz(const MediumModel& model, double omega);

/// Kramers-Kronig residual: max over test frequencies of
/// |Re chi(w) - H[Im chi](w)| / max|chi|, with the Hilbert transform
/// evaluated by subtracted principal-value quadrature on `grid` plus the
/// analytic 1/w^3 tail beyond the cutoff. Throws GridTooCoarse when the
/// estimated quadrature error exceeds `tol`.
double check_kramers_kronig(const MediumModel& model, const FrequencyGrid& grid,
                            double tol = 1e-3);

/// Frequency grid suited to the model's Kramers-Kronig validation: linear
/// sampling fine enough for the narrowest damping width up to several times
/// the top resonance, then a logarithmic tail.
FrequencyGrid kramers_kronig_grid(const MediumModel& model);

} // namespace ampqed

#endif
