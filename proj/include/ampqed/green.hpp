#ifndef AMPQED_GREEN_HPP
#define AMPQED_GREEN_HPP

#include <complex>
#include <vector>

#include "ampqed/constants.hpp"
#include "ampqed/kernel.hpp"
#include "ampqed/media.hpp"
#include "ampqed/transfer_matrix.hpp"

namespace ampqed {

/// Discrete Maxwell operator of the 1-D transverse reduction at fixed
/// frequency,
///
///     A = L - (w^2/c^2) id - i mu0 w (Q_medium + Q_boundary),
///
/// in the quadrature algebra. L is a real-symmetric three-point
/// discretization of -d^2/dz^2 whose coefficients are tuned to the operating
/// wavenumber, so that the vacuum solve reproduces the analytic outgoing
/// Green function at the nodes. The outgoing closures g' = +-i(w/c) g enter
/// as an impedance-matched real conductance Q_boundary on the two end nodes:
/// the finite window's stand-in for radiation escaping to infinity. Keeping
/// all non-Hermitian content inside the total conductivity is what makes the
/// generalized integral relation exact in the discrete algebra.
class MaxwellOperator {
public:
    MaxwellOperator(std::shared_ptr<const SpatialGrid> grid, std::complex<double> omega,
                    Constants constants, Eigen::MatrixXcd node_matrix,
                    Eigen::MatrixXcd q_total);

    const std::shared_ptr<const SpatialGrid>& grid_ptr() const { return grid_; }
    const SpatialGrid& grid() const { return *grid_; }
    std::complex<double> omega() const { return omega_; }
    const Constants& constants() const { return constants_; }

    /// Weighted operator W A W, the matrix acting on node values; its
    /// inverse is the Green kernel density array.
    const Eigen::MatrixXcd& node_matrix() const { return node_matrix_; }

    /// Total reciprocal conductivity (medium + boundary conductance).
    Kernel q_total() const;
    /// Hermitian part of the total conductivity; the sigma entering the
    /// integral relation and the noise kernels. Real frequency only.
    Kernel sigma_total() const;

private:
    std::shared_ptr<const SpatialGrid> grid_;
    std::complex<double> omega_;
    Constants constants_;
    Eigen::MatrixXcd node_matrix_;
    Eigen::MatrixXcd q_total_;
};

struct GreenDiagnostics {
    double condition_estimate = 0.0;
    double reciprocity_defect = 0.0;
    std::string boundary = "outgoing";
};

/// Retarded Green kernel at fixed frequency: exact inverse of the Maxwell
/// operator in the quadrature algebra, A o G = G o A = identity.
struct GreenFunction {
    std::shared_ptr<const SpatialGrid> grid;
    std::complex<double> omega;
    Eigen::MatrixXcd values; ///< kernel densities G(z_i, z_j)
    GreenDiagnostics diagnostics;

    /// View as a quadrature-algebra kernel; requires real frequency.
    Kernel kernel() const;
};

/// Boundary conductance densities of the outgoing closure: diagonal
/// 1/(mu0 c w_i^2) on the two end nodes, zero elsewhere.
Eigen::MatrixXcd boundary_conductance(const SpatialGrid& grid, const Constants& k);

/// Assembles the Maxwell operator from a medium conductivity kernel at the
/// kernel's (real) frequency.
MaxwellOperator assemble_operator(const Kernel& q_medium, const Constants& k);

/// Assembles at possibly complex frequency (Im w >= 0) directly from the
/// medium model; this is the analytic family scanned for poles.
MaxwellOperator assemble_operator(const MediumModel& model,
                                  std::shared_ptr<const SpatialGrid> grid,
                                  std::complex<double> omega, const Constants& k);

/// Dense solve for the Green function. Throws SingularOperator (with the
/// condition estimate in the message) when the operator is numerically
/// singular; at Im w >= 0 that is the signature of an analyticity violation.
GreenFunction solve_green(const MaxwellOperator& op, double rcond_min = 1e-13);

/// Residual of the generalized integral relation at real frequency,
///     || mu0 w G o sigma o G^+  -  Im G || / || Im G ||,
/// which vanishes to solver roundoff when `sigma` is the Hermitian part of
/// the total conductivity the operator was assembled with.
double verify_integral_relation(const GreenFunction& g, const Kernel& sigma,
                                const Constants& k);

struct PoleScanConfig {
    double re_min = 0.0;
    double re_max = 0.0;
    double im_min = 0.0;
    double im_max = 0.0;
    int n_re = 41;
    int n_im = 17;
    double threshold_factor = 1e-6; ///< flag threshold relative to the mesh median
    int refine_rounds = 5;          ///< zoom rounds before the Newton polish
};

struct PoleFlag {
    std::complex<double> omega;
    double singular_value = 0.0;
};

struct RoundTripReport {
    bool applicable = false;
    double omega = 0.0; ///< phase-matched frequency with the largest gain
    double gain = 0.0;  ///< |round trip| there
    bool above_unity = false;
};

struct PoleScanResult {
    std::vector<PoleFlag> flags;
    double median_singular_value = 0.0;
    double threshold = 0.0;
    RoundTripReport round_trip;

    bool clean() const { return flags.empty(); }
};

/// Scans the smallest singular value of the Maxwell operator over a
/// rectangle in the closed upper half-plane and flags refined local minima
/// below the scale-free threshold as candidate poles. For cavity-with-gain
/// models a transfer-matrix round-trip diagnostic is attached.
PoleScanResult pole_scan(const MediumModel& model, std::shared_ptr<const SpatialGrid> grid,
                         const PoleScanConfig& config, const Constants& k);

/// Default scan rectangle derived from the model's resonances.
PoleScanConfig default_scan_region(const MediumModel& model);

/// Residual of the high-frequency asymptote G -> -(c^2/w^2) delta, evaluated
/// at w = i*xi against smooth probe functions. The norm is restricted to
/// nodes at least 8 c/xi away from the window ends, where the outgoing
/// closure halves the delta mass.
double high_frequency_defect(const MediumModel& model,
                             std::shared_ptr<const SpatialGrid> grid, double xi,
                             const Constants& k);

} // namespace ampqed

#endif
