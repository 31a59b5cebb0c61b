#ifndef AMPQED_SPECTRAL_HPP
#define AMPQED_SPECTRAL_HPP

#include <utility>
#include <vector>

#include "ampqed/kernel.hpp"

namespace ampqed {

/// Eigendecomposition of a Hermitian kernel in the quadrature inner
/// product: real eigenvalues sigma_alpha (descending) and delta-orthonormal
/// eigenvectors F_alpha (columns of `vectors`),
///
///     sum_i w_i conj(F_a(z_i)) F_b(z_i) = delta_ab,
///     sum_a F_a(z_i) conj(F_a(z_j))     = delta_ij / w_i.
///
/// Eigenvector phases are fixed by making the largest-magnitude component
/// real and positive (first index on ties), so decompositions are
/// deterministic.
struct SpectralDecomposition {
    std::shared_ptr<const SpatialGrid> grid;
    double omega = 0.0;
    Eigen::VectorXd eigenvalues; ///< descending
    Eigen::MatrixXcd vectors;    ///< column alpha = F_alpha sampled on nodes

    Eigen::Index count() const { return eigenvalues.size(); }

    /// sum_a sigma_a F_a F_a^+, which must reproduce the decomposed kernel.
    Kernel reconstruct() const;

    /// sum_a g(sigma_a) F_a F_a^+ for an arbitrary spectral map g.
    template <typename Fn>
    Kernel map(Fn&& g) const {
        Eigen::VectorXcd d(eigenvalues.size());
        for (Eigen::Index a = 0; a < eigenvalues.size(); ++a) d[a] = g(eigenvalues[a]);
        return apply_spectral_weights(d);
    }

    double orthonormality_defect() const;
    double completeness_defect() const;

private:
    Kernel apply_spectral_weights(const Eigen::VectorXcd& diag) const;
};

/// Splits a reciprocal kernel Q into Hermitian and anti-Hermitian parts,
/// Q = sigma + i*tau with sigma = (Q + Q^+)/2 and tau = (Q - Q^+)/(2i).
/// Throws NotReciprocal when ||Q - Q^T||/||Q|| exceeds `rel_tol`.
std::pair<Kernel, Kernel> hermitian_split(const Kernel& q, double rel_tol = 1e-12);

/// Solves the eigenvalue problem for a kernel Hermitian in the quadrature
/// inner product. Throws NotHermitian beyond `rel_tol`.
SpectralDecomposition spectral_decompose(const Kernel& sigma, double rel_tol = 1e-10);

/// Discrete positivity test: true iff every eigenvalue exceeds `tol`.
/// Strictly positive spectra characterize absorbing media; any negative
/// eigenvalue signals amplification at this frequency.
bool is_dissipative(const SpectralDecomposition& spec, double tol = 0.0);

struct InverseKernelResult {
    Kernel rho;
    std::vector<Eigen::Index> clamped; ///< channels hit by the spectral cutoff
};

/// Inverse kernel rho = sum_a s(sigma_a) F_a F_a^+ with the sign-preserving
/// spectral cutoff
///     s(x) = 1/x               for |x| >  eps_reg * max|sigma|
///     s(x) = sgn(x)/(eps_reg*max|sigma|)  otherwise  (sgn(0) := +1).
/// With no clamped channels, rho o sigma = sigma o rho = identity.
InverseKernelResult inverse_kernel(const SpectralDecomposition& spec, double eps_reg = 1e-12);

/// Square-root factor K = sum_a sqrt(sigma_a) F_a F_a^+ with K o K^+ = sigma.
/// Defined only for positive spectra; throws NonPositiveSpectrum as soon as
/// min sigma_a <= tol, matching is_dissipative.
Kernel factor_kernel(const SpectralDecomposition& spec, double tol = 0.0);

/// Operator absolute value sum_a |sigma_a| F_a F_a^+; positive semidefinite,
/// equal to sigma itself when the spectrum is nonnegative.
Kernel sigma_av(const SpectralDecomposition& spec);

/// Parity-type kernel P = sum_a sgn(sigma_a) F_a F_a^+ with P o P = identity;
/// reduces to the identity kernel for positive spectra. Throws ZeroEigenvalue
/// when any |sigma_a| <= eps_reg * max|sigma|.
Kernel parity_kernel(const SpectralDecomposition& spec, double eps_reg = 1e-12);

/// Most negative eigenvalue of a Hermitian kernel relative to its spectral
/// scale; zero (within rounding) certifies positive semidefiniteness.
double negativity(const Kernel& hermitian_kernel);

/// Smallest eigenvalue of the kernel's Hermitian part, unnormalized; callers
/// comparing near-zero kernels supply their own reference scale.
double min_eigenvalue(const Kernel& kernel);

/// Number of eigenvalues above rel_tol times the spectral scale.
Eigen::Index psd_rank(const Kernel& hermitian_kernel, double rel_tol = 1e-8);

} // namespace ampqed

#endif
