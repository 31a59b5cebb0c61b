#include "ampqed/spectral.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "ampqed/errors.hpp"

namespace ampqed {

namespace {

double spectral_scale(const Eigen::VectorXd& eigenvalues) {
    return eigenvalues.size() ? eigenvalues.cwiseAbs().maxCoeff() : 0.0;
}

} // namespace

Kernel SpectralDecomposition::apply_spectral_weights(const Eigen::VectorXcd& diag) const {
    Eigen::MatrixXcd v = vectors * diag.asDiagonal() * vectors.adjoint();
    return Kernel(grid, omega, std::move(v));
}

Kernel SpectralDecomposition::reconstruct() const {
    return map([](double s) { return s; });
}

double SpectralDecomposition::orthonormality_defect() const {
    // Gram matrix in the quadrature inner product vs identity.
    Eigen::MatrixXcd gram =
        vectors.adjoint() * grid->weights().cast<std::complex<double>>().asDiagonal() * vectors;
    gram.diagonal().array() -= 1.0;
    return gram.norm() / std::sqrt(static_cast<double>(vectors.cols()));
}

double SpectralDecomposition::completeness_defect() const {
    Kernel sum(grid, omega, vectors * vectors.adjoint());
    const Kernel id = Kernel::identity(grid, omega);
    return (sum - id).norm() / id.norm();
}

std::pair<Kernel, Kernel> hermitian_split(const Kernel& q, double rel_tol) {
    if (!q.is_reciprocal(rel_tol))
        throw NotReciprocal("kernel transpose deviates beyond tolerance; Hermitian split "
                            "requires a reciprocal kernel");
    const Eigen::MatrixXcd& v = q.values();
    Eigen::MatrixXcd sigma = 0.5 * (v + v.adjoint());
    Eigen::MatrixXcd tau = (v - v.adjoint()) / std::complex<double>(0.0, 2.0);
    return {Kernel(q.grid_ptr(), q.omega(), std::move(sigma)),
            Kernel(q.grid_ptr(), q.omega(), std::move(tau))};
}

SpectralDecomposition spectral_decompose(const Kernel& sigma, double rel_tol) {
    if (sigma.hermiticity_defect() > rel_tol)
        throw NotHermitian("kernel is not Hermitian in the quadrature inner product");

    // Symmetrize with W^{1/2} so the quadrature eigenproblem becomes an
    // ordinary Hermitian one, then pull the eigenvectors back.
    Eigen::MatrixXcd s = sigma.weighted();
    s = 0.5 * (s + s.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(s);
    if (solver.info() != Eigen::Success)
        throw NotHermitian("eigensolver failed to converge");

    const Eigen::Index n = sigma.size();
    SpectralDecomposition out;
    out.grid = sigma.grid_ptr();
    out.omega = sigma.omega();
    out.eigenvalues.resize(n);
    out.vectors.resize(n, n);

    const Eigen::VectorXd inv_sqrt_w = sigma.grid().sqrt_weights().cwiseInverse();
    for (Eigen::Index a = 0; a < n; ++a) {
        const Eigen::Index src = n - 1 - a; // descending order
        out.eigenvalues[a] = solver.eigenvalues()[src];
        Eigen::VectorXcd f = inv_sqrt_w.cast<std::complex<double>>().cwiseProduct(
            solver.eigenvectors().col(src));

        // Phase convention: largest-magnitude component real positive,
        // first index winning ties.
        Eigen::Index imax = 0;
        double best = -1.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            const double m = std::abs(f[i]);
            if (m > best) {
                best = m;
                imax = i;
            }
        }
        if (best > 0.0) f *= std::conj(f[imax]) / best;
        out.vectors.col(a) = f;
    }
    return out;
}

bool is_dissipative(const SpectralDecomposition& spec, double tol) {
    return spec.count() > 0 && spec.eigenvalues.minCoeff() > tol;
}

InverseKernelResult inverse_kernel(const SpectralDecomposition& spec, double eps_reg) {
    const double cutoff = eps_reg * spectral_scale(spec.eigenvalues);
    InverseKernelResult out{Kernel::zero(spec.grid, spec.omega), {}};
    Eigen::VectorXcd d(spec.count());
    for (Eigen::Index a = 0; a < spec.count(); ++a) {
        const double s = spec.eigenvalues[a];
        if (std::abs(s) > cutoff) {
            d[a] = 1.0 / s;
        } else {
            out.clamped.push_back(a);
            const double sign = (s < 0.0) ? -1.0 : 1.0;
            d[a] = (cutoff > 0.0) ? sign / cutoff : 0.0;
        }
    }
    out.rho = Kernel(spec.grid, spec.omega, spec.vectors * d.asDiagonal() * spec.vectors.adjoint());
    return out;
}

Kernel factor_kernel(const SpectralDecomposition& spec, double tol) {
    if (!is_dissipative(spec, tol))
        throw NonPositiveSpectrum("spectrum is not positive definite; no square-root factor "
                                  "of this kernel exists");
    return spec.map([](double s) { return std::sqrt(s); });
}

Kernel sigma_av(const SpectralDecomposition& spec) {
    return spec.map([](double s) { return std::abs(s); });
}

Kernel parity_kernel(const SpectralDecomposition& spec, double eps_reg) {
    const double cutoff = eps_reg * spectral_scale(spec.eigenvalues);
    for (Eigen::Index a = 0; a < spec.count(); ++a)
        if (std::abs(spec.eigenvalues[a]) <= cutoff)
            throw ZeroEigenvalue("spectrum contains a channel within the regularization "
                                 "cutoff; parity kernel undefined");
    return spec.map([](double s) { return s > 0.0 ? 1.0 : -1.0; });
}

namespace {

// diagnostics accept kernels Hermitian only up to rounding (including
// numerically-zero differences), so decompose the Hermitian part
SpectralDecomposition decompose_hermitian_part(const Kernel& k) {
    Kernel herm(k.grid_ptr(), k.omega(), 0.5 * (k.values() + k.values().adjoint()).eval());
    return spectral_decompose(herm);
}

} // namespace

double negativity(const Kernel& hermitian_kernel) {
    const SpectralDecomposition spec = decompose_hermitian_part(hermitian_kernel);
    const double scale = spectral_scale(spec.eigenvalues);
    if (scale == 0.0) return 0.0;
    return std::max(0.0, -spec.eigenvalues.minCoeff()) / scale;
}

double min_eigenvalue(const Kernel& kernel) {
    const SpectralDecomposition spec = decompose_hermitian_part(kernel);
    return spec.count() ? spec.eigenvalues.minCoeff() : 0.0;
}

Eigen::Index psd_rank(const Kernel& hermitian_kernel, double rel_tol) {
    const SpectralDecomposition spec = decompose_hermitian_part(hermitian_kernel);
    const double cutoff = rel_tol * spectral_scale(spec.eigenvalues);
    Eigen::Index rank = 0;
    for (Eigen::Index a = 0; a < spec.count(); ++a)
        if (std::abs(spec.eigenvalues[a]) > cutoff) ++rank;
    return rank;
}

} // namespace ampqed
