#ifndef AMPQED_KERNEL_HPP
#define AMPQED_KERNEL_HPP

#include <complex>
#include <memory>

#include <Eigen/Core>

#include "ampqed/grid.hpp"

namespace ampqed {

/// Dense integral kernel at fixed frequency, stored in the kernel-density
/// convention: values_(i,j) is the density K(z_i, z_j), and composition
/// inserts quadrature weights,
///
///     (A o B)_ij = sum_k A_ik w_k B_kj.
///
/// The identity element of this algebra is diag(1/w_i), the discrete
/// delta. Densities rather than weight-absorbed matrices are stored so
/// that operator identities (completeness, inverse relations, integral
/// relations) hold exactly in the discrete algebra.
class Kernel {
public:
    Kernel(std::shared_ptr<const SpatialGrid> grid, double omega);
    Kernel(std::shared_ptr<const SpatialGrid> grid, double omega, Eigen::MatrixXcd values);

    static Kernel identity(std::shared_ptr<const SpatialGrid> grid, double omega);
    static Kernel zero(std::shared_ptr<const SpatialGrid> grid, double omega);

    const Eigen::MatrixXcd& values() const { return values_; }
    Eigen::MatrixXcd& values() { return values_; }
    const SpatialGrid& grid() const { return *grid_; }
    const std::shared_ptr<const SpatialGrid>& grid_ptr() const { return grid_; }
    double omega() const { return omega_; }
    Eigen::Index size() const { return values_.rows(); }

    /// Quadrature composition (this o other). Throws GridMismatch if the
    /// grids differ.
    Kernel compose(const Kernel& other) const;

    /// Kernel action on a node-sampled function: (K o v)_i = sum_j K_ij w_j v_j.
    Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const;

    Kernel adjoint() const;    // conjugate transpose of the density array
    Kernel transposed() const; // plain transpose

    Kernel operator+(const Kernel& other) const;
    Kernel operator-(const Kernel& other) const;
    Kernel scaled(std::complex<double> factor) const;

    /// Quadrature-weighted Frobenius norm, the discrete L2 kernel norm:
    /// sqrt(sum_ij w_i w_j |K_ij|^2).
    double norm() const;

    /// ||K - K^T|| / ||K||, zero for reciprocal kernels. Returns 0 for a
    /// zero kernel.
    double reciprocity_defect() const;
    bool is_reciprocal(double rel_tol = 1e-12) const;

    /// ||K - K^+|| / ||K||, zero for kernels Hermitian in the quadrature
    /// inner product.
    double hermiticity_defect() const;

    /// W^{1/2} K W^{1/2}: the similarity transform under which kernel
    /// composition becomes plain matrix multiplication.
    Eigen::MatrixXcd weighted() const;

private:
    void require_same_grid(const Kernel& other) const;

    std::shared_ptr<const SpatialGrid> grid_;
    double omega_ = 0.0;
    Eigen::MatrixXcd values_;
};

/// Weighted Frobenius norm of a raw density array on a grid.
double kernel_norm(const Eigen::MatrixXcd& values, const SpatialGrid& grid);

} // namespace ampqed

#endif
