#include "ampqed/kernel.hpp"

#include <cmath>

namespace ampqed {

Kernel::Kernel(std::shared_ptr<const SpatialGrid> grid, double omega)
    : grid_(std::move(grid)), omega_(omega),
      values_(Eigen::MatrixXcd::Zero(grid_->size(), grid_->size())) {}

Kernel::Kernel(std::shared_ptr<const SpatialGrid> grid, double omega, Eigen::MatrixXcd values)
    : grid_(std::move(grid)), omega_(omega), values_(std::move(values)) {
    if (values_.rows() != grid_->size() || values_.cols() != grid_->size())
        throw GridMismatch("kernel array size does not match grid");
}

Kernel Kernel::identity(std::shared_ptr<const SpatialGrid> grid, double omega) {
    Eigen::MatrixXcd v = Eigen::MatrixXcd::Zero(grid->size(), grid->size());
    v.diagonal() = grid->weights().cwiseInverse().cast<std::complex<double>>();
    return Kernel(std::move(grid), omega, std::move(v));
}

Kernel Kernel::zero(std::shared_ptr<const SpatialGrid> grid, double omega) {
    return Kernel(std::move(grid), omega);
}

void Kernel::require_same_grid(const Kernel& other) const {
    if (!grid_->same_as(other.grid()))
        throw GridMismatch("kernels live on different grids");
}

Kernel Kernel::compose(const Kernel& other) const {
    require_same_grid(other);
    Eigen::MatrixXcd out =
        values_ * grid_->weights().cast<std::complex<double>>().asDiagonal() * other.values_;
    return Kernel(grid_, omega_, std::move(out));
}

Eigen::VectorXcd Kernel::apply(const Eigen::VectorXcd& v) const {
    return values_ * grid_->weights().cast<std::complex<double>>().cwiseProduct(v);
}

Kernel Kernel::adjoint() const { return Kernel(grid_, omega_, values_.adjoint()); }

Kernel Kernel::transposed() const { return Kernel(grid_, omega_, values_.transpose()); }

Kernel Kernel::operator+(const Kernel& other) const {
    require_same_grid(other);
    return Kernel(grid_, omega_, values_ + other.values_);
}

Kernel Kernel::operator-(const Kernel& other) const {
    require_same_grid(other);
    return Kernel(grid_, omega_, values_ - other.values_);
}

Kernel Kernel::scaled(std::complex<double> factor) const {
    return Kernel(grid_, omega_, factor * values_);
}

double Kernel::norm() const { return kernel_norm(values_, *grid_); }

double Kernel::reciprocity_defect() const {
    const double scale = norm();
    if (scale == 0.0) return 0.0;
    return kernel_norm(values_ - values_.transpose(), *grid_) / scale;
}

bool Kernel::is_reciprocal(double rel_tol) const { return reciprocity_defect() <= rel_tol; }

double Kernel::hermiticity_defect() const {
    const double scale = norm();
    if (scale == 0.0) return 0.0;
    return kernel_norm(values_ - values_.adjoint(), *grid_) / scale;
}

Eigen::MatrixXcd Kernel::weighted() const {
    const Eigen::VectorXd& s = grid_->sqrt_weights();
    return s.cast<std::complex<double>>().asDiagonal() * values_ *
           s.cast<std::complex<double>>().asDiagonal();
}

double kernel_norm(const Eigen::MatrixXcd& values, const SpatialGrid& grid) {
    const Eigen::VectorXd& s = grid.sqrt_weights();
    return (s.cast<std::complex<double>>().asDiagonal() * values *
            s.cast<std::complex<double>>().asDiagonal())
        .norm();
}

} // namespace ampqed
