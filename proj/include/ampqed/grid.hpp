#ifndef AMPQED_GRID_HPP
#define AMPQED_GRID_HPP

#include <memory>

#include <Eigen/Core>

#include "ampqed/errors.hpp"

namespace ampqed {

/// One-dimensional quadrature grid: strictly increasing nodes z_i with
/// positive weights w_i. Spatial integrals become weighted sums, so every
/// continuum identity of the kernel algebra has an exact discrete
/// counterpart on this grid.
class SpatialGrid {
public:
    SpatialGrid(Eigen::VectorXd nodes, Eigen::VectorXd weights);

    /// Uniform grid on [z0, z1] with trapezoid weights (half weight at the
    /// two end nodes), so that the weights sum exactly to the extent.
    static std::shared_ptr<const SpatialGrid> uniform(double z0, double z1, int n);

    Eigen::Index size() const { return nodes_.size(); }
    const Eigen::VectorXd& nodes() const { return nodes_; }
    const Eigen::VectorXd& weights() const { return weights_; }
    const Eigen::VectorXd& sqrt_weights() const { return sqrt_weights_; }

    double node(Eigen::Index i) const { return nodes_[i]; }
    double weight(Eigen::Index i) const { return weights_[i]; }
    double extent() const { return nodes_[nodes_.size() - 1] - nodes_[0]; }

    /// Spacing of a uniform grid; throws GridMismatch when the grid is not
    /// uniform to within a relative tolerance.
    double uniform_spacing(double rel_tol = 1e-12) const;
    bool is_uniform(double rel_tol = 1e-12) const;

    bool same_as(const SpatialGrid& other) const;

private:
    Eigen::VectorXd nodes_;
    Eigen::VectorXd weights_;
    Eigen::VectorXd sqrt_weights_;
};

/// Quadrature grid over positive frequencies, used for spectral integrals
/// 2*Int_0^Omega_max dw (...). Factories fold the short [0, w_0] strip into
/// the first weight so that plain weighted sums integrate from zero.
class FrequencyGrid {
public:
    FrequencyGrid(Eigen::VectorXd nodes, Eigen::VectorXd weights, double omega_max);

    /// Composite Simpson rule with n nodes (n odd, n >= 3) on
    /// [omega_max/(4(n-1)), omega_max]; the leading strip is assigned to the
    /// first node.
    static FrequencyGrid simpson(double omega_max, int n);

    /// Trapezoid nodes: n_linear equally spaced on [lo, mid], then n_log
    /// log-spaced on (mid, hi]. Suited to response functions with sharp
    /// resonances below `mid` and smooth power-law tails.
    static FrequencyGrid dense_then_log(double lo, double mid, double hi,
                                        int n_linear, int n_log);

    /// Same node family with every second node removed; used for quadrature
    /// error estimation.
    FrequencyGrid coarsened() const;

    Eigen::Index size() const { return nodes_.size(); }
    const Eigen::VectorXd& nodes() const { return nodes_; }
    const Eigen::VectorXd& weights() const { return weights_; }
    double omega_max() const { return omega_max_; }

private:
    Eigen::VectorXd nodes_;
    Eigen::VectorXd weights_;
    double omega_max_ = 0.0;
};

} // namespace ampqed

#endif
