#include "ampqed/grid.hpp"

#include <cmath>

namespace ampqed {

SpatialGrid::SpatialGrid(Eigen::VectorXd nodes, Eigen::VectorXd weights)
    : nodes_(std::move(nodes)), weights_(std::move(weights)) {
    if (nodes_.size() < 2 || nodes_.size() != weights_.size())
        throw GridMismatch("spatial grid needs at least two nodes with matching weights");
    for (Eigen::Index i = 0; i + 1 < nodes_.size(); ++i)
        if (!(nodes_[i] < nodes_[i + 1]))
            throw GridMismatch("spatial grid nodes must be strictly increasing");
    if (!(weights_.minCoeff() > 0.0))
        throw GridMismatch("spatial grid weights must be positive");
    sqrt_weights_ = weights_.cwiseSqrt();
}

std::shared_ptr<const SpatialGrid> SpatialGrid::uniform(double z0, double z1, int n) {
    if (!(z1 > z0)) throw GridMismatch("uniform grid needs z1 > z0");
    if (n < 2) throw GridMismatch("uniform grid needs n >= 2");
    const double h = (z1 - z0) / (n - 1);
    Eigen::VectorXd nodes(n), weights(n);
    for (int i = 0; i < n; ++i) {
        nodes[i] = z0 + i * h;
        weights[i] = h;
    }
    nodes[n - 1] = z1; // exact endpoint
    weights[0] = 0.5 * h;
    weights[n - 1] = 0.5 * h;
    return std::make_shared<const SpatialGrid>(std::move(nodes), std::move(weights));
}

bool SpatialGrid::is_uniform(double rel_tol) const {
    const double h0 = nodes_[1] - nodes_[0];
    for (Eigen::Index i = 1; i + 1 < nodes_.size(); ++i)
        if (std::abs((nodes_[i + 1] - nodes_[i]) - h0) > rel_tol * std::abs(h0)) return false;
    return true;
}

double SpatialGrid::uniform_spacing(double rel_tol) const {
    if (!is_uniform(rel_tol)) throw GridMismatch("grid is not uniform");
    return nodes_[1] - nodes_[0];
}

bool SpatialGrid::same_as(const SpatialGrid& other) const {
    return this == &other ||
           (nodes_.size() == other.nodes_.size() && nodes_ == other.nodes_ &&
            weights_ == other.weights_);
}

FrequencyGrid::FrequencyGrid(Eigen::VectorXd nodes, Eigen::VectorXd weights, double omega_max)
    : nodes_(std::move(nodes)), weights_(std::move(weights)), omega_max_(omega_max) {
    if (nodes_.size() < 2 || nodes_.size() != weights_.size())
        throw GridMismatch("frequency grid needs at least two nodes with matching weights");
    if (!(nodes_[0] > 0.0))
        throw GridMismatch("frequency grid nodes must be positive");
    for (Eigen::Index i = 0; i + 1 < nodes_.size(); ++i)
        if (!(nodes_[i] < nodes_[i + 1]))
            throw GridMismatch("frequency grid nodes must be strictly increasing");
    if (!(omega_max_ >= nodes_[nodes_.size() - 1]))
        throw GridMismatch("tail cutoff must not be below the last node");
}

FrequencyGrid FrequencyGrid::simpson(double omega_max, int n) {
    if (!(omega_max > 0.0)) throw GridMismatch("simpson grid needs omega_max > 0");
    if (n < 3 || n % 2 == 0) throw GridMismatch("simpson grid needs odd n >= 3");
    const double lo = omega_max / (40.0 * (n - 1));
    const double h = (omega_max - lo) / (n - 1);
    Eigen::VectorXd nodes(n), weights(n);
    for (int i = 0; i < n; ++i) {
        nodes[i] = lo + i * h;
        weights[i] = (i == 0 || i == n - 1) ? h / 3.0 : (i % 2 == 1 ? 4.0 * h / 3.0 : 2.0 * h / 3.0);
    }
    weights[0] += lo; // [0, lo] strip, integrand treated as constant there
    return FrequencyGrid(std::move(nodes), std::move(weights), omega_max);
}

FrequencyGrid FrequencyGrid::dense_then_log(double lo, double mid, double hi,
                                            int n_linear, int n_log) {
    if (!(0.0 < lo && lo < mid && mid < hi))
        throw GridMismatch("dense_then_log needs 0 < lo < mid < hi");
    if (n_linear < 2 || n_log < 2) throw GridMismatch("dense_then_log needs >= 2 nodes per segment");
    Eigen::VectorXd nodes(n_linear + n_log);
    const double h = (mid - lo) / (n_linear - 1);
    for (int i = 0; i < n_linear; ++i) nodes[i] = lo + i * h;
    const double r = std::pow(hi / mid, 1.0 / n_log);
    for (int i = 0; i < n_log; ++i) nodes[n_linear + i] = mid * std::pow(r, i + 1);

    // trapezoid weights, with the [0, lo] strip folded into the first node
    const Eigen::Index n = nodes.size();
    Eigen::VectorXd weights = Eigen::VectorXd::Zero(n);
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
        const double dw = 0.5 * (nodes[i + 1] - nodes[i]);
        weights[i] += dw;
        weights[i + 1] += dw;
    }
    weights[0] += lo;
    return FrequencyGrid(std::move(nodes), std::move(weights), hi);
}

FrequencyGrid FrequencyGrid::coarsened() const {
    const Eigen::Index n = nodes_.size();
    const Eigen::Index m = (n + 1) / 2;
    if (m < 2) throw GridMismatch("grid too small to coarsen");
    Eigen::VectorXd nodes(m);
    for (Eigen::Index i = 0; i < m; ++i) nodes[i] = nodes_[std::min(2 * i, n - 1)];
    Eigen::VectorXd weights = Eigen::VectorXd::Zero(m);
    for (Eigen::Index i = 0; i + 1 < m; ++i) {
        const double dw = 0.5 * (nodes[i + 1] - nodes[i]);
        weights[i] += dw;
        weights[i + 1] += dw;
    }
    weights[0] += nodes[0];
    return FrequencyGrid(std::move(nodes), std::move(weights), omega_max_);
}

} // namespace ampqed
