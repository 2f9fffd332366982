#include "scatpos/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace scatpos {

namespace {

void require_strictly_increasing(const std::vector<double>& nodes) {
    for (std::size_t i = 1; i < nodes.size(); ++i) {
        if (!(nodes[i] > nodes[i - 1]))
            throw std::invalid_argument("grid nodes must be strictly increasing");
    }
}

} // namespace

RadialGrid::RadialGrid(std::vector<double> nodes) : nodes_(std::move(nodes)) {
    if (nodes_.size() < 3)
        throw std::invalid_argument("RadialGrid needs at least 3 nodes");
    if (nodes_.front() != 0.0)
        throw std::invalid_argument("RadialGrid must start at r = 0");
    require_strictly_increasing(nodes_);
}

RadialGrid RadialGrid::uniform(double r_max, std::size_t n) {
    if (!(r_max > 0.0) || n < 3)
        throw std::invalid_argument("RadialGrid::uniform: need r_max > 0 and n >= 3");
    std::vector<double> nodes(n);
    const double h = r_max / double(n - 1);
    for (std::size_t i = 0; i < n; ++i) nodes[i] = double(i) * h;
    nodes.back() = r_max;
    return RadialGrid(std::move(nodes));
}

RadialGrid RadialGrid::graded(double r_max, std::size_t n, double ratio) {
    if (!(r_max > 0.0) || n < 3 || !(ratio > 1.0))
        throw std::invalid_argument("RadialGrid::graded: invalid arguments");
    // h_i = h0 * ratio^i, scaled so the spacings sum to r_max.
    const std::size_t m = n - 1;
    const double h0 = r_max * (ratio - 1.0) / (std::pow(ratio, double(m)) - 1.0);
    std::vector<double> nodes(n);
    nodes[0] = 0.0;
    double h = h0;
    for (std::size_t i = 1; i < n; ++i) {
        nodes[i] = nodes[i - 1] + h;
        h *= ratio;
    }
    nodes.back() = r_max;
    return RadialGrid(std::move(nodes));
}

bool RadialGrid::is_uniform(double rel_tol) const {
    const double h0 = nodes_[1] - nodes_[0];
    for (std::size_t i = 1; i + 1 < nodes_.size(); ++i) {
        const double h = nodes_[i + 1] - nodes_[i];
        if (std::abs(h - h0) > rel_tol * h0) return false;
    }
    return true;
}

KGrid::KGrid(std::vector<double> nodes) : nodes_(std::move(nodes)) {
    if (nodes_.size() < 3)
        throw std::invalid_argument("KGrid needs at least 3 nodes");
    if (nodes_.front() < 0.0)
        throw std::invalid_argument("KGrid nodes must be >= 0");
    require_strictly_increasing(nodes_);
}

KGrid KGrid::uniform(double k_min, double k_max, std::size_t n) {
    if (k_min < 0.0 || !(k_max > k_min) || n < 3)
        throw std::invalid_argument("KGrid::uniform: invalid arguments");
    std::vector<double> nodes(n);
    const double h = (k_max - k_min) / double(n - 1);
    for (std::size_t i = 0; i < n; ++i) nodes[i] = k_min + double(i) * h;
    nodes.back() = k_max;
    return KGrid(std::move(nodes));
}

} // namespace scatpos
