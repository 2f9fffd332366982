#pragma once

#include <cstddef>
#include <vector>

namespace scatpos {

// Discretization of r in [0, r_max]. Nodes are strictly increasing and start
// at r = 0. Immutable after construction.
class RadialGrid {
public:
    explicit RadialGrid(std::vector<double> nodes);

    static RadialGrid uniform(double r_max, std::size_t n);
    // Geometric spacing ratio > 1 clusters nodes near the origin.
    static RadialGrid graded(double r_max, std::size_t n, double ratio = 1.05);

    const std::vector<double>& nodes() const { return nodes_; }
    std::size_t size() const { return nodes_.size(); }
    double operator[](std::size_t i) const { return nodes_[i]; }
    double r_max() const { return nodes_.back(); }

    bool is_uniform(double rel_tol = 1e-12) const;

private:
    std::vector<double> nodes_;
};

// Discretization of momentum k; k0 >= 0 allowed (unlike RadialGrid's r0 = 0).
class KGrid {
public:
    explicit KGrid(std::vector<double> nodes);

    static KGrid uniform(double k_min, double k_max, std::size_t n);

    const std::vector<double>& nodes() const { return nodes_; }
    std::size_t size() const { return nodes_.size(); }
    double operator[](std::size_t i) const { return nodes_[i]; }
    double k_max() const { return nodes_.back(); }

private:
    std::vector<double> nodes_;
};

} // namespace scatpos
