#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "scatpos/grid.hpp"
#include "scatpos/transforms.hpp"

namespace scatpos {

struct PositiveTypeReport {
    std::vector<double> sample_points; // points of the worst trial
    double min_eigenvalue = 0.0;       // worst over all trials
    double trace = 0.0;                // trace of the worst trial's Gram matrix
    bool pass = false;
    std::size_t trials = 0;
    // One record per trial, for JSON-lines export.
    struct Trial {
        std::vector<double> points;
        double min_eigenvalue;
        double trace;
        bool pass;
    };
    std::vector<Trial> records;
};

// F(x) = int e^{ixt} dalpha(t) for a half-line measure.
TransformResult bochner_transform(const StieltjesMeasure& alpha, const KGrid& xgrid);

// Pointwise sampler F(x); must satisfy F(-x) = conj(F(x)).
using ComplexSampler = std::function<cdouble(double)>;

struct PositiveTypeOptions {
    std::uint64_t seed = 1234;
    double x_max = 10.0;       // sample points drawn from [0, x_max]
    double close_pair = 0.02;  // one pair this close, to stress near-degeneracy
    double hermitian_tol = 1e-8;
};

// Draw s random points per trial, form M_mn = F(x_m - x_n), and record the
// minimum eigenvalue. pass <=> min eigenvalue >= -tol * trace in every trial.
PositiveTypeReport positive_type_check(const ComplexSampler& f, std::size_t s,
                                       std::size_t trials, double tol,
                                       const PositiveTypeOptions& opts = {});

struct PushforwardCheckReport {
    PositiveTypeReport psd;
    double chain_residual = 0.0; // max | direct transform - pushforward route |
    bool chain_pass = false;
};

// Positive-typeness of the Stieltjes transform of (alpha, V), plus the
// pushforward identity: direct evaluation vs e^{ikr}-transform of beta.
PushforwardCheckReport pushforward_check(const StieltjesMeasure& alpha, const Potential& v,
                                      std::size_t s, std::size_t trials,
                                      const TriangularKernel& kernel, const KGrid& kgrid,
                                      double tol = 1e-8,
                                      const PositiveTypeOptions& opts = {});

} // namespace scatpos
