#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "scatpos/grid.hpp"
#include "scatpos/marchenko.hpp"
#include "scatpos/potential.hpp"
#include "scatpos/schrodinger.hpp"

namespace scatpos {

// Real function sampled on a radial grid.
class SampledFunction {
public:
    SampledFunction(RadialGrid grid, std::vector<double> values);

    static SampledFunction from_function(const RadialGrid& grid,
                                         const std::function<double(double)>& f);

    const RadialGrid& grid() const { return grid_; }
    const std::vector<double>& values() const { return values_; }
    double operator[](std::size_t i) const { return values_[i]; }
    std::size_t size() const { return values_.size(); }

    // Piecewise-linear evaluation; zero outside the sampled range.
    double interpolate(double r) const;

private:
    RadialGrid grid_;
    std::vector<double> values_;
};

// Bounded non-decreasing measure: atoms plus an absolutely continuous part.
// The density grid doubles as the evaluation grid for transforms; atoms must
// lie inside it.
class StieltjesMeasure {
public:
    struct Atom {
        double location;
        double weight;
    };

    StieltjesMeasure(std::vector<Atom> atoms, SampledFunction density,
                     bool signed_density = false);

    static StieltjesMeasure atoms_only(std::vector<Atom> atoms, const RadialGrid& grid);
    static StieltjesMeasure density_only(SampledFunction density);

    const std::vector<Atom>& atoms() const { return atoms_; }
    const SampledFunction& density() const { return density_; }
    bool signed_density() const { return signed_density_; }
    double total_mass() const;

private:
    std::vector<Atom> atoms_; // sorted by location
    SampledFunction density_;
    bool signed_density_;
};

struct TransformResult {
    KGrid kgrid;
    std::vector<cdouble> values;
    std::vector<double> errors; // per-node quadrature + tail estimate
};

// --- Sine-kernel transforms ---------------------------------------------------

TransformResult sine_transform(const SampledFunction& f, const KGrid& kgrid);

struct TitchmarshReport {
    bool non_increasing = false;
    bool integrable_at_0 = false;
    bool vanishes = false;
};

TitchmarshReport titchmarsh_check(const SampledFunction& f);

// f~(k) = int f(r) phi(k,r) dr with the regular solution as kernel. Reduces
// to sine_transform / k when V = 0.
TransformResult generalized_transform(const SampledFunction& f, const Potential& v,
                                      const KGrid& kgrid, const SolverOptions& opts = {});

// f(r) = int_r^inf [chi0(r) phi0(t) - phi0(r) chi0(t)] g(t) dt. Non-negative
// for g >= 0 by construction of the discrete weights.
SampledFunction build_f_from_g(const SampledFunction& g, const WaveSolution& phi0,
                               const WaveSolution& chi0);

struct OdeResidualReport {
    double max_residual = 0.0;
};

// Central second differences of f against V f + g.
OdeResidualReport ode_residual_check(const SampledFunction& f, const Potential& v,
                                     const SampledFunction& g);

struct LpMembershipReport {
    bool h1_in_lp_01 = false;   // h1(r) = int_r^1 t g(t) dt in L^p(0,1)
    bool h2_in_lp_1inf = false; // h2(r) = int_r^inf t g(t) dt in L^p(1,inf)
    bool inconclusive = false;
};

LpMembershipReport lp_membership_check(const SampledFunction& g, double p);

// --- Stieltjes machinery ----------------------------------------------------

// f~(k) = int f(k,r) dalpha(r) with the Jost solution as kernel.
TransformResult stieltjes_transform(const StieltjesMeasure& alpha, const Potential& v,
                                    const KGrid& kgrid, const SolverOptions& opts = {});

// Single-point evaluation (k >= 0) used by the positive-type samplers.
cdouble stieltjes_value(const StieltjesMeasure& alpha, const Potential& v, double k,
                        const SolverOptions& opts = {});

// dbeta = dalpha + (int_0^r A(t,r) dalpha(t)) dr. Output density lives on the
// kernel's grid; atoms are kept.
StieltjesMeasure push_measure(const StieltjesMeasure& alpha, const TriangularKernel& a);

// Solve alpha'(r) = beta'(r) - int_0^r A(t,r) alpha'(t) dt by forward
// substitution with the same trapezoidal weights push_measure uses.
SampledFunction invert_volterra(const SampledFunction& beta_density,
                                const TriangularKernel& a);

struct VolterraEnvelopeReport {
    double max_violation = 0.0; // max of |alpha'| - beta' e^{M beta}
    bool pass = false;
};

VolterraEnvelopeReport volterra_envelope_check(const SampledFunction& alpha_density,
                                               const SampledFunction& beta_density,
                                               const TriangularKernel& a);

} // namespace scatpos
