#include "scatpos/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "scatpos/quadrature.hpp"

namespace scatpos {

namespace {

// Hermite cubic evaluation of a Jost solution between grid nodes.
cdouble hermite_eval(const WaveSolution& sol, double r) {
    const auto& nodes = sol.grid().nodes();
    if (r <= nodes.front()) return sol.value().front();
    if (r >= nodes.back()) return sol.value().back();
    const auto it = std::upper_bound(nodes.begin(), nodes.end(), r);
    const std::size_t j = std::size_t(it - nodes.begin());
    const double a = nodes[j - 1], b = nodes[j], h = b - a;
    const double s = (r - a) / h;
    const double h00 = (1.0 + 2.0 * s) * (1.0 - s) * (1.0 - s);
    const double h10 = s * (1.0 - s) * (1.0 - s);
    const double h01 = s * s * (3.0 - 2.0 * s);
    const double h11 = s * s * (s - 1.0);
    return h00 * sol.value()[j - 1] + h10 * h * sol.deriv()[j - 1] + h01 * sol.value()[j] +
           h11 * h * sol.deriv()[j];
}

} // namespace

SampledFunction::SampledFunction(RadialGrid grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (values_.size() != grid_.size())
        throw std::invalid_argument("SampledFunction: value count must match grid");
    for (double v : values_)
        if (!std::isfinite(v))
            throw std::invalid_argument("SampledFunction: values must be finite");
}

SampledFunction SampledFunction::from_function(const RadialGrid& grid,
                                               const std::function<double(double)>& f) {
    std::vector<double> vals(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) vals[i] = f(grid[i]);
    return SampledFunction(grid, std::move(vals));
}

double SampledFunction::interpolate(double r) const {
    const auto& nodes = grid_.nodes();
    if (r < nodes.front() || r > nodes.back()) return 0.0;
    const auto it = std::upper_bound(nodes.begin(), nodes.end(), r);
    if (it == nodes.begin()) return values_.front();
    if (it == nodes.end()) return values_.back();
    const std::size_t j = std::size_t(it - nodes.begin());
    const double w = (r - nodes[j - 1]) / (nodes[j] - nodes[j - 1]);
    return (1.0 - w) * values_[j - 1] + w * values_[j];
}

StieltjesMeasure::StieltjesMeasure(std::vector<Atom> atoms, SampledFunction density,
                                   bool signed_density)
    : atoms_(std::move(atoms)), density_(std::move(density)), signed_density_(signed_density) {
    std::sort(atoms_.begin(), atoms_.end(),
              [](const Atom& a, const Atom& b) { return a.location < b.location; });
    for (const Atom& a : atoms_) {
        if (a.location < 0.0 || a.weight < 0.0)
            throw std::invalid_argument("StieltjesMeasure: atoms need location, weight >= 0");
        if (a.location > density_.grid().r_max())
            throw std::invalid_argument("StieltjesMeasure: atom outside the density grid");
    }
    if (!signed_density_) {
        for (double v : density_.values())
            if (v < 0.0)
                throw std::invalid_argument(
                    "StieltjesMeasure: negative density without signed_density flag");
    }
}

StieltjesMeasure StieltjesMeasure::atoms_only(std::vector<Atom> atoms, const RadialGrid& grid) {
    return StieltjesMeasure(std::move(atoms),
                            SampledFunction(grid, std::vector<double>(grid.size(), 0.0)));
}

StieltjesMeasure StieltjesMeasure::density_only(SampledFunction density) {
    return StieltjesMeasure({}, std::move(density));
}

double StieltjesMeasure::total_mass() const {
    double mass = 0.0;
    for (const Atom& a : atoms_) mass += a.weight;
    mass += trapezoid(density_.grid().nodes(), density_.values());
    return mass;
}

TransformResult sine_transform(const SampledFunction& f, const KGrid& kgrid) {
    const auto& r = f.grid().nodes();
    TransformResult out{kgrid, {}, {}};
    out.values.reserve(kgrid.size());
    out.errors.reserve(kgrid.size());
    // Coarse subsample for the quadrature error estimate.
    std::vector<double> rc, fc;
    for (std::size_t i = 0; i < r.size(); i += 2) {
        rc.push_back(r[i]);
        fc.push_back(f[i]);
    }
    for (double k : kgrid.nodes()) {
        const double full = sin_integral(r, f.values(), k);
        const double coarse = sin_integral(rc, fc, k);
        // Abel bound for the tail of a function decaying to f(r_max).
        const double tail = k > 0.0 ? 2.0 * std::abs(f.values().back()) / k
                                    : std::abs(f.values().back()) * f.grid().r_max();
        out.values.push_back(cdouble(full, 0.0));
        out.errors.push_back(std::abs(full - coarse) + tail);
    }
    return out;
}

TitchmarshReport titchmarsh_check(const SampledFunction& f) {
    TitchmarshReport rep;
    const auto& r = f.grid().nodes();
    const auto& v = f.values();
    const std::size_t n = v.size();
    double scale = 0.0;
    for (double x : v) scale = std::max(scale, std::abs(x));
    rep.non_increasing = true;
    for (std::size_t i = 1; i + 1 < n; ++i) // skip node 0, where f may be singular
        if (v[i + 1] - v[i] > 1e-12 * scale) rep.non_increasing = false;

    // Near-origin growth exponent from the first positive nodes: f ~ r^-p is
    // integrable iff p < 1.
    rep.integrable_at_0 = true;
    if (n > 4 && v[1] > v[4] && v[4] > 0.0) {
        const double p = std::log(v[1] / v[4]) / std::log(r[4] / r[1]);
        rep.integrable_at_0 = p < 1.0;
    }
    // Outer decile must be small relative to the peak.
    double outer = 0.0;
    for (std::size_t i = std::size_t(0.9 * double(n)); i < n; ++i)
        outer = std::max(outer, std::abs(v[i]));
    rep.vanishes = scale == 0.0 || outer <= 1e-3 * scale;
    return rep;
}

TransformResult generalized_transform(const SampledFunction& f, const Potential& v,
                                      const KGrid& kgrid, const SolverOptions& opts) {
    const RadialGrid& grid = f.grid();
    TransformResult out{kgrid, {}, {}};
    std::vector<double> prod(grid.size());
    for (double k : kgrid.nodes()) {
        const WaveSolution phi = regular_solution(v, k, grid, opts);
        for (std::size_t i = 0; i < grid.size(); ++i) prod[i] = f[i] * phi.real_value(i);
        const double full = integrate_samples(grid.nodes(), prod);
        // Coarse estimate: trapezoid on every second node.
        std::vector<double> rc, pc;
        for (std::size_t i = 0; i < grid.size(); i += 2) {
            rc.push_back(grid[i]);
            pc.push_back(prod[i]);
        }
        const double coarse = trapezoid(rc, pc);
        const double tail =
            (k > 0.0 ? 2.0 / k : grid.r_max()) * std::abs(prod.back());
        out.values.push_back(cdouble(full, 0.0));
        out.errors.push_back(std::abs(full - coarse) + tail);
    }
    return out;
}

SampledFunction build_f_from_g(const SampledFunction& g, const WaveSolution& phi0,
                               const WaveSolution& chi0) {
    const RadialGrid& grid = g.grid();
    if (phi0.grid().size() != grid.size() || chi0.grid().size() != grid.size())
        throw std::invalid_argument("build_f_from_g: grids must match");
    for (double v : g.values())
        if (v < 0.0) throw std::invalid_argument("build_f_from_g: g must be >= 0");
    const std::size_t n = grid.size();
    std::vector<double> pg(n), cg(n);
    for (std::size_t i = 0; i < n; ++i) {
        pg[i] = phi0.real_value(i) * g[i];
        cg[i] = chi0.real_value(i) * g[i];
    }
    const std::vector<double> p = cumulative_to_right(grid.nodes(), pg);
    const std::vector<double> q = cumulative_to_right(grid.nodes(), cg);
    std::vector<double> f(n);
    for (std::size_t i = 0; i < n; ++i)
        f[i] = chi0.real_value(i) * p[i] - phi0.real_value(i) * q[i];
    return SampledFunction(grid, std::move(f));
}

OdeResidualReport ode_residual_check(const SampledFunction& f, const Potential& v,
                                     const SampledFunction& g) {
    const auto& r = f.grid().nodes();
    const std::size_t n = r.size();
    OdeResidualReport rep;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double hm = r[i] - r[i - 1], hp = r[i + 1] - r[i];
        const double second =
            2.0 * (f[i - 1] * hp - f[i] * (hm + hp) + f[i + 1] * hm) / (hm * hp * (hm + hp));
        const double residual = second - (v(r[i]) * f[i] + g[i]);
        rep.max_residual = std::max(rep.max_residual, std::abs(residual));
    }
    return rep;
}

namespace {

// Classify dyadic-window contributions to an L^p norm: geometric decay means
// convergence, flat or growing means divergence.
enum class WindowVerdict { converges, diverges, inconclusive };

WindowVerdict classify_windows(const std::vector<double>& contributions) {
    double scale = 0.0;
    for (double s : contributions) scale = std::max(scale, s);
    if (scale == 0.0) return WindowVerdict::converges;
    bool all_decay = true, any_flat = false;
    // Only the deep-window tail decides convergence; the first few windows can
    // carry transients (for example where the integrand passes through a zero).
    const std::size_t m0 = contributions.size() > 6 ? 4 : 1;
    for (std::size_t m = m0; m < contributions.size(); ++m) {
        if (contributions[m - 1] <= 1e-14 * scale) continue;
        const double ratio = contributions[m] / contributions[m - 1];
        if (ratio > 0.80) all_decay = false;
        if (ratio > 0.95) any_flat = true;
    }
    if (all_decay) return WindowVerdict::converges;
    if (any_flat) return WindowVerdict::diverges;
    return WindowVerdict::inconclusive;
}

} // namespace

LpMembershipReport lp_membership_check(const SampledFunction& g, double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("lp_membership_check: p must be >= 1");
    const auto& r = g.grid().nodes();
    const std::size_t n = r.size();
    // tg on the grid, skipping the origin node (t g finite there: t = 0).
    std::vector<double> tg(n);
    for (std::size_t i = 0; i < n; ++i) tg[i] = r[i] * g[i];
    const std::vector<double> h2 = cumulative_to_right(r, tg); // int_r^rmax t g
    // h1(r) = int_r^1 t g = h2(r) - h2(1)
    double h2_at_1 = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i)
        if (r[i] <= 1.0 && r[i + 1] > 1.0) {
            const double w = (1.0 - r[i]) / (r[i + 1] - r[i]);
            h2_at_1 = (1.0 - w) * h2[i] + w * h2[i + 1];
        }

    LpMembershipReport rep;
    // Windows [2^-(m+1), 2^-m] toward the origin for h1.
    std::vector<double> win1;
    for (double hi = 1.0; hi > 2.0 * r[1]; hi *= 0.5) {
        const double lo = 0.5 * hi;
        double acc = 0.0;
        for (std::size_t i = 1; i + 1 < n; ++i) {
            const double a = std::max(r[i], lo), b = std::min(r[i + 1], hi);
            if (b <= a) continue;
            const double h1a = std::max(0.0, h2[i] - h2_at_1);
            const double h1b = std::max(0.0, h2[i + 1] - h2_at_1);
            acc += 0.5 * (std::pow(h1a, p) + std::pow(h1b, p)) * (b - a);
        }
        win1.push_back(acc);
    }
    // Windows [2^m, 2^(m+1)] toward r_max for h2.
    std::vector<double> win2;
    for (double lo = 1.0; 2.0 * lo < r.back(); lo *= 2.0) {
        const double hi = 2.0 * lo;
        double acc = 0.0;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            const double a = std::max(r[i], lo), b = std::min(r[i + 1], hi);
            if (b <= a) continue;
            acc += 0.5 * (std::pow(h2[i], p) + std::pow(h2[i + 1], p)) * (b - a);
        }
        win2.push_back(acc);
    }
    const WindowVerdict v1 = classify_windows(win1);
    const WindowVerdict v2 = classify_windows(win2);
    rep.h1_in_lp_01 = v1 == WindowVerdict::converges;
    rep.h2_in_lp_1inf = v2 == WindowVerdict::converges;
    rep.inconclusive =
        v1 == WindowVerdict::inconclusive || v2 == WindowVerdict::inconclusive;
    return rep;
}

namespace {

cdouble stieltjes_with_jost(const StieltjesMeasure& alpha, const WaveSolution& jost,
                            double k, double* err) {
    const auto& r = jost.grid().nodes();
    const std::size_t n = r.size();
    cdouble sum(0.0, 0.0);
    for (const auto& atom : alpha.atoms()) sum += atom.weight * hermite_eval(jost, atom.location);
    // int density * f = int [density * f * e^{-ikr}] e^{ikr}, smooth prefactor.
    std::vector<cdouble> smooth(n);
    for (std::size_t i = 0; i < n; ++i)
        smooth[i] = alpha.density()[i] * jost.value()[i] * std::exp(cdouble(0.0, -k * r[i]));
    const cdouble full = osc_integral(r, std::span<const cdouble>(smooth), k);
    if (err) {
        std::vector<double> rc;
        std::vector<cdouble> sc;
        for (std::size_t i = 0; i < n; i += 2) {
            rc.push_back(r[i]);
            sc.push_back(smooth[i]);
        }
        const cdouble coarse = osc_integral(std::span<const double>(rc),
                                            std::span<const cdouble>(sc), k);
        *err = std::abs(full - coarse);
    }
    return sum + full;
}

} // namespace

TransformResult stieltjes_transform(const StieltjesMeasure& alpha, const Potential& v,
                                    const KGrid& kgrid, const SolverOptions& opts) {
    const RadialGrid& grid = alpha.density().grid();
    TransformResult out{kgrid, {}, {}};
    for (double k : kgrid.nodes()) {
        const WaveSolution jost = jost_solution(v, k, grid, opts);
        double err = 0.0;
        out.values.push_back(stieltjes_with_jost(alpha, jost, k, &err));
        out.errors.push_back(err);
    }
    return out;
}

cdouble stieltjes_value(const StieltjesMeasure& alpha, const Potential& v, double k,
                        const SolverOptions& opts) {
    if (k < 0.0) throw std::invalid_argument("stieltjes_value: k must be >= 0");
    const WaveSolution jost = jost_solution(v, k, alpha.density().grid(), opts);
    return stieltjes_with_jost(alpha, jost, k, nullptr);
}

namespace {

// Quadrature weights for int_0^{r_i}; weight of node j in row i. Simpson-grade
// composites keep the pushforward O(h^4); push_measure and invert_volterra must
// share these weights exactly so the discrete inversion is an identity.
inline double row_weight(std::size_t j, std::size_t i, double h) {
    if (i == 0) return 0.0;
    if (i == 1) return 0.5 * h;
    if (i == 3) return (j == 0 || j == 3) ? 3.0 * h / 8.0 : 9.0 * h / 8.0;
    if (i % 2 == 0) {
        if (j == 0 || j == i) return h / 3.0;
        return (j % 2 == 1) ? 4.0 * h / 3.0 : 2.0 * h / 3.0;
    }
    // Odd i >= 5: Simpson over the first i - 3 intervals, 3/8 rule over the rest.
    const std::size_t m = i - 3;
    double w = 0.0;
    if (j <= m) {
        if (j == 0 || j == m)
            w += h / 3.0;
        else
            w += (j % 2 == 1) ? 4.0 * h / 3.0 : 2.0 * h / 3.0;
    }
    if (j >= m) w += (j == m || j == i) ? 3.0 * h / 8.0 : 9.0 * h / 8.0;
    return w;
}

} // namespace

StieltjesMeasure push_measure(const StieltjesMeasure& alpha, const TriangularKernel& a) {
    const RadialGrid& grid = a.grid();
    const std::size_t n = grid.size();
    const double h = grid[1] - grid[0];
    // alpha's density resampled onto the kernel grid.
    std::vector<double> ad(n);
    for (std::size_t i = 0; i < n; ++i) ad[i] = alpha.density().interpolate(grid[i]);

    std::vector<double> beta(n);
    for (std::size_t i = 0; i < n; ++i) {
        double add = 0.0;
        for (std::size_t j = 0; j <= i; ++j) add += row_weight(j, i, h) * a.at(j, i) * ad[j];
        for (const auto& atom : alpha.atoms())
            if (atom.location <= grid[i]) add += atom.weight * a.interpolate(atom.location, grid[i]);
        beta[i] = ad[i] + add;
    }
    return StieltjesMeasure(alpha.atoms(), SampledFunction(grid, std::move(beta)),
                            alpha.signed_density());
}

SampledFunction invert_volterra(const SampledFunction& beta_density, const TriangularKernel& a) {
    const RadialGrid& grid = a.grid();
    const std::size_t n = grid.size();
    if (beta_density.grid().size() != n)
        throw std::invalid_argument("invert_volterra: density must live on the kernel grid");
    const double h = grid[1] - grid[0];
    std::vector<double> alpha(n);
    for (std::size_t i = 0; i < n; ++i) {
        double acc = beta_density[i];
        for (std::size_t j = 0; j < i; ++j) acc -= row_weight(j, i, h) * a.at(j, i) * alpha[j];
        alpha[i] = acc / (1.0 + row_weight(i, i, h) * a.at(i, i));
    }
    return SampledFunction(grid, std::move(alpha));
}

VolterraEnvelopeReport volterra_envelope_check(const SampledFunction& alpha_density,
                                               const SampledFunction& beta_density,
                                               const TriangularKernel& a) {
    const auto& r = beta_density.grid().nodes();
    const double m = a.max_value();
    const std::vector<double> beta = cumulative_from_left(r, beta_density.values());
    VolterraEnvelopeReport rep;
    rep.max_violation = -1e300;
    for (std::size_t i = 0; i < r.size(); ++i) {
        const double envelope = beta_density[i] * std::exp(m * beta[i]);
        rep.max_violation =
            std::max(rep.max_violation, std::abs(alpha_density[i]) - envelope);
    }
    rep.pass = rep.max_violation <= 1e-8;
    return rep;
}

} // namespace scatpos
