#include "scatpos/bochner.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <random>
#include <stdexcept>

#include "scatpos/quadrature.hpp"

namespace scatpos {

namespace {

// A density coming out of push_measure jumps at each atom location: the node
// there carries the right-hand limit. The density integral is therefore split
// at those nodes, with the left-hand limit recovered by quadratic
// extrapolation from the three preceding nodes.
struct DensitySegment {
    std::vector<double> r;
    std::vector<double> g;
};

std::vector<DensitySegment> split_at_atoms(const StieltjesMeasure& alpha) {
    const auto& r = alpha.density().grid().nodes();
    const std::size_t n = r.size();
    std::vector<std::size_t> cuts;
    for (const auto& atom : alpha.atoms()) {
        const auto it = std::lower_bound(r.begin(), r.end(), atom.location - 1e-12);
        const std::size_t j = std::size_t(it - r.begin());
        if (j >= 4 && j + 4 <= n) cuts.push_back(j);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    std::vector<DensitySegment> segs;
    std::size_t b = 0;
    auto push_segment = [&](std::size_t e, bool cut_end) {
        DensitySegment s;
        for (std::size_t i = b; i <= e; ++i) {
            s.r.push_back(r[i]);
            s.g.push_back(alpha.density()[i]);
        }
        if (cut_end) {
            // Lagrange quadratic through nodes e-3, e-2, e-1 evaluated at r[e].
            const double x0 = r[e - 3], x1 = r[e - 2], x2 = r[e - 1], x = r[e];
            const double y0 = alpha.density()[e - 3], y1 = alpha.density()[e - 2],
                         y2 = alpha.density()[e - 1];
            s.g.back() = y0 * (x - x1) * (x - x2) / ((x0 - x1) * (x0 - x2)) +
                         y1 * (x - x0) * (x - x2) / ((x1 - x0) * (x1 - x2)) +
                         y2 * (x - x0) * (x - x1) / ((x2 - x0) * (x2 - x1));
        }
        segs.push_back(std::move(s));
        b = e;
    };
    for (std::size_t j : cuts) push_segment(j, true);
    push_segment(n - 1, false);
    return segs;
}

} // namespace

TransformResult bochner_transform(const StieltjesMeasure& alpha, const KGrid& xgrid) {
    const std::vector<DensitySegment> segs = split_at_atoms(alpha);
    TransformResult out{xgrid, {}, {}};
    for (double x : xgrid.nodes()) {
        cdouble sum(0.0, 0.0);
        for (const auto& atom : alpha.atoms())
            sum += atom.weight * std::exp(cdouble(0.0, x * atom.location));
        cdouble full(0.0, 0.0);
        double err = 0.0;
        for (const auto& s : segs) {
            const cdouble part = osc_integral(std::span<const double>(s.r),
                                              std::span<const double>(s.g), x);
            full += part;
            if (s.r.size() >= 5) {
                std::vector<double> rc, dc;
                for (std::size_t i = 0; i < s.r.size(); i += 2) {
                    rc.push_back(s.r[i]);
                    dc.push_back(s.g[i]);
                }
                const cdouble coarse = osc_integral(std::span<const double>(rc),
                                                    std::span<const double>(dc), x);
                err += std::abs(part - coarse);
            }
        }
        out.values.push_back(sum + full);
        out.errors.push_back(err);
    }
    return out;
}

PositiveTypeReport positive_type_check(const ComplexSampler& f, std::size_t s,
                                       std::size_t trials, double tol,
                                       const PositiveTypeOptions& opts) {
    if (s < 2) throw std::invalid_argument("positive_type_check: need s >= 2");
    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> uni(0.0, opts.x_max);

    PositiveTypeReport rep;
    rep.trials = trials;
    rep.pass = true;
    bool first = true;
    for (std::size_t t = 0; t < trials; ++t) {
        std::vector<double> x(s);
        for (std::size_t m = 0; m + 1 < s; ++m) x[m] = uni(rng);
        // Keep one near-degenerate pair in every draw.
        x[s - 1] = std::min(opts.x_max, x[0] + opts.close_pair);

        Eigen::MatrixXcd gram(s, s);
        for (std::size_t m = 0; m < s; ++m)
            for (std::size_t n = 0; n < s; ++n) gram(long(m), long(n)) = f(x[m] - x[n]);

        const double scale = gram.cwiseAbs().maxCoeff() + 1e-300;
        const double asym = (gram - gram.adjoint()).cwiseAbs().maxCoeff();
        if (asym > opts.hermitian_tol * scale)
            throw std::invalid_argument(
                "positive_type_check: sampler violates F(-x) = conj(F(x))");

        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (gram + gram.adjoint()),
                                                           Eigen::EigenvaluesOnly);
        const double min_eig = es.eigenvalues().minCoeff();
        const double trace = gram.real().trace();
        const bool ok = min_eig >= -tol * trace;

        rep.records.push_back({x, min_eig, trace, ok});
        if (!ok) rep.pass = false;
        if (first || min_eig < rep.min_eigenvalue) {
            rep.min_eigenvalue = min_eig;
            rep.trace = trace;
            rep.sample_points = x;
            first = false;
        }
    }
    return rep;
}

PushforwardCheckReport pushforward_check(const StieltjesMeasure& alpha, const Potential& v,
                                      std::size_t s, std::size_t trials,
                                      const TriangularKernel& kernel, const KGrid& kgrid,
                                      double tol, const PositiveTypeOptions& opts) {
    PushforwardCheckReport rep;

    // Cache direct evaluations; the sampler sees both signs of k.
    auto cache = std::make_shared<std::map<double, cdouble>>();
    ComplexSampler sampler = [alpha, v, cache](double k) -> cdouble {
        const double kk = std::abs(k);
        auto it = cache->find(kk);
        cdouble val;
        if (it != cache->end()) {
            val = it->second;
        } else {
            val = stieltjes_value(alpha, v, kk);
            (*cache)[kk] = val;
        }
        return k < 0.0 ? std::conj(val) : val;
    };
    rep.psd = positive_type_check(sampler, s, trials, tol, opts);

    // Two-path identity: the direct Stieltjes transform vs Bochner transform of
    // the pushed-forward measure.
    const StieltjesMeasure beta = push_measure(alpha, kernel);
    const TransformResult direct = stieltjes_transform(alpha, v, kgrid);
    const TransformResult pushed = bochner_transform(beta, kgrid);
    for (std::size_t i = 0; i < kgrid.size(); ++i)
        rep.chain_residual =
            std::max(rep.chain_residual, std::abs(direct.values[i] - pushed.values[i]));
    rep.chain_pass = rep.chain_residual <= 1e-5 * (1.0 + alpha.total_mass());
    return rep;
}

} // namespace scatpos
