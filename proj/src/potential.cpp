#include "scatpos/potential.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace scatpos {

namespace {

double require_positive(const std::map<std::string, double>& params, const std::string& key) {
    auto it = params.find(key);
    if (it == params.end())
        throw std::invalid_argument("make_potential: missing parameter '" + key + "'");
    if (!(it->second > 0.0))
        throw std::invalid_argument("make_potential: parameter '" + key + "' must be > 0");
    return it->second;
}

} // namespace

Potential Potential::zero() {
    Potential v;
    v.family_ = PotentialFamily::zero;
    return v;
}

Potential Potential::exponential(double strength, double range) {
    if (!(strength > 0.0) || !(range > 0.0))
        throw std::invalid_argument("exponential potential needs strength > 0 and range > 0");
    Potential v;
    v.family_ = PotentialFamily::exponential;
    v.params_ = {{"g", strength}, {"a", range}};
    return v;
}

Potential Potential::square_barrier(double height, double width) {
    if (!(height > 0.0) || !(width > 0.0))
        throw std::invalid_argument("square_barrier potential needs height > 0 and width > 0");
    Potential v;
    v.family_ = PotentialFamily::square_barrier;
    v.params_ = {{"height", height}, {"width", width}};
    return v;
}

Potential Potential::gaussian(double strength, double range) {
    if (!(strength > 0.0) || !(range > 0.0))
        throw std::invalid_argument("gaussian potential needs strength > 0 and range > 0");
    Potential v;
    v.family_ = PotentialFamily::gaussian;
    v.params_ = {{"g", strength}, {"a", range}};
    return v;
}

Potential Potential::tabulated(std::vector<double> r, std::vector<double> v) {
    if (r.size() != v.size() || r.size() < 2)
        throw std::invalid_argument("tabulated potential needs matching r/v arrays, size >= 2");
    if (r.front() != 0.0)
        throw std::invalid_argument("tabulated potential must start at r = 0");
    for (std::size_t i = 1; i < r.size(); ++i)
        if (!(r[i] > r[i - 1]))
            throw std::invalid_argument("tabulated potential abscissae must be increasing");
    for (double val : v)
        if (val < 0.0 || !std::isfinite(val))
            throw std::invalid_argument("tabulated potential values must be finite and >= 0");
    Potential p;
    p.family_ = PotentialFamily::tabulated;
    p.tab_r_ = std::move(r);
    p.tab_v_ = std::move(v);
    return p;
}

double Potential::operator()(double r) const {
    if (r < 0.0) throw std::invalid_argument("Potential evaluated at r < 0");
    switch (family_) {
        case PotentialFamily::zero:
            return 0.0;
        case PotentialFamily::exponential:
            return params_.at("g") * std::exp(-r / params_.at("a"));
        case PotentialFamily::square_barrier:
            return r < params_.at("width") ? params_.at("height") : 0.0;
        case PotentialFamily::gaussian: {
            const double u = r / params_.at("a");
            return params_.at("g") * std::exp(-u * u);
        }
        case PotentialFamily::tabulated: {
            // Piecewise linear; preserves positivity of the table.
            if (r >= tab_r_.back()) return 0.0;
            auto it = std::upper_bound(tab_r_.begin(), tab_r_.end(), r);
            const std::size_t j = std::size_t(it - tab_r_.begin());
            const double r0 = tab_r_[j - 1], r1 = tab_r_[j];
            const double w = (r - r0) / (r1 - r0);
            return (1.0 - w) * tab_v_[j - 1] + w * tab_v_[j];
        }
    }
    return 0.0;
}

double Potential::tail_integral(double x) const {
    if (x < 0.0) x = 0.0;
    switch (family_) {
        case PotentialFamily::zero:
            return 0.0;
        case PotentialFamily::exponential: {
            const double g = params_.at("g"), a = params_.at("a");
            return g * a * std::exp(-x / a);
        }
        case PotentialFamily::square_barrier: {
            const double h = params_.at("height"), w = params_.at("width");
            return x < w ? h * (w - x) : 0.0;
        }
        case PotentialFamily::gaussian: {
            const double g = params_.at("g"), a = params_.at("a");
            return g * a * 0.5 * std::sqrt(M_PI) * std::erfc(x / a);
        }
        case PotentialFamily::tabulated: {
            double sum = 0.0;
            for (std::size_t j = 1; j < tab_r_.size(); ++j) {
                const double a = tab_r_[j - 1], b = tab_r_[j];
                if (b <= x) continue;
                const double lo = std::max(a, x);
                const double va = (*this)(lo), vb = tab_v_[j];
                sum += 0.5 * (va + vb) * (b - lo);
            }
            return sum;
        }
    }
    return 0.0;
}

double Potential::tail_first_moment(double x) const {
    if (x < 0.0) x = 0.0;
    switch (family_) {
        case PotentialFamily::zero:
            return 0.0;
        case PotentialFamily::exponential: {
            const double g = params_.at("g"), a = params_.at("a");
            return g * a * (x + a) * std::exp(-x / a);
        }
        case PotentialFamily::square_barrier: {
            const double h = params_.at("height"), w = params_.at("width");
            return x < w ? 0.5 * h * (w * w - x * x) : 0.0;
        }
        case PotentialFamily::gaussian: {
            const double g = params_.at("g"), a = params_.at("a");
            const double u = x / a;
            return 0.5 * g * a * a * std::exp(-u * u);
        }
        case PotentialFamily::tabulated: {
            double sum = 0.0;
            for (std::size_t j = 1; j < tab_r_.size(); ++j) {
                const double a = tab_r_[j - 1], b = tab_r_[j];
                if (b <= x) continue;
                const double lo = std::max(a, x);
                const double va = lo * (*this)(lo), vb = b * tab_v_[j];
                sum += 0.5 * (va + vb) * (b - lo);
            }
            return sum;
        }
    }
    return 0.0;
}

double Potential::sup_bound() const {
    switch (family_) {
        case PotentialFamily::zero:
            return 0.0;
        case PotentialFamily::exponential:
        case PotentialFamily::gaussian:
            return params_.at("g");
        case PotentialFamily::square_barrier:
            return params_.at("height");
        case PotentialFamily::tabulated:
            return *std::max_element(tab_v_.begin(), tab_v_.end());
    }
    return 0.0;
}

Potential make_potential(const std::string& family,
                         const std::map<std::string, double>& params) {
    return make_potential(family, params, {}, {});
}

Potential make_potential(const std::string& family,
                         const std::map<std::string, double>& params,
                         const std::vector<double>& tab_r,
                         const std::vector<double>& tab_v) {
    if (family == "zero") return Potential::zero();
    if (family == "exponential")
        return Potential::exponential(require_positive(params, "g"), require_positive(params, "a"));
    if (family == "square_barrier")
        return Potential::square_barrier(require_positive(params, "height"),
                                         require_positive(params, "width"));
    if (family == "gaussian")
        return Potential::gaussian(require_positive(params, "g"), require_positive(params, "a"));
    if (family == "tabulated") return Potential::tabulated(tab_r, tab_v);
    throw std::invalid_argument("make_potential: unknown family '" + family + "'");
}

IntegrabilityReport check_integrability(const Potential& v, double tol) {
    IntegrabilityReport rep;
    if (v.is_zero()) {
        rep.pass = true;
        return rep;
    }
    // Quadrature on a fixed window plus the family's analytic/table tail.
    const double cut = 50.0;
    const std::size_t n01 = 4001, nfull = 80001;
    auto simpson = [](auto f, double a, double b, std::size_t n) {
        // n odd (nodes), composite Simpson
        const double h = (b - a) / double(n - 1);
        double s = f(a) + f(b);
        for (std::size_t i = 1; i + 1 < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + double(i) * h);
        return s * h / 3.0;
    };
    rep.moment_01 = simpson([&](double r) { return v(r); }, 0.0, 1.0, n01);
    rep.tail_estimate = v.tail_first_moment(cut);
    rep.moment_r_full =
        simpson([&](double r) { return r * v(r); }, 0.0, cut, nfull) + rep.tail_estimate;
    rep.pass = std::isfinite(rep.moment_r_full) && rep.tail_estimate < tol;
    return rep;
}

double choose_truncation(const Potential& v, double eps, double hard_cap) {
    if (!(eps > 0.0)) throw std::invalid_argument("choose_truncation: eps must be > 0");
    if (v.tail_first_moment(1.0) < eps) return 1.0;
    double lo = 1.0, hi = 1.0;
    while (v.tail_first_moment(hi) >= eps) {
        hi *= 2.0;
        if (hi > hard_cap)
            throw std::runtime_error("choose_truncation: tail does not reach eps below hard cap");
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (v.tail_first_moment(mid) < eps ? hi : lo) = mid;
    }
    return hi;
}

} // namespace scatpos
