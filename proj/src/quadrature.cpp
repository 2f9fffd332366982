#include "scatpos/quadrature.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace scatpos {

namespace {

// mu_j = int_a^b s^j exp(i k s) ds, j = 0, 1, 2. |a|, |b| are small (panel-
// local coordinates), so the direct formulas are well conditioned except for
// small |k| (b - a), where a Taylor series in k is used instead.
void panel_moments(double a, double b, double k, cdouble mu[3]) {
    const double width = b - a;
    const double q = std::abs(k) * std::max(std::abs(a), std::abs(b));
    if (q < 0.5) {
        // mu_j = sum_n (ik)^n / n! * (b^{n+j+1} - a^{n+j+1}) / (n+j+1)
        for (int j = 0; j < 3; ++j) mu[j] = 0.0;
        cdouble coef(1.0, 0.0); // (ik)^n / n!
        double pa = a, pb = b;  // a^{n+1}, b^{n+1} at j = 0
        for (int n = 0; n < 24; ++n) {
            double qa = pa, qb = pb; // running powers for j = 0,1,2
            bool tiny = true;
            for (int j = 0; j < 3; ++j) {
                const cdouble term = coef * (qb - qa) / double(n + j + 1);
                mu[j] += term;
                if (std::abs(term) > 1e-18 * (1.0 + width)) tiny = false;
                qa *= a;
                qb *= b;
            }
            if (tiny && n > 2) break;
            coef *= cdouble(0.0, k) / double(n + 1);
            pa *= a;
            pb *= b;
        }
        return;
    }
    const cdouble ik(0.0, k);
    const cdouble ea = std::exp(cdouble(0.0, k * a));
    const cdouble eb = std::exp(cdouble(0.0, k * b));
    mu[0] = (eb - ea) / ik;
    mu[1] = (b * eb - a * ea) / ik - mu[0] / ik;
    mu[2] = (b * b * eb - a * a * ea) / ik - 2.0 * mu[1] / ik;
}

// int over [t0, t2] of the quadratic through (t_i, g_i) times exp(ikt).
cdouble double_panel(double t0, double t1, double t2, cdouble g0, cdouble g1, cdouble g2,
                     double k) {
    const double c = 0.5 * (t0 + t2);
    const double s0 = t0 - c, s1 = t1 - c, s2 = t2 - c;
    const double d0 = (s0 - s1) * (s0 - s2);
    const double d1 = (s1 - s0) * (s1 - s2);
    const double d2 = (s2 - s0) * (s2 - s1);
    const cdouble a2 = g0 / d0 + g1 / d1 + g2 / d2;
    const cdouble a1 = -(g0 * (s1 + s2) / d0 + g1 * (s0 + s2) / d1 + g2 * (s0 + s1) / d2);
    const cdouble a0 = g0 * s1 * s2 / d0 + g1 * s0 * s2 / d1 + g2 * s0 * s1 / d2;
    cdouble mu[3];
    panel_moments(s0, s2, k, mu);
    return std::exp(cdouble(0.0, k * c)) * (a0 * mu[0] + a1 * mu[1] + a2 * mu[2]);
}

cdouble single_panel(double t0, double t1, cdouble g0, cdouble g1, double k) {
    const double c = 0.5 * (t0 + t1);
    const double s0 = t0 - c, s1 = t1 - c;
    const cdouble slope = (g1 - g0) / (s1 - s0);
    const cdouble a0 = g0 - slope * s0;
    cdouble mu[3];
    panel_moments(s0, s1, k, mu);
    return std::exp(cdouble(0.0, k * c)) * (a0 * mu[0] + slope * mu[1]);
}

} // namespace

double trapezoid(std::span<const double> t, std::span<const double> g) {
    if (t.size() != g.size() || t.size() < 2)
        throw std::invalid_argument("trapezoid: mismatched or too-short arrays");
    double sum = 0.0;
    for (std::size_t i = 1; i < t.size(); ++i)
        sum += 0.5 * (g[i] + g[i - 1]) * (t[i] - t[i - 1]);
    return sum;
}

double integrate_samples(std::span<const double> t, std::span<const double> g) {
    const std::size_t n = t.size();
    if (n < 3) return trapezoid(t, g);
    const double h = t[1] - t[0];
    for (std::size_t i = 2; i < n; ++i)
        if (std::abs((t[i] - t[i - 1]) - h) > 1e-9 * h) return trapezoid(t, g);
    double sum = 0.0;
    std::size_t i = 0;
    while (i + 2 < n) {
        sum += h / 3.0 * (g[i] + 4.0 * g[i + 1] + g[i + 2]);
        i += 2;
    }
    if (i + 1 < n) sum += 0.5 * h * (g[i] + g[i + 1]);
    return sum;
}

std::vector<double> cumulative_from_left(std::span<const double> t, std::span<const double> g) {
    std::vector<double> out(t.size(), 0.0);
    for (std::size_t i = 1; i < t.size(); ++i)
        out[i] = out[i - 1] + 0.5 * (g[i] + g[i - 1]) * (t[i] - t[i - 1]);
    return out;
}

std::vector<double> cumulative_to_right(std::span<const double> t, std::span<const double> g) {
    std::vector<double> out(t.size(), 0.0);
    for (std::size_t i = t.size() - 1; i-- > 0;)
        out[i] = out[i + 1] + 0.5 * (g[i] + g[i + 1]) * (t[i + 1] - t[i]);
    return out;
}

cdouble osc_integral(std::span<const double> t, std::span<const cdouble> g, double k) {
    if (t.size() != g.size() || t.size() < 2)
        throw std::invalid_argument("osc_integral: mismatched or too-short arrays");
    cdouble sum(0.0, 0.0);
    std::size_t i = 0;
    while (i + 2 < t.size()) {
        sum += double_panel(t[i], t[i + 1], t[i + 2], g[i], g[i + 1], g[i + 2], k);
        i += 2;
    }
    if (i + 1 < t.size()) sum += single_panel(t[i], t[i + 1], g[i], g[i + 1], k);
    return sum;
}

cdouble osc_integral(std::span<const double> t, std::span<const double> g, double k) {
    std::vector<cdouble> gc(g.begin(), g.end());
    return osc_integral(t, std::span<const cdouble>(gc), k);
}

double cos_integral(std::span<const double> t, std::span<const double> g, double k) {
    return osc_integral(t, g, k).real();
}

double sin_integral(std::span<const double> t, std::span<const double> g, double k) {
    return osc_integral(t, g, k).imag();
}

namespace {

// E1(ix) by modified Lentz continued fraction; valid for x >= ~1.
cdouble e1_imag_axis_cf(double x) {
    const cdouble z(0.0, x);
    const double tiny = 1e-290;
    cdouble b = z + 1.0;
    cdouble c = 1.0 / tiny;
    cdouble d = 1.0 / b;
    cdouble h = d;
    for (int i = 1; i <= 400; ++i) {
        const double a = -double(i) * double(i);
        b += 2.0;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        if (c == cdouble(0.0)) c = tiny;
        const cdouble del = c * d;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    return std::exp(-z) * h;
}

} // namespace

double sine_integral_fn(double x) {
    if (x < 0.0) return -sine_integral_fn(-x);
    if (x < 4.0) {
        // Si(x) = sum (-1)^n x^{2n+1} / ((2n+1) (2n+1)!)
        double sum = 0.0, term = x;
        for (int n = 0; n < 40; ++n) {
            sum += term / double(2 * n + 1);
            term *= -x * x / double((2 * n + 2) * (2 * n + 3));
            if (std::abs(term) < 1e-18) break;
        }
        return sum;
    }
    // int_x^inf exp(-iu)/u du = E1(ix) = -Ci(x) - i (pi/2 - Si(x))
    return 0.5 * M_PI + e1_imag_axis_cf(x).imag();
}

double cosine_integral_fn(double x) {
    if (!(x > 0.0)) throw std::invalid_argument("cosine_integral_fn: need x > 0");
    if (x < 4.0) {
        // Ci(x) = gamma + ln x + sum (-1)^n x^{2n} / (2n (2n)!)
        const double euler_gamma = 0.57721566490153286;
        double sum = 0.0, term = -x * x / 2.0;
        for (int n = 1; n < 40; ++n) {
            sum += term / double(2 * n);
            term *= -x * x / double((2 * n + 1) * (2 * n + 2));
            if (std::abs(term) < 1e-18) break;
        }
        return euler_gamma + std::log(x) + sum;
    }
    return -e1_imag_axis_cf(x).real();
}

double cosine_tail_over_k2(double k_cut, double u) {
    if (!(k_cut > 0.0)) throw std::invalid_argument("cosine_tail_over_k2: need k_cut > 0");
    u = std::abs(u);
    if (u == 0.0) return 1.0 / k_cut;
    // Integration by parts against sin(ku)/k.
    return std::cos(k_cut * u) / k_cut -
           u * (0.5 * M_PI - sine_integral_fn(k_cut * u));
}

} // namespace scatpos
