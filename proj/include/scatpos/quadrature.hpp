#pragma once

#include <complex>
#include <span>
#include <vector>

namespace scatpos {

using cdouble = std::complex<double>;

// int over the sampled range of g(t) dt, trapezoidal rule.
double trapezoid(std::span<const double> t, std::span<const double> g);

// Composite Simpson when the nodes are uniformly spaced, trapezoid otherwise.
double integrate_samples(std::span<const double> t, std::span<const double> g);

// Running integral from the left edge: out[i] = int_{t0}^{t_i} g dt.
std::vector<double> cumulative_from_left(std::span<const double> t, std::span<const double> g);
// Running integral to the right edge: out[i] = int_{t_i}^{t_end} g dt.
std::vector<double> cumulative_to_right(std::span<const double> t, std::span<const double> g);

// Filon-type quadrature of int g(t) exp(i k t) dt over the sampled range.
// g is interpolated by a quadratic on each pair of adjacent panels and the
// oscillatory moments are integrated exactly, so accuracy is uniform in k.
cdouble osc_integral(std::span<const double> t, std::span<const cdouble> g, double k);
cdouble osc_integral(std::span<const double> t, std::span<const double> g, double k);

// Real-valued g: int g(t) cos(kt) dt and int g(t) sin(kt) dt.
double cos_integral(std::span<const double> t, std::span<const double> g, double k);
double sin_integral(std::span<const double> t, std::span<const double> g, double k);

// Sine and cosine integrals Si(x) = int_0^x sin(t)/t dt, Ci(x) for x > 0.
double sine_integral_fn(double x);
double cosine_integral_fn(double x);

// int_K^inf cos(k u) / k^2 dk for K > 0 (even in u). Used to append the
// analytic large-k tail of slowly decaying cosine transforms.
double cosine_tail_over_k2(double k_cut, double u);

} // namespace scatpos
