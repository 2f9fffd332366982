#pragma once

#include <map>
#include <string>
#include <vector>

namespace scatpos {

enum class PotentialFamily { zero, exponential, square_barrier, gaussian, tabulated };

// Non-negative potential on [0, inf) with closed-form (or table-based) tail
// integrals, so the first-moment condition int r V dr < inf can be checked
// without open-ended numerical truncation.
class Potential {
public:
    static Potential zero();
    static Potential exponential(double strength, double range);      // g exp(-r/a)
    static Potential square_barrier(double height, double width);      // h on [0, w)
    static Potential gaussian(double strength, double range);          // g exp(-(r/a)^2)
    static Potential tabulated(std::vector<double> r, std::vector<double> v);

    PotentialFamily family() const { return family_; }
    const std::map<std::string, double>& params() const { return params_; }

    double operator()(double r) const;

    // int_x^inf V(u) du
    double tail_integral(double x) const;
    // int_x^inf u V(u) du
    double tail_first_moment(double x) const;

    bool is_zero() const { return family_ == PotentialFamily::zero; }
    // Upper bound of V on [0, inf); used to size ODE steps.
    double sup_bound() const;

private:
    Potential() = default;

    PotentialFamily family_ = PotentialFamily::zero;
    std::map<std::string, double> params_;
    std::vector<double> tab_r_, tab_v_;
};

// Named-parameter front end used by the CLI config path.
Potential make_potential(const std::string& family,
                         const std::map<std::string, double>& params);
Potential make_potential(const std::string& family,
                         const std::map<std::string, double>& params,
                         const std::vector<double>& tab_r,
                         const std::vector<double>& tab_v);

struct IntegrabilityReport {
    double moment_01 = 0.0;      // int_0^1 V
    double moment_r_full = 0.0;  // int_0^inf r V
    double tail_estimate = 0.0;  // tail contribution beyond the truncation point
    bool pass = false;
};

IntegrabilityReport check_integrability(const Potential& v, double tol);

// Smallest R >= 1 with int_R^inf r V dr < eps. Throws if no R below hard_cap works.
double choose_truncation(const Potential& v, double eps, double hard_cap = 1e3);

} // namespace scatpos
