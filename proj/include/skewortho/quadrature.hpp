#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "skewortho/weight.hpp"

namespace skewortho {

struct Interval {
    double lo;
    double hi;
};

struct QuadratureRule {
    std::vector<double> nodes;    // strictly increasing
    std::vector<double> weights;  // all positive
    Interval support{};
    // Weight the rule is exact against; empty means the unit weight.
    std::optional<WeightSpec> associated_weight;
    // Rate c in x^a e^{-cx} or e^{-cx^2}; 1 for the plain classical weight.
    double scale = 1.0;

    std::size_t size() const { return nodes.size(); }
};

using RealFn = std::function<double(double)>;

// n-point Gauss rule against the classical weight, built from the three-term
// recurrence by Golub-Welsch.
QuadratureRule gauss_rule(const WeightSpec& weight, int n);

// Same, for x^a e^{-cx} (Laguerre) or e^{-cx^2} (Gaussian). Jacobi ignores c.
QuadratureRule gauss_rule_scaled(const WeightSpec& weight, int n, double c);

// Gauss-Legendre on [lo, hi].
QuadratureRule gauss_legendre(int n, double lo, double hi);

// Sum of w_i f(x_i). The caller divides by the associated weight beforehand.
double integrate(const QuadratureRule& rule, const RealFn& f);

struct IntegrationOptions {
    // Leading algebraic exponents of the integrand at finite endpoints.
    double lo_exponent = 0.0;
    double hi_exponent = 0.0;
    int panel_points = 24;
    int grading_levels = 36;
    // Uniform panels per half when the endpoint exponent is a non-negative integer.
    int smooth_panels = 6;
    double grading_ratio = 0.15;
    double tail_panel_width = 1.0;
    double tail_rel_tol = 1e-18;
    int max_tail_panels = 20000;
};

// Integral of f over [lo, hi]; either end may be infinite. Finite ends get a
// geometrically graded mesh whose innermost panel is weight-matched to the
// endpoint exponent; infinite ends are marched until the integrand dies out.
double integrate_interval(const RealFn& f, Interval iv, const IntegrationOptions& opt = {});

// Vector-valued form: f writes dim components at x into out. All components
// share one mesh, which is what Gram-matrix assembly needs.
using VecFn = std::function<void(double x, double* out)>;
std::vector<double> integrate_interval_vec(const VecFn& f, std::size_t dim, Interval iv,
                                           const IntegrationOptions& opt = {});

// integral of eps(x - y) f(y) dy over the support, eps(r) = sign(r)/2.
double epsilon_integral(const RealFn& f, double x, Interval support,
                        const IntegrationOptions& opt = {});

// Endpoint exponents of a classical weight, for IntegrationOptions.
IntegrationOptions options_for(const WeightSpec& w, double power = 1.0);

}  // namespace skewortho
