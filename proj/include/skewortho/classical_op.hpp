#pragma once

#include <vector>

#include "skewortho/weight.hpp"

namespace skewortho {

// Recurrence x P_j = up P_{j+1} + diag P_j + down P_{j-1}.
struct Recurrence {
    double up;
    double diag;
    double down;
};

Recurrence recurrence_coefficients(const WeightSpec& w, int j);

// P_j(x) by forward recurrence; zero for j < 0.
double op_value(const WeightSpec& w, int j, double x);
// P_0..P_{n-1} at x into out[0..n).
void op_values(const WeightSpec& w, double x, int n, double* out);
// dP_j/dx through the parameter-shift identities.
double op_derivative(const WeightSpec& w, int j, double x);
// P'_0..P'_{n-1} and P''_0..P''_{n-1} at x (second may be null).
void op_derivatives(const WeightSpec& w, double x, int n, double* d1, double* d2);
double op_log_norm(const WeightSpec& w, int j);
double op_norm(const WeightSpec& w, int j);
double op_leading_coefficient(const WeightSpec& w, int j);

// Constants of the weighted-derivative identities (duality basis).
double jacobi_A(double a, double b, int j);
double jacobi_B(double a, double b, int j);   // zero for j < 0
double laguerre_A(double a, int j);
double laguerre_B(double a, int j);           // zero for j < 0

enum class ShiftVariant { JacobiShift, LaguerreShift, Hermite };

class OpFamily {
public:
    OpFamily(WeightSpec weight, int max_order);

    const WeightSpec& weight() const { return weight_; }
    int max_order() const { return max_order_; }
    const Recurrence& q(int j) const;

    double eval(int j, double x) const;
    double norm(int j) const;
    double log_norm(int j) const;
    double leading_coefficient(int j) const;

    // Derivative of the weighted polynomial evaluated by the right-hand side
    // of the identity, never by differencing:
    //   JacobiShift   d/dx{w_{a+1,b+1} P_j^{2a+1,2b+1}}
    //   LaguerreShift d/dx{w_{a+1}(x) L_j^{2a+1}(2x)}
    //   Hermite       d/dx{e^{-x^2/2} H_j}
    // a and b are the base parameters of this family's weight.
    double weighted_derivative(ShiftVariant variant, int j, double x) const;

private:
    void check_order(int j) const;

    WeightSpec weight_;
    int max_order_;
    std::vector<Recurrence> q_;
    std::vector<double> log_h_;
};

}  // namespace skewortho
