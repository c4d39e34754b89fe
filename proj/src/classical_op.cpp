#include "skewortho/classical_op.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace skewortho {

namespace {

Recurrence jacobi_q(double a, double b, int j) {
    const double s = a + b;
    Recurrence r{};
    if (j == 0) {
        // removable singularities at a+b = 0 and a+b = -1
        r.up = 2.0 / (2.0 + s);
        r.diag = (b - a) / (2.0 + s);
        r.down = 0.0;
        return r;
    }
    const double jj = j;
    r.up = 2.0 * (jj + 1) * (jj + 1 + s) / ((2 * jj + 2 + s) * (2 * jj + 1 + s));
    r.diag = (b * b - a * a) / ((2 * jj + 2 + s) * (2 * jj + s));
    r.down = 2.0 * (jj + a) * (jj + b) / ((2 * jj + 1 + s) * (2 * jj + s));
    return r;
}

}  // namespace

Recurrence recurrence_coefficients(const WeightSpec& w, int j) {
    if (j < 0) throw OrderRangeError("negative recurrence index");
    switch (w.kind) {
        case WeightKind::Jacobi: return jacobi_q(w.a, w.b, j);
        case WeightKind::Laguerre: return {-(j + 1.0), 2.0 * j + w.a + 1.0, -(j + w.a)};
        default: return {0.5, 0.0, static_cast<double>(j)};
    }
}

void op_values(const WeightSpec& w, double x, int n, double* out) {
    if (n <= 0) return;
    out[0] = 1.0;
    if (n == 1) return;
    Recurrence r0 = recurrence_coefficients(w, 0);
    out[1] = (x - r0.diag) / r0.up;
    for (int j = 1; j + 1 < n; ++j) {
        Recurrence r = recurrence_coefficients(w, j);
        out[j + 1] = ((x - r.diag) * out[j] - r.down * out[j - 1]) / r.up;
    }
}

double op_value(const WeightSpec& w, int j, double x) {
    if (j < 0) return 0.0;
    if (j == 0) return 1.0;
    double pm = 1.0;
    Recurrence r0 = recurrence_coefficients(w, 0);
    double p = (x - r0.diag) / r0.up;
    for (int k = 1; k < j; ++k) {
        Recurrence r = recurrence_coefficients(w, k);
        double next = ((x - r.diag) * p - r.down * pm) / r.up;
        pm = p;
        p = next;
    }
    return p;
}

double op_derivative(const WeightSpec& w, int j, double x) {
    if (j <= 0) return 0.0;
    switch (w.kind) {
        case WeightKind::Jacobi:
            return 0.5 * (j + w.a + w.b + 1.0) *
                   op_value(WeightSpec::jacobi(w.a + 1, w.b + 1), j - 1, x);
        case WeightKind::Laguerre:
            return -op_value(WeightSpec::laguerre(w.a + 1), j - 1, x);
        default: return 2.0 * j * op_value(w, j - 1, x);
    }
}

namespace {

// Order shift j -> j-1 with the parameter shift, as (factor_j, shifted weight).
double derivative_factor(const WeightSpec& w, int j) {
    switch (w.kind) {
        case WeightKind::Jacobi: return 0.5 * (j + w.a + w.b + 1.0);
        case WeightKind::Laguerre: return -1.0;
        default: return 2.0 * j;
    }
}

WeightSpec derivative_weight(const WeightSpec& w) {
    switch (w.kind) {
        case WeightKind::Jacobi: return WeightSpec::jacobi(w.a + 1, w.b + 1);
        case WeightKind::Laguerre: return WeightSpec::laguerre(w.a + 1);
        default: return w;
    }
}

}  // namespace

void op_derivatives(const WeightSpec& w, double x, int n, double* d1, double* d2) {
    if (n <= 0) return;
    const WeightSpec w1 = derivative_weight(w);
    std::vector<double> p1(n);
    op_values(w1, x, n, p1.data());
    d1[0] = 0.0;
    for (int j = 1; j < n; ++j) d1[j] = derivative_factor(w, j) * p1[j - 1];
    if (!d2) return;
    const WeightSpec w2 = derivative_weight(w1);
    std::vector<double> p2(n);
    op_values(w2, x, n, p2.data());
    d2[0] = 0.0;
    if (n > 1) d2[1] = 0.0;
    for (int j = 2; j < n; ++j)
        d2[j] = derivative_factor(w, j) * derivative_factor(w1, j - 1) * p2[j - 2];
}

double op_log_norm(const WeightSpec& w, int j) {
    if (j < 0) throw OrderRangeError("negative order");
    switch (w.kind) {
        case WeightKind::Jacobi: {
            const double a = w.a, b = w.b, s = a + b;
            if (j == 0)
                return (s + 1) * std::numbers::ln2 + std::lgamma(a + 1) + std::lgamma(b + 1) -
                       std::lgamma(s + 2);
            return (s + 1) * std::numbers::ln2 - std::log(2.0 * j + s + 1) + std::lgamma(j + a + 1) +
                   std::lgamma(j + b + 1) - std::lgamma(j + 1.0) - std::lgamma(j + s + 1);
        }
        case WeightKind::Laguerre: return std::lgamma(j + w.a + 1) - std::lgamma(j + 1.0);
        default:
            return 0.5 * std::log(std::numbers::pi) + j * std::numbers::ln2 + std::lgamma(j + 1.0);
    }
}

double op_norm(const WeightSpec& w, int j) { return std::exp(op_log_norm(w, j)); }

double op_leading_coefficient(const WeightSpec& w, int j) {
    if (j < 0) throw OrderRangeError("negative order");
    switch (w.kind) {
        case WeightKind::Jacobi: {
            if (j == 0) return 1.0;
            const double s = w.a + w.b;
            return std::exp(std::lgamma(2.0 * j + s + 1) - j * std::numbers::ln2 -
                            std::lgamma(j + 1.0) - std::lgamma(j + s + 1));
        }
        case WeightKind::Laguerre: return (j % 2 ? -1.0 : 1.0) * std::exp(-std::lgamma(j + 1.0));
        default: return std::ldexp(1.0, j);
    }
}

double jacobi_A(double a, double b, int j) { return -j * (j + 2 * a + 2 * b + 2) / (2.0 * j + 2 * a + 2 * b + 1); }

double jacobi_B(double a, double b, int j) {
    if (j < 0) return 0.0;
    return -(j + 2 * a + 2) * (j + 2 * b + 2) / (2.0 * j + 2 * a + 2 * b + 5);
}

double laguerre_A(double, int j) { return j; }

double laguerre_B(double a, int j) { return j < 0 ? 0.0 : j + 2 * a + 2; }

OpFamily::OpFamily(WeightSpec weight, int max_order) : weight_(weight), max_order_(max_order) {
    weight_.validate();
    if (max_order < 0) throw OrderRangeError("max_order must be non-negative");
    q_.reserve(max_order + 1);
    log_h_.reserve(max_order + 1);
    for (int j = 0; j <= max_order; ++j) {
        q_.push_back(recurrence_coefficients(weight_, j));
        log_h_.push_back(op_log_norm(weight_, j));
    }
}

void OpFamily::check_order(int j) const {
    if (j > max_order_)
        throw OrderRangeError("order " + std::to_string(j) + " exceeds max_order " +
                              std::to_string(max_order_));
}

const Recurrence& OpFamily::q(int j) const {
    if (j < 0) throw OrderRangeError("negative order");
    check_order(j);
    return q_[j];
}

double OpFamily::eval(int j, double x) const {
    check_order(j);
    return op_value(weight_, j, x);
}

double OpFamily::norm(int j) const { return std::exp(log_norm(j)); }

double OpFamily::log_norm(int j) const {
    if (j < 0) throw OrderRangeError("negative order");
    check_order(j);
    return log_h_[j];
}

double OpFamily::leading_coefficient(int j) const {
    check_order(j);
    return op_leading_coefficient(weight_, j);
}

double OpFamily::weighted_derivative(ShiftVariant variant, int j, double x) const {
    check_order(j + 1);
    const double a = weight_.a, b = weight_.b;
    switch (variant) {
        case ShiftVariant::JacobiShift: {
            const WeightSpec d = WeightSpec::jacobi(2 * a + 1, 2 * b + 1);
            return WeightSpec::jacobi(a, b)(x) *
                   (jacobi_A(a, b, j + 1) * op_value(d, j + 1, x) - jacobi_B(a, b, j - 1) * op_value(d, j - 1, x));
        }
        case ShiftVariant::LaguerreShift: {
            const WeightSpec d = WeightSpec::laguerre(2 * a + 1);
            return 0.5 * WeightSpec::laguerre(a)(x) *
                   (laguerre_A(a, j + 1) * op_value(d, j + 1, 2 * x) -
                    laguerre_B(a, j - 1) * op_value(d, j - 1, 2 * x));
        }
        default: {
            const WeightSpec h = WeightSpec::gaussian();
            return std::exp(-0.5 * x * x) * (-0.5 * op_value(h, j + 1, x) + j * op_value(h, j - 1, x));
        }
    }
}

}  // namespace skewortho
