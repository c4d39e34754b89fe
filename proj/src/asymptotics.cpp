#include "skewortho/asymptotics.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "skewortho/classical_op.hpp"

namespace skewortho {
namespace {

constexpr double pi = std::numbers::pi;

void check_beta(int beta) {
    if (beta != 1 && beta != 4) throw ConfigurationError("beta must be 1 or 4");
}

double angle_in(double c, double lo, double hi, double x) {
    if (!(c >= -1.0 && c <= 1.0)) throw ValidityWindowError("x = " + std::to_string(x) + " lies outside the oscillatory bulk");
    const double theta = std::acos(c);
    if (theta < lo || theta > hi)
        throw ValidityWindowError("x = " + std::to_string(x) + " maps to theta = " + std::to_string(theta) +
                                  " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return theta;
}

// Laguerre window [eps, pi/2 - eps / sqrt(order)] for x = scale * cos^2(theta).
double laguerre_angle(double x, double scale, double order, double eps) {
    if (!(x > 0.0)) throw ValidityWindowError("x = " + std::to_string(x) + " lies outside the oscillatory bulk");
    return angle_in(std::sqrt(x / scale), eps, pi / 2 - eps / std::sqrt(order), x);
}

}  // namespace

double bulk_angle(WeightKind kind, double a, int j, double x, double epsilon) {
    switch (kind) {
    case WeightKind::Jacobi: return angle_in(x, epsilon, pi - epsilon, x);
    case WeightKind::Laguerre: return laguerre_angle(x, 4.0 * j + 2.0 * a + 2.0, std::max(j, 1), epsilon);
    case WeightKind::Gaussian: return angle_in(x / std::sqrt(2.0 * j + 1.0), epsilon, pi - epsilon, x);
    }
    throw ConfigurationError("unknown weight kind");
}

double op_asymptotic(const AsymptoticContext& ctx, WeightKind family, int j, double x) {
    if (j < 1) throw OrderRangeError("asymptotic order must be at least 1");
    const double a = ctx.weight.a, b = ctx.weight.b;
    const double t = bulk_angle(family, a, j, x, ctx.epsilon_margin);
    const double s = std::sin(t), c = std::cos(t);
    switch (family) {
    case WeightKind::Jacobi:
        return std::sqrt(2.0 / (pi * s)) * std::cos((j + (a + b + 1) / 2) * t - (a + 0.5) * pi / 2);
    case WeightKind::Laguerre: {
        const double sign = j % 2 ? -1.0 : 1.0;
        return sign / std::sqrt(2 * pi * j * s * c) * std::sin((j + (a + 1) / 2) * (std::sin(2 * t) - 2 * t) + 0.75 * pi);
    }
    case WeightKind::Gaussian:
        return std::pow(2.0 / j, 0.25) / std::sqrt(pi * s) *
               std::sin((j / 2.0 + 0.25) * (std::sin(2 * t) - 2 * t) + 0.75 * pi);
    }
    throw ConfigurationError("unknown weight kind");
}

double sop_asymptotic(const AsymptoticContext& ctx, int n, SopKind kind, double x) {
    check_beta(ctx.beta);
    if (n < 20) throw OrderRangeError("SOP asymptotics need order >= 20");
    const WeightSpec& w = ctx.weight;
    const double a = w.a, b = w.b, eps = ctx.epsilon_margin;
    const int m = n / 2;
    const bool odd = n % 2 == 1, phi = kind == SopKind::Phi;
    if (w.kind == WeightKind::Gaussian) throw ConfigurationError("no SOP asymptotics for the Gaussian weight");
    if (ctx.beta == 4 && ctx.convention != Convention::SqrtWeight)
        throw ConfigurationError("beta = 4 SOP asymptotics are given for the sqrt-weight convention");

    if (w.kind == WeightKind::Jacobi) {
        const double t = angle_in(x, eps, pi - eps, x), s = std::sin(t);
        if (ctx.beta == 1) {
            const double f = (2 * m + a + b + 1.5) * t - (2 * a + 1.5) * pi / 2;
            if (odd) return phi ? 2 * m * std::sqrt(2 / (pi * s)) * std::sin(f) : std::sqrt(2 * s / pi) * std::cos(f);
            return phi ? std::sqrt(2 / (pi * s * s * s)) * std::cos(f) : -std::sin(f) / (m * std::sqrt(2 * pi * s));
        }
        const double f = (2 * m + (a + b + 1) / 2) * t - (a + 0.5) * pi / 2;
        if (odd) return phi ? -std::sqrt(s / (pi * m)) * std::sin(f) : 2 * std::sqrt(m / (pi * s)) * std::cos(f);
        // The constant carried by even phi comes from the non-polynomial tail of
        // pi_{2m}; it is annihilated by the weighted derivative, so even psi has no offset.
        return phi ? 0.5 * (std::cos(f) / std::sqrt(pi * m * s) + 1) : std::sqrt(m / (pi * s * s * s)) * std::sin(f);
    }

    // Laguerre
    if (ctx.beta == 1) {
        const double t = laguerre_angle(2 * x, 8.0 * m + 4 * a + 4, m, eps);
        const double s = std::sin(t), c = std::cos(t);
        const double f = (2 * m + a + 1) * (std::sin(2 * t) - 2 * t) + 0.75 * pi;
        if (odd) return phi ? 2 * std::sqrt(s / (c * pi)) * std::cos(f) : 2 / std::sqrt(pi * s / c) * std::sin(f);
        return phi ? std::sin(f) / (4 * m * std::sqrt(pi * s * c * c * c)) : -std::cos(f) / (4 * m * std::sqrt(pi * s * s * s * c));
    }
    const double t = laguerre_angle(x, 8.0 * m + 2 * a + 4, m, eps);
    const double s = std::sin(t), c = std::cos(t);
    const double f = (2 * m + 1 + a / 2) * (std::sin(2 * t) - 2 * t) + 0.75 * pi;
    const double amp = std::pow(2.0 * m, a / 2);
    double unnorm;
    if (odd)
        unnorm = phi ? amp / std::sqrt(m * pi * s / c) * std::sin(f) : amp * 0.5 * std::sqrt(s / (c * m * pi)) * std::cos(f);
    else
        unnorm = phi ? -amp / 2 * (std::cos(f) / (2 * std::sqrt(pi * m * c * s * s * s)) + 1)
                     : amp * std::sin(f) / (8 * std::sqrt(pi * m * c * c * c * s));
    // |g_{2m}| = h_{2m} ~ (2m)^a to leading order; g_{2m} < 0 so even orders
    // pick up the normalization phase.
    return (odd ? 1.0 : -1.0) * unnorm / amp;
}

Interval predicted_bulk(const AsymptoticContext& ctx) {
    check_beta(ctx.beta);
    const double N = ctx.N;
    const bool half = ctx.beta == 4 && ctx.convention == Convention::SqrtWeight;
    switch (ctx.weight.kind) {
    case WeightKind::Jacobi: return {-1.0, 1.0};
    case WeightKind::Laguerre: return {0.0, half ? 8 * N : 4 * N};
    case WeightKind::Gaussian: return {-std::sqrt(4 * N), std::sqrt(4 * N)};
    }
    throw ConfigurationError("unknown weight kind");
}

double predicted_density(const AsymptoticContext& ctx, double x) {
    if (ctx.N < 1) throw OrderRangeError("N must be at least 1");
    const Interval bulk = predicted_bulk(ctx);
    if (!(x > bulk.lo && x < bulk.hi))
        throw ValidityWindowError("x = " + std::to_string(x) + " is outside the bulk (" + std::to_string(bulk.lo) + ", " +
                                  std::to_string(bulk.hi) + ")");
    const double N = ctx.N;
    // The full-weight beta = 4 kernel integrates to 2N and shares the beta = 1 law.
    const bool half = ctx.beta == 4 && ctx.convention == Convention::SqrtWeight;
    switch (ctx.weight.kind) {
    case WeightKind::Jacobi: return (half ? N : 2 * N) / (pi * std::sqrt(1 - x * x));
    case WeightKind::Laguerre:
        return half ? std::sqrt((8 * N - x) / x) / (4 * pi) : std::sqrt((4 * N - x) / x) / pi;
    case WeightKind::Gaussian: return std::sqrt(4 * N - x * x) / (half ? 2 * pi : pi);
    }
    throw ConfigurationError("unknown weight kind");
}

double sine_kernel(int beta, double r) {
    check_beta(beta);
    const double k = beta == 1 ? pi : 2 * pi;
    if (r == 0.0) return 1.0;
    return std::sin(k * r) / (k * r);
}

std::vector<LeadingBandEntry> leading_band_entries(const SopFamily& family, int N) {
    if (N < 1) throw OrderRangeError("N must be at least 1");
    const WeightSpec& w = family.weight();
    const double n = N;
    const int c = 2 * N;
    std::vector<LeadingBandEntry> out;
    auto add = [&](BandKind k, int i, int j, double v) { out.push_back({k, i, j, v * family.phase(i) * family.phase(j)}); };
    if (w.kind == WeightKind::Gaussian) throw ConfigurationError("no leading band entries for the Gaussian weight");
    if (family.beta() == 4 && family.convention() != Convention::SqrtWeight)
        throw ConfigurationError("beta = 4 leading band entries are given for the sqrt-weight convention");
    if (w.kind == WeightKind::Jacobi && family.beta() == 1) {
        add(BandKind::P, c - 1, c, n * n);
        add(BandKind::R, c - 1, c + 1, -n / 2);
        add(BandKind::R, c - 2, c, -n / 2);
    } else if (w.kind == WeightKind::Jacobi) {
        add(BandKind::P, c - 1, c, -n);
        add(BandKind::R, c - 1, c + 1, -n / 2);
        if (w.a != w.b) add(BandKind::R, c - 1, c, (w.b - w.a) / 4);
        add(BandKind::R, c - 2, c, -n / 2);
    } else if (family.beta() == 1) {
        add(BandKind::P, c - 1, c, 2 * n * n);
        add(BandKind::R, c - 1, c + 1, -n * n);
        add(BandKind::R, c - 1, c, 4 * n * n * n);
        add(BandKind::R, c - 2, c, -n * n);
    } else {
        add(BandKind::P, c - 1, c, n);
        add(BandKind::R, c - 1, c + 1, -2 * n * n);
        add(BandKind::R, c - 1, c, 4 * n * n);
        add(BandKind::R, c - 2, c, -2 * n * n);
    }
    return out;
}

}  // namespace skewortho
