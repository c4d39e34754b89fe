#pragma once

#include <cmath>
#include <limits>
#include <string>

#include "skewortho/errors.hpp"

namespace skewortho {

enum class WeightKind { Jacobi, Laguerre, Gaussian };

// Classical weight: Jacobi (1-x)^a (1+x)^b on [-1,1], Laguerre x^a e^{-x} on
// [0,inf), Gaussian e^{-x^2} on the real line. Parameters unused by a kind are
// ignored.
struct WeightSpec {
    WeightKind kind = WeightKind::Jacobi;
    double a = 0.0;
    double b = 0.0;

    static WeightSpec jacobi(double a, double b) { return {WeightKind::Jacobi, a, b}; }
    static WeightSpec laguerre(double a) { return {WeightKind::Laguerre, a, 0.0}; }
    static WeightSpec gaussian() { return {WeightKind::Gaussian, 0.0, 0.0}; }

    void validate() const {
        if (!std::isfinite(a) || !std::isfinite(b))
            throw ParameterDomainError("weight parameters must be finite");
        if (kind == WeightKind::Jacobi && (a <= -1.0 || b <= -1.0))
            throw ParameterDomainError("Jacobi weight needs a > -1 and b > -1");
        if (kind == WeightKind::Laguerre && a <= -1.0)
            throw ParameterDomainError("Laguerre weight needs a > -1");
    }

    double lower() const {
        switch (kind) {
            case WeightKind::Jacobi: return -1.0;
            case WeightKind::Laguerre: return 0.0;
            default: return -std::numeric_limits<double>::infinity();
        }
    }
    double upper() const {
        return kind == WeightKind::Jacobi ? 1.0 : std::numeric_limits<double>::infinity();
    }
    bool in_open_support(double x) const { return x > lower() && x < upper(); }

    double operator()(double x) const {
        switch (kind) {
            case WeightKind::Jacobi: return std::pow(1.0 - x, a) * std::pow(1.0 + x, b);
            case WeightKind::Laguerre: return std::pow(x, a) * std::exp(-x);
            default: return std::exp(-x * x);
        }
    }

    std::string name() const {
        switch (kind) {
            case WeightKind::Jacobi: return "jacobi";
            case WeightKind::Laguerre: return "laguerre";
            default: return "gaussian";
        }
    }
};

inline WeightKind parse_weight_kind(const std::string& s) {
    if (s == "jacobi") return WeightKind::Jacobi;
    if (s == "laguerre") return WeightKind::Laguerre;
    if (s == "gaussian") return WeightKind::Gaussian;
    throw ConfigurationError("unknown weight '" + s + "'");
}

}  // namespace skewortho
