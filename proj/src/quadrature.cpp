#include "skewortho/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <string>
#include <tuple>

#include "skewortho/classical_op.hpp"

namespace skewortho {

namespace {

// Orthonormal recurrence x p_k = b_{k+1} p_{k+1} + a_k p_k + b_k p_{k-1}.
struct OrthonormalRecurrence {
    std::vector<double> a, b;  // b[k] couples orders k-1 and k; b[0] unused
    double p0 = 1.0;
};

struct NodeProbe {
    double ratio;           // p_n / p_n'
    double log_christoffel; // log of sum_{k<n} p_k^2
};

// Values carry a common scale factor exp(log_scale) so that high orders far out
// on the half-line neither overflow nor lose the relative size of the sum.
NodeProbe probe(const OrthonormalRecurrence& r, int n, double x) {
    double pm = 0.0, p = r.p0, dpm = 0.0, dp = 0.0;
    double sum = 0.0, log_scale = 0.0;
    for (int k = 0; k < n; ++k) {
        sum += p * p;
        const double bn = r.b[k + 1];
        const double pn = ((x - r.a[k]) * p - (k > 0 ? r.b[k] * pm : 0.0)) / bn;
        const double dpn = (p + (x - r.a[k]) * dp - (k > 0 ? r.b[k] * dpm : 0.0)) / bn;
        pm = p;
        p = pn;
        dpm = dp;
        dp = dpn;
        const double big = std::max({std::abs(p), std::abs(dp), std::abs(pm)});
        if (big > 1e100) {
            p *= 1e-100, pm *= 1e-100, dp *= 1e-100, dpm *= 1e-100;
            sum *= 1e-200;
            log_scale += 100.0 * std::log(10.0);
        }
    }
    return {p / dp, std::log(sum) + 2.0 * log_scale};
}

}  // namespace

QuadratureRule gauss_rule(const WeightSpec& weight, int n) {
    weight.validate();
    if (n < 1) throw OrderRangeError("quadrature needs at least one node");
    OrthonormalRecurrence rec;
    rec.a.resize(n);
    rec.b.assign(n + 1, 0.0);
    for (int j = 0; j < n; ++j) {
        const Recurrence r = recurrence_coefficients(weight, j);
        rec.a[j] = r.diag;
        rec.b[j + 1] = std::sqrt(r.up * recurrence_coefficients(weight, j + 1).down);
    }
    const double h0 = op_norm(weight, 0);
    rec.p0 = 1.0 / std::sqrt(h0);

    Eigen::VectorXd diag = Eigen::Map<Eigen::VectorXd>(rec.a.data(), n);
    Eigen::VectorXd sub(std::max(n - 1, 0));
    for (int j = 0; j + 1 < n; ++j) sub[j] = rec.b[j + 1];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw EvaluationError("tridiagonal eigensolver failed");

    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        // eigenvalues are accurate in absolute terms; polish and take the
        // Christoffel weights, which stay relatively accurate in the tails
        double x = es.eigenvalues()[i];
        for (int it = 0; it < 3; ++it) {
            const double step = probe(rec, n, x).ratio;
            if (!std::isfinite(step)) break;
            x -= step;
        }
        rule.nodes[i] = x;
        rule.weights[i] = std::exp(-probe(rec, n, x).log_christoffel);
    }
    rule.support = {weight.lower(), weight.upper()};
    rule.associated_weight = weight;
    return rule;
}

QuadratureRule gauss_rule_scaled(const WeightSpec& weight, int n, double c) {
    if (!(c > 0.0)) throw ParameterDomainError("scale must be positive");
    QuadratureRule rule = gauss_rule(weight, n);
    rule.scale = c;
    if (weight.kind == WeightKind::Jacobi || c == 1.0) return rule;
    const double node_scale = weight.kind == WeightKind::Laguerre ? 1.0 / c : 1.0 / std::sqrt(c);
    const double weight_scale =
        weight.kind == WeightKind::Laguerre ? std::pow(c, -(weight.a + 1.0)) : 1.0 / std::sqrt(c);
    for (auto& x : rule.nodes) x *= node_scale;
    for (auto& w : rule.weights) w *= weight_scale;
    return rule;
}

namespace {

// Cached reference rules on [-1,1] for the weight (1-u)^a (1+u)^b.
const QuadratureRule& reference_rule(double a, double b, int n) {
    static std::mutex mu;
    static std::map<std::tuple<double, double, int>, QuadratureRule> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_tuple(a, b, n);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, gauss_rule(WeightSpec::jacobi(a, b), n)).first;
    return it->second;
}

void check_finite(const double* v, std::size_t dim, double x) {
    for (std::size_t i = 0; i < dim; ++i)
        if (!std::isfinite(v[i]))
            throw EvaluationError("integrand is not finite at x = " + std::to_string(x));
}

double checked(double v, double x) {
    check_finite(&v, 1, x);
    return v;
}

// Accumulates scale * sum_i w_i f(x_i) into acc and returns max |f| seen.
struct Sampler {
    const VecFn& f;
    std::size_t dim;
    std::vector<double> buf;

    Sampler(const VecFn& fn, std::size_t d) : f(fn), dim(d), buf(d) {}

    double add(double x, double w, std::vector<double>& acc) {
        f(x, buf.data());
        check_finite(buf.data(), dim, x);
        double m = 0.0;
        for (std::size_t i = 0; i < dim; ++i) {
            acc[i] += w * buf[i];
            m = std::max(m, std::abs(buf[i]));
        }
        return m;
    }
};

double panel(Sampler& s, double lo, double hi, int n, std::vector<double>& acc) {
    const QuadratureRule& ref = reference_rule(0.0, 0.0, n);
    const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
    double m = 0.0;
    for (std::size_t i = 0; i < ref.size(); ++i)
        m = std::max(m, s.add(mid + half * ref.nodes[i], half * ref.weights[i], acc));
    return m;
}

// [end, end +/- len] with the integrand ~ |t|^alpha at the end.
void endpoint_panel(Sampler& s, double end, double len, bool at_lo, double alpha, int n,
                    std::vector<double>& acc) {
    const QuadratureRule& ref = at_lo ? reference_rule(0.0, alpha, n) : reference_rule(alpha, 0.0, n);
    for (std::size_t i = 0; i < ref.size(); ++i) {
        const double u = ref.nodes[i];
        const double v = at_lo ? 1.0 + u : 1.0 - u;
        const double t = 0.5 * len * v;
        // The node lands on a representable x; reweight by the distance it really has.
        double x = at_lo ? end + t : end - t;
        if (x == end) x = std::nextafter(end, at_lo ? std::numeric_limits<double>::infinity()
                                                    : -std::numeric_limits<double>::infinity());
        const double actual = std::abs(x - end);
        s.add(x, 0.5 * len * ref.weights[i] / std::pow(v, alpha) * std::pow(t / actual, alpha), acc);
    }
}

bool smooth_exponent(double alpha) { return alpha >= 0.0 && alpha == std::floor(alpha); }

// [end, end +/- len] graded toward the finite end; returns max |f| seen.
double graded_half(Sampler& s, double end, double len, bool at_lo, double alpha,
                   const IntegrationOptions& opt, std::vector<double>& acc) {
    const int n = opt.panel_points;
    const double dir = at_lo ? 1.0 : -1.0;
    double m = 0.0;
    if (smooth_exponent(alpha)) {
        const int k_max = std::max(opt.smooth_panels, 1);
        for (int k = 0; k < k_max; ++k) {
            const double p = end + dir * len * k / k_max, q = end + dir * len * (k + 1) / k_max;
            m = std::max(m, panel(s, std::min(p, q), std::max(p, q), n, acc));
        }
        return m;
    }
    // Below this distance Gauss panels no longer resolve t through x = end +/- t;
    // the weight-matched end panel takes over.
    const double floor_dist = 1e-8 * std::max(1.0, std::abs(end));
    double outer = len;
    for (int k = 0; k < opt.grading_levels; ++k) {
        const double inner = outer * opt.grading_ratio;
        if (inner < floor_dist) break;
        const double p = end + dir * inner, q = end + dir * outer;
        m = std::max(m, panel(s, std::min(p, q), std::max(p, q), n, acc));
        outer = inner;
    }
    endpoint_panel(s, end, outer, at_lo, alpha, n, acc);
    return m;
}

// From start to +/- infinity, marching panels until f is negligible.
void tail(Sampler& s, double start, bool upward, const IntegrationOptions& opt, double fmax,
          std::vector<double>& acc) {
    double width = opt.tail_panel_width;
    int quiet = 0;
    double pos = start;
    for (int k = 0; k < opt.max_tail_panels; ++k) {
        const double next = upward ? pos + width : pos - width;
        const double local = panel(s, std::min(pos, next), std::max(pos, next), opt.panel_points, acc);
        fmax = std::max(fmax, local);
        quiet = (local <= opt.tail_rel_tol * fmax) ? quiet + 1 : 0;
        if (quiet >= 3) return;
        pos = next;
        width = std::min(width * 1.25, 4.0 * opt.tail_panel_width);
    }
    throw IntegrationError("integrand does not decay within the panel budget");
}

}  // namespace

QuadratureRule gauss_legendre(int n, double lo, double hi) {
    if (!(hi > lo) || !std::isfinite(lo) || !std::isfinite(hi))
        throw ParameterDomainError("Gauss-Legendre needs a finite interval with lo < hi");
    QuadratureRule rule = reference_rule(0.0, 0.0, n);
    const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
    for (auto& x : rule.nodes) x = mid + half * x;
    for (auto& w : rule.weights) w *= half;
    rule.support = {lo, hi};
    rule.associated_weight.reset();
    return rule;
}

double integrate(const QuadratureRule& rule, const RealFn& f) {
    double s = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) s += rule.weights[i] * checked(f(rule.nodes[i]), rule.nodes[i]);
    return s;
}

std::vector<double> integrate_interval_vec(const VecFn& f, std::size_t dim, Interval iv,
                                           const IntegrationOptions& opt) {
    if (std::isnan(iv.lo) || std::isnan(iv.hi) || !(iv.hi >= iv.lo))
        throw ParameterDomainError("integration interval must satisfy lo <= hi");
    std::vector<double> acc(dim, 0.0);
    if (iv.hi == iv.lo) return acc;
    if (opt.lo_exponent <= -1.0 || opt.hi_exponent <= -1.0)
        throw ParameterDomainError("endpoint exponent must exceed -1");
    Sampler s(f, dim);
    const bool lo_fin = std::isfinite(iv.lo), hi_fin = std::isfinite(iv.hi);
    const double len = opt.tail_panel_width;
    if (lo_fin && hi_fin) {
        const double half = 0.5 * (iv.hi - iv.lo);
        graded_half(s, iv.lo, half, true, opt.lo_exponent, opt, acc);
        graded_half(s, iv.hi, half, false, opt.hi_exponent, opt, acc);
    } else if (lo_fin) {
        const double m = graded_half(s, iv.lo, len, true, opt.lo_exponent, opt, acc);
        tail(s, iv.lo + len, true, opt, m, acc);
    } else if (hi_fin) {
        const double m = graded_half(s, iv.hi, len, false, opt.hi_exponent, opt, acc);
        tail(s, iv.hi - len, false, opt, m, acc);
    } else {
        tail(s, 0.0, true, opt, 0.0, acc);
        tail(s, 0.0, false, opt, 0.0, acc);
    }
    return acc;
}

double integrate_interval(const RealFn& f, Interval iv, const IntegrationOptions& opt) {
    return integrate_interval_vec([&](double x, double* out) { out[0] = f(x); }, 1, iv, opt)[0];
}

double epsilon_integral(const RealFn& f, double x, Interval support, const IntegrationOptions& opt) {
    if (!(x >= support.lo && x <= support.hi)) throw BoundaryError("point outside the support");
    IntegrationOptions left = opt, right = opt;
    left.hi_exponent = 0.0;
    right.lo_exponent = 0.0;
    const double below = integrate_interval(f, {support.lo, x}, left);
    const double above = integrate_interval(f, {x, support.hi}, right);
    return 0.5 * (below - above);
}

IntegrationOptions options_for(const WeightSpec& w, double power) {
    IntegrationOptions opt;
    if (w.kind == WeightKind::Jacobi) {
        opt.lo_exponent = power * w.b;
        opt.hi_exponent = power * w.a;
    } else if (w.kind == WeightKind::Laguerre) {
        opt.lo_exponent = power * w.a;
    }
    return opt;
}

}  // namespace skewortho
