#include "skewortho/sop_family.hpp"

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace skewortho {

namespace {

constexpr double kSqrtHalfPi = 1.2533141373155002512;  // sqrt(pi/2)

WeightSpec doubled(const WeightSpec& w) {
    switch (w.kind) {
        case WeightKind::Jacobi: return WeightSpec::jacobi(2 * w.a + 1, 2 * w.b + 1);
        case WeightKind::Laguerre: return WeightSpec::laguerre(2 * w.a + 1);
        default: return WeightSpec::gaussian();
    }
}

double jacobi_weight(double a, double b, double x) { return std::pow(1.0 - x, a) * std::pow(1.0 + x, b); }
double laguerre_weight(double a, double x) { return std::pow(x, a) * std::exp(-x); }

// int eps(x - y) w(y) dy for the base weight of the full-weight families
// (Jacobi w_ab, Laguerre w_a, Gaussian e^{-y^2/2}).
double eps_base(const WeightSpec& w, double mass, double x) {
    switch (w.kind) {
        case WeightKind::Jacobi: {
            const double t = std::clamp(0.5 * (1.0 + x), 0.0, 1.0);
            return mass * (boost::math::ibeta(w.b + 1, w.a + 1, t) - 0.5);
        }
        case WeightKind::Laguerre:
            return mass * (boost::math::gamma_p(w.a + 1, std::max(x, 0.0)) - 0.5);
        default: return kSqrtHalfPi * boost::math::erf(x / std::numbers::sqrt2);
    }
}

}  // namespace

double SignedNorm::value() const { return sign * std::exp(log_abs); }

SopFamily::SopFamily(int beta, WeightSpec weight, Convention convention, int max_order)
    : beta_(beta), weight_(weight), convention_(convention), max_order_(max_order) {
    weight_.validate();
    if (beta != 1 && beta != 4) throw ConfigurationError("beta must be 1 or 4");
    if (beta == 1 && convention == Convention::SqrtWeight)
        throw ConfigurationError("the sqrt-weight convention exists only for beta = 4");
    if (max_order < 1) throw OrderRangeError("max_order must be at least 1");
    if (beta == 4 && convention == Convention::SqrtWeight && weight.kind == WeightKind::Jacobi &&
        std::abs(weight.a + weight.b + 1.0) < 1e-12)
        throw ParameterDomainError("sqrt-weight Jacobi family is singular at a + b = -1");
    build_constants();
    build_norms();
}

void SopFamily::build_constants() {
    const int n = max_order_ + 3;
    const double a = weight_.a, b = weight_.b;
    auto& c = constants_;
    if (convention_ == Convention::FullWeight) {
        c.A.resize(n);
        c.B.resize(n);
        c.gamma.assign(n, 0.0);
        for (int j = 0; j < n; ++j) {
            switch (weight_.kind) {
                case WeightKind::Jacobi:
                    // A_1 = -1 identically; the formula is 0/0 at a + b = -3/2
                    c.A[j] = j == 1 ? -1.0 : jacobi_A(a, b, j);
                    c.B[j] = jacobi_B(a, b, j);
                    break;
                case WeightKind::Laguerre:
                    c.A[j] = laguerre_A(a, j);
                    c.B[j] = laguerre_B(a, j);
                    break;
                default:
                    c.A[j] = -0.5;
                    c.B[j] = -(j + 1.0);
            }
        }
        for (int j = 2; j < n; ++j) c.gamma[j] = c.B[j - 2] / c.A[j];
        if (weight_.kind == WeightKind::Gaussian)
            mass_ = std::sqrt(2.0 * std::numbers::pi);
        else
            mass_ = op_norm(weight_, 0);
        if (weight_.kind == WeightKind::Jacobi) chain_start_ = -2.0 * op_norm(doubled(weight_), 0) / mass_;
        return;
    }
    c.D.assign(n, 0.0);
    c.E.assign(n, 0.0);
    c.F.assign(n, 0.0);
    c.eta.assign(n, 0.0);
    mass_ = op_norm(weight_, 0);
    for (int j = 0; j < n; ++j) {
        const bool even = j % 2 == 0;
        switch (weight_.kind) {
            case WeightKind::Jacobi: {
                const double s = a + b;
                if (j == 0) c.D[j] = 1.0;
                else if (j == 1) c.D[j] = 2.0 / (2.0 + s);
                else c.D[j] = 2.0 * (j + s) / ((2.0 * j + s) * (2.0 * j + s - 1));
                if (j >= 2) {
                    c.E[j] = 2.0 * (a - b) / ((2.0 * j + s) * (2.0 * j + s - 2));
                    c.F[j] = -2.0 * (j + a - 1) * (j + b - 1) /
                             ((j + s - 1) * (2.0 * j + s - 1) * (2.0 * j + s - 2));
                }
                if (even && j == 2) c.eta[j] = 2.0 * (1 + a) * (1 + b) / ((1 + s) * (3 + s));
                else if (even && j >= 4)
                    c.eta[j] = (j + a - 1) * (j + b - 1) * (2.0 * j + s - 5) /
                               ((j - 1.0) * (j + s - 1) * (2.0 * j + s - 1));
                break;
            }
            case WeightKind::Laguerre:
                c.D[j] = -1.0;
                c.E[j] = j >= 1 ? 1.0 : 0.0;
                if (even && j >= 2) c.eta[j] = (j + a - 1) / (j - 1.0);
                break;
            default:
                c.D[j] = even ? 2.0 : 1.0;
                if (even && j >= 2) c.eta[j] = 2.0 * j;
        }
    }
}

void SopFamily::build_norms() {
    norms_.resize(max_order_ + 1);
    inv_sqrt_g_.resize(max_order_ + 1);
    const WeightSpec d = doubled(weight_);
    for (int n = 0; n <= max_order_; ++n) {
        const int m = n / 2;
        SignedNorm g;
        if (beta_ == 1) {
            g.log_abs = op_log_norm(d, 2 * m);
        } else if (convention_ == Convention::FullWeight) {
            switch (weight_.kind) {
                case WeightKind::Jacobi:
                    g.log_abs = m == 0 ? std::log(0.5 * mass_) : op_log_norm(d, 2 * m - 1);
                    break;
                case WeightKind::Laguerre: g.log_abs = op_log_norm(d, 2 * m); break;
                default: g.log_abs = op_log_norm(d, 2 * m + 1);
            }
        } else {
            switch (weight_.kind) {
                case WeightKind::Jacobi:
                    g.log_abs = m == 0 ? op_log_norm(weight_, 0)
                                       : std::log(2.0 / (4.0 * m + weight_.a + weight_.b - 1)) +
                                             op_log_norm(weight_, 2 * m);
                    break;
                case WeightKind::Laguerre:
                    g.sign = -1;
                    g.log_abs = op_log_norm(weight_, 2 * m);
                    break;
                default: g.log_abs = std::numbers::ln2 + op_log_norm(weight_, 2 * m + 1);
            }
        }
        norms_[n] = g;
        inv_sqrt_g_[n] = phase(n) * std::exp(-0.5 * g.log_abs);
    }
}

int SopFamily::phase(int n) const {
    check_order(n);
    if (convention_ != Convention::SqrtWeight || n % 2 == 1) return 1;
    return norms_[n].sign;
}

double SopFamily::norm_factor(int n) const {
    check_order(n);
    return inv_sqrt_g_[n];
}

void SopFamily::check_order(int n) const {
    if (n < 0 || n > max_order_)
        throw OrderRangeError("order " + std::to_string(n) + " outside [0, " + std::to_string(max_order_) + "]");
}

double SopFamily::g(int n) const {
    check_order(n);
    return norms_[n].value();
}

int SopFamily::odd_partner_degree(int m) const {
    if (m < 0) throw OrderRangeError("negative block order");
    if (beta_ == 1) return 2 * m;
    if (convention_ == Convention::SqrtWeight) return 2 * m + 1;
    switch (weight_.kind) {
        case WeightKind::Jacobi: return 2 * m - 1;
        case WeightKind::Laguerre: return 2 * m;
        default: return 2 * m + 1;
    }
}

double SopFamily::multiplier(double x) const {
    switch (weight_.kind) {
        case WeightKind::Jacobi: return 1.0 - x * x;
        case WeightKind::Laguerre: return x;
        default: return 1.0;
    }
}

WeightSpec SopFamily::extraction_weight() const {
    return convention_ == Convention::SqrtWeight ? weight_ : doubled(weight_);
}

double SopFamily::extraction_scale() const {
    return convention_ == Convention::FullWeight && weight_.kind == WeightKind::Laguerre ? 2.0 : 1.0;
}

double SopFamily::log_ensemble_weight(double x) const {
    const double a = weight_.a, b = weight_.b;
    double lw = 0.0;  // log of the function-level weight factor
    switch (weight_.kind) {
        case WeightKind::Jacobi: lw = a * std::log1p(-x) + b * std::log1p(x); break;
        case WeightKind::Laguerre: lw = a * std::log(x) - x; break;
        default: lw = convention_ == Convention::SqrtWeight ? -x * x : -0.5 * x * x;
    }
    return beta_ == 4 && convention_ == Convention::FullWeight ? 2.0 * lw : lw;
}

void SopFamily::eval_all(double x, int n, double* phi, double* psi) const {
    if (n < 0 || n > max_order_ + 1) throw OrderRangeError("requested more orders than built");
    if (n == 0) return;
    if (beta_ == 1) eval_beta1(x, n, phi, psi);
    else if (convention_ == Convention::FullWeight) eval_full4(x, n, phi, psi);
    else eval_sqrt4(x, n, phi, psi);
}

double SopFamily::phi(int n, double x) const {
    check_order(n);
    std::vector<double> p(n + 1), q(n + 1);
    eval_all(x, n + 1, p.data(), q.data());
    return p[n];
}

double SopFamily::psi(int n, double x) const {
    check_order(n);
    std::vector<double> p(n + 1), q(n + 1);
    eval_all(x, n + 1, p.data(), q.data());
    return q[n];
}

namespace {

// Factors of the full-weight families: W multiplies phi-type terms, W1 the
// shifted-weight terms, with d/dx(W1 p_j) = W (A_{j+1} p_{j+1} - B_{j-1} p_{j-1}).
struct FullWeightFactors {
    double W, W1, eps0;
    std::vector<double> p;  // p[k + 1] holds order k so that p_{-1} = 0
    double at(int k) const { return k < 0 ? 0.0 : p[k + 1]; }
};

FullWeightFactors full_factors(const WeightSpec& w, double mass, double x, int count) {
    FullWeightFactors f;
    f.p.assign(count + 1, 0.0);
    const WeightSpec d = doubled(w);
    switch (w.kind) {
        case WeightKind::Jacobi:
            f.W = jacobi_weight(w.a, w.b, x);
            f.W1 = jacobi_weight(w.a + 1, w.b + 1, x);
            op_values(d, x, count, f.p.data() + 1);
            break;
        case WeightKind::Laguerre: {
            const double c0 = std::exp2(w.a + 0.5);
            f.W = c0 * laguerre_weight(w.a, x);
            f.W1 = 2.0 * c0 * laguerre_weight(w.a + 1, x);
            op_values(d, 2.0 * x, count, f.p.data() + 1);
            break;
        }
        default:
            f.W = f.W1 = std::exp(-0.5 * x * x);
            op_values(d, x, count, f.p.data() + 1);
    }
    f.eps0 = eps_base(w, mass, x);
    if (w.kind == WeightKind::Laguerre) f.eps0 *= std::exp2(w.a + 0.5);
    return f;
}

}  // namespace

void SopFamily::eval_beta1(double x, int n, double* phi, double* psi) const {
    const auto f = full_factors(weight_, mass_, x, n + 2);
    const auto& A = constants_.A;
    const auto& B = constants_.B;
    double chain = f.eps0;  // unnormalized psi_{2m}
    for (int k = 0; k < n; ++k) {
        const int m = k / 2;
        if (k % 2 == 0) {
            if (m > 0) chain = f.W1 * f.at(2 * m - 1) / A[2 * m] + constants_.gamma[2 * m] * chain;
            phi[k] = f.W * f.at(2 * m);
            psi[k] = chain;
        } else {
            phi[k] = f.W * (A[2 * m + 1] * f.at(2 * m + 1) - (m > 0 ? B[2 * m - 1] : 0.0) * f.at(2 * m - 1));
            psi[k] = f.W1 * f.at(2 * m);
        }
        phi[k] *= inv_sqrt_g_[k];
        psi[k] *= inv_sqrt_g_[k];
    }
}

void SopFamily::eval_full4(double x, int n, double* phi, double* psi) const {
    const auto f = full_factors(weight_, mass_, x, n + 3);
    const auto& A = constants_.A;
    const auto& B = constants_.B;
    auto Bm = [&](int j) { return j < 0 ? 0.0 : B[j]; };
    // polynomial index offset relative to the beta = 1 family
    const int o = weight_.kind == WeightKind::Jacobi ? -1 : weight_.kind == WeightKind::Laguerre ? 0 : 1;
    double chain = 0.0;  // unnormalized phi_{2m}
    for (int k = 0; k < n; ++k) {
        const int m = k / 2;
        const bool jacobi_head = weight_.kind == WeightKind::Jacobi && m == 0;
        if (k % 2 == 0) {
            if (jacobi_head) {
                chain = 1.0;
                psi[k] = 0.0;
            } else if (m == 0 && weight_.kind == WeightKind::Laguerre) {
                chain = -f.eps0;
                psi[k] = -f.W * f.at(0);
            } else {
                const int j = 2 * m + o;
                const double ratio =
                    (weight_.kind == WeightKind::Jacobi && m == 1) ? chain_start_ : Bm(j - 2) / A[j];
                chain = -f.W1 * f.at(j - 1) / A[j] + (m > 0 ? ratio * chain : 0.0);
                psi[k] = -f.W * f.at(j);
            }
            phi[k] = chain;
        } else if (jacobi_head) {
            phi[k] = f.eps0;
            psi[k] = f.W;
        } else {
            const int j = 2 * m + o;
            phi[k] = f.W1 * f.at(j);
            psi[k] = f.W * (A[j + 1] * f.at(j + 1) - Bm(j - 1) * f.at(j - 1));
        }
        phi[k] *= inv_sqrt_g_[k];
        psi[k] *= inv_sqrt_g_[k];
    }
}

void SopFamily::eval_pi(double x, int n, double* pi, double* dpi, double* ddpi) const {
    if (convention_ != Convention::SqrtWeight) throw ConventionError("pi expansion needs the sqrt-weight convention");
    if (n < 0 || n > max_order_ + 1) throw OrderRangeError("requested more orders than built");
    std::vector<double> p(n + 2, 0.0), dp(n + 2, 0.0);  // slot k + 1 holds order k
    op_values(weight_, x, n + 1, p.data() + 1);
    if (ddpi) op_derivatives(weight_, x, n + 1, dp.data() + 1, nullptr);
    auto at = [](const std::vector<double>& v, int k) { return k < 0 ? 0.0 : v[k + 1]; };
    const auto& c = constants_;
    const bool gaussian = weight_.kind == WeightKind::Gaussian;
    for (int k = 0; k < n; ++k) {
        // pi'_k is a multiple of the order k-1 polynomial plus the even chain
        const double lead = gaussian ? c.D[k] * 2.0 * k : 1.0;
        pi[k] = c.D[k] * at(p, k) + c.E[k] * at(p, k - 1) + c.F[k] * at(p, k - 2);
        dpi[k] = lead * at(p, k - 1);
        if (ddpi) ddpi[k] = lead * at(dp, k - 1);
        if (k % 2 == 0 && k >= 2) {
            pi[k] += c.eta[k] * pi[k - 2];
            dpi[k] += c.eta[k] * dpi[k - 2];
            if (ddpi) ddpi[k] += c.eta[k] * ddpi[k - 2];
        }
    }
}

void SopFamily::eval_sqrt4(double x, int n, double* phi, double* psi) const {
    std::vector<double> pi(n), dpi(n);
    eval_pi(x, n, pi.data(), dpi.data());
    const double a = weight_.a, b = weight_.b;
    double root = 0.0, logd = 0.0;  // sqrt(w) and w'/w
    switch (weight_.kind) {
        case WeightKind::Jacobi:
            root = jacobi_weight(0.5 * a, 0.5 * b, x);
            logd = -a / (1.0 - x) + b / (1.0 + x);
            break;
        case WeightKind::Laguerre:
            root = std::pow(x, 0.5 * a) * std::exp(-0.5 * x);
            logd = a / x - 1.0;
            break;
        default:
            root = std::exp(-0.5 * x * x);
            logd = -2.0 * x;
    }
    for (int k = 0; k < n; ++k) {
        phi[k] = inv_sqrt_g_[k] * root * pi[k];
        psi[k] = inv_sqrt_g_[k] * root * (dpi[k] + 0.5 * logd * pi[k]);
    }
}

Eigen::MatrixXd SopFamily::skew_gram(int n) const {
    if (n < 1 || n > max_order_ + 1) throw OrderRangeError("gram size outside the built range");
    Eigen::MatrixXd G = Eigen::MatrixXd::Zero(n, n);
    if (convention_ == Convention::SqrtWeight) {
        const QuadratureRule rule = gauss_rule(weight_, n + 1);
        std::vector<double> pi(n), dpi(n);
        for (std::size_t i = 0; i < rule.size(); ++i) {
            eval_pi(rule.nodes[i], n, pi.data(), dpi.data());
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    G(j, k) += rule.weights[i] * (pi[j] * dpi[k] - pi[k] * dpi[j]);
        }
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) G(j, k) *= inv_sqrt_g_[j] * inv_sqrt_g_[k];
        return G;
    }
    const std::size_t dim = static_cast<std::size_t>(n) * n;
    const bool half = beta_ == 4;
    auto integrand = [&](double x, double* out) {
        std::vector<double> p(n), q(n);
        eval_all(x, n, p.data(), q.data());
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                out[j * n + k] = half ? 0.5 * (p[j] * q[k] - p[k] * q[j]) : p[j] * q[k];
    };
    const auto v = integrate_interval_vec(integrand, dim, support(), options_for(weight_));
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) G(j, k) = v[j * n + k];
    return G;
}

Eigen::MatrixXd z_matrix(int n) {
    Eigen::MatrixXd Z = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i + 1 < n; i += 2) {
        Z(i, i + 1) = 1.0;
        Z(i + 1, i) = -1.0;
    }
    return Z;
}

std::array<double, 4> duality_map(const SopFamily& f1, const SopFamily& f4, int m, double x) {
    if (f1.beta() != 1 || f4.beta() != 4 || f1.weight().kind != WeightKind::Laguerre ||
        f4.weight().kind != WeightKind::Laguerre || f4.convention() != Convention::FullWeight)
        throw ConfigurationError("duality needs Laguerre families with beta 1 and 4 (full weight)");
    if (f1.weight().a != f4.weight().a) throw ConfigurationError("duality needs matching Laguerre parameters");
    if (m < 1) throw OrderRangeError("duality holds for block order m >= 1");
    const int n = 2 * m + 2;
    std::vector<double> p1(n), q1(n), p4(n), q4(n);
    f1.eval_all(x, n, p1.data(), q1.data());
    f4.eval_all(x, n, p4.data(), q4.data());
    return {q1[2 * m] + p4[2 * m], q1[2 * m + 1] - p4[2 * m + 1], p1[2 * m] + q4[2 * m],
            p1[2 * m + 1] - q4[2 * m + 1]};
}

}  // namespace skewortho
