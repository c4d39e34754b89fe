#include "skewortho/kernel.hpp"

#include <cmath>
#include <string>

namespace skewortho {

KernelEvaluator::KernelEvaluator(std::shared_ptr<const SopFamily> family, int N, KernelMethod method)
    : family_(std::move(family)), N_(N), method_(method) {
    if (!family_) throw ConfigurationError("kernel evaluator needs a family");
    if (N < 1) throw OrderRangeError("N must be at least 1");
    if (2 * N > family_->max_order() + 1)
        throw OrderRangeError("family max_order " + std::to_string(family_->max_order()) + " is below 2N - 1");
    if (method == KernelMethod::Gcd && 2 * N + 3 > family_->max_order())
        throw OrderRangeError("the GCD path needs max_order >= 2N + 3");
}

void KernelEvaluator::ensure_bands() const {
    if (2 * N_ + 3 > family_->max_order()) throw OrderRangeError("the GCD path needs max_order >= 2N + 3");
    std::call_once(bands_once_, [this] {
        P_ = extract_band(*family_, BandKind::P, 2 * N_ + 4);
        R_ = extract_band(*family_, BandKind::R, 2 * N_ + 4);
    });
}

const QuaternionBandMatrix& KernelEvaluator::P() const {
    ensure_bands();
    return P_;
}

const QuaternionBandMatrix& KernelEvaluator::R() const {
    ensure_bands();
    return R_;
}

void KernelEvaluator::check_point(double x) const {
    if (!std::isfinite(x) || !family_->weight().in_open_support(x))
        throw BoundaryError("point " + std::to_string(x) + " is outside the open support");
}

void KernelEvaluator::values(double x, int n, std::vector<double>& phi, std::vector<double>& psi) const {
    check_point(x);
    phi.resize(n);
    psi.resize(n);
    family_->eval_all(x, n, phi.data(), psi.data());
}

double KernelEvaluator::s_kernel_sum(double x, double y) const {
    std::vector<double> px, qx, py, qy;
    values(x, 2 * N_, px, qx);
    values(y, 2 * N_, py, qy);
    CompensatedSum s;
    for (int m = 0; m < N_; ++m) {
        s.add(px[2 * m] * qy[2 * m + 1]);
        s.add(-px[2 * m + 1] * qy[2 * m]);
    }
    return s.value();
}

double KernelEvaluator::s_kernel_gcd(double x, double y, bool windowed) const {
    if (x == y) throw DegeneratePointError("the GCD quotient is singular at x = y");
    ensure_bands();
    const int K = 2 * N_ + 4, cut = 2 * N_;
    std::vector<double> px, qx, py, qy;
    values(x, K, px, qx);
    values(y, K, py, qy);
    const bool beta1 = family_->beta() == 1;
    // beta 4: Phi-hat(x) [R - xP, Pi] Phi(y) / (f(y)(y - x))
    // beta 1: Psi-hat(x) [R - yP, Pi] Psi(y) / (f(x)(x - y))
    const auto& left = beta1 ? qx : px;
    const auto& right = beta1 ? qy : py;
    const double shift = beta1 ? y : x;
    const double denom = beta1 ? family_->multiplier(x) * (x - y) : family_->multiplier(y) * (y - x);
    if (denom == 0.0 || !std::isfinite(denom)) throw SingularDenominatorError("GCD denominator vanishes");
    // hat_i = -(v^t Z)_i: hat_{2p} = v_{2p+1}, hat_{2p+1} = -v_{2p}
    auto hat = [&](int i) { return i % 2 == 0 ? left[i + 1] : -left[i - 1]; };
    const int lo = windowed ? cut - 2 : 0, hi = windowed ? cut + 2 : K;
    CompensatedSum s;
    for (int i = lo; i < hi; ++i) {
        const bool in_i = i < cut;
        for (int j = lo; j < hi; ++j) {
            const bool in_j = j < cut;
            if (in_i == in_j) continue;  // commutator with the projector vanishes
            const double rbar = R_(i, j) - shift * P_(i, j);
            s.add(hat(i) * rbar * (in_j ? 1.0 : -1.0) * right[j]);
        }
    }
    return s.value() / denom;
}

double KernelEvaluator::s_kernel(double x, double y) const {
    if (method_ == KernelMethod::Gcd && x != y) return s_kernel_gcd(x, y);
    return s_kernel_sum(x, y);
}

double KernelEvaluator::d_kernel(double x, double y) const {
    std::vector<double> px, qx, py, qy;
    values(x, 2 * N_, px, qx);
    values(y, 2 * N_, py, qy);
    CompensatedSum s;
    for (int m = 0; m < N_; ++m) {
        s.add(-px[2 * m] * py[2 * m + 1]);
        s.add(px[2 * m + 1] * py[2 * m]);
    }
    return s.value();
}

double KernelEvaluator::i_kernel(double x, double y) const {
    std::vector<double> px, qx, py, qy;
    values(x, 2 * N_, px, qx);
    values(y, 2 * N_, py, qy);
    CompensatedSum s;
    for (int m = 0; m < N_; ++m) {
        s.add(qx[2 * m] * qy[2 * m + 1]);
        s.add(-qx[2 * m + 1] * qy[2 * m]);
    }
    return s.value();
}

double KernelEvaluator::density(double x) const { return s_kernel_sum(x, x); }

Eigen::Matrix2d KernelEvaluator::r2_matrix(double x, double y) const {
    if (x == y) throw DegeneratePointError("the two-point block needs x != y");
    Eigen::Matrix2d m;
    const double eps = family_->beta() == 1 ? (y > x ? 0.5 : -0.5) : 0.0;
    m(0, 0) = s_kernel(x, y);
    m(0, 1) = d_kernel(x, y);
    m(1, 0) = i_kernel(x, y) - eps;
    m(1, 1) = s_kernel(y, x);
    return m;
}

double KernelEvaluator::unfolded_kernel(double x, double r) const {
    const double rho = density(x);
    if (!(rho > 0.0)) throw SingularDenominatorError("density vanishes; cannot unfold");
    return s_kernel(x, x + r / rho) / rho;
}

}  // namespace skewortho
