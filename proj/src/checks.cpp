#include "skewortho/checks.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "skewortho/format.hpp"

namespace skewortho {
namespace {

CheckResult make(std::string name, double value, double tol, std::string detail = {}) {
    return {std::move(name), value <= tol, value, tol, std::move(detail)};
}

double max_abs(const Eigen::MatrixXd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

std::vector<double> interior_grid(const WeightSpec& w, int N, int count) {
    if (count < 1) throw ConfigurationError("grid needs at least one point");
    double lo, hi;
    switch (w.kind) {
    case WeightKind::Jacobi: lo = -0.9; hi = 0.9; break;
    case WeightKind::Laguerre: lo = 0.2; hi = std::max(6.0, 2.0 * N); break;
    default: lo = -std::max(2.0, std::sqrt(2.0 * N)); hi = -lo; break;
    }
    std::vector<double> xs(count);
    for (int i = 0; i < count; ++i) xs[i] = count == 1 ? 0.5 * (lo + hi) : lo + (hi - lo) * i / (count - 1);
    return xs;
}

CheckResult check_ortho(const SopFamily& family, int N, double tol) {
    const Eigen::MatrixXd G = family.skew_gram(2 * N);
    return make("ortho1", max_abs(G - z_matrix(2 * N)), tol, "orders 0.." + std::to_string(2 * N - 1));
}

CheckResult check_antidual(const SopFamily& family, int size, double band_tol, double dual_tol) {
    double band = 0.0, dual_err = 0.0;
    for (BandKind k : {BandKind::P, BandKind::R}) {
        const QuaternionBandMatrix A = extract_band(family, k, size);
        const double scale = std::max(1.0, max_abs(A.entries()));
        band = std::max(band, A.out_of_band_max() / scale);
        dual_err = std::max(dual_err, max_abs(A.entries() + dual(A).entries()) / scale);
    }
    CheckResult r = make("antidual", dual_err, dual_tol);
    r.passed = r.passed && band <= band_tol;
    r.detail = "out-of-band " + format_double(band) + " (tol " + format_double(band_tol) + ")";
    if (band > band_tol) r.value = std::max(r.value, band);
    return r;
}

CheckResult check_gcd_vs_sum(const KernelEvaluator& ev, double tol) {
    const auto xs = interior_grid(ev.family().weight(), ev.N(), 7);
    double worst = 0.0;
    for (double x : xs)
        for (double y : xs) {
            if (x == y) continue;
            const double s = ev.s_kernel_sum(x, y), g = ev.s_kernel_gcd(x, y);
            const double scale = std::max(std::abs(s), 1e-300);
            worst = std::max(worst, std::abs(s - g) / scale);
        }
    return make("gcd-vs-sum", worst, tol, "7x7 grid, 2N = " + std::to_string(2 * ev.N()));
}

CheckResult check_recursion(const SopFamily& family, int size, double tol) {
    const QuaternionBandMatrix P = extract_band(family, BandKind::P, size);
    const QuaternionBandMatrix R = extract_band(family, BandKind::R, size);
    const double scale = std::max({1.0, max_abs(P.entries()), max_abs(R.entries())});
    const auto xs = interior_grid(family.weight(), size / 2, 7);
    std::vector<double> phi(size), psi(size);
    double worst = 0.0;
    for (double x : xs) {
        family.eval_all(x, size, phi.data(), psi.data());
        double fmax = 1.0;
        for (int i = 0; i < size; ++i) fmax = std::max({fmax, std::abs(phi[i]), std::abs(psi[i])});
        for (int n = 1; n + 1 < P.blocks(); ++n)
            worst = std::max(worst, recursion_residual(family, P, R, n, x).max_abs() / (scale * fmax * std::max(1.0, std::abs(x))));
    }
    return make("recursion-residual", worst, tol, std::to_string(size / 2) + " blocks");
}

std::vector<CheckResult> verify_suite(int beta, const WeightSpec& w, Convention convention, int N,
                                      const CheckTolerances& tol) {
    if (N < 1) throw OrderRangeError("N must be at least 1");
    const int size = 2 * N + 4;
    auto family = std::make_shared<SopFamily>(beta, w, convention, size + 1);
    KernelEvaluator ev(family, N, KernelMethod::Gcd);
    return {check_ortho(*family, N, tol.ortho), check_antidual(*family, size, tol.band, tol.antidual),
            check_gcd_vs_sum(ev, tol.gcd), check_recursion(*family, size, tol.recursion)};
}

}  // namespace skewortho
