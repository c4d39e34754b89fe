#include "skewortho/quaternion.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace skewortho {

QuaternionBandMatrix::QuaternionBandMatrix(Eigen::MatrixXd entries, int bandwidth)
    : entries_(std::move(entries)), bandwidth_(bandwidth) {
    if (entries_.rows() != entries_.cols() || entries_.rows() % 2 != 0)
        throw ConfigurationError("quaternion matrix must be square with even size");
}

Eigen::Matrix2d QuaternionBandMatrix::block(int row, int col) const {
    if (row < 0 || col < 0 || row >= blocks() || col >= blocks()) throw OrderRangeError("block index out of range");
    return entries_.block<2, 2>(2 * row, 2 * col);
}

double QuaternionBandMatrix::out_of_band_max() const {
    double m = 0.0;
    for (int r = 0; r < blocks(); ++r)
        for (int c = 0; c < blocks(); ++c)
            if (std::abs(r - c) > bandwidth_) m = std::max(m, block(r, c).cwiseAbs().maxCoeff());
    return m;
}

QuaternionBandMatrix QuaternionBandMatrix::snapped(double rel) const {
    Eigen::MatrixXd e = entries_;
    for (int r = 0; r < blocks(); ++r)
        for (int c = 0; c < blocks(); ++c) {
            auto b = e.block<2, 2>(2 * r, 2 * c);
            const double scale = b.cwiseAbs().maxCoeff();
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                    if (std::abs(b(i, j)) < rel * scale) b(i, j) = 0.0;
        }
    return QuaternionBandMatrix(std::move(e), bandwidth_);
}

QuaternionBandMatrix dual(const QuaternionBandMatrix& A) {
    const Eigen::MatrixXd Z = z_matrix(A.size());
    return QuaternionBandMatrix(-Z * A.entries().transpose() * Z, A.bandwidth());
}

namespace {

void check_size(const SopFamily& family, int size) {
    if (size < 2 || size % 2 != 0) throw ConfigurationError("band size must be a positive even number");
    if (size > family.max_order() + 1)
        throw OrderRangeError("band size " + std::to_string(size) + " needs max_order >= " + std::to_string(size - 1));
}

double extraction_weight_value(const SopFamily& family, double x) {
    const WeightSpec w = family.extraction_weight();
    switch (w.kind) {
        case WeightKind::Jacobi: return w(x);
        case WeightKind::Laguerre: {
            const double c = family.extraction_scale();
            return std::pow(x, w.a) * std::exp(-c * x);
        }
        default: return std::exp(-x * x);
    }
}

// Polynomial f*w'/w and its derivative, plus f'.
struct Multipliers {
    double f, df, rho, drho;
};

Multipliers multipliers(const WeightSpec& w, double x) {
    switch (w.kind) {
        case WeightKind::Jacobi: return {1 - x * x, -2 * x, -w.a * (1 + x) + w.b * (1 - x), -w.a - w.b};
        case WeightKind::Laguerre: return {x, 1.0, w.a - x, -1.0};
        default: return {1.0, 0.0, -2 * x, -2.0};
    }
}

}  // namespace

QuaternionBandMatrix extract_band(const SopFamily& family, BandKind which, int size) {
    check_size(family, size);
    const bool with_x = which == BandKind::R;
    const int nq = size + 3;
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(size, size);
    std::vector<double> u(size), v(size);
    if (family.convention() == Convention::SqrtWeight) {
        // <f psi_n, phi_k> = c_n c_k int w (q_n pi_k' - pi_k q_n'), q = f pi' + rho pi / 2
        const QuadratureRule rule = gauss_rule(family.weight(), nq);
        std::vector<double> pi(size), dpi(size), ddpi(size), q(size), dq(size);
        for (std::size_t i = 0; i < rule.size(); ++i) {
            const double x = rule.nodes[i];
            family.eval_pi(x, size, pi.data(), dpi.data(), ddpi.data());
            const Multipliers m = multipliers(family.weight(), x);
            for (int n = 0; n < size; ++n) {
                q[n] = m.f * dpi[n] + 0.5 * m.rho * pi[n];
                dq[n] = m.df * dpi[n] + m.f * ddpi[n] + 0.5 * (m.drho * pi[n] + m.rho * dpi[n]);
                if (with_x) {
                    dq[n] = q[n] + x * dq[n];
                    q[n] *= x;
                }
            }
            for (int n = 0; n < size; ++n)
                for (int k = 0; k < size; ++k) M(n, k) += rule.weights[i] * (q[n] * dpi[k] - pi[k] * dq[n]);
        }
        for (int n = 0; n < size; ++n)
            for (int k = 0; k < size; ++k) M(n, k) *= family.norm_factor(n) * family.norm_factor(k);
    } else {
        const QuadratureRule rule =
            gauss_rule_scaled(family.extraction_weight(), nq, family.extraction_scale());
        const bool use_phi = family.beta() == 1;
        for (std::size_t i = 0; i < rule.size(); ++i) {
            const double x = rule.nodes[i];
            family.eval_all(x, size, u.data(), v.data());
            const auto& vals = use_phi ? u : v;
            const double s = rule.weights[i] * family.multiplier(x) * (with_x ? x : 1.0) /
                             extraction_weight_value(family, x);
            for (int n = 0; n < size; ++n)
                for (int k = 0; k < size; ++k) M(n, k) += s * vals[n] * vals[k];
        }
    }
    const Eigen::MatrixXd Z = z_matrix(size);
    Eigen::MatrixXd band = family.beta() == 1 ? Eigen::MatrixXd(M * Z) : Eigen::MatrixXd(-M * Z);
    return QuaternionBandMatrix(std::move(band), 1);
}

RecursionResidual recursion_residual(const SopFamily& family, const QuaternionBandMatrix& P,
                                     const QuaternionBandMatrix& R, int n, double x) {
    if (P.size() != R.size()) throw ConfigurationError("P and R must share a truncation");
    if (n < 1 || n + 1 >= P.blocks())
        throw BoundaryError("block " + std::to_string(n) + " touches the truncation boundary");
    const int size = P.size();
    std::vector<double> phi(size), psi(size);
    family.eval_all(x, size, phi.data(), psi.data());
    const auto& lhs = family.beta() == 1 ? phi : psi;
    const auto& rhs = family.beta() == 1 ? psi : phi;
    const double f = family.multiplier(x);
    RecursionResidual res;
    for (int i = 0; i < 2; ++i) {
        const int row = 2 * n + i;
        double sp = f * lhs[row], sr = x * f * lhs[row];
        for (int j = 0; j < size; ++j) {
            sp -= P(row, j) * rhs[j];
            sr -= R(row, j) * rhs[j];
        }
        res.p[i] = sp;
        res.r[i] = sr;
    }
    return res;
}

ClosedFormBand closed_form_band(const SopFamily& family, BandKind which, int size) {
    check_size(family, size);
    const WeightKind kind = family.weight().kind;
    const bool beta1 = family.beta() == 1;
    const bool sqrt_laguerre = family.beta() == 4 && family.convention() == Convention::SqrtWeight &&
                               kind == WeightKind::Laguerre;
    if (!((beta1 && kind != WeightKind::Gaussian) || sqrt_laguerre))
        throw ConfigurationError("no closed-form band for this (weight, beta, convention)");
    const double a = family.weight().a, b = family.weight().b;

    Eigen::MatrixXd e = Eigen::MatrixXd::Zero(size, size);
    Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> def =
        Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>::Constant(size, size, false);
    // Sets (i, j) and its mirror under A = Z A^t Z, i.e. (j^1, i^1).
    auto put = [&](int i, int j, double v) {
        if (i >= size || j >= size) return;
        v *= family.phase(i) * family.phase(j);
        e(i, j) = v;
        def(i, j) = true;
        const int mi = j ^ 1, mj = i ^ 1;
        const double zi = i % 2 == 0 ? 1.0 : -1.0;   // Z(i, i^1)
        const double zj = mi % 2 == 0 ? 1.0 : -1.0;  // Z(j^1, j)
        e(mi, mj) = v * zi * zj;
        def(mi, mj) = true;
    };
    for (int m = 0; 2 * m + 2 < size; ++m) {
        const double r = std::exp(0.5 * (family.norms()[2 * m + 2].log_abs - family.norms()[2 * m].log_abs));
        const double mm = m;
        if (beta1 && kind == WeightKind::Jacobi) {
            const double s = 2 * a + 2 * b;
            const double c = (2 * mm + 1) * (2 * mm + 2) * (2 * mm + s + 3) * (2 * mm + s + 4);
            const double d3 = 4 * mm + s + 3, d4 = 4 * mm + s + 4, d5 = 4 * mm + s + 5, d6 = 4 * mm + s + 6;
            if (which == BandKind::P) {
                put(2 * m + 1, 2 * m + 2, r * c / (d3 * d5));
            } else {
                put(2 * m + 1, 2 * m + 3, -2 * r * c / (d3 * d5 * d6));
                put(2 * m + 1, 2 * m + 2,
                    r * ((2 * b + 1) * (2 * b + 1) - (2 * a + 1) * (2 * a + 1)) * c / (d3 * d4 * d5 * d6));
                put(2 * m, 2 * m + 2, -2 * r * c / (d3 * d4 * d5));
            }
        } else if (beta1) {
            if (which == BandKind::P) {
                put(2 * m + 1, 2 * m + 2, 0.5 * r * (2 * mm + 1) * (2 * mm + 2));
            } else {
                const double base = 0.5 * r * (mm + 1) * (2 * mm + 1);
                put(2 * m, 2 * m + 2, -base);
                put(2 * m + 1, 2 * m + 3, -base);
                put(2 * m + 1, 2 * m + 2, base * (4 * mm + 2 * a + 4));
            }
        } else {
            if (which == BandKind::P) {
                put(2 * m + 1, 2 * m + 2, r * (mm + 1));
            } else {
                put(2 * m + 1, 2 * m + 3, -r * (mm + 1) * (2 * mm + 3));
                put(2 * m, 2 * m + 2, -r * (mm + 1) * (2 * mm + 1));
                put(2 * m + 1, 2 * m + 2, r * (mm + 1) * (4 * mm + a + 4));
            }
        }
    }
    return {QuaternionBandMatrix(std::move(e), 1), std::move(def)};
}

}  // namespace skewortho
