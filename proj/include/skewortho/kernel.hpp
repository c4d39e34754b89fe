#pragma once

#include <Eigen/Dense>

#include <memory>
#include <mutex>
#include <vector>

#include "skewortho/quaternion.hpp"
#include "skewortho/sop_family.hpp"

namespace skewortho {

enum class KernelMethod { Sum, Gcd };

// Kernel context for a 2N x 2N ensemble. The family must be built to at least
// order 2N + 3 when the GCD path is used (bands are truncated at 2N + 4).
class KernelEvaluator {
public:
    KernelEvaluator(std::shared_ptr<const SopFamily> family, int N, KernelMethod method = KernelMethod::Sum);

    const SopFamily& family() const { return *family_; }
    int N() const { return N_; }
    KernelMethod method() const { return method_; }

    // S_2N(x, y) with the evaluator's method; the GCD path falls back to the
    // direct sum on the diagonal.
    double s_kernel(double x, double y) const;
    double s_kernel_sum(double x, double y) const;
    // GCD quotient; `windowed` restricts the commutator to the four orders
    // around the cut (the three-term bracket), otherwise the full dense
    // commutator is used.
    double s_kernel_gcd(double x, double y, bool windowed = true) const;
    double d_kernel(double x, double y) const;
    double i_kernel(double x, double y) const;
    double density(double x) const;
    Eigen::Matrix2d r2_matrix(double x, double y) const;
    // S(x, x + r / rho(x)) / rho(x).
    double unfolded_kernel(double x, double r) const;

    const QuaternionBandMatrix& P() const;
    const QuaternionBandMatrix& R() const;

private:
    void ensure_bands() const;
    void check_point(double x) const;
    void values(double x, int n, std::vector<double>& phi, std::vector<double>& psi) const;

    std::shared_ptr<const SopFamily> family_;
    int N_;
    KernelMethod method_;
    mutable std::once_flag bands_once_;
    mutable QuaternionBandMatrix P_, R_;
};

// Neumaier-compensated accumulator.
class CompensatedSum {
public:
    void add(double v) {
        const double t = sum_ + v;
        comp_ += std::abs(sum_) >= std::abs(v) ? (sum_ - t) + v : (v - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

}  // namespace skewortho
