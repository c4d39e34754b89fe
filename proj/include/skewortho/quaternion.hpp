#pragma once

#include <Eigen/Dense>

#include <array>

#include "skewortho/sop_family.hpp"

namespace skewortho {

// Square matrix over orders 0..2K-1 read as K x K blocks of 2 x 2 entries.
class QuaternionBandMatrix {
public:
    QuaternionBandMatrix() = default;
    explicit QuaternionBandMatrix(Eigen::MatrixXd entries, int bandwidth = 1);

    const Eigen::MatrixXd& entries() const { return entries_; }
    int size() const { return static_cast<int>(entries_.rows()); }
    int blocks() const { return size() / 2; }
    int bandwidth() const { return bandwidth_; }
    Eigen::Matrix2d block(int row, int col) const;
    double operator()(int i, int j) const { return entries_(i, j); }

    // Largest entry in blocks with |row - col| > bandwidth.
    double out_of_band_max() const;
    // Copy with entries below rel * (largest entry of their block) set to zero.
    QuaternionBandMatrix snapped(double rel = 1e-12) const;

private:
    Eigen::MatrixXd entries_;
    int bandwidth_ = 1;
};

enum class BandKind { P, R };

// Band from skew scalar products by Gauss quadrature (exact for these
// integrands); size = number of orders, even, at most family.max_order() + 1.
QuaternionBandMatrix extract_band(const SopFamily& family, BandKind which, int size);

// Band entries known in closed form (the ones the kernel bracket needs) and
// their anti-self-dual mirrors; `defined` marks which entries are filled.
struct ClosedFormBand {
    QuaternionBandMatrix values;
    Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> defined;
};

// Available for beta = 1 Jacobi and Laguerre and the sqrt-weight Laguerre
// beta = 4 family; anything else is a configuration error.
ClosedFormBand closed_form_band(const SopFamily& family, BandKind which, int size);

// A^D = -Z A^t Z.
QuaternionBandMatrix dual(const QuaternionBandMatrix& A);

// Residuals of the three-term relations for block n at x: the P relation and the
// R relation, each a 2-vector.
struct RecursionResidual {
    Eigen::Vector2d p;
    Eigen::Vector2d r;
    double max_abs() const { return std::max(p.cwiseAbs().maxCoeff(), r.cwiseAbs().maxCoeff()); }
};
RecursionResidual recursion_residual(const SopFamily& family, const QuaternionBandMatrix& P,
                                     const QuaternionBandMatrix& R, int n, double x);

}  // namespace skewortho
