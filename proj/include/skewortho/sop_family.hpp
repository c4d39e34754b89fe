#pragma once

#include <Eigen/Dense>

#include <array>
#include <vector>

#include "skewortho/classical_op.hpp"
#include "skewortho/quadrature.hpp"
#include "skewortho/weight.hpp"

namespace skewortho {

// FullWeight: phi = g^{-1/2} w pi with the skew product (1/2) int (phi psi' - psi phi'),
// and the beta = 1 construction. SqrtWeight: phi = g^{-1/2} w^{1/2} pi with the
// product int (phi psi - psi phi), beta = 4 only.
enum class Convention { FullWeight, SqrtWeight };

struct SignedNorm {
    int sign = 1;
    double log_abs = 0.0;
    double value() const;
};

// Per-order expansion constants; entries that do not apply to a family stay empty.
struct SopConstants {
    std::vector<double> A, B, gamma;   // weighted-derivative constants and chain ratios
    std::vector<double> D, E, F, eta;  // sqrt-weight Jacobi pi-expansion
};

class SopFamily {
public:
    SopFamily(int beta, WeightSpec weight, Convention convention, int max_order);

    int beta() const { return beta_; }
    const WeightSpec& weight() const { return weight_; }
    Convention convention() const { return convention_; }
    int max_order() const { return max_order_; }
    const SopConstants& constants() const { return constants_; }
    const std::vector<SignedNorm>& norms() const { return norms_; }
    double g(int n) const;

    // Degree of the polynomial carried by the odd function of block m (psi_{2m+1}
    // for beta = 1, phi_{2m+1} for beta = 4).
    int odd_partner_degree(int m) const;

    Interval support() const { return {weight_.lower(), weight_.upper()}; }
    // f(x): 1 - x^2, x, 1 for Jacobi, Laguerre, Gaussian.
    double multiplier(double x) const;
    // Weight whose Gauss rule is exact for the band-extraction integrands, and its rate.
    WeightSpec extraction_weight() const;
    double extraction_scale() const;
    // log of the weight in the eigenvalue jpdf |Delta|^beta prod w whose
    // one-point function this family's kernel reproduces.
    double log_ensemble_weight(double x) const;
    // Density integrates to this multiple of N.
    int density_mass_per_block() const { return convention_ == Convention::SqrtWeight ? 1 : 2; }

    // phi_0..phi_{n-1}, psi_0..psi_{n-1} at x; n <= max_order + 1.
    void eval_all(double x, int n, double* phi, double* psi) const;
    double phi(int n, double x) const;
    double psi(int n, double x) const;

    // Sqrt-weight convention: polynomial part pi_n and its first two derivatives
    // (ddpi may be null).
    void eval_pi(double x, int n, double* pi, double* dpi, double* ddpi = nullptr) const;
    // Sign s_n used for sqrt-weight normalization.
    int phase(int n) const;
    // s_n |g_n|^{-1/2}, the factor turning unnormalized functions into normalized ones.
    double norm_factor(int n) const;

    // Skew Gram matrix of orders 0..n-1, which should equal Z.
    Eigen::MatrixXd skew_gram(int n) const;

private:
    void build_constants();
    void build_norms();
    void check_order(int n) const;

    void eval_beta1(double x, int n, double* phi, double* psi) const;
    void eval_full4(double x, int n, double* phi, double* psi) const;
    void eval_sqrt4(double x, int n, double* phi, double* psi) const;

    int beta_;
    WeightSpec weight_;
    Convention convention_;
    int max_order_;
    SopConstants constants_;
    std::vector<SignedNorm> norms_;
    std::vector<double> inv_sqrt_g_;  // sign(g) |g|^{-1/2} with the phase folded in
    double mass_ = 0.0;               // integral of the base weight
    double chain_start_ = 0.0;        // first chain ratio of the full-weight Jacobi beta = 4 family
};

// Residuals (Psi1_m + sigma3 Phi4_m, Phi1_m + sigma3 Psi4_m) of the Laguerre
// duality, packed as four numbers.
std::array<double, 4> duality_map(const SopFamily& beta1, const SopFamily& beta4, int m, double x);

Eigen::MatrixXd z_matrix(int n);

}  // namespace skewortho
