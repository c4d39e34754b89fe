#pragma once

#include <vector>

#include "skewortho/quaternion.hpp"
#include "skewortho/sop_family.hpp"
#include "skewortho/weight.hpp"

namespace skewortho {

struct AsymptoticContext {
    WeightSpec weight;
    int beta = 1;
    int N = 1;
    double epsilon_margin = 0.15;
    // Only consulted for beta = 4.
    Convention convention = Convention::SqrtWeight;
};

enum class SopKind { Phi, Psi };

// Bulk angle for order j: x = cos(theta) (Jacobi), x = (4j + 2a + 2) cos^2(theta)
// (Laguerre), x = sqrt(2j + 1) cos(theta) (Hermite). Throws ValidityWindowError
// outside the window.
double bulk_angle(WeightKind kind, double a, int j, double x, double epsilon);

// Leading-order value of the weighted normalized polynomial h^{-1/2} w^{1/2} p_j(x).
// The Gaussian kind stands for the Hermite family.
double op_asymptotic(const AsymptoticContext& ctx, WeightKind family, int j, double x);

// Leading-order phi_n / psi_n for Jacobi and Laguerre SOP (n >= 20). The
// unspecified O(1) inside the even beta = 1 psi brackets is dropped.
double sop_asymptotic(const AsymptoticContext& ctx, int n, SopKind kind, double x);

// Large-N level density for the 2N-function kernel of ctx.
double predicted_density(const AsymptoticContext& ctx, double x);
// Interval outside of which predicted_density throws.
Interval predicted_bulk(const AsymptoticContext& ctx);

double sine_kernel(int beta, double r);

// Large-N leading terms of the band entries that enter the GCD bracket at the
// cut 2N, expressed in the family's sign convention. Entries whose leading
// term is O(1) times (b - a) are omitted for Jacobi beta = 1.
struct LeadingBandEntry {
    BandKind kind;
    int row;
    int col;
    double value;
};
std::vector<LeadingBandEntry> leading_band_entries(const SopFamily& family, int N);

}  // namespace skewortho
