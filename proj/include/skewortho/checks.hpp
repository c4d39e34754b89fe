#pragma once

#include <string>
#include <vector>

#include "skewortho/kernel.hpp"
#include "skewortho/quaternion.hpp"
#include "skewortho/sop_family.hpp"

namespace skewortho {

struct CheckResult {
    std::string name;
    bool passed = false;
    double value = 0.0;      // worst observed error
    double tolerance = 0.0;
    std::string detail;
};

struct CheckTolerances {
    double ortho = 1e-8;
    double band = 1e-9;      // out-of-band entries, relative to the largest entry
    double antidual = 1e-8;  // relative to the largest entry
    double gcd = 1e-9;       // relative to the direct sum
    double recursion = 1e-9;
};

// `count` evenly spaced interior points of the weight's bulk for 2N functions.
std::vector<double> interior_grid(const WeightSpec& w, int N, int count);

// Skew Gram matrix of orders 0..2N-1 against Z.
CheckResult check_ortho(const SopFamily& family, int N, double tol);
// Block bandwidth 1 and anti-self-duality of P and R extracted at `size` orders.
CheckResult check_antidual(const SopFamily& family, int size, double band_tol, double dual_tol);
// GCD against the direct sum on a 7 x 7 grid of distinct interior pairs.
CheckResult check_gcd_vs_sum(const KernelEvaluator& ev, double tol);
// Three-term relations for every interior block at 7 interior points.
CheckResult check_recursion(const SopFamily& family, int size, double tol);

// The four suites above for 2N functions.
std::vector<CheckResult> verify_suite(int beta, const WeightSpec& w, Convention convention, int N,
                                      const CheckTolerances& tol = {});

}  // namespace skewortho
