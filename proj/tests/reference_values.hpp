#pragma once

// Generated by tests/tools/freeze_reference_values.py; do not edit.

namespace reference {

struct KernelValue { const char* name; int beta; const char* weight; double a, b; int functions; double x, y, s; };
inline constexpr KernelValue kernel_values[] = {
    {"jacobi_b1", 1, "jacobi", 0.5, 0.25, 4, 0.2, -0.3, 0.36475295067698589715},
    {"jacobi_b1", 1, "jacobi", 0.5, 0.25, 4, 0.6, 0.6, 1.9028677339564399599},
    {"laguerre_b1", 1, "laguerre", 0.5, 0, 4, 1.0, 2.5, 0.054850267892121279612},
    {"laguerre_b1", 1, "laguerre", 0.5, 0, 4, 1.5, 1.5, 0.69485553232709717689},
    {"gaussian_b1", 1, "gaussian", 0, 0, 4, 0.4, -1.1, -0.1836098346046363796},
    {"gaussian_b1", 1, "gaussian", 0, 0, 4, 0.7, 0.7, 0.82460744647544157376},
    {"jacobi_b4", 4, "jacobi", 0.5, 0.3, 4, 0.2, -0.3, 0.096528782028466999396},
    {"jacobi_b4", 4, "jacobi", 0.5, 0.3, 4, 0.6, 0.6, 1.297733948180756596},
    {"laguerre_b4", 4, "laguerre", 0.5, 0, 4, 1.0, 2.5, -0.038353962950805277229},
    {"laguerre_b4", 4, "laguerre", 0.5, 0, 4, 1.5, 1.5, 0.21585246172527698754},
    {"gaussian_b4", 4, "gaussian", 0, 0, 4, 0.4, -1.1, 0.093172140829435115915},
    {"gaussian_b4", 4, "gaussian", 0, 0, 4, 0.7, 0.7, 0.56686842803198862526},
};

// One-point density of two eigenvalues from the joint density.
struct PairDensity { const char* name; int beta; const char* weight; double a, b; double x, rho; };
inline constexpr PairDensity pair_densities[] = {
    {"jacobi_b1", 1, "jacobi", 0.5, 0.25, 0.6, 1.0410924097136009691},
    {"laguerre_b1", 1, "laguerre", 0.5, 0, 1.5, 0.44808361531077548681},
    {"gaussian_b1", 1, "gaussian", 0, 0, 0.7, 0.54557378786290118144},
    {"jacobi_b4", 4, "jacobi", 0.5, 0.3, 0.6, 1.297733948180756596},
    {"laguerre_b4", 4, "laguerre", 0.5, 0, 1.5, 0.21585246172527698754},
    {"gaussian_b4", 4, "gaussian", 0, 0, 0.7, 0.56686842803198862526},
};

// Classical polynomials in the library's standardization and their norms.
struct OpValue { const char* weight; double a, b; int j; double x, value, norm; };
inline constexpr OpValue op_values[] = {
    {"jacobi", 0.5, 0.25, 7, 0.3, -0.2071078558398336472, 0.21020096637717602686},
    {"jacobi", -0.4, 1.5, 12, -0.55, -0.66343767276672445981, 0.17199024993992322242},
    {"laguerre", 0.5, 0, 9, 2.7, -0.88808657032857180982, 3.1230114333906127848},
    {"gaussian", 0, 0, 10, 1.3, -66123.413033062409421, 6586245666.9859190373},
};

// Weighted moments int w(x) x^k dx.
struct Moment { const char* weight; double a, b; int k; double value; };
inline constexpr Moment moments[] = {
    {"jacobi", 0.5, 0.25, 6, 0.15867867552830804367},
    {"jacobi", -0.7, -0.2, 5, 1.3752336528369422603},
    {"laguerre", 1.3, 0, 4, 201.81327518474751943},
    {"gaussian", 0, 0, 8, 11.631728396567448929},
};

}  // namespace reference
