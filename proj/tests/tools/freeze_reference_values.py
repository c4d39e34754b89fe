"""Regenerates tests/reference_values.hpp from high-precision mpmath computations.

Kernels come from the moment basis F_j = W x^j (beta 1) or sqrt(W) x^j
(beta 4) and its skew Gram matrix, independent of any particular choice of
skew-orthogonal polynomials. Two-point densities come from integrating the
joint density directly.
"""

from pathlib import Path

import mpmath as mp

mp.mp.dps = 25


def jacobi_w(a, b):
    return lambda x: (1 - x) ** a * (1 + x) ** b


def laguerre_w(a):
    return lambda x: x ** a * mp.exp(-x)


SUPPORT = {"jacobi": (-1, 1), "laguerre": (0, mp.inf), "gaussian": (-mp.inf, mp.inf)}


def quad(f, lo, hi, split=()):
    pts = [lo, *[s for s in split if lo < s < hi], hi]
    return mp.quad(f, pts)


def kernel_beta4(W, dlogW, support, n, x, y):
    lo, hi = support
    F = lambda j, t: mp.sqrt(W(t)) * t ** j
    dF = lambda j, t: mp.sqrt(W(t)) * ((j * t ** (j - 1) if j else 0) + t ** j * dlogW(t) / 2)
    A = mp.matrix(n, n)
    for j in range(n):
        for k in range(j + 1, n):
            v = quad(lambda t: F(j, t) * dF(k, t) - dF(j, t) * F(k, t), lo, hi, (0,))
            A[j, k], A[k, j] = v, -v
    Ainv = A ** -1
    return -sum(F(j, x) * Ainv[j, k] * dF(k, y) for j in range(n) for k in range(n))


def cumulative(kind, a, b, k, t):
    """int_lo^t of the beta 1 moment function W(s) s^k in closed form."""
    if kind == "jacobi":
        # s^k = ((1 + s) - 1)^k expanded binomially
        u = (1 + t) / 2
        return sum(mp.binomial(k, i) * (-1) ** (k - i) * 2 ** (a + b + i + 1) * mp.betainc(b + i + 1, a + 1, 0, u)
                   for i in range(k + 1))
    if kind == "laguerre":
        return mp.gammainc(a + k + 1, 0, t)
    half = 2 ** (mp.mpf(k - 1) / 2) * mp.gamma(mp.mpf(k + 1) / 2)
    neg = (-1) ** k * half
    part = 2 ** (mp.mpf(k - 1) / 2) * mp.gammainc(mp.mpf(k + 1) / 2, 0, t * t / 2)
    return neg + (part if t >= 0 else -(-1) ** k * part)


def kernel_beta1(kind, a, b, W, support, n, x, y):
    lo, hi = support
    F = lambda j, t: W(t) * t ** j
    total = [cumulative(kind, a, b, k, hi) for k in range(n)]
    G = lambda k, t: cumulative(kind, a, b, k, t) - total[k] / 2
    A = mp.matrix(n, n)
    for j in range(n):
        for k in range(j + 1, n):
            v = quad(lambda t: F(j, t) * G(k, t), lo, hi, (0,))
            A[j, k], A[k, j] = v, -v
    Ainv = A ** -1
    return -sum(F(j, x) * Ainv[j, k] * G(k, y) for j in range(n) for k in range(n))


def two_point_density(W, support, beta, x):
    lo, hi = support
    inner = lambda u: quad(lambda v: abs(u - v) ** beta * W(v), lo, hi, (u,))
    Z = quad(lambda u: inner(u) * W(u), lo, hi, (0,))
    return 2 * inner(x) * W(x) / Z


CASES = [
    # name, beta, kind, a, b, W (ensemble weight), points
    ("jacobi_b1", 1, "jacobi", 0.5, 0.25, jacobi_w(0.5, 0.25), [(0.2, -0.3), (0.6, 0.6)]),
    ("laguerre_b1", 1, "laguerre", 0.5, 0, laguerre_w(0.5), [(1.0, 2.5), (1.5, 1.5)]),
    ("gaussian_b1", 1, "gaussian", 0, 0, lambda x: mp.exp(-x * x / 2), [(0.4, -1.1), (0.7, 0.7)]),
    ("jacobi_b4", 4, "jacobi", 0.5, 0.3, jacobi_w(0.5, 0.3), [(0.2, -0.3), (0.6, 0.6)]),
    ("laguerre_b4", 4, "laguerre", 0.5, 0, laguerre_w(0.5), [(1.0, 2.5), (1.5, 1.5)]),
    ("gaussian_b4", 4, "gaussian", 0, 0, lambda x: mp.exp(-x * x), [(0.4, -1.1), (0.7, 0.7)]),
]

# d/dx log W for the beta 4 cases
DLOGW = {
    "jacobi_b4": lambda t: -mp.mpf(0.5) / (1 - t) + mp.mpf(0.3) / (1 + t),
    "laguerre_b4": lambda t: mp.mpf(0.5) / t - 1,
    "gaussian_b4": lambda t: -2 * t,
}


def main():
    out = ["#pragma once", "", "// Generated by tests/tools/freeze_reference_values.py; do not edit.", "",
           "namespace reference {", ""]

    out.append("struct KernelValue { const char* name; int beta; const char* weight; double a, b; int functions; double x, y, s; };")
    out.append("inline constexpr KernelValue kernel_values[] = {")
    for name, beta, kind, a, b, W, pts in CASES:
        for x, y in pts:
            if beta == 1:
                s = kernel_beta1(kind, mp.mpf(a), mp.mpf(b), W, SUPPORT[kind], 4, mp.mpf(x), mp.mpf(y))
            else:
                s = kernel_beta4(W, DLOGW[name], SUPPORT[kind], 4, mp.mpf(x), mp.mpf(y))
            out.append(f'    {{"{name}", {beta}, "{kind}", {a}, {b}, 4, {x}, {y}, {mp.nstr(s, 20)}}},')
    out.append("};")
    out.append("")

    out.append("// One-point density of two eigenvalues from the joint density.")
    out.append("struct PairDensity { const char* name; int beta; const char* weight; double a, b; double x, rho; };")
    out.append("inline constexpr PairDensity pair_densities[] = {")
    for name, beta, kind, a, b, W, pts in CASES:
        x = pts[1][0]
        rho = two_point_density(W, SUPPORT[kind], beta, mp.mpf(x))
        out.append(f'    {{"{name}", {beta}, "{kind}", {a}, {b}, {x}, {mp.nstr(rho, 20)}}},')
    out.append("};")
    out.append("")

    out.append("// Classical polynomials in the library's standardization and their norms.")
    out.append("struct OpValue { const char* weight; double a, b; int j; double x, value, norm; };")
    out.append("inline constexpr OpValue op_values[] = {")
    ops = [
        ("jacobi", 0.5, 0.25, 7, 0.3, lambda: mp.jacobi(7, 0.5, 0.25, 0.3),
         lambda: quad(lambda t: jacobi_w(0.5, 0.25)(t) * mp.jacobi(7, 0.5, 0.25, t) ** 2, -1, 1)),
        ("jacobi", -0.4, 1.5, 12, -0.55, lambda: mp.jacobi(12, -0.4, 1.5, -0.55),
         lambda: quad(lambda t: jacobi_w(-0.4, 1.5)(t) * mp.jacobi(12, -0.4, 1.5, t) ** 2, -1, 1)),
        ("laguerre", 0.5, 0, 9, 2.7, lambda: mp.laguerre(9, 0.5, 2.7),
         lambda: quad(lambda t: laguerre_w(0.5)(t) * mp.laguerre(9, 0.5, t) ** 2, 0, mp.inf)),
        ("gaussian", 0, 0, 10, 1.3, lambda: mp.hermite(10, 1.3),
         lambda: quad(lambda t: mp.exp(-t * t) * mp.hermite(10, t) ** 2, -mp.inf, mp.inf)),
    ]
    for kind, a, b, j, x, val, norm in ops:
        out.append(f'    {{"{kind}", {a}, {b}, {j}, {x}, {mp.nstr(val(), 20)}, {mp.nstr(norm(), 20)}}},')
    out.append("};")
    out.append("")

    out.append("// Weighted moments int w(x) x^k dx.")
    out.append("struct Moment { const char* weight; double a, b; int k; double value; };")
    out.append("inline constexpr Moment moments[] = {")
    for kind, a0, b0, k in [("jacobi", 0.5, 0.25, 6), ("jacobi", -0.7, -0.2, 5), ("laguerre", 1.3, 0, 4), ("gaussian", 0, 0, 8)]:
        a, b = mp.mpf(a0), mp.mpf(b0)
        if kind == "jacobi":
            # x^k = ((1 + x) - 1)^k against (1 - x)^a (1 + x)^b, term by term Beta integrals
            v = sum(mp.binomial(k, i) * (-1) ** (k - i) * 2 ** (a + b + i + 1) * mp.beta(b + i + 1, a + 1)
                    for i in range(k + 1))
        elif kind == "laguerre":
            v = mp.gamma(a + k + 1)
        else:
            v = mp.gamma(mp.mpf(k + 1) / 2) if k % 2 == 0 else mp.mpf(0)
        out.append(f'    {{"{kind}", {a0}, {b0}, {k}, {mp.nstr(v, 20)}}},')
    out.append("};")
    out.append("")
    out.append("}  // namespace reference")
    Path(__file__).resolve().parents[1].joinpath("reference_values.hpp").write_text("\n".join(out) + "\n")


if __name__ == "__main__":
    main()
