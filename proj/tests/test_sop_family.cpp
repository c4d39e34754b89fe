#include <doctest.h>

#include <cmath>
#include <numbers>

#include "skewortho/classical_op.hpp"
#include "skewortho/quadrature.hpp"
#include "skewortho/sop_family.hpp"

using namespace skewortho;
using doctest::Approx;

namespace {

struct Case {
    int beta;
    WeightSpec w;
    Convention c;
};

const Case all_cases[] = {
    {1, WeightSpec::jacobi(0.5, 0.25), Convention::FullWeight},
    {1, WeightSpec::jacobi(-0.3, 1.2), Convention::FullWeight},
    {1, WeightSpec::laguerre(0.5), Convention::FullWeight},
    {1, WeightSpec::laguerre(-0.4), Convention::FullWeight},
    {1, WeightSpec::gaussian(), Convention::FullWeight},
    {4, WeightSpec::jacobi(0.5, 0.25), Convention::FullWeight},
    {4, WeightSpec::jacobi(0, 0), Convention::FullWeight},
    {4, WeightSpec::laguerre(0.5), Convention::FullWeight},
    {4, WeightSpec::gaussian(), Convention::FullWeight},
    {4, WeightSpec::jacobi(0.5, 0.5), Convention::SqrtWeight},
    {4, WeightSpec::jacobi(-0.3, 1.2), Convention::SqrtWeight},
    {4, WeightSpec::laguerre(0.5), Convention::SqrtWeight},
    {4, WeightSpec::laguerre(-0.4), Convention::SqrtWeight},
    {4, WeightSpec::gaussian(), Convention::SqrtWeight},
};

}  // namespace

TEST_CASE("skew Gram matrix equals Z for every family") {
    for (const Case& c : all_cases) {
        const SopFamily f(c.beta, c.w, c.c, 17);
        const double err = (f.skew_gram(18) - z_matrix(18)).cwiseAbs().maxCoeff();
        CAPTURE(c.w.name());
        CAPTURE(c.beta);
        CHECK(err < 1e-10);
    }
}

TEST_CASE("norms") {
    CHECK(SopFamily(1, WeightSpec::jacobi(0, 0), Convention::FullWeight, 4).g(0) == Approx(4.0 / 3.0).epsilon(1e-14));
    CHECK(SopFamily(4, WeightSpec::gaussian(), Convention::FullWeight, 4).g(0) ==
          Approx(2 * std::sqrt(std::numbers::pi)).epsilon(1e-14));
    const SopFamily lag(4, WeightSpec::laguerre(0), Convention::SqrtWeight, 4);
    CHECK(lag.norms()[0].sign == -1);
    CHECK(std::abs(lag.norms()[0].log_abs) < 1e-15);
    CHECK(lag.g(0) == Approx(-1.0));
    // paired norms
    for (const Case& c : all_cases) {
        const SopFamily f(c.beta, c.w, c.c, 9);
        for (int m = 0; m < 5; ++m) CHECK(f.g(2 * m) == Approx(f.g(2 * m + 1)).epsilon(1e-15));
    }
}

TEST_CASE("beta 1 even function is the normalized doubled-parameter polynomial") {
    const SopFamily f(1, WeightSpec::jacobi(0, 0), Convention::FullWeight, 4);
    const double expected = op_value(WeightSpec::jacobi(1, 1), 2, 0.0) / std::sqrt(f.g(2));
    CHECK(f.phi(2, 0.0) == Approx(expected).epsilon(1e-14));
}

TEST_CASE("full-weight beta 4 Laguerre psi_0") {
    const SopFamily f(4, WeightSpec::laguerre(0), Convention::FullWeight, 3);
    for (double x : {0.3, 1.0, 2.5}) CHECK(f.psi(0, x) == Approx(-std::sqrt(2.0) * std::exp(-x)).epsilon(1e-13));
}

TEST_CASE("sqrt-weight skew product of the first pair") {
    for (const WeightSpec& w : {WeightSpec::jacobi(0.5, 0.5), WeightSpec::laguerre(0.3), WeightSpec::gaussian()}) {
        const SopFamily f(4, w, Convention::SqrtWeight, 3);
        const IntegrationOptions opt = options_for(w, 1.0);
        const double prod = integrate_interval(
            [&](double x) {
                double phi[2], psi[2];
                f.eval_all(x, 2, phi, psi);
                return phi[0] * psi[1] - phi[1] * psi[0];
            },
            f.support(), opt);
        CAPTURE(w.name());
        CHECK(prod == Approx(1.0).epsilon(1e-11));
    }
}

TEST_CASE("beta 1 psi_0 saturates at half the mass of phi_0") {
    const SopFamily f(1, WeightSpec::laguerre(0.5), Convention::FullWeight, 3);
    const double mass = integrate_interval([&](double x) { return f.phi(0, x); }, f.support(), options_for(f.weight(), 1.0));
    CHECK(f.psi(0, 60.0) == Approx(0.5 * mass).epsilon(1e-12));
    const SopFamily j(1, WeightSpec::jacobi(0.5, 0.25), Convention::FullWeight, 3);
    const double mj = integrate_interval([&](double x) { return j.phi(0, x); }, j.support(), options_for(j.weight(), 1.0));
    CHECK(j.psi(0, 1.0 - 1e-14) == Approx(0.5 * mj).epsilon(1e-9));
}

TEST_CASE("beta 4 psi is the derivative of phi") {
    for (const Case& c : all_cases) {
        if (c.beta != 4) continue;
        const SopFamily f(c.beta, c.w, c.c, 9);
        const double h = 1e-5;
        const double xs[] = {c.w.kind == WeightKind::Laguerre ? 0.8 : -0.4, c.w.kind == WeightKind::Laguerre ? 2.1 : 0.1,
                             c.w.kind == WeightKind::Laguerre ? 4.0 : 0.6};
        for (double x : xs)
            for (int n = 0; n < 10; ++n) {
                const double fd = (f.phi(n, x + h) - f.phi(n, x - h)) / (2 * h);
                CHECK(std::abs(f.psi(n, x) - fd) < 1e-7 * std::max(1.0, std::abs(fd)));
            }
    }
}

TEST_CASE("beta 1 phi is the derivative of psi") {
    for (const Case& c : all_cases) {
        if (c.beta != 1) continue;
        const SopFamily f(c.beta, c.w, c.c, 9);
        const double h = 1e-5;
        const double x = c.w.kind == WeightKind::Laguerre ? 1.7 : 0.3;
        for (int n = 0; n < 10; ++n) {
            const double fd = (f.psi(n, x + h) - f.psi(n, x - h)) / (2 * h);
            CHECK(std::abs(f.phi(n, x) - fd) < 1e-7 * std::max(1.0, std::abs(fd)));
        }
    }
}

TEST_CASE("Laguerre duality between beta 1 and beta 4") {
    for (double a : {0.0, 0.5, -0.4, 2.0}) {
        const SopFamily f1(1, WeightSpec::laguerre(a), Convention::FullWeight, 15);
        const SopFamily f4(4, WeightSpec::laguerre(a), Convention::FullWeight, 15);
        for (int n = 0; n <= 15; ++n) CHECK(f4.g(n) == Approx(f1.g(n)).epsilon(1e-12));
        for (int m = 1; m <= 6; ++m)
            for (double x : {0.1, 0.7, 3.0, 9.5}) {
                const auto r = duality_map(f1, f4, m, x);
                for (double v : r) CHECK(std::abs(v) < 1e-10);
            }
    }
    const SopFamily f1(1, WeightSpec::laguerre(0), Convention::FullWeight, 5);
    const SopFamily f4(4, WeightSpec::laguerre(0), Convention::FullWeight, 5);
    CHECK_THROWS_AS(duality_map(f1, f4, 0, 1.0), OrderRangeError);
}

TEST_CASE("configuration errors") {
    CHECK_THROWS_AS(SopFamily(2, WeightSpec::gaussian(), Convention::FullWeight, 4), ConfigurationError);
    CHECK_THROWS_AS(SopFamily(1, WeightSpec::gaussian(), Convention::SqrtWeight, 4), ConfigurationError);
    CHECK_THROWS_AS(SopFamily(1, WeightSpec::gaussian(), Convention::FullWeight, 0), OrderRangeError);
    CHECK_THROWS_AS(SopFamily(4, WeightSpec::jacobi(-0.5, -0.5), Convention::SqrtWeight, 4), ParameterDomainError);
    CHECK_THROWS_AS(SopFamily(1, WeightSpec::laguerre(-1.2), Convention::FullWeight, 4), ParameterDomainError);
    const SopFamily f(1, WeightSpec::gaussian(), Convention::FullWeight, 4);
    CHECK_THROWS_AS(f.phi(5, 0.0), OrderRangeError);
}
