#include <doctest.h>

#include <cmath>

#include "skewortho/quaternion.hpp"

using namespace skewortho;
using doctest::Approx;

namespace {

double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

struct Case {
    int beta;
    WeightSpec w;
    Convention c;
};

const Case band_cases[] = {
    {1, WeightSpec::jacobi(0.5, 0.25), Convention::FullWeight}, {1, WeightSpec::laguerre(0.5), Convention::FullWeight},
    {1, WeightSpec::gaussian(), Convention::FullWeight},        {4, WeightSpec::jacobi(0.5, 0.5), Convention::FullWeight},
    {4, WeightSpec::laguerre(0.5), Convention::FullWeight},     {4, WeightSpec::gaussian(), Convention::FullWeight},
    {4, WeightSpec::jacobi(0.5, 0.5), Convention::SqrtWeight},  {4, WeightSpec::laguerre(0.5), Convention::SqrtWeight},
    {4, WeightSpec::gaussian(), Convention::SqrtWeight},
};

}  // namespace

TEST_CASE("extracted bands are block tridiagonal and anti-self-dual") {
    for (const Case& c : band_cases) {
        const SopFamily f(c.beta, c.w, c.c, 17);
        for (BandKind k : {BandKind::P, BandKind::R}) {
            const auto A = extract_band(f, k, 16);
            const double scale = max_abs(A.entries());
            CAPTURE(c.w.name());
            CAPTURE(c.beta);
            CHECK(A.out_of_band_max() < 1e-9 * scale);
            CHECK(max_abs(A.entries() + dual(A).entries()) < 1e-8 * scale);
        }
    }
}

TEST_CASE("dual is an involution and Z is anti-self-dual") {
    Eigen::MatrixXd m = Eigen::MatrixXd::Random(6, 6);
    const QuaternionBandMatrix A(m, 2);
    CHECK(max_abs(dual(dual(A)).entries() - m) < 1e-15);
    const QuaternionBandMatrix Z(z_matrix(6));
    CHECK(max_abs(dual(Z).entries() + z_matrix(6)) < 1e-15);
}

TEST_CASE("closed-form bands equal extracted bands") {
    const Case closed[] = {
        {1, WeightSpec::jacobi(0.5, 0.25), Convention::FullWeight}, {1, WeightSpec::jacobi(-0.3, 1.2), Convention::FullWeight},
        {1, WeightSpec::laguerre(0.5), Convention::FullWeight},     {1, WeightSpec::laguerre(-0.4), Convention::FullWeight},
        {4, WeightSpec::laguerre(0.5), Convention::SqrtWeight},     {4, WeightSpec::laguerre(0), Convention::SqrtWeight},
    };
    for (const Case& c : closed) {
        const SopFamily f(c.beta, c.w, c.c, 23);
        for (BandKind k : {BandKind::P, BandKind::R}) {
            const auto E = extract_band(f, k, 22);
            const auto C = closed_form_band(f, k, 22);
            int count = 0;
            for (int i = 0; i < 22; ++i)
                for (int j = 0; j < 22; ++j)
                    if (C.defined(i, j)) {
                        ++count;
                        CHECK(std::abs(E(i, j) - C.values(i, j)) <= 1e-9 * std::max(1.0, std::abs(E(i, j))));
                    }
            CHECK(count > 0);
        }
    }
}

TEST_CASE("closed-form entries from the tables") {
    SUBCASE("beta 1 Jacobi with a = b has no odd-even R coupling") {
        const SopFamily f(1, WeightSpec::jacobi(0.7, 0.7), Convention::FullWeight, 11);
        const auto R = closed_form_band(f, BandKind::R, 10);
        for (int m = 0; m < 4; ++m) CHECK(std::abs(R.values(2 * m + 1, 2 * m + 2)) < 1e-14);
    }
    SUBCASE("beta 4 Laguerre P") {
        const SopFamily f(4, WeightSpec::laguerre(0), Convention::SqrtWeight, 11);
        const auto P = closed_form_band(f, BandKind::P, 10);
        for (int m = 0; m < 4; ++m) {
            const double r = std::sqrt(std::abs(f.g(2 * m + 2) / f.g(2 * m)));
            CHECK(std::abs(P.values(2 * m + 1, 2 * m + 2)) == Approx(r * (m + 1)).epsilon(1e-13));
        }
    }
    SUBCASE("beta 1 Laguerre R") {
        const SopFamily f(1, WeightSpec::laguerre(0.5), Convention::FullWeight, 11);
        const auto R = closed_form_band(f, BandKind::R, 10);
        for (int m = 0; m < 4; ++m) {
            const double r = std::sqrt(f.g(2 * m + 2) / f.g(2 * m));
            const double v = -0.5 * r * (m + 1) * (2 * m + 1);
            CHECK(R.values(2 * m, 2 * m + 2) == Approx(v * f.phase(2 * m) * f.phase(2 * m + 2)).epsilon(1e-13));
            CHECK(R.values(2 * m + 1, 2 * m + 3) == Approx(v * f.phase(2 * m + 1) * f.phase(2 * m + 3)).epsilon(1e-13));
        }
    }
    CHECK_THROWS_AS(closed_form_band(SopFamily(1, WeightSpec::gaussian(), Convention::FullWeight, 9), BandKind::P, 8),
                    ConfigurationError);
    CHECK_THROWS_AS(closed_form_band(SopFamily(4, WeightSpec::jacobi(0, 0), Convention::SqrtWeight, 9), BandKind::R, 8),
                    ConfigurationError);
}

TEST_CASE("three-term recursion residuals") {
    const auto residual = [](int beta, WeightSpec w, Convention c, int n, double x) {
        const SopFamily f(beta, w, c, 13);
        const auto P = extract_band(f, BandKind::P, 12), R = extract_band(f, BandKind::R, 12);
        return recursion_residual(f, P, R, n, x).max_abs();
    };
    CHECK(residual(4, WeightSpec::jacobi(0.5, 0.5), Convention::FullWeight, 3, 0.2) < 1e-8);
    CHECK(residual(4, WeightSpec::jacobi(0.5, 0.5), Convention::SqrtWeight, 3, 0.2) < 1e-8);
    CHECK(residual(1, WeightSpec::laguerre(0), Convention::FullWeight, 2, 1.5) < 1e-8);
    CHECK(residual(4, WeightSpec::gaussian(), Convention::FullWeight, 4, 0.0) < 1e-8);

    const SopFamily f(1, WeightSpec::gaussian(), Convention::FullWeight, 9);
    const auto P = extract_band(f, BandKind::P, 8), R = extract_band(f, BandKind::R, 8);
    CHECK_THROWS_AS(recursion_residual(f, P, R, 0, 0.1), BoundaryError);
    CHECK_THROWS_AS(recursion_residual(f, P, R, 3, 0.1), BoundaryError);
}

TEST_CASE("snapping zeroes round-off") {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(4, 4);
    m(0, 1) = 1.0;
    m(1, 0) = 1e-15;
    m(2, 3) = 5.0;
    const auto s = QuaternionBandMatrix(m).snapped();
    CHECK(s(1, 0) == 0.0);
    CHECK(s(0, 1) == 1.0);
}
