#include <doctest.h>

#include <cmath>
#include <numbers>
#include <string>

#include "reference_values.hpp"
#include "skewortho/classical_op.hpp"
#include "skewortho/quadrature.hpp"

using namespace skewortho;
using doctest::Approx;

namespace {
WeightSpec weight_named(const std::string& kind, double a, double b) {
    if (kind == "jacobi") return WeightSpec::jacobi(a, b);
    if (kind == "laguerre") return WeightSpec::laguerre(a);
    return WeightSpec::gaussian();
}
}  // namespace

TEST_CASE("gauss rules reproduce low-order integrals") {
    const auto one = gauss_rule(WeightSpec::gaussian(), 1);
    REQUIRE(one.size() == 1);
    CHECK(one.nodes[0] == Approx(0.0));
    CHECK(one.weights[0] == Approx(std::sqrt(std::numbers::pi)).epsilon(1e-14));

    const auto leg = gauss_rule(WeightSpec::jacobi(0, 0), 2);
    CHECK(std::abs(integrate(leg, [](double x) { return x * x; }) - 2.0 / 3.0) < 1e-12);

    const auto lag = gauss_rule(WeightSpec::laguerre(0), 4);
    CHECK(std::abs(integrate(lag, [](double x) { return x * x * x; }) - 6.0) < 1e-10);
}

TEST_CASE("gauss rules match high-precision moments") {
    for (const auto& m : reference::moments) {
        const WeightSpec w = weight_named(m.weight, m.a, m.b);
        const auto rule = gauss_rule(w, m.k / 2 + 1);
        const double got = integrate(rule, [&](double x) { return std::pow(x, m.k); });
        CAPTURE(m.weight);
        CHECK(std::abs(got - m.value) <= 1e-13 * std::abs(m.value));
    }
}

TEST_CASE("gauss rule nodes are increasing and weights positive") {
    for (const WeightSpec& w : {WeightSpec::jacobi(-0.5, 2.0), WeightSpec::laguerre(3.5), WeightSpec::gaussian()}) {
        const auto rule = gauss_rule(w, 40);
        for (std::size_t i = 0; i < rule.size(); ++i) {
            CHECK(rule.weights[i] > 0.0);
            if (i) CHECK(rule.nodes[i] > rule.nodes[i - 1]);
        }
    }
}

TEST_CASE("scaled rules integrate against the rescaled weight") {
    const auto lag = gauss_rule_scaled(WeightSpec::laguerre(0.5), 6, 2.0);
    // int x^{1/2} e^{-2x} x dx = Gamma(5/2) / 2^{5/2}
    CHECK(integrate(lag, [](double x) { return x; }) == Approx(std::tgamma(2.5) / std::pow(2.0, 2.5)).epsilon(1e-13));
    const auto her = gauss_rule_scaled(WeightSpec::gaussian(), 5, 0.5);
    CHECK(integrate(her, [](double x) { return x * x; }) == Approx(std::sqrt(2 * std::numbers::pi)).epsilon(1e-13));
}

TEST_CASE("rejects bad rule requests") {
    CHECK_THROWS_AS(gauss_rule(WeightSpec::jacobi(0, 0), 0), OrderRangeError);
    CHECK_THROWS_AS(gauss_rule(WeightSpec::jacobi(-1.5, 0), 3), ParameterDomainError);
}

TEST_CASE("integrate_interval handles the classical supports") {
    CHECK(integrate_interval([](double) { return 1.0; }, {-1, 1}) == Approx(2.0).epsilon(1e-14));
    const WeightSpec leg = WeightSpec::jacobi(0, 0);
    CHECK(integrate_interval([&](double x) { return std::pow(op_value(leg, 2, x), 2); }, {-1, 1}) ==
          Approx(0.4).epsilon(1e-13));
    const WeightSpec her = WeightSpec::gaussian();
    const double inf = std::numeric_limits<double>::infinity();
    CHECK(std::abs(integrate_interval([&](double x) { return her(x) * op_value(her, 1, x) * op_value(her, 3, x); },
                                      {-inf, inf})) < 1e-12);
    // endpoint singularity resolved by grading; x near 1 only carries t = 1 - x to
    // about 1e-16 absolute, which bounds the attainable accuracy
    IntegrationOptions opt;
    opt.hi_exponent = -0.7;
    CHECK(integrate_interval([](double x) { return std::pow(1 - x, -0.7); }, {-1, 1}, opt) ==
          Approx(std::pow(2.0, 0.3) / 0.3).epsilon(1e-11));
}

TEST_CASE("epsilon integral") {
    const auto one = [](double) { return 1.0; };
    CHECK(std::abs(epsilon_integral(one, 0.0, {-1, 1})) < 1e-15);
    CHECK(epsilon_integral(one, 1.0, {-1, 1}) == Approx(1.0).epsilon(1e-14));
    const double inf = std::numeric_limits<double>::infinity();
    CHECK(epsilon_integral([](double y) { return std::exp(-y); }, 0.0, {0, inf}) == Approx(-0.5).epsilon(1e-13));
    CHECK(epsilon_integral([](double y) { return std::exp(-y); }, 1.0, {0, inf}) ==
          Approx(0.5 * (1 - 2 * std::exp(-1.0))).epsilon(1e-13));
}
