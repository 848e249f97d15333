#include "doctest.h"

#include <cmath>

#include "fracent/errors.hpp"
#include "fracent/quadrature.hpp"

using namespace fracent;

TEST_SUITE("quadrature") {

TEST_CASE("trivial integrals") {
    CHECK(integrate([](double) { return 1.0; }, 0.0, 1.0).value == doctest::Approx(1.0).epsilon(1e-15));
    const auto r = integrate([](double x) { return x * std::exp(-x); }, 0.0, INFINITY);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-9));
    CHECK_FALSE(r.diverged);
    CHECK(integrate([](double) { return 3.0; }, 2.0, 2.0).value == 0.0);
}

TEST_CASE("x(-log x)^c on [0,1] equals Gamma(c+1)/2^(c+1)") {
    for (double c : {0.5, 1.0, 2.0, 10.0 / 3.0, 10.0}) {
        const auto r = integrate([c](double x) { return x * std::pow(-std::log(x), c); }, 0.0, 1.0);
        const double want = std::tgamma(c + 1) / std::pow(2.0, c + 1);
        INFO("c = " << c);
        CHECK(r.value == doctest::Approx(want).epsilon(1e-8));
        CHECK(r.error_estimate <= 1e-8 * want + 1e-9);
    }
}

TEST_CASE("polynomials up to degree 8 are exact") {
    for (int n = 0; n <= 8; ++n) {
        const auto r = integrate([n](double x) { return std::pow(x, n); }, 0.0, 1.0);
        CHECK(std::abs(r.value - 1.0 / (n + 1)) <= 1e-12);
        CHECK(r.subdivisions_used == 0);
    }
}

TEST_CASE("tail transform on exp(-x)") {
    const auto r = integrate([](double x) { return std::exp(-x); }, 0.0, INFINITY);
    CHECK(std::abs(r.value - 1.0) <= 1e-9);
    const auto s = integrate([](double x) { return std::exp(-x); }, 3.0, INFINITY);
    CHECK(std::abs(s.value - std::exp(-3.0)) <= 1e-10);
}

TEST_CASE("slow power tails are closed by the remainder term") {
    // int_1^inf x^-p = 1/(p-1)
    for (double p : {1.25, 1.5, 2.0, 3.0}) {
        const auto r = integrate([p](double x) { return x < 1.0 ? 0.0 : std::pow(x, -p); }, 1.0, INFINITY);
        INFO("p = " << p);
        CHECK_FALSE(r.diverged);
        CHECK(r.value == doctest::Approx(1.0 / (p - 1.0)).epsilon(1e-6));
        CHECK(r.tail_exponent == doctest::Approx(-p).epsilon(1e-6));
    }
}

TEST_CASE("divergent tails are flagged") {
    const auto r = integrate([](double x) { return 1.0 / (1.0 + x); }, 0.0, INFINITY);
    CHECK(r.diverged);
    CHECK(r.tail_exponent == doctest::Approx(-1.0).epsilon(1e-3));
}

TEST_CASE("detect_divergence examples") {
    const auto conv = detect_divergence([](double x) { return 1.0 / (x * x); }, 10.0);
    CHECK(conv.status == TailStatus::convergent);
    CHECK(conv.exponent == doctest::Approx(-2.0).epsilon(1e-9));

    const auto harm = detect_divergence([](double x) { return 1.0 / x; }, 10.0);
    CHECK(harm.status == TailStatus::divergent);
    CHECK(harm.exponent == doctest::Approx(-1.0).epsilon(1e-9));

    // EFCPE integrand of the Pareto-type law k = 0.5 at alpha = 0.6
    const double k = 0.5, alpha = 0.6, fact = std::tgamma(1.0 + alpha);
    auto pareto = [=](double x) {
        const double s = std::pow(1.0 + x, -k);
        return (1.0 - s) * std::pow(-fact * std::log1p(-s), 1.0 / alpha);
    };
    const auto par = detect_divergence(pareto, 1e6);
    CHECK(par.status == TailStatus::divergent);
    CHECK(par.exponent == doctest::Approx(-k / alpha).epsilon(1e-3));

    // just past the threshold -1 - 0.05
    CHECK(detect_divergence([](double x) { return std::pow(x, -1.04); }, 10.0).status == TailStatus::divergent);
    CHECK(detect_divergence([](double x) { return std::pow(x, -1.06); }, 10.0).status == TailStatus::convergent);
}

TEST_CASE("bounded-support integrands are never flagged") {
    auto f = [](double x) { return x < 1.0 ? x * (1.0 - x) : 0.0; };
    CHECK(detect_divergence(f, 10.0).status == TailStatus::convergent);
    const auto r = integrate(f, 0.0, INFINITY);
    CHECK_FALSE(r.diverged);
    CHECK(r.value == doctest::Approx(1.0 / 6.0).epsilon(1e-8));
}

TEST_CASE("erratic tails are inconclusive and marked low confidence") {
    auto f = [](double x) { return (2.0 + std::sin(0.7 * std::log(x))) / x; };
    CHECK(detect_divergence(f, 10.0).status == TailStatus::inconclusive);
}

TEST_CASE("max subdivisions reports the partial result") {
    QuadConfig cfg;
    cfg.max_subdivisions = 10;
    auto f = [](double x) { return std::sin(1.0 / x) / x; };
    try {
        integrate(f, 1e-4, 1.0, cfg);
        FAIL("expected max_subdivisions_error");
    } catch (const max_subdivisions_error& e) {
        CHECK(e.partial().subdivisions_used == 10);
        CHECK(e.partial().error_estimate > 0.0);
    }
}

TEST_CASE("integrate_pieces sums across breakpoints") {
    auto f = [](double x) { return std::abs(x - 1.0); };
    const double pts[] = {0.0, 1.0, 3.0};
    CHECK(integrate_pieces(f, pts).value == doctest::Approx(2.5).epsilon(1e-14));
}

TEST_CASE("two-dimensional nested rule") {
    const auto r = integrate_2d([](double x, double y) { return x * y; }, 0.0, 1.0, 0.0, 2.0);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-12));
    // kink along the diagonal
    const auto t = integrate_2d([](double x, double y) { return std::min(x, y); }, 0.0, 1.0, 0.0, 1.0);
    CHECK(t.value == doctest::Approx(1.0 / 3.0).epsilon(1e-7));
    CHECK_THROWS_AS(integrate_2d([](double, double) { return 1.0; }, 0.0, INFINITY, 0.0, 1.0), fracent::unsupported);
}

TEST_CASE("configuration is validated") {
    QuadConfig cfg;
    cfg.abs_tol = 0.0;
    CHECK_THROWS_AS(integrate([](double) { return 1.0; }, 0.0, 1.0, cfg), fracent::domain_error);
    cfg = QuadConfig{};
    cfg.max_subdivisions = 5;
    CHECK_THROWS_AS(cfg.validate(), fracent::domain_error);
    CHECK_THROWS_AS(integrate([](double) { return 1.0; }, 1.0, 0.0), fracent::domain_error);
}

}
