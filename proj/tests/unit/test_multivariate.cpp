#include "doctest.h"

#include <cmath>

#include "fracent/errors.hpp"
#include "fracent/multivariate.hpp"

using namespace fracent;

namespace {

const Distribution U = make("uniform:a=1");

// midpoint rule on an n x n grid over [0,1]^2
template <class F>
double midpoint_2d(F f, int n) {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) s += f((i + 0.5) / n, (j + 0.5) / n);
    return s / (n * n);
}

} // namespace

TEST_SUITE("multivariate") {

TEST_CASE("law invariants") {
    for (const auto& j : {BivariateLaw::independent(U, make("beta:p=2,q=3")), BivariateLaw::triangle(),
                          BivariateLaw::fgm(-0.7, U, make("uniform:a=2"))}) {
        INFO(j.label());
        const double s1 = j.marginal_x().upper(), s2 = j.marginal_y().upper();
        CHECK(j.cdf(s1, s2) == doctest::Approx(1.0).epsilon(1e-14));
        for (double f = 0.05; f < 1.0; f += 0.1) {
            CHECK(std::abs(j.cdf(f * s1, s2) - j.marginal_x().cdf(f * s1)) <= 1e-10);
            CHECK(std::abs(j.cdf(s1, f * s2) - j.marginal_y().cdf(f * s2)) <= 1e-10);
            CHECK(j.cdf(f * s1, 0.5 * s2) <= j.cdf((f + 0.05) * s1, 0.5 * s2));
        }
    }
    const auto t = BivariateLaw::triangle();
    CHECK(t.cdf(0.5, 0.25) == doctest::Approx(2 * 0.5 * 0.25 - 0.0625));
    CHECK(t.cond_y_given_x(0.25, 0.5) == 0.5);
    CHECK_THROWS_AS(BivariateLaw::fgm(1.5, U, U), fracent::domain_error);
}

TEST_CASE("bivariate efcpe of independent uniforms") {
    const auto j = BivariateLaw::independent(U, U);
    CHECK(bivariate_efcpe(j, FracOrder(1.0)).get() == doctest::Approx(0.25).epsilon(1e-6));
    CHECK(independence_decomposition(U, U, FracOrder(1.0)) == doctest::Approx(0.25).epsilon(1e-9));
    // alpha = 1/2: (1/2)! ^2 int int xy (log x + log y)^2 = (pi/4)(2/8 + 2/16)
    const double want = M_PI / 4 * 0.375;
    CHECK(bivariate_efcpe(j, FracOrder(0.5)).get() == doctest::Approx(want).epsilon(1e-6));
    CHECK(independence_decomposition(U, U, FracOrder(0.5)) == doctest::Approx(0.19635).epsilon(2e-5));
}

TEST_CASE("bivariate efcpe matches the decomposition only in the classical limit") {
    for (const auto& y : {U, make("beta:p=2,q=2"), make("uniform:a=2")}) {
        const auto j = BivariateLaw::independent(make("beta:p=3,q=2"), y);
        INFO(j.label());
        CHECK(bivariate_efcpe(j, FracOrder(1.0)).get() ==
              doctest::Approx(independence_decomposition(j.marginal_x(), y, FracOrder(1.0))).epsilon(1e-5));
        for (double a : {0.4, 0.7})
            CHECK(bivariate_efcpe(j, FracOrder(a)).get() >= independence_decomposition(j.marginal_x(), y, FracOrder(a)));
    }
}

TEST_CASE("beta pair decomposition is the mean of the marginal values") {
    const auto b = make("beta:p=2,q=2");
    const FracOrder al(0.6);
    CHECK(independence_decomposition(b, b, al) == doctest::Approx(0.5 * (2 * efcpe(b, al).get())).epsilon(1e-12));
    // degenerate X leaves the Y term only
    const auto c = degenerate(0.5);
    CHECK(independence_decomposition(c, U, al) == doctest::Approx(efcpe(U, al).get() * 0.0).epsilon(1e-12));
    CHECK_THROWS_AS(independence_decomposition(make("exponential:lambda=1"), U, al), fracent::domain_error);
}

TEST_CASE("iid product formula") {
    const FracOrder h(0.5);
    CHECK(iid_n_efcpe(U, 2, h) == doctest::Approx(0.19635).epsilon(2e-5));
    CHECK(iid_n_efcpe(U, 3, h) == doctest::Approx(0.147263).epsilon(2e-5));
    CHECK(iid_n_efcpe(U, 2, h) == doctest::Approx(independence_decomposition(U, U, h)).epsilon(1e-12));
    CHECK_THROWS_AS(iid_n_efcpe(U, 1, h), fracent::domain_error);
}

TEST_CASE("modified bivariate efcpe of the triangle law") {
    const auto t = BivariateLaw::triangle();
    // above the diagonal F = x^2: int (1-x) x^2 (-2 log x) dx = 7/72; below it a fine midpoint rule
    const int n = 1500;
    double below = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = (i + 0.5) / n;
        for (int j = 0; j < n; ++j) {
            const double y = (j + 0.5) / n * x;
            const double p = 2 * x * y - y * y;
            below -= x * p * std::log(p);
        }
    }
    const double ce = 7.0 / 72.0 + below / (double(n) * n);
    CHECK(ce == doctest::Approx(0.2272843).epsilon(1e-5));
    CHECK(modified_bivariate_efcpe(t, FracOrder(1.0)).get() == doctest::Approx(ce).epsilon(1e-5));
    CHECK(modified_bivariate_efcpe(t, FracOrder(0.5)).get() == doctest::Approx(std::tgamma(1.5) * ce).epsilon(1e-5));
    // the closed form alpha! (1 - log 2)/4 quoted for this law is about a third of the integral
    CHECK(modified_bivariate_efcpe(t, FracOrder(1.0)).get() > 2.9 * (1.0 - std::log(2.0)) / 4.0);
    const auto d = BivariateLaw::independent(degenerate(1.0), degenerate(2.0));
    CHECK(modified_bivariate_efcpe(d, FracOrder(0.5)).get() == 0.0);
    CHECK(bivariate_efcpe(d, FracOrder(0.5)).get() == 0.0);
}

TEST_CASE("bivariate scale law") {
    const FracOrder al(0.6);
    const double base = bivariate_efcpe(BivariateLaw::independent(U, U), al).get();
    for (double a1 : {2.0, 3.0})
        for (double a2 : {2.0, 3.0}) {
            const auto j = BivariateLaw::independent(affine(U, a1, 1.0), affine(U, a2, 0.5));
            CHECK(bivariate_efcpe(j, al).get() == doctest::Approx(a1 * a2 * base).epsilon(1e-5));
        }
}

TEST_CASE("bivariate Jensen bound") {
    for (double a : {0.3, 0.5, 0.8}) {
        const FracOrder al(a);
        for (const auto& j : {BivariateLaw::triangle(), BivariateLaw::independent(U, U)})
            CHECK(bivariate_efcpe(j, al).get() >= std::pow(modified_bivariate_efcpe(j, al).get(), 1.0 / a));
    }
}

TEST_CASE("fcpmi") {
    const FracOrder h(0.5);
    CHECK(fcpmi(BivariateLaw::independent(U, U), h) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(std::abs(fcpmi(BivariateLaw::independent(make("beta:p=2,q=5"), U), h)) < 1e-12);
    // positively quadrant dependent: ratio above one
    CHECK_THROWS_AS(fcpmi(BivariateLaw::triangle(), h), fracent::domain_error);
    CHECK_THROWS_AS(fcpmi(BivariateLaw::fgm(0.5, U, U), h), fracent::domain_error);

    for (double theta : {-1.0, -0.4}) {
        for (double a : {0.5, 1.0}) {
            const FracOrder al(a);
            const auto j = BivariateLaw::fgm(theta, U, U);
            const double c = std::pow(std::tgamma(1.0 + a), 1.0 / a);
            const double oracle = midpoint_2d(
                [&](double u, double v) {
                    const double r = 1.0 + theta * (1.0 - u) * (1.0 - v);
                    return u * v * r * c * std::pow(-std::log(r), 1.0 / a);
                },
                100);
            const double got = fcpmi(j, al);
            INFO("theta = " << theta << " alpha = " << a);
            CHECK(got > 0.0);
            CHECK(got == doctest::Approx(oracle).epsilon(1e-3));
            CHECK(fcpmi(j.swapped(), al) == doctest::Approx(got).epsilon(1e-9));
        }
    }
    // non-uniform margins
    const auto j = BivariateLaw::fgm(-0.9, make("beta:p=2,q=2"), make("uniform:a=3"));
    CHECK(fcpmi(j, h) > 0.0);
    CHECK(fcpmi(j.swapped(), h) == doctest::Approx(fcpmi(j, h)).epsilon(1e-6));
}

TEST_CASE("conditional efcpe") {
    const FracOrder al(0.5);
    const auto y = make("beta:p=2,q=3");
    const auto ind = BivariateLaw::independent(U, y);
    for (double x : {0.1, 0.5, 0.9}) CHECK(conditional_efcpe(ind, al, x).get() == doctest::Approx(efcpe(y, al).get()).epsilon(1e-8));
    const auto t = BivariateLaw::triangle();
    CHECK(conditional_efcpe(t, al, 0.5).get() == doctest::Approx(0.5 * efcpe(U, al).get()).epsilon(1e-8));
    // constant X: no information
    const auto trivial = BivariateLaw::independent(degenerate(2.0), y);
    CHECK(conditional_efcpe(trivial, al, 2.0).get() == doctest::Approx(efcpe(y, al).get()).epsilon(1e-8));
    CHECK_THROWS_AS(conditional_efcpe(t, al, 1.5), fracent::domain_error);
}

TEST_CASE("decomposition check pieces") {
    // the displayed identity holds for independent laws at alpha = 1
    const auto d = decomposition_theorem_check(BivariateLaw::independent(U, U), FracOrder(1.0));
    CHECK(d.lhs == doctest::Approx(d.rhs).epsilon(2e-4));
    CHECK(d.rhs == doctest::Approx(d.weighted_x + d.conditional - d.weighted_conditional));
    // for independent margins the weighted pieces factor
    CHECK(d.weighted_x == doctest::Approx(0.25 * 0.5).epsilon(1e-5));
    CHECK(d.conditional == doctest::Approx(0.25).epsilon(1e-5));
    const auto z = decomposition_theorem_check(BivariateLaw::independent(degenerate(1.0), degenerate(1.0)), FracOrder(0.5));
    CHECK(z.lhs == 0.0);
    CHECK(z.rhs == 0.0);
}

TEST_CASE("laws from a tabulated density") {
    // Beta(2,1) x Beta(2,1): polynomial, so the grid rule is exact up to interpolation
    const auto g = BivariateLaw::from_density([](double x, double y) { return 4 * x * y; }, 0, 1, 0, 1, "poly");
    const auto ref = BivariateLaw::independent(make("beta:p=2,q=1"), make("beta:p=2,q=1"));
    for (double x : {0.1, 0.37, 0.8})
        for (double y : {0.2, 0.55, 0.93}) {
            CHECK(g.cdf(x, y) == doctest::Approx(ref.cdf(x, y)).epsilon(1e-4));
            CHECK(g.cond_y_given_x(y, x) == doctest::Approx(y * y).epsilon(1e-4));
        }
    CHECK(bivariate_efcpe(g, FracOrder(0.5)).get() == doctest::Approx(bivariate_efcpe(ref, FracOrder(0.5)).get()).epsilon(1e-5));

    // the triangle law rebuilt from its density
    const auto t = BivariateLaw::from_density([](double x, double y) { return y < x ? 2.0 : 0.0; }, 0, 1, 0, 1, "tri");
    const auto exact = BivariateLaw::triangle();
    for (double x : {0.2, 0.5, 0.9})
        for (double y : {0.1, 0.5, 0.95}) CHECK(std::abs(t.cdf(x, y) - exact.cdf(x, y)) < 2e-3);
    CHECK(t.marginal_x().cdf(0.5) == doctest::Approx(0.25).epsilon(1e-3));
    CHECK(modified_bivariate_efcpe(t, FracOrder(1.0)).get() ==
          doctest::Approx(modified_bivariate_efcpe(exact, FracOrder(1.0)).get()).epsilon(5e-3));
    CHECK_THROWS_AS(BivariateLaw::from_density([](double, double) { return 0.0; }, 0, 1, 0, 1), fracent::domain_error);
}

TEST_CASE("unbounded supports are refused") {
    const auto j = BivariateLaw::independent(make("exponential:lambda=1"), U);
    CHECK_THROWS_AS(bivariate_efcpe(j, FracOrder(0.5)), fracent::unsupported);
}

}
