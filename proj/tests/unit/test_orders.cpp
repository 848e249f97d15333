#include "doctest.h"

#include <cmath>

#include "fracent/errors.hpp"
#include "fracent/orders.hpp"

using namespace fracent;

namespace {

// E* of the Pareto-type law 1 - (1+x)^-k after x = e^(s/k) - 1, Simpson on [0, smax]
double pareto_oracle(double k, double alpha) {
    const double c = std::pow(std::tgamma(1 + alpha), 1 / alpha);
    const double smax = 60.0 / (1 / alpha - 1 / k);
    const int n = 400000;
    const double h = smax / n;
    auto f = [&](double s) {
        if (s == 0) return 0.0;
        const double u = -std::expm1(-s);
        return u * std::pow(-std::log(u), 1 / alpha) * std::exp(s / k);
    };
    double sum = f(0) + f(smax);
    for (int i = 1; i < n; ++i) sum += (i % 2 ? 4 : 2) * f(i * h);
    return c / k * sum * h / 3;
}

const Distribution X = make("pareto:k=0.7");
const Distribution Y = make("pareto:k=0.5");

} // namespace

TEST_SUITE("orders") {

TEST_CASE("dispersive check") {
    const auto same = dispersive_check(X, X);
    CHECK(same.holds == Verdict::yes);
    CHECK(same.min_margin == 0.0);
    CHECK(same.grid_size == 4096);

    const auto xy = dispersive_check(X, Y);
    CHECK(xy.holds == Verdict::yes);
    CHECK(xy.min_margin > 1e-10);
    const auto yx = dispersive_check(Y, X);
    CHECK(yx.holds == Verdict::no);
    REQUIRE(yx.witness.has_value());
    const double v = *yx.witness;
    CHECK(Y.pdf(Y.quantile(v)) < X.pdf(X.quantile(v)));

    const auto u = make("uniform:a=1");
    CHECK(dispersive_check(affine(u, 0.5, 0.0), u).holds == Verdict::yes);
    CHECK(dispersive_check(affine(u, 0.5, 0.0), u).min_margin == doctest::Approx(0.5));
    CHECK(dispersive_check(u, affine(u, 0.5, 0.0)).holds == Verdict::no);
    // densities cross: neither direction
    const auto b = make("beta:p=2,q=2");
    CHECK(dispersive_check(b, u).holds == Verdict::no);
    CHECK(dispersive_check(u, b).holds == Verdict::no);
    CHECK(dispersive_check(make("exponential:lambda=2"), make("exponential:lambda=1"), 500).grid_size == 500);
}

TEST_CASE("antisymmetry on strict pairs") {
    const std::pair<const char*, const char*> pairs[] = {
        {"pareto:k=0.7", "pareto:k=0.5"}, {"exponential:lambda=3", "exponential:lambda=1"},
        {"uniform:a=1", "uniform:a=3"}, {"weibull:scale=1,shape=2", "weibull:scale=2,shape=2"}};
    for (auto [a, b] : pairs) {
        INFO(a, " vs ", b);
        const auto fwd = dispersive_check(make(a), make(b));
        REQUIRE(fwd.holds == Verdict::yes);
        REQUIRE(fwd.min_margin > 1e-10);
        CHECK(dispersive_check(make(b), make(a)).holds == Verdict::no);
    }
}

TEST_CASE("pareto pair values") {
    // printed to 2-3 significant figures; 2% relative
    const double px[] = {2.31, 0.93, 1.06}, py[] = {3.54, 1.72, 3.13};
    const double alphas[] = {0.2, 0.3, 0.4};
    const auto rows = ordering_validation(X, Y, {0.2, 0.3, 0.4});
    REQUIRE(rows.size() == 3);
    for (int i = 0; i < 3; ++i) {
        INFO("alpha ", alphas[i]);
        CHECK(rows[i].compared);
        CHECK(rows[i].holds);
        const double ex = rows[i].x.get(), ey = rows[i].y.get();
        CHECK(std::abs(ex - px[i]) / px[i] < 0.02);
        CHECK(std::abs(ey - py[i]) / py[i] < 0.02);
        CHECK(ex == doctest::Approx(pareto_oracle(0.7, alphas[i])).epsilon(1e-5));
        CHECK(ey == doctest::Approx(pareto_oracle(0.5, alphas[i])).epsilon(1e-5));
    }
}

TEST_CASE("divergent cells are skipped") {
    const auto rows = ordering_validation(X, Y, {0.5, 0.6, 0.8, 1.0});
    for (const auto& r : rows) {
        INFO("alpha ", r.alpha);
        CHECK_FALSE(r.compared);
        CHECK(r.y.diverged());
        CHECK(r.y.diagnostics.tail_exponent >= -1.0 - divergence_epsilon);
    }
    // the k = 0.7 law converges below alpha = 0.7 and diverges above
    CHECK_FALSE(rows[0].x.diverged());
    CHECK_FALSE(rows[1].x.diverged());
    CHECK(rows[2].x.diverged());
    CHECK(rows[3].x.diverged());
}

TEST_CASE("paired entropy keeps the dispersive order") {
    const std::pair<const char*, const char*> pairs[] = {{"exponential:lambda=3", "exponential:lambda=1"},
                                                         {"uniform:a=1", "uniform:a=3"},
                                                         {"weibull:scale=1,shape=2", "weibull:scale=2,shape=2"}};
    for (auto [a, b] : pairs)
        for (const auto& r : ordering_validation(make(a), make(b), {0.3, 0.5, 0.7, 0.9, 1.0}, Measure::paired)) {
            INFO(a, " vs ", b, " alpha ", r.alpha);
            CHECK(r.compared);
            CHECK(r.holds);
        }
}

TEST_CASE("preconditions") {
    CHECK_THROWS_AS(ordering_validation(Y, X, {0.3}), fracent::domain_error);
    CHECK_THROWS_AS(ordering_validation(X, Y, {0.3}, Measure::fcpmi), fracent::domain_error);
    CHECK_THROWS_AS(dispersive_check(X, Y, 1), fracent::domain_error);
}

}
