#include "doctest.h"

#include <cmath>
#include <sstream>
#include <vector>

#include "fracent/distributions.hpp"
#include "fracent/empirical.hpp"
#include "fracent/errors.hpp"
#include "fracent/random.hpp"

using namespace fracent;

namespace {

const std::vector<double> covid = {6,   20,  49,  76,  124, 138, 181, 238, 281, 311,
                                   287, 297, 318, 414, 454, 458, 459, 468, 452, 473};

// direct evaluation of the spacing sum, written out independently of the library kernel
double spacing_sum(std::vector<double> x, double alpha) {
    std::sort(x.begin(), x.end());
    const double n = static_cast<double>(x.size());
    const double c = std::pow(std::tgamma(1.0 + alpha), 1.0 / alpha);
    double s = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i) s += (x[i] - x[i - 1]) * (i / n) * std::pow(-std::log(i / n), 1.0 / alpha);
    return c * s;
}

double std_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

} // namespace

TEST_SUITE("empirical") {

TEST_CASE("sample construction") {
    const Sample s({3.0, 1.0, 2.0});
    CHECK(s.data() == std::vector<double>{1.0, 2.0, 3.0});
    CHECK(s.spacings() == std::vector<double>{1.0, 1.0});
    CHECK_THROWS_AS(Sample({1.0}), fracent::domain_error);
    CHECK_THROWS_AS(Sample({1.0, -2.0}), fracent::domain_error);
    CHECK_THROWS_AS(Sample({1.0, NAN}), fracent::domain_error);
}

TEST_CASE("empirical cdf") {
    const Sample s({1.0, 2.0, 3.0});
    CHECK(empirical_cdf(s, 2.5) == doctest::Approx(2.0 / 3.0));
    CHECK(empirical_cdf(s, 0.5) == 0.0);
    CHECK(empirical_cdf(s, 3.0) == 1.0);
    CHECK(empirical_cdf(s, 2.0) == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("empirical efcpe on the weekly deaths series") {
    const Sample s(covid);
    CHECK(empirical_efcpe(s, FracOrder(1.0)) == doctest::Approx(140.116).epsilon(1e-3));
    CHECK(empirical_efcpe(s, FracOrder(0.4)) == doctest::Approx(123.741).epsilon(1e-3));
    CHECK(empirical_efcpe(s, FracOrder(0.2)) == doctest::Approx(424.411).epsilon(1e-3));
    CHECK(empirical_efcpe(s, FracOrder(0.8)) == doctest::Approx(125.559).epsilon(1e-3));
    for (double a : {0.2, 0.4, 0.55, 0.8, 1.0}) CHECK(empirical_efcpe(s, FracOrder(a)) == doctest::Approx(spacing_sum(covid, a)).epsilon(1e-13));
    CHECK(empirical_efcpe(Sample({5.0, 5.0, 5.0}), FracOrder(0.5)) == 0.0);
}

TEST_CASE("shift invariance and scaling") {
    std::vector<double> x = covid, y = covid;
    for (auto& v : x) v += 1000.0;
    for (auto& v : y) v *= 2.5;
    const FracOrder al(0.6);
    const double e = empirical_efcpe(Sample(covid), al);
    CHECK(std::abs(empirical_efcpe(Sample(x), al) - e) <= 1e-12 * e * 10);
    CHECK(empirical_efcpe(Sample(y), al) == doctest::Approx(2.5 * e).epsilon(1e-14));
}

TEST_CASE("exponential spacing moments") {
    const FracOrder one(1.0);
    const auto m5 = exp_spacing_moments(5, 0.3, one);
    CHECK(std::abs(m5.mean - 1.78) < 0.01);
    CHECK(std::abs(m5.variance - 0.85) < 0.01);
    const auto m50 = exp_spacing_moments(50, 0.3, one);
    CHECK(std::abs(m50.mean - 2.12) < 0.01);
    CHECK(std::abs(m50.variance - 0.10) < 0.01);
    const auto m2 = exp_spacing_moments(2, 1.7, one);
    CHECK(m2.mean == doctest::Approx(0.5 * std::log(2.0) / 1.7).epsilon(1e-14));
    CHECK(m2.variance == doctest::Approx(std::pow(0.5 * std::log(2.0) / 1.7, 2)).epsilon(1e-14));
    CHECK_THROWS_AS(exp_spacing_moments(1, 1.0, one), fracent::domain_error);
    CHECK_THROWS_AS(exp_spacing_moments(5, 0.0, one), fracent::domain_error);
}

TEST_CASE("exponential moments scale with lambda") {
    for (double a : {0.3, 0.7, 1.0}) {
        const auto base = exp_spacing_moments(20, 1.0, FracOrder(a));
        const auto m = exp_spacing_moments(20, 4.0, FracOrder(a));
        CHECK(m.mean == doctest::Approx(base.mean / 4.0).epsilon(1e-14));
        CHECK(m.variance == doctest::Approx(base.variance / 16.0).epsilon(1e-14));
    }
}

TEST_CASE("mean rises and variance falls with n") {
    for (double lambda : {0.3, 0.7, 1.5})
        for (double a : {0.3, 0.4, 0.7, 0.9, 1.0}) {
            MomentPair prev{0.0, INFINITY};
            for (int n : {5, 10, 20, 50}) {
                const auto m = exp_spacing_moments(n, lambda, FracOrder(a));
                CHECK(m.mean > prev.mean);
                CHECK(m.variance < prev.variance);
                prev = m;
            }
        }
}

TEST_CASE("uniform spacing moments") {
    const auto m5 = unif_spacing_moments(5, FracOrder(1.0));
    CHECK(std::abs(m5.mean - 0.20) < 0.01);
    CHECK(std::abs(m5.variance - 0.0014) < 1e-4);
    const auto m100 = unif_spacing_moments(100, FracOrder(0.7));
    CHECK(std::abs(m100.mean - 0.202) < 1e-3);
    CHECK(std::abs(m100.variance - 5.3e-6) < 1e-7);
    CHECK(unif_spacing_moments(2, FracOrder(1.0)).mean == doctest::Approx(std::log(2.0) / 6.0).epsilon(1e-14));
    CHECK(unif_spacing_moments(2, FracOrder(1.0)).mean == doctest::Approx(0.11552).epsilon(1e-4));
}

TEST_CASE("normal quantile") {
    CHECK(normal_quantile(0.975) == doctest::Approx(1.959964).epsilon(1e-7));
    CHECK(normal_quantile(0.5) == doctest::Approx(0.0));
    for (double p : {1e-10, 1e-4, 0.01, 0.2, 0.6, 0.9, 0.999, 1 - 1e-9})
        CHECK(std_normal_cdf(normal_quantile(p)) == doctest::Approx(p).epsilon(1e-9));
    CHECK_THROWS_AS(normal_quantile(1.0), fracent::domain_error);
}

TEST_CASE("confidence interval") {
    const Sample s(covid);
    const FracOrder al(0.5);
    const double e = empirical_efcpe(s, al);
    const auto zero = confidence_interval(s, al, 0.05, 0.0);
    CHECK(zero.lower == e);
    CHECK(zero.upper == e);
    const auto ci = confidence_interval(s, al, 0.05, 4.0);
    CHECK(ci.upper - e == doctest::Approx(2 * 1.959964).epsilon(1e-6));
    CHECK(ci.lower < e);
    CHECK(ci.upper > e);
    CHECK_THROWS_AS(confidence_interval(s, al, 1.0, 1.0), fracent::domain_error);
    CHECK_THROWS_AS(confidence_interval(s, al, 0.05, -1.0), fracent::domain_error);
}

TEST_CASE("interval coverage of the estimator mean") {
    const auto x = make("exponential:lambda=1");
    const FracOrder al(0.5);
    const auto m = exp_spacing_moments(100, 1.0, al);
    const int reps = 2000;
    std::vector<double> est(reps);
    double mean = 0.0;
    for (int r = 0; r < reps; ++r) {
        est[r] = empirical_efcpe(Sample(draw(x, 100, mix_seed(77, r))), al);
        mean += est[r] / reps;
    }
    // the moments formula is the estimator's exact mean
    CHECK(mean == doctest::Approx(m.mean).epsilon(3 * std::sqrt(m.variance / reps) / m.mean));
    int covered = 0;
    const double half = normal_quantile(0.975) * std::sqrt(m.variance);
    for (double e : est) covered += (e - half <= mean && mean <= e + half);
    CHECK(covered >= 0.92 * reps);
}

TEST_CASE("stability probe") {
    const Sample s(draw(make("uniform:a=1"), 50, 11));
    const FracOrder h(0.5);
    CHECK(stability_probe(s, h, 0.0, 20, 1) == 0.0);
    const double worst = stability_probe(s, h, 1e-4, 100, 5);
    CHECK(worst <= 0.05);
    CHECK(worst <= stability_bound(50, h, 1e-4));
    CHECK(worst > 0.0);
    // moving one point by delta stays inside the bound
    std::vector<double> moved = s.data();
    moved[25] += 1e-4;
    CHECK(std::abs(empirical_efcpe(Sample(moved), h) - empirical_efcpe(s, h)) <= stability_bound(50, h, 1e-4));
}

TEST_CASE("convergence study") {
    const auto rows = convergence_study(make("uniform:a=1"), FracOrder(0.5), {2, 10, 100, 1000}, 200, 2024);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].n == 2);
    CHECK(rows[1].mean_abs_error > rows[2].mean_abs_error);
    CHECK(rows[2].mean_abs_error > rows[3].mean_abs_error);
    // same seed, same table
    const auto again = convergence_study(make("uniform:a=1"), FracOrder(0.5), {10}, 200, 2024);
    CHECK(again[0].mean_abs_error == rows[1].mean_abs_error);

    const auto e = convergence_study(make("exponential:lambda=1"), FracOrder(1.0), {50}, 400, 9);
    const auto m = exp_spacing_moments(50, 1.0, FracOrder(1.0));
    CHECK(std::abs(e[0].mean_estimate - m.mean) < 3 * std::sqrt(m.variance / 400));
}

TEST_CASE("csv loading") {
    std::istringstream with_header("deaths\n3\n1\n\n2\n");
    CHECK(read_sample_csv(with_header).data() == std::vector<double>{1, 2, 3});
    std::istringstream bare("4,x\n5,y\r\n");
    CHECK(read_sample_csv(bare).size() == 2);
    std::istringstream bad("1\nseven\n");
    CHECK_THROWS_AS(read_sample_csv(bad), fracent::domain_error);
    std::istringstream commented("# weekly counts\n  # source: dashboard\nvalue\n7\n# mid-file note\n2\n");
    CHECK(read_sample_csv(commented).data() == std::vector<double>{2, 7});
    std::istringstream late_header("1\n2\nvalue\n");
    CHECK_THROWS_AS(read_sample_csv(late_header), fracent::domain_error);
    CHECK(load_sample_csv(FRACENT_DATA_DIR "/odisha_covid_weekly.csv").size() == 20);
    CHECK_THROWS_AS(load_sample_csv("/nonexistent/file.csv"), fracent::domain_error);
}

}
