#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "fracent/chaos.hpp"
#include "fracent/errors.hpp"

using namespace fracent;

namespace {

std::size_t distinct(std::vector<double> v, double tol) {
    std::sort(v.begin(), v.end());
    std::size_t n = v.empty() ? 0 : 1;
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i] - v[i - 1] > tol) ++n;
    return n;
}

std::vector<double> values_at(const std::vector<BifurcationPoint>& pts, double s) {
    std::vector<double> out;
    for (const auto& p : pts)
        if (std::abs(p.s - s) < 1e-12) out.push_back(p.value);
    return out;
}

} // namespace

TEST_SUITE("chaos") {

TEST_CASE("hand iteration") {
    const auto o = logistic_orbit({4.0, 0.5, 0, 3});
    CHECK(o == std::vector<double>{1.0, 0.0, 0.0});
    double x = 0.3;
    for (int i = 0; i < 50; ++i) x = 2.0 * x * (1.0 - x);
    const auto two = logistic_orbit({2.0, 0.3, 48, 2});
    CHECK(two.back() == x);
    CHECK(two.back() == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("config validation") {
    CHECK_THROWS_AS(logistic_orbit({4.5, 0.1, 0, 10}), fracent::domain_error);
    CHECK_THROWS_AS(logistic_orbit({3.0, -0.1, 0, 10}), fracent::domain_error);
    CHECK_THROWS_AS(logistic_orbit({3.0, 0.1, 0, 1}), fracent::domain_error);
    CHECK_THROWS_AS(bifurcation_sweep(3.0, 2.0, 10), fracent::domain_error);
    CHECK_THROWS_AS(bifurcation_sweep(3.0, 4.5, 10), fracent::domain_error);
}

TEST_CASE("iterates stay in the unit interval and repeat exactly") {
    for (double s : {0.5, 2.9, 3.58, 3.83, 4.0}) {
        const LogisticConfig c{s, 0.1, 1000, 5000};
        const auto a = logistic_orbit(c), b = logistic_orbit(c);
        CHECK(a == b);
        CHECK(std::all_of(a.begin(), a.end(), [](double v) { return v >= 0.0 && v <= 1.0; }));
        CHECK(a.size() == 5000);
    }
    const auto s = logistic_series({3.58, 0.1, 1000, 2000});
    CHECK(std::is_sorted(s.data().begin(), s.data().end()));
    CHECK(s.data().back() - s.data().front() > 0.1);
}

TEST_CASE("bifurcation sweep") {
    const auto pts = bifurcation_sweep(2.5, 4.0, 16);
    CHECK(pts.size() == 1600);
    const auto fixed = values_at(pts, 2.5);
    CHECK(distinct(fixed, 1e-9) == 1);
    CHECK(fixed.front() == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(distinct(values_at(pts, 4.0), 1e-9) >= 50);
    const auto p2 = values_at(bifurcation_sweep(3.2, 3.3, 2), 3.2);
    CHECK(distinct(p2, 1e-9) == 2);
    // period-2 points are the roots of s^2 x^2 - s(s+1) x + (s+1) = 0
    const double s = 3.2, disc = std::sqrt((s + 1) * (s - 3));
    std::set<double> want{(s + 1 - disc) / (2 * s), (s + 1 + disc) / (2 * s)};
    for (double v : p2) CHECK(std::min(std::abs(v - *want.begin()), std::abs(v - *want.rbegin())) < 1e-9);
}

TEST_CASE("efcpe against the control parameter") {
    CHECK(efcpe_vs_s({}, {0.5}).empty());
    const std::vector<double> s_list = {3.58, 3.6, 3.7, 3.8, 4.0};
    const std::vector<double> alphas = {0.3, 0.5, 0.7, 0.9};
    for (int length : {2500, 5000, 7500}) {
        LogisticConfig c;
        c.length = length;
        const auto t = efcpe_vs_s(s_list, alphas, c);
        REQUIRE(t.size() == 20);
        auto at = [&](int si, int ai) { return t[si * 4 + ai].value; };
        for (int ai = 0; ai < 4; ++ai) {
            INFO("length ", length, " alpha ", alphas[ai]);
            CHECK(std::min(at(3, ai), at(4, ai)) > std::max(at(0, ai), at(1, ai)));
        }
        if (length == 5000)
            for (int ai = 1; ai < 4; ++ai)
                for (int si = 0; si < 4; ++si) CHECK(at(4, ai) > at(si, ai));
    }
    const auto t7 = efcpe_vs_s(s_list, {0.7});
    std::vector<double> v;
    for (const auto& c : t7) v.push_back(c.value);
    CHECK(spearman(s_list, v) > 0.0);
}

TEST_CASE("spearman") {
    CHECK(spearman({1, 2, 3, 4}, {10, 20, 30, 40}) == doctest::Approx(1.0));
    CHECK(spearman({1, 2, 3, 4}, {4, 3, 2, 1}) == doctest::Approx(-1.0));
    // ties take the average rank: ranks (1, 2.5, 2.5, 4) against (1, 2, 3, 4)
    CHECK(spearman({1, 2, 2, 3}, {1, 2, 3, 4}) == doctest::Approx(4.5 / std::sqrt(4.5 * 5.0)));
    CHECK_THROWS_AS(spearman({1, 1}, {1, 2}), fracent::domain_error);
}

}
