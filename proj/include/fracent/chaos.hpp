#pragma once

#include <vector>

#include "fracent/empirical.hpp"

namespace fracent {

struct LogisticConfig {
    double s = 4.0;
    double x0 = 0.1;
    int burn_in = 1000;
    int length = 5000;

    void validate() const;
};

// x_{l+1} = s x_l (1 - x_l), the `length` iterates after burn-in, in time order
std::vector<double> logistic_orbit(const LogisticConfig& cfg);
// the same iterates, sorted
Sample logistic_series(const LogisticConfig& cfg);

struct ChaosCell {
    double s = 0.0;
    double alpha = 0.0;
    double value = 0.0;
};

// empirical EFCPE per (s, alpha), s-major; cfg.s is ignored
std::vector<ChaosCell> efcpe_vs_s(const std::vector<double>& s_list, const std::vector<double>& alphas,
                                  const LogisticConfig& cfg = {});

struct BifurcationPoint {
    double s = 0.0;
    double value = 0.0;
};

// `steps` values of s evenly spaced over [s_min, s_max], the last `keep` iterates of each
std::vector<BifurcationPoint> bifurcation_sweep(double s_min, double s_max, int steps, const LogisticConfig& cfg = {},
                                                int keep = 100);

// rank correlation with average ranks for ties
double spearman(const std::vector<double>& a, const std::vector<double>& b);

} // namespace fracent
