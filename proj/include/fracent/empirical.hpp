#pragma once

#include <cstdint>
#include <istream>
#include <string>
#include <vector>

#include "fracent/distributions.hpp"
#include "fracent/fraclog.hpp"

namespace fracent {

// sorted non-negative observations, n >= 2
class Sample {
public:
    explicit Sample(std::vector<double> data);

    std::size_t size() const { return data_.size(); }
    const std::vector<double>& data() const { return data_; }
    // U_i = X_{i+1:n} - X_{i:n}, i = 1..n-1
    std::vector<double> spacings() const;

private:
    std::vector<double> data_;
};

// one numeric column, optional header line, # comments; extra columns after the first are ignored
Sample read_sample_csv(std::istream& in);
Sample load_sample_csv(const std::string& path);

double empirical_cdf(const Sample& s, double x);

// (alpha!)^(1/alpha) sum_{i<n} U_i (i/n)(-log(i/n))^(1/alpha)
double empirical_efcpe(const Sample& s, FracOrder alpha);

struct MomentPair {
    double mean = 0.0;
    double variance = 0.0;
};

// moments of the estimator for exponential(lambda) samples of size n
MomentPair exp_spacing_moments(int n, double lambda, FracOrder alpha);
// moments of the estimator for U(0,1) samples of size n
MomentPair unif_spacing_moments(int n, FracOrder alpha);

struct Interval {
    double lower = 0.0;
    double upper = 0.0;
};

// standard normal quantile
double normal_quantile(double p);

// estimate -/+ z_{gamma/2} sqrt(variance)
Interval confidence_interval(const Sample& s, FracOrder alpha, double gamma, double variance);

// largest |change| of the estimate over random perturbations of total L1 size delta
double stability_probe(const Sample& s, FracOrder alpha, double delta, int trials, std::uint64_t seed);
// 2 delta (alpha!)^(1/alpha) max_i (i/n)(-log(i/n))^(1/alpha)
double stability_bound(std::size_t n, FracOrder alpha, double delta);

struct ConvergenceRow {
    int n = 0;
    double mean_abs_error = 0.0;
    double mean_estimate = 0.0;
};

// Monte-Carlo error of the estimator against the quadrature value, per sample size
std::vector<ConvergenceRow> convergence_study(const Distribution& x, FracOrder alpha, const std::vector<int>& n_grid,
                                              int replications, std::uint64_t seed);

// n iid draws by inversion
std::vector<double> draw(const Distribution& x, std::size_t n, std::uint64_t seed);

} // namespace fracent
