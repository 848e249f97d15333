#include "fracent/empirical.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "fracent/entropy.hpp"
#include "fracent/errors.hpp"
#include "fracent/random.hpp"

namespace fracent {

namespace {

// (i/n)(-log(i/n))^(1/alpha) with the (alpha!)^(1/alpha) factor folded in
double weight(std::size_t i, std::size_t n, FracOrder alpha) {
    const double p = static_cast<double>(i) / static_cast<double>(n);
    return phi_kernel(alpha, p, -std::log(p));
}

bool parse_number(const std::string& cell, double& out) {
    std::size_t used = 0;
    try {
        out = std::stod(cell, &used);
    } catch (const std::exception&) {
        return false;
    }
    while (used < cell.size() && std::isspace(static_cast<unsigned char>(cell[used]))) ++used;
    return used == cell.size();
}

} // namespace

Sample::Sample(std::vector<double> data) : data_(std::move(data)) {
    if (data_.size() < 2) throw domain_error("Sample: need at least two observations");
    for (double v : data_)
        if (!std::isfinite(v) || v < 0.0) throw domain_error("Sample: observations must be finite and non-negative");
    std::sort(data_.begin(), data_.end());
}

std::vector<double> Sample::spacings() const {
    std::vector<double> u(data_.size() - 1);
    for (std::size_t i = 0; i + 1 < data_.size(); ++i) u[i] = data_[i + 1] - data_[i];
    return u;
}

Sample read_sample_csv(std::istream& in) {
    std::vector<double> values;
    std::string line;
    int lineno = 0;
    bool header_allowed = true;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        std::string cell = line.substr(first, line.find(',') == std::string::npos ? std::string::npos : line.find(',') - first);
        double v = 0.0;
        if (!parse_number(cell, v)) {
            if (header_allowed) {
                header_allowed = false;
                continue;
            }
            throw domain_error("csv line " + std::to_string(lineno) + ": not a number: '" + cell + "'");
        }
        header_allowed = false;
        values.push_back(v);
    }
    return Sample(std::move(values));
}

Sample load_sample_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw domain_error("cannot open '" + path + "'");
    return read_sample_csv(in);
}

double empirical_cdf(const Sample& s, double x) {
    const auto& d = s.data();
    const auto k = std::upper_bound(d.begin(), d.end(), x) - d.begin();
    return static_cast<double>(k) / static_cast<double>(d.size());
}

double empirical_efcpe(const Sample& s, FracOrder alpha) {
    const auto& d = s.data();
    const std::size_t n = d.size();
    double e = 0.0;
    for (std::size_t i = 1; i < n; ++i) e += (d[i] - d[i - 1]) * weight(i, n, alpha);
    return e;
}

MomentPair exp_spacing_moments(int n, double lambda, FracOrder alpha) {
    if (n < 2) throw domain_error("exp_spacing_moments: n must be at least 2");
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw domain_error("exp_spacing_moments: lambda must be positive");
    // U_i ~ Exp(lambda (n - i)), independent
    MomentPair m;
    for (int i = 1; i < n; ++i) {
        const double w = weight(i, n, alpha);
        const double scale = 1.0 / (lambda * (n - i));
        m.mean += scale * w;
        m.variance += scale * scale * w * w;
    }
    return m;
}

MomentPair unif_spacing_moments(int n, FracOrder alpha) {
    if (n < 2) throw domain_error("unif_spacing_moments: n must be at least 2");
    // U_i ~ Beta(1, n)
    double s1 = 0.0, s2 = 0.0;
    for (int i = 1; i < n; ++i) {
        const double w = weight(i, n, alpha);
        s1 += w;
        s2 += w * w;
    }
    const double np1 = n + 1.0;
    return {s1 / np1, s2 / (np1 * np1 * (n + 2.0))};
}

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw domain_error("normal_quantile: p must lie in (0, 1)");
    // Acklam's rational approximation
    static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
                                   1.383577518672690e+02, -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                                   6.680131188771972e+01, -1.328068155288572e+01};
    static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                                   -2.549732539343734e+00, 4.374664141464968e+00, 2.938163982698783e+00};
    static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                                   3.754408661907416e+00};
    constexpr double lo = 0.02425;
    double x;
    if (p < lo) {
        const double q = std::sqrt(-2 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
    } else if (p <= 1 - lo) {
        const double q = p - 0.5, r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
    } else {
        const double q = std::sqrt(-2 * std::log1p(-p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
    }
    // one Halley step against erfc
    const double e = 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
    const double u = e * std::sqrt(2 * M_PI) * std::exp(0.5 * x * x);
    return x - u / (1 + 0.5 * x * u);
}

Interval confidence_interval(const Sample& s, FracOrder alpha, double gamma, double variance) {
    if (!(gamma > 0.0 && gamma < 1.0)) throw domain_error("confidence_interval: gamma must lie in (0, 1)");
    if (!(variance >= 0.0) || !std::isfinite(variance)) throw domain_error("confidence_interval: variance must be >= 0");
    const double e = empirical_efcpe(s, alpha);
    const double half = normal_quantile(1.0 - 0.5 * gamma) * std::sqrt(variance);
    return {e - half, e + half};
}

double stability_bound(std::size_t n, FracOrder alpha, double delta) {
    double w = 0.0;
    for (std::size_t i = 1; i < n; ++i) w = std::max(w, weight(i, n, alpha));
    return 2.0 * delta * w;
}

double stability_probe(const Sample& s, FracOrder alpha, double delta, int trials, std::uint64_t seed) {
    if (!(delta >= 0.0) || !std::isfinite(delta)) throw domain_error("stability_probe: delta must be >= 0");
    if (trials < 0) throw domain_error("stability_probe: trials must be >= 0");
    const double base = empirical_efcpe(s, alpha);
    const std::size_t n = s.size();
    double worst = 0.0;
    std::vector<double> w(n), x(n);
    for (int t = 0; t < trials; ++t) {
        Rng rng(mix_seed(seed, static_cast<std::uint64_t>(t)));
        double total = 0.0;
        for (auto& v : w) total += (v = rng.uniform());
        for (std::size_t i = 0; i < n; ++i) {
            const double sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
            // clamping at zero only shrinks the perturbation
            x[i] = std::max(0.0, s.data()[i] + sign * delta * w[i] / total);
        }
        worst = std::max(worst, std::abs(empirical_efcpe(Sample(x), alpha) - base));
    }
    return worst;
}

std::vector<double> draw(const Distribution& x, std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> out(n);
    for (auto& v : out) v = x.quantile(rng.uniform());
    return out;
}

std::vector<ConvergenceRow> convergence_study(const Distribution& x, FracOrder alpha, const std::vector<int>& n_grid,
                                              int replications, std::uint64_t seed) {
    if (replications < 1) throw domain_error("convergence_study: replications must be >= 1");
    const double truth = efcpe(x, alpha).get();
    std::vector<ConvergenceRow> rows;
    for (int n : n_grid) {
        if (n < 2) throw domain_error("convergence_study: sample sizes must be >= 2");
        ConvergenceRow row;
        row.n = n;
        for (int r = 0; r < replications; ++r) {
            const double e = empirical_efcpe(Sample(draw(x, n, mix_seed(seed, n, r))), alpha);
            row.mean_abs_error += std::abs(e - truth);
            row.mean_estimate += e;
        }
        row.mean_abs_error /= replications;
        row.mean_estimate /= replications;
        rows.push_back(row);
    }
    return rows;
}

} // namespace fracent
