#include "fracent/fraclog.hpp"

#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <numbers>
#include <numeric>

#include "fracent/errors.hpp"
#include "fracent/quadrature.hpp"

namespace fracent {

namespace {

constexpr int max_series_terms = 20000;
// negative arguments use the power series while |x|^(1/alpha) stays below this
constexpr double series_window = 4.0;
// beyond this -log p the inverse uses the leading asymptotic term directly
constexpr double asymptotic_neg_log = 500.0;

bool in_series_window(double a, double x) {
    return x >= 0.0 || std::log(-x) / a <= std::log(series_window);
}

// sum_{k >= first} x^k / Gamma(a k + 1)
double mlf_series(double a, double x, int first) {
    const double lx = std::log(std::abs(x));
    double sum = 0.0;
    double prev_mag = -HUGE_VAL;
    for (int k = first; k < max_series_terms; ++k) {
        const double lmag = k * lx - std::lgamma(a * k + 1.0);
        const double mag = std::exp(lmag);
        const double term = (x < 0.0 && (k % 2 == 1)) ? -mag : mag;
        sum += term;
        if (lmag < prev_mag && mag <= 1e-17 * std::abs(sum)) return sum;
        prev_mag = lmag;
    }
    throw non_convergent("mlf: power series did not converge");
}

// E_a(-t), t > 0, from the Laplace representation of the completely monotone function
double mlf_negative_integral(double a, double t) {
    const double c = std::cos(std::numbers::pi * a);
    const double s = std::sin(std::numbers::pi * a);
    const double w_end = std::pow(745.0, a);
    auto f = [a, t, c](double w) {
        const double z = w / t;
        return std::exp(-std::pow(w, 1.0 / a)) / (1.0 + z * (2.0 * c + z));
    };
    QuadConfig cfg;
    cfg.abs_tol = 1e-300;
    cfg.rel_tol = 1e-13;
    cfg.max_subdivisions = 1000;
    const double peak = -c * t;
    QuadResult r;
    if (peak > 0.0 && peak < w_end) {
        const double pts[] = {0.0, peak, w_end};
        r = integrate_pieces(f, pts, cfg);
    } else {
        r = integrate(f, 0.0, w_end, cfg);
    }
    return s / (a * std::numbers::pi * t) * r.value;
}

// E_a(x) - 1 without cancellation near x = 0
double mlf_minus_one(double a, double x) {
    if (x == 0.0) return 0.0;
    if (in_series_window(a, x)) return mlf_series(a, x, 1);
    return mlf(FracOrder(a), x) - 1.0;
}

} // namespace

FracOrder::FracOrder(double alpha) : alpha_(alpha), factorial_(0.0) {
    if (!std::isfinite(alpha) || !(alpha > 0.0) || alpha > 1.0)
        throw domain_error("FracOrder: alpha must lie in (0, 1]");
    factorial_ = std::tgamma(1.0 + alpha);
}

std::string to_string(LogMode mode) { return mode == LogMode::approx ? "approx" : "exact"; }

LogMode parse_log_mode(std::string_view text) {
    if (text == "approx") return LogMode::approx;
    if (text == "exact") return LogMode::exact;
    throw domain_error("unknown log mode '" + std::string(text) + "'");
}

double gamma_fn(double x) {
    if (!std::isfinite(x) || !(x > 0.0)) throw domain_error("gamma_fn: argument must be positive and finite");
    return std::tgamma(x);
}

double mlf(FracOrder alpha, double x) {
    const double a = alpha.value();
    if (!std::isfinite(x)) throw domain_error("mlf: argument must be finite");
    if (x == 0.0) return 1.0;
    if (a == 1.0) return std::exp(x);
    if (x > 0.0) {
        if (std::log(x) / a > 700.0) return HUGE_VAL;
        return 1.0 + mlf_series(a, x, 1);
    }
    if (in_series_window(a, x)) return 1.0 + mlf_series(a, x, 1);
    return mlf_negative_integral(a, -x);
}

double neg_frac_log(FracOrder alpha, double neg_log_p, LogMode mode) {
    if (std::isnan(neg_log_p) || neg_log_p < 0.0) throw domain_error("frac_log: p must lie in (0, 1]");
    if (neg_log_p == 0.0) return 0.0;
    const double a = alpha.value();
    if (mode == LogMode::approx || a == 1.0) return alpha.factorial() * neg_log_p;
    if (std::isinf(neg_log_p)) return HUGE_VAL;

    const double lg1ma = std::lgamma(1.0 - a);
    if (neg_log_p > asymptotic_neg_log) return std::exp(neg_log_p - lg1ma);

    const double q = -std::expm1(-neg_log_p);
    // decreasing in t, positive at t = 0
    auto h = [a, q](double t) { return mlf_minus_one(a, -t) + q; };

    double hi = std::max(2.0 * alpha.factorial() * neg_log_p, 2.0 * std::exp(neg_log_p - lg1ma));
    double h_hi = h(hi);
    for (int i = 0; h_hi > 0.0; ++i) {
        if (i > 200) throw non_convergent("frac_log: could not bracket the root");
        hi *= 4.0;
        h_hi = h(hi);
    }
    if (h_hi == 0.0) return hi;

    std::uintmax_t iters = 200;
    auto tol = [](double l, double r) { return std::abs(r - l) <= 1e-13 * std::max(std::abs(l), std::abs(r)); };
    const auto [lo_t, hi_t] = boost::math::tools::toms748_solve(h, 0.0, hi, q, h_hi, tol, iters);
    if (iters >= 200) throw non_convergent("frac_log: root search exceeded 200 iterations");
    return 0.5 * (lo_t + hi_t);
}

double frac_log(FracOrder alpha, double p, LogMode mode) {
    if (!(p > 0.0) || p > 1.0) throw domain_error("frac_log: p must lie in (0, 1]");
    return -neg_frac_log(alpha, -std::log(p), mode);
}

double neg_frac_log_pow(FracOrder alpha, double neg_log_p, LogMode mode) {
    const double t = neg_frac_log(alpha, neg_log_p, mode);
    if (t == 0.0) return 0.0;
    return std::exp(alpha.inverse() * std::log(t));
}

double phi_kernel(FracOrder alpha, double p, double neg_log_p, LogMode mode) {
    if (neg_log_p == 0.0 || std::isinf(neg_log_p)) return 0.0;
    if (p < 0.0) throw domain_error("phi_kernel: negative probability");
    const double t = neg_frac_log(alpha, neg_log_p, mode);
    if (t == 0.0) return 0.0;
    // log space, with log p taken from neg_log_p so that exact-mode growth survives p underflowing
    return std::exp(-neg_log_p + alpha.inverse() * std::log(t));
}

double discrete_frac_entropy(std::span<const double> probs, FracOrder alpha, LogMode mode) {
    if (probs.empty()) throw domain_error("discrete_frac_entropy: empty probability vector");
    double total = 0.0;
    for (double p : probs) {
        if (!std::isfinite(p) || p < 0.0) throw domain_error("discrete_frac_entropy: negative or non-finite entry");
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-12) throw domain_error("discrete_frac_entropy: probabilities must sum to 1");
    double h = 0.0;
    for (double p : probs)
        if (p > 0.0) h += phi_kernel(alpha, p, -std::log(p), mode);
    return h;
}

} // namespace fracent
