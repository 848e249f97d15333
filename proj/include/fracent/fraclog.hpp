#pragma once

#include <span>
#include <string>
#include <string_view>

namespace fracent {

// fractional order alpha in (0, 1]
class FracOrder {
public:
    explicit FracOrder(double alpha);

    double value() const noexcept { return alpha_; }
    double inverse() const noexcept { return 1.0 / alpha_; }
    // alpha! = Gamma(1 + alpha)
    double factorial() const noexcept { return factorial_; }

private:
    double alpha_;
    double factorial_;
};

enum class LogMode { approx, exact };

std::string to_string(LogMode mode);
LogMode parse_log_mode(std::string_view text);

double gamma_fn(double x);

// Mittag-Leffler function E_alpha(x)
double mlf(FracOrder alpha, double x);

// fractional logarithm Ln_alpha p, p in (0, 1]
double frac_log(FracOrder alpha, double p, LogMode mode = LogMode::approx);

// -Ln_alpha(p) for p = exp(-neg_log_p); keeps precision when p is close to 1
double neg_frac_log(FracOrder alpha, double neg_log_p, LogMode mode = LogMode::approx);

// (-Ln_alpha p)^(1/alpha) from -log p, 0 when p = 1
double neg_frac_log_pow(FracOrder alpha, double neg_log_p, LogMode mode = LogMode::approx);

// p * (-Ln_alpha p)^(1/alpha), 0 at p = 0 and p = 1
double phi_kernel(FracOrder alpha, double p, double neg_log_p, LogMode mode = LogMode::approx);

double discrete_frac_entropy(std::span<const double> probs, FracOrder alpha, LogMode mode = LogMode::approx);

} // namespace fracent
