#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "fracent/distributions.hpp"
#include "fracent/fraclog.hpp"
#include "fracent/quadrature.hpp"

namespace fracent {

enum class Measure {
    efcpe,
    modified_efcpe,
    efcre,
    classic_residual,
    classic_past,
    paired,
    dynamic_efcpe,
    dynamic_efcre,
    bivariate_efcpe,
    modified_bivariate_efcpe,
    conditional_efcpe,
    fcpmi,
    empirical_efcpe,
    system_efcpe,
};

std::string to_string(Measure m);
Measure parse_measure(std::string_view text);

struct EntropyResult {
    // empty when the integral diverged
    std::optional<double> value;
    QuadResult diagnostics;
    LogMode mode = LogMode::approx;
    Measure measure = Measure::efcpe;

    bool diverged() const { return diagnostics.diverged; }
    // throws diverged_error when there is no value
    double get() const;
};

// E*_alpha(X) = int F [-Ln F]^(1/alpha)
EntropyResult efcpe(const Distribution& x, FracOrder alpha, LogMode mode = LogMode::approx,
                    const QuadConfig& cfg = {});

// uniform:a and frechet:a,b only
double efcpe_closed_form(const Family& family, FracOrder alpha);

// int F (-Ln F), about alpha! times the cumulative entropy
EntropyResult modified_efcpe(const Distribution& x, FracOrder alpha, LogMode mode = LogMode::approx,
                             const QuadConfig& cfg = {});

// residual dual: int S [-Ln S]^(1/alpha)
EntropyResult efcre(const Distribution& x, FracOrder alpha, LogMode mode = LogMode::approx,
                    const QuadConfig& cfg = {});

// int S (-log S)^q, or int F (-log F)^q when past is set; q in [0, 1]
EntropyResult classic_fractional(const Distribution& x, double q, bool past, const QuadConfig& cfg = {});

// efcre + efcpe
EntropyResult paired_phi_entropy(const Distribution& x, FracOrder alpha, LogMode mode = LogMode::approx,
                                 const QuadConfig& cfg = {});

// past lifetime [X | X <= t]
EntropyResult dynamic_efcpe(const Distribution& x, FracOrder alpha, double t, LogMode mode = LogMode::approx,
                            const QuadConfig& cfg = {});
// residual lifetime [X - t | X > t]
EntropyResult dynamic_efcre(const Distribution& x, FracOrder alpha, double t, LogMode mode = LogMode::approx,
                            const QuadConfig& cfg = {});

struct DynamicParts {
    double integral_term = 0.0;
    // mu(t) [-Ln(1/F(t))]^(1/alpha) with the sign kept, so it is <= 0
    double boundary_term = 0.0;
};

DynamicParts dynamic_decomposition(const Distribution& x, FracOrder alpha, double t, const QuadConfig& cfg = {});

// mu(t) = int_0^t F(x)/F(t) dx
double mean_inactivity_time(const Distribution& x, double t, const QuadConfig& cfg = {});

// int_t^inf (-Ln F)^(1/alpha); throws diverged_error on heavy tails
double tau_alpha(const Distribution& x, FracOrder alpha, double t, LogMode mode = LogMode::approx,
                 const QuadConfig& cfg = {});
// -int_t^inf Ln F
double W_alpha(const Distribution& x, FracOrder alpha, double t, LogMode mode = LogMode::approx,
               const QuadConfig& cfg = {});

double gini(const Distribution& x, const QuadConfig& cfg = {});

struct GiniBound {
    double bound = 0.0;     // alpha! * mean * Gini
    double modified = 0.0;  // modified EFCPE
    bool holds = false;
};

GiniBound gini_lower_bound_check(const Distribution& x, FracOrder alpha, const QuadConfig& cfg = {});

namespace detail {
// integral over [lo, hi]; finite endpoints are probed for non-integrable growth first
QuadResult measure_integral(const integrand_1d& f, double lo, double hi, const QuadConfig& cfg);
} // namespace detail

} // namespace fracent
