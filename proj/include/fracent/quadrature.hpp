#pragma once

#include <functional>
#include <limits>
#include <span>

#include "fracent/errors.hpp"

namespace fracent {

using integrand_1d = std::function<double(double)>;
using integrand_2d = std::function<double(double, double)>;

struct QuadConfig {
    double abs_tol = 1e-9;
    double rel_tol = 1e-8;
    int max_subdivisions = 2000;
    int tail_probe_points = 8;

    void validate() const;
};

struct QuadResult {
    double value = 0.0;
    double error_estimate = 0.0;
    bool diverged = false;
    int subdivisions_used = 0;
    // fitted power of the tail, NaN when no semi-infinite tail was probed
    double tail_exponent = std::numeric_limits<double>::quiet_NaN();
    bool low_confidence = false;
};

class max_subdivisions_error : public non_convergent {
public:
    max_subdivisions_error(const std::string& what, QuadResult partial)
        : non_convergent(what), partial_(partial) {}
    const QuadResult& partial() const noexcept { return partial_; }

private:
    QuadResult partial_;
};

enum class TailStatus { convergent, divergent, inconclusive };

struct DivergenceReport {
    TailStatus status = TailStatus::convergent;
    double exponent = -std::numeric_limits<double>::infinity();
    double residual = 0.0;
};

inline constexpr double divergence_epsilon = 0.05;

// a may be finite, b finite or +inf
QuadResult integrate(const integrand_1d& f, double a, double b, const QuadConfig& cfg = {});

// sums integrate() over consecutive breakpoints; the last one may be +inf
QuadResult integrate_pieces(const integrand_1d& f, std::span<const double> points,
                            const QuadConfig& cfg = {});

// nested: outer over y, inner over x, both with cfg tolerances
QuadResult integrate_2d(const integrand_2d& f, double ax, double bx, double ay, double by,
                        const QuadConfig& cfg = {});

// log-log slope fit of |f| over cfg.tail_probe_points abscissae in [start, start*1e6]
DivergenceReport detect_divergence(const integrand_1d& f, double start, const QuadConfig& cfg = {});

} // namespace fracent
