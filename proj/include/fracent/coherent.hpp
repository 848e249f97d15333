#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <optional>

#include "fracent/distributions.hpp"
#include "fracent/entropy.hpp"
#include "fracent/fraclog.hpp"
#include "fracent/quadrature.hpp"

namespace fracent {

enum class DistortionKind { parallel, series, k_out_of_n, two_out_of_four, custom };

// F_T = q(F_X) for a system of iid components
class Distortion {
public:
    static Distortion identity();
    static Distortion parallel(int n);
    static Distortion series(int n);
    // at least n-k+1 of the n component CDF-events
    static Distortion k_out_of_n(int k, int n);
    // 6u^4 - 8u^3 + 3u^2
    static Distortion two_out_of_four();
    // fn must be continuous and nondecreasing with fn(0)=0, fn(1)=1; only the endpoints are checked
    static Distortion custom(std::function<double(double)> fn, std::string label = "custom");

    double operator()(double u) const;
    // 1 - q(u), computed without cancellation near u = 1 for the catalog kinds
    double complement(double u) const;
    // -log q(u)
    double neg_log(double u) const;

    DistortionKind kind() const { return kind_; }
    // n of the catalog kinds, 1 for custom
    int components() const { return n_; }
    const std::string& label() const { return label_; }

private:
    Distortion(DistortionKind kind, int k, int n, std::string label);

    DistortionKind kind_;
    int k_ = 1, n_ = 1;
    std::string label_;
    std::function<double(double)> fn_;
};

// parallel:n, series:n, kofn:k,n, 2of4, identity
Distortion parse_distortion(std::string_view text);

// u [-Ln_alpha u]^(1/alpha)
double phi_alpha(double u, FracOrder alpha, LogMode mode = LogMode::approx);

// int_0^1 phi(q(u)) / f(F^-1(u)) du
EntropyResult system_efcpe(const Distortion& q, const Distribution& x, FracOrder alpha,
                           LogMode mode = LogMode::approx, const QuadConfig& cfg = {});

// parallel system of n iid U(0,1) components: (n alpha!)^(1/alpha) Gamma(1/alpha+1) / (n+1)^(1/alpha+1)
double parallel_uniform_closed_form(int n, FracOrder alpha);

struct OmegaBounds {
    double omega1 = 0.0;  // inf of phi(q(u)) / phi(u)
    double omega2 = 0.0;  // sup
    double u_inf = 0.0, u_sup = 0.0;
    int grid_points = 0;
};

// grid of `grid` uniform points plus 64 geometric points at each end, then golden-section refinement
OmegaBounds omega_bounds(const Distortion& q, FracOrder alpha, int grid = 512, LogMode mode = LogMode::approx);

struct Sandwich {
    double lower = 0.0;  // omega1 E*(X)
    double value = 0.0;  // E*(T)
    double upper = 0.0;  // omega2 E*(X)
    double component = 0.0;
    OmegaBounds omega;
    bool holds = false;
};

Sandwich sandwich_check(const Distortion& q, const Distribution& x, FracOrder alpha, const QuadConfig& cfg = {});

struct DensityBounds {
    double integral = 0.0;  // int_0^1 phi(q(u)) du
    std::optional<double> lower;  // integral / M
    std::optional<double> upper;  // integral / L
};

// M >= sup f and L <= inf f > 0, either optional
DensityBounds density_bounds(const Distortion& q, FracOrder alpha, std::optional<double> sup_density,
                             std::optional<double> inf_density, const QuadConfig& cfg = {});

struct SystemComparison {
    double ratio_inf = 0.0, ratio_sup = 0.0;  // of phi(q2(u)) / phi(q1(u))
    double first = 0.0, second = 0.0;         // E*(T1), E*(T2)
    bool holds = false;
};

SystemComparison compare_systems(const Distortion& q1, const Distortion& q2, const Distribution& x, FracOrder alpha,
                                 const QuadConfig& cfg = {});

enum class Pointwise { above, below, equal, mixed };

std::string to_string(Pointwise p);

struct ComponentComparison {
    Pointwise pointwise = Pointwise::mixed;  // phi(q(u)) against phi(u)
    double system = 0.0, component = 0.0;
    // the implied entropy ordering holds; always true for mixed
    bool consistent = false;
};

ComponentComparison component_comparison(const Distortion& q, const Distribution& x, FracOrder alpha,
                                         const QuadConfig& cfg = {});

} // namespace fracent
