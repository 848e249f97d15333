#pragma once

#include <functional>
#include <memory>
#include <string>
#include <string_view>

#include "fracent/distributions.hpp"
#include "fracent/entropy.hpp"
#include "fracent/fraclog.hpp"
#include "fracent/quadrature.hpp"

namespace fracent {

// joint law of (X, Y) on a bounded rectangle
class BivariateLaw {
public:
    using joint_fn = std::function<double(double, double)>;
    // F_{Y|X}(y | x) is called as (y, x); F_{X|Y}(x | y) as (x, y)
    using conditional_fn = std::function<double(double, double)>;

    BivariateLaw(std::string label, joint_fn joint, Distribution x, Distribution y, conditional_fn y_given_x,
                 conditional_fn x_given_y);

    static BivariateLaw independent(const Distribution& x, const Distribution& y);
    // density 2 on 0 < y < x < 1
    static BivariateLaw triangle();
    // Farlie-Gumbel-Morgenstern copula, theta in [-1, 1]; theta < 0 is negatively quadrant dependent
    static BivariateLaw fgm(double theta, const Distribution& x, const Distribution& y);
    // joint density on [ax,bx] x [ay,by], tabulated to CDFs on a grid x grid mesh
    static BivariateLaw from_density(std::function<double(double, double)> density, double ax, double bx, double ay,
                                     double by, std::string label = "density", int grid = 256);

    double cdf(double x, double y) const { return joint_(x, y); }
    const Distribution& marginal_x() const { return x_; }
    const Distribution& marginal_y() const { return y_; }
    double cond_y_given_x(double y, double x) const { return y_given_x_(y, x); }
    double cond_x_given_y(double x, double y) const { return x_given_y_(x, y); }
    const std::string& label() const { return label_; }
    // law of (Y, X)
    BivariateLaw swapped() const;

private:
    std::string label_;
    joint_fn joint_;
    Distribution x_, y_;
    conditional_fn y_given_x_, x_given_y_;
};

// triangle, indep(famX,famY), fgm:theta=t (uniform margins), fgm(t,famX,famY)
BivariateLaw parse_joint_law(std::string_view text);

// nested-quadrature defaults for the planar measures
QuadConfig planar_config();

EntropyResult bivariate_efcpe(const BivariateLaw& j, FracOrder alpha, const QuadConfig& cfg = planar_config());
EntropyResult modified_bivariate_efcpe(const BivariateLaw& j, FracOrder alpha, const QuadConfig& cfg = planar_config());

// E*(X)[s2 - E Y] + E*(Y)[s1 - E X]
double independence_decomposition(const Distribution& x, const Distribution& y, FracOrder alpha,
                                  const QuadConfig& cfg = {});
// n [l - mu]^(n-1) E*(X)
double iid_n_efcpe(const Distribution& x, int n, FracOrder alpha, const QuadConfig& cfg = {});

// fractional cumulative past mutual information; needs F <= F_X F_Y
double fcpmi(const BivariateLaw& j, FracOrder alpha, const QuadConfig& cfg = planar_config());

// EFCPE of Y given X = x
EntropyResult conditional_efcpe(const BivariateLaw& j, FracOrder alpha, double x, const QuadConfig& cfg = {});

struct DecompositionCheck {
    double lhs = 0.0;                   // bivariate EFCPE
    double rhs = 0.0;                   // weighted_x + conditional - weighted_conditional
    double weighted_x = 0.0;            // int int F_{Y|X} F_X [-Ln F_X]^(1/alpha)
    double conditional = 0.0;           // int int F_{Y|X} [-Ln F_{Y|X}]^(1/alpha)
    double weighted_conditional = 0.0;  // int int (1 - F_X) F_{Y|X} [-Ln F_{Y|X}]^(1/alpha)
};

DecompositionCheck decomposition_theorem_check(const BivariateLaw& j, FracOrder alpha,
                                               const QuadConfig& cfg = planar_config());

} // namespace fracent
