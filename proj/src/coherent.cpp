#include "fracent/coherent.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <vector>

#include "fracent/errors.hpp"

namespace fracent {

namespace {

double binomial(int n, int j) {
    double c = 1.0;
    for (int i = 1; i <= j; ++i) c = c * (n - j + i) / i;
    return c;
}

// -log u, accurate near 1
double neg_log_unit(double u) { return u < 0.5 ? -std::log(u) : -std::log1p(u - 1.0); }

int parse_int(std::string_view text, std::string_view whole) {
    int v = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end) throw domain_error("bad distortion '" + std::string(whole) + "'");
    return v;
}

// composite grid: uniform interior plus geometric clusters at both ends
std::vector<double> ratio_grid(int uniform) {
    std::vector<double> u;
    u.reserve(uniform + 128);
    for (int i = 0; i < uniform; ++i) u.push_back((i + 0.5) / uniform);
    for (int i = 0; i < 64; ++i) {
        const double off = std::pow(10.0, -9.0 + 7.0 * i / 63.0);
        u.push_back(off);
        u.push_back(1.0 - off);
    }
    std::sort(u.begin(), u.end());
    u.erase(std::unique(u.begin(), u.end()), u.end());
    return u;
}

template <class F>
double golden(F&& f, double a, double b, bool maximise) {
    const double r = 0.5 * (std::sqrt(5.0) - 1.0);
    auto g = [&](double u) { return maximise ? -f(u) : f(u); };
    double c = b - r * (b - a), d = a + r * (b - a);
    double gc = g(c), gd = g(d);
    for (int it = 0; it < 80 && b - a > 1e-15; ++it) {
        if (gc < gd) {
            b = d, d = c, gd = gc;
            c = b - r * (b - a), gc = g(c);
        } else {
            a = c, c = d, gc = gd;
            d = a + r * (b - a), gd = g(d);
        }
    }
    return gc < gd ? c : d;
}

struct Extrema {
    double lo, hi, u_lo, u_hi;
    int points;
};

template <class F>
Extrema grid_extrema(F&& ratio, int uniform) {
    const auto u = ratio_grid(uniform);
    std::vector<double> r(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) r[i] = ratio(u[i]);
    const auto imin = static_cast<std::size_t>(std::min_element(r.begin(), r.end()) - r.begin());
    const auto imax = static_cast<std::size_t>(std::max_element(r.begin(), r.end()) - r.begin());
    Extrema e{r[imin], r[imax], u[imin], u[imax], static_cast<int>(u.size())};
    auto refine = [&](std::size_t i, bool maximise, double& best, double& at) {
        const double a = u[i == 0 ? 0 : i - 1];
        const double b = u[std::min(i + 1, u.size() - 1)];
        if (!(b > a)) return;
        const double x = golden(ratio, a, b, maximise);
        const double v = ratio(x);
        if (maximise ? v > best : v < best) best = v, at = x;
    };
    refine(imin, false, e.lo, e.u_lo);
    refine(imax, true, e.hi, e.u_hi);
    return e;
}

bool within(double lo, double x, double hi) {
    double scale = std::abs(x);
    for (double b : {lo, hi})
        if (std::isfinite(b)) scale = std::max(scale, std::abs(b));
    const double slack = 1e-7 * scale + 1e-12;
    return lo <= x + slack && x <= hi + slack;
}

} // namespace

Distortion::Distortion(DistortionKind kind, int k, int n, std::string label)
    : kind_(kind), k_(k), n_(n), label_(std::move(label)) {}

Distortion Distortion::identity() { return Distortion(DistortionKind::parallel, 1, 1, "identity"); }

Distortion Distortion::parallel(int n) {
    if (n < 1) throw domain_error("parallel: n must be >= 1");
    return Distortion(DistortionKind::parallel, n, n, "parallel:" + std::to_string(n));
}

Distortion Distortion::series(int n) {
    if (n < 1) throw domain_error("series: n must be >= 1");
    return Distortion(DistortionKind::series, 1, n, "series:" + std::to_string(n));
}

Distortion Distortion::k_out_of_n(int k, int n) {
    if (!(n >= 1 && k >= 1 && k <= n)) throw domain_error("k_out_of_n: need 1 <= k <= n");
    return Distortion(DistortionKind::k_out_of_n, k, n, "kofn:" + std::to_string(k) + "," + std::to_string(n));
}

Distortion Distortion::two_out_of_four() { return Distortion(DistortionKind::two_out_of_four, 2, 4, "2of4"); }

Distortion Distortion::custom(std::function<double(double)> fn, std::string label) {
    if (!fn) throw domain_error("custom distortion: empty function");
    if (fn(0.0) != 0.0 || fn(1.0) != 1.0) throw domain_error("custom distortion: need q(0) = 0 and q(1) = 1");
    Distortion d(DistortionKind::custom, 1, 1, std::move(label));
    d.fn_ = std::move(fn);
    return d;
}

double Distortion::operator()(double u) const {
    if (!(u >= 0.0 && u <= 1.0)) throw domain_error("distortion: u must lie in [0, 1]");
    switch (kind_) {
    case DistortionKind::parallel:
        return std::pow(u, n_);
    case DistortionKind::series:
        return u == 1.0 ? 1.0 : -std::expm1(n_ * std::log1p(-u));
    case DistortionKind::k_out_of_n: {
        double s = 0.0;
        for (int j = n_ - k_ + 1; j <= n_; ++j) s += binomial(n_, j) * std::pow(u, j) * std::pow(1.0 - u, n_ - j);
        return std::min(s, 1.0);
    }
    case DistortionKind::two_out_of_four:
        return u * u * (3.0 + u * (-8.0 + 6.0 * u));
    case DistortionKind::custom:
        return fn_(u);
    }
    return 0.0;
}

double Distortion::complement(double u) const {
    if (!(u >= 0.0 && u <= 1.0)) throw domain_error("distortion: u must lie in [0, 1]");
    const double v = 1.0 - u;
    switch (kind_) {
    case DistortionKind::parallel:
        return u == 0.0 ? 1.0 : -std::expm1(n_ * std::log(u));
    case DistortionKind::series:
        return std::pow(v, n_);
    case DistortionKind::k_out_of_n: {
        double s = 0.0;
        for (int j = 0; j <= n_ - k_; ++j) s += binomial(n_, j) * std::pow(u, j) * std::pow(v, n_ - j);
        return std::min(s, 1.0);
    }
    case DistortionKind::two_out_of_four:
        // the polynomial rewritten in v = 1 - u
        return v * (6.0 + v * (-15.0 + v * (16.0 - 6.0 * v)));
    case DistortionKind::custom:
        return 1.0 - fn_(u);
    }
    return 0.0;
}

double Distortion::neg_log(double u) const {
    if (kind_ == DistortionKind::parallel) return u == 0.0 ? INFINITY : n_ * neg_log_unit(u);
    const double q = (*this)(u);
    if (q <= 0.0) return INFINITY;
    return q < 0.5 ? -std::log(q) : -std::log1p(-complement(u));
}

Distortion parse_distortion(std::string_view text) {
    if (text == "identity") return Distortion::identity();
    if (text == "2of4") return Distortion::two_out_of_four();
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) throw domain_error("bad distortion '" + std::string(text) + "'");
    const auto head = text.substr(0, colon), args = text.substr(colon + 1);
    if (head == "parallel") return Distortion::parallel(parse_int(args, text));
    if (head == "series") return Distortion::series(parse_int(args, text));
    if (head == "kofn") {
        const auto comma = args.find(',');
        if (comma == std::string_view::npos) throw domain_error("bad distortion '" + std::string(text) + "'");
        return Distortion::k_out_of_n(parse_int(args.substr(0, comma), text), parse_int(args.substr(comma + 1), text));
    }
    throw domain_error("unknown distortion '" + std::string(text) + "'");
}

double phi_alpha(double u, FracOrder alpha, LogMode mode) {
    if (!(u >= 0.0 && u <= 1.0)) throw domain_error("phi_alpha: u must lie in [0, 1]");
    if (u == 0.0) return 0.0;
    return phi_kernel(alpha, u, neg_log_unit(u), mode);
}

EntropyResult system_efcpe(const Distortion& q, const Distribution& x, FracOrder alpha, LogMode mode,
                           const QuadConfig& cfg) {
    if (!x.has_pdf()) throw domain_error("system_efcpe: the component law needs a density");
    auto f = [&](double u) {
        const double num = phi_kernel(alpha, q(u), q.neg_log(u), mode);
        if (num == 0.0) return 0.0;
        const double dens = x.pdf(x.quantile(u));
        if (dens > 0.0 && std::isfinite(dens)) return num / dens;
        // underflow right at the ends is tolerated, a hole in the interior is not
        if (u < 1e-6 || u > 1.0 - 1e-6) return 0.0;
        throw domain_error("system_efcpe: density vanishes inside the support");
    };
    EntropyResult r;
    r.diagnostics = detail::measure_integral(f, 0.0, 1.0, cfg);
    r.mode = mode;
    r.measure = Measure::system_efcpe;
    if (!r.diagnostics.diverged) r.value = std::max(0.0, r.diagnostics.value);
    return r;
}

double parallel_uniform_closed_form(int n, FracOrder alpha) {
    if (n < 1) throw domain_error("parallel_uniform_closed_form: n must be >= 1");
    const double p = alpha.inverse();
    return std::pow(n * alpha.factorial(), p) * std::tgamma(p + 1.0) / std::pow(n + 1.0, p + 1.0);
}

OmegaBounds omega_bounds(const Distortion& q, FracOrder alpha, int grid, LogMode mode) {
    if (grid < 100) throw domain_error("omega_bounds: grid must be >= 100");
    auto ratio = [&](double u) {
        return phi_kernel(alpha, q(u), q.neg_log(u), mode) / phi_alpha(u, alpha, mode);
    };
    const auto e = grid_extrema(ratio, grid);
    return {e.lo, e.hi, e.u_lo, e.u_hi, e.points};
}

Sandwich sandwich_check(const Distortion& q, const Distribution& x, FracOrder alpha, const QuadConfig& cfg) {
    Sandwich s;
    s.omega = omega_bounds(q, alpha);
    s.component = efcpe(x, alpha, LogMode::approx, cfg).get();
    s.value = system_efcpe(q, x, alpha, LogMode::approx, cfg).get();
    s.lower = s.omega.omega1 * s.component;
    s.upper = s.omega.omega2 * s.component;
    s.holds = within(s.lower, s.value, s.upper);
    return s;
}

DensityBounds density_bounds(const Distortion& q, FracOrder alpha, std::optional<double> sup_density,
                             std::optional<double> inf_density, const QuadConfig& cfg) {
    if (sup_density && !(*sup_density > 0.0)) throw domain_error("density_bounds: M must be positive");
    if (inf_density && !(*inf_density > 0.0)) throw domain_error("density_bounds: L must be positive");
    auto f = [&](double u) { return phi_kernel(alpha, q(u), q.neg_log(u)); };
    DensityBounds b;
    b.integral = integrate(f, 0.0, 1.0, cfg).value;
    if (sup_density) b.lower = b.integral / *sup_density;
    if (inf_density) b.upper = b.integral / *inf_density;
    return b;
}

SystemComparison compare_systems(const Distortion& q1, const Distortion& q2, const Distribution& x, FracOrder alpha,
                                 const QuadConfig& cfg) {
    auto ratio = [&](double u) {
        return phi_kernel(alpha, q2(u), q2.neg_log(u)) / phi_kernel(alpha, q1(u), q1.neg_log(u));
    };
    const auto e = grid_extrema(ratio, 512);
    SystemComparison c;
    c.ratio_inf = e.lo;
    c.ratio_sup = e.hi;
    c.first = system_efcpe(q1, x, alpha, LogMode::approx, cfg).get();
    c.second = system_efcpe(q2, x, alpha, LogMode::approx, cfg).get();
    c.holds = within(c.ratio_inf * c.first, c.second, c.ratio_sup * c.first);
    return c;
}

std::string to_string(Pointwise p) {
    switch (p) {
    case Pointwise::above: return "above";
    case Pointwise::below: return "below";
    case Pointwise::equal: return "equal";
    case Pointwise::mixed: return "mixed";
    }
    return "mixed";
}

ComponentComparison component_comparison(const Distortion& q, const Distribution& x, FracOrder alpha,
                                         const QuadConfig& cfg) {
    double lo = INFINITY, hi = -INFINITY;
    for (double u : ratio_grid(512)) {
        const double d = phi_kernel(alpha, q(u), q.neg_log(u)) - phi_alpha(u, alpha);
        lo = std::min(lo, d);
        hi = std::max(hi, d);
    }
    constexpr double tol = 1e-12;
    ComponentComparison c;
    if (lo >= -tol && hi <= tol) c.pointwise = Pointwise::equal;
    else if (lo >= -tol) c.pointwise = Pointwise::above;
    else if (hi <= tol) c.pointwise = Pointwise::below;
    c.system = system_efcpe(q, x, alpha, LogMode::approx, cfg).get();
    c.component = efcpe(x, alpha, LogMode::approx, cfg).get();
    switch (c.pointwise) {
    case Pointwise::above: c.consistent = within(c.component, c.system, INFINITY); break;
    case Pointwise::below: c.consistent = within(-INFINITY, c.system, c.component); break;
    case Pointwise::equal: c.consistent = within(c.component, c.system, c.component); break;
    case Pointwise::mixed: c.consistent = true; break;
    }
    return c;
}

} // namespace fracent
