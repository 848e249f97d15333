#include "fracent/entropy.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <utility>

#include "fracent/errors.hpp"

namespace fracent {

namespace {

constexpr std::array<std::pair<Measure, const char*>, 14> measure_names = {{
    {Measure::efcpe, "efcpe"},
    {Measure::modified_efcpe, "modified_efcpe"},
    {Measure::efcre, "efcre"},
    {Measure::classic_residual, "classic_residual"},
    {Measure::classic_past, "classic_past"},
    {Measure::paired, "paired"},
    {Measure::dynamic_efcpe, "dynamic_efcpe"},
    {Measure::dynamic_efcre, "dynamic_efcre"},
    {Measure::bivariate_efcpe, "bivariate_efcpe"},
    {Measure::modified_bivariate_efcpe, "modified_bivariate_efcpe"},
    {Measure::conditional_efcpe, "conditional_efcpe"},
    {Measure::fcpmi, "fcpmi"},
    {Measure::empirical_efcpe, "empirical_efcpe"},
    {Measure::system_efcpe, "system_efcpe"},
}};

constexpr double degenerate_width = 1e-12;

// probe an endpoint singularity through s -> f(end +- 1/s) / s^2
DivergenceReport probe_endpoint(const integrand_1d& f, double end, double width, bool upper, const QuadConfig& cfg) {
    const double s0 = 1e3 / width;
    auto g = [&](double s) {
        const double x = upper ? end - 1.0 / s : end + 1.0 / s;
        return f(x) / (s * s);
    };
    return detect_divergence(g, s0, cfg);
}

EntropyResult finish(const QuadResult& q, LogMode mode, Measure m) {
    EntropyResult r;
    r.diagnostics = q;
    r.mode = mode;
    r.measure = m;
    if (!q.diverged) r.value = std::max(0.0, q.value);
    return r;
}

double require_value(const QuadResult& q, const char* what) {
    if (q.diverged) throw diverged_error(std::string(what) + ": integral diverges");
    return q.value;
}

} // namespace

// integral over [lo, hi] with both finite endpoints checked for non-integrable growth
QuadResult detail::measure_integral(const integrand_1d& f, double lo, double hi, const QuadConfig& cfg) {
    if (!(hi - lo > degenerate_width)) return {};
    const double width = std::isfinite(hi) ? hi - lo : 1.0;
    bool shaky = false;
    for (bool upper : {false, true}) {
        if (upper && !std::isfinite(hi)) continue;
        const auto rep = probe_endpoint(f, upper ? hi : lo, width, upper, cfg);
        if (rep.status == TailStatus::divergent) {
            QuadResult out;
            out.diverged = true;
            out.tail_exponent = rep.exponent;
            return out;
        }
        shaky = shaky || rep.status == TailStatus::inconclusive;
    }
    QuadResult out = integrate(f, lo, hi, cfg);
    out.low_confidence = out.low_confidence || shaky;
    return out;
}

std::string to_string(Measure m) {
    for (const auto& [k, name] : measure_names)
        if (k == m) return name;
    throw domain_error("unknown measure");
}

Measure parse_measure(std::string_view text) {
    for (const auto& [k, name] : measure_names)
        if (text == name) return k;
    throw domain_error("unknown measure '" + std::string(text) + "'");
}

double EntropyResult::get() const {
    if (!value) throw diverged_error(to_string(measure) + " diverges (tail exponent " +
                                     std::to_string(diagnostics.tail_exponent) + ")");
    return *value;
}

EntropyResult efcpe(const Distribution& x, FracOrder alpha, LogMode mode, const QuadConfig& cfg) {
    auto f = [&](double t) { return phi_kernel(alpha, x.cdf(t), x.neg_log_cdf(t), mode); };
    return finish(detail::measure_integral(f, x.lower(), x.upper(), cfg), mode, Measure::efcpe);
}

double efcpe_closed_form(const Family& family, FracOrder alpha) {
    const double a = alpha.value();
    const double c = std::pow(alpha.factorial(), alpha.inverse());
    switch (family.kind) {
    case FamilyKind::uniform: {
        const double len = family.param("a");
        if (!(len > 0.0)) throw domain_error("efcpe_closed_form: uniform needs a > 0");
        return len * c * std::tgamma(alpha.inverse() + 1.0) / std::pow(2.0, alpha.inverse() + 1.0);
    }
    case FamilyKind::frechet: {
        const double fa = family.param("a"), fb = family.param("b");
        if (!(fa > 0.0 && fb > 0.0)) throw domain_error("efcpe_closed_form: frechet needs a, b > 0");
        if (!(a < fa)) throw domain_error("efcpe_closed_form: frechet needs alpha < a");
        return c * std::pow(fb, 1.0 / fa) * std::tgamma(alpha.inverse() - 1.0 / fa) / fa;
    }
    default:
        throw domain_error("efcpe_closed_form: no closed form for " + family.name());
    }
}

EntropyResult modified_efcpe(const Distribution& x, FracOrder alpha, LogMode mode, const QuadConfig& cfg) {
    auto f = [&](double t) {
        const double p = x.cdf(t);
        return p <= 0.0 ? 0.0 : p * neg_frac_log(alpha, x.neg_log_cdf(t), mode);
    };
    return finish(detail::measure_integral(f, x.lower(), x.upper(), cfg), mode, Measure::modified_efcpe);
}

EntropyResult efcre(const Distribution& x, FracOrder alpha, LogMode mode, const QuadConfig& cfg) {
    auto f = [&](double t) { return phi_kernel(alpha, x.survival(t), x.neg_log_survival(t), mode); };
    return finish(detail::measure_integral(f, x.lower(), x.upper(), cfg), mode, Measure::efcre);
}

EntropyResult classic_fractional(const Distribution& x, double q, bool past, const QuadConfig& cfg) {
    if (!(q >= 0.0 && q <= 1.0)) throw domain_error("classic_fractional: q must lie in [0, 1]");
    auto f = [&](double t) {
        const double p = past ? x.cdf(t) : x.survival(t);
        if (p <= 0.0) return 0.0;
        return p * std::pow(past ? x.neg_log_cdf(t) : x.neg_log_survival(t), q);
    };
    const auto m = past ? Measure::classic_past : Measure::classic_residual;
    return finish(detail::measure_integral(f, x.lower(), x.upper(), cfg), LogMode::approx, m);
}

EntropyResult paired_phi_entropy(const Distribution& x, FracOrder alpha, LogMode mode, const QuadConfig& cfg) {
    const auto r = efcre(x, alpha, mode, cfg);
    const auto p = efcpe(x, alpha, mode, cfg);
    QuadResult q;
    q.value = r.diagnostics.value + p.diagnostics.value;
    q.error_estimate = r.diagnostics.error_estimate + p.diagnostics.error_estimate;
    q.subdivisions_used = r.diagnostics.subdivisions_used + p.diagnostics.subdivisions_used;
    q.low_confidence = r.diagnostics.low_confidence || p.diagnostics.low_confidence;
    q.diverged = r.diverged() || p.diverged();
    q.tail_exponent = r.diverged() ? r.diagnostics.tail_exponent : p.diagnostics.tail_exponent;
    return finish(q, mode, Measure::paired);
}

EntropyResult dynamic_efcpe(const Distribution& x, FracOrder alpha, double t, LogMode mode, const QuadConfig& cfg) {
    const double lt = x.neg_log_cdf(t);
    if (!std::isfinite(lt)) throw domain_error("dynamic_efcpe: F(t) = 0");
    auto f = [&](double s) {
        const double l = std::max(0.0, x.neg_log_cdf(s) - lt);
        return phi_kernel(alpha, std::exp(-l), l, mode);
    };
    return finish(detail::measure_integral(f, x.lower(), std::min(t, x.upper()), cfg), mode, Measure::dynamic_efcpe);
}

EntropyResult dynamic_efcre(const Distribution& x, FracOrder alpha, double t, LogMode mode, const QuadConfig& cfg) {
    const double lt = x.neg_log_survival(t);
    if (!std::isfinite(lt)) throw domain_error("dynamic_efcre: survival at t is 0");
    auto f = [&](double s) {
        const double l = std::max(0.0, x.neg_log_survival(s) - lt);
        return phi_kernel(alpha, std::exp(-l), l, mode);
    };
    return finish(detail::measure_integral(f, std::max(t, x.lower()), x.upper(), cfg), mode, Measure::dynamic_efcre);
}

DynamicParts dynamic_decomposition(const Distribution& x, FracOrder alpha, double t, const QuadConfig& cfg) {
    const double lt = x.neg_log_cdf(t);
    if (!std::isfinite(lt)) throw domain_error("dynamic_decomposition: F(t) = 0");
    auto f = [&](double s) { return phi_kernel(alpha, x.cdf(s), x.neg_log_cdf(s)); };
    const double hi = std::min(t, x.upper());
    DynamicParts parts;
    parts.integral_term = require_value(detail::measure_integral(f, x.lower(), hi, cfg), "dynamic_decomposition") * std::exp(lt);
    parts.boundary_term = -mean_inactivity_time(x, t, cfg) * neg_frac_log_pow(alpha, lt);
    return parts;
}

double mean_inactivity_time(const Distribution& x, double t, const QuadConfig& cfg) {
    const double lt = x.neg_log_cdf(t);
    if (!std::isfinite(lt)) throw domain_error("mean_inactivity_time: F(t) = 0");
    const double hi = std::min(t, x.upper());
    auto f = [&](double s) { return std::exp(-std::max(0.0, x.neg_log_cdf(s) - lt)); };
    double mu = hi - x.lower() > degenerate_width ? integrate(f, x.lower(), hi, cfg).value : 0.0;
    if (t > hi) mu += t - hi;
    return std::clamp(mu, 0.0, t - x.lower());
}

double tau_alpha(const Distribution& x, FracOrder alpha, double t, LogMode mode, const QuadConfig& cfg) {
    if (t < x.lower()) throw domain_error("tau_alpha: t lies below the support");
    if (t >= x.upper()) return 0.0;
    auto f = [&](double s) { return neg_frac_log_pow(alpha, x.neg_log_cdf(s), mode); };
    return require_value(detail::measure_integral(f, t, x.upper(), cfg), "tau_alpha");
}

double W_alpha(const Distribution& x, FracOrder alpha, double t, LogMode mode, const QuadConfig& cfg) {
    if (t < x.lower()) throw domain_error("W_alpha: t lies below the support");
    if (t >= x.upper()) return 0.0;
    auto f = [&](double s) { return neg_frac_log(alpha, x.neg_log_cdf(s), mode); };
    return require_value(detail::measure_integral(f, t, x.upper(), cfg), "W_alpha");
}

double gini(const Distribution& x, const QuadConfig& cfg) {
    const double mu = x.mean();
    if (!std::isfinite(mu)) throw domain_error("gini: the mean is infinite");
    if (mu <= 0.0 || !(x.upper() - x.lower() > degenerate_width)) return 0.0;
    auto f = [&](double s) {
        const double v = x.survival(s);
        return v * v;
    };
    const double tail = require_value(integrate(f, x.lower(), x.upper(), cfg), "gini");
    return std::clamp(1.0 - (x.lower() + tail) / mu, 0.0, 1.0);
}

GiniBound gini_lower_bound_check(const Distribution& x, FracOrder alpha, const QuadConfig& cfg) {
    GiniBound g;
    g.bound = alpha.factorial() * x.mean() * gini(x, cfg);
    g.modified = modified_efcpe(x, alpha, LogMode::approx, cfg).get();
    g.holds = g.modified >= g.bound - 1e-9 * std::max(1.0, g.bound);
    return g;
}

} // namespace fracent
