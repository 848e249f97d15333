#include "fracent/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <vector>

namespace fracent {

namespace {

// Kronrod 15 abscissae (positive half) and weights, Gauss 7 weights on the odd nodes
constexpr std::array<double, 8> xgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> wgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> wg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double eps = std::numeric_limits<double>::epsilon();

struct Segment {
    double a, b, value, error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gk15(const integrand_1d& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double rk = fc * wgk[7];
    double rg = fc * wg[3];
    double rabs = std::abs(rk);
    std::array<double, 7> f1{}, f2{};
    for (int j = 0; j < 7; ++j) {
        const double dx = h * xgk[j];
        const double v1 = f(c - dx);
        const double v2 = f(c + dx);
        f1[j] = v1;
        f2[j] = v2;
        rk += wgk[j] * (v1 + v2);
        rabs += wgk[j] * (std::abs(v1) + std::abs(v2));
        if (j % 2 == 1) rg += wg[j / 2] * (v1 + v2);
    }
    const double mean = rk * 0.5;
    double rasc = wgk[7] * std::abs(fc - mean);
    for (int j = 0; j < 7; ++j) rasc += wgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));

    double err = std::abs((rk - rg) * h);
    rasc *= std::abs(h);
    rabs *= std::abs(h);
    if (rasc != 0.0 && err != 0.0) err = rasc * std::min(1.0, std::pow(200.0 * err / rasc, 1.5));
    if (rabs > std::numeric_limits<double>::min() / (50 * eps)) err = std::max(err, 50 * eps * rabs);
    if (!std::isfinite(rk)) err = std::numeric_limits<double>::infinity();
    return {a, b, rk * h, err};
}

double tolerance(const QuadConfig& cfg, double value) {
    return std::max(cfg.abs_tol, cfg.rel_tol * std::abs(value));
}

// global adaptive bisection on a finite interval
QuadResult adapt(const integrand_1d& f, double a, double b, const QuadConfig& cfg) {
    QuadResult out;
    if (a == b) return out;
    std::priority_queue<Segment> heap;
    heap.push(gk15(f, a, b));
    double total = heap.top().value;
    double total_err = heap.top().error;
    double frozen_value = 0.0, frozen_err = 0.0;

    while (!heap.empty()) {
        if (total_err <= tolerance(cfg, total)) break;
        if (out.subdivisions_used >= cfg.max_subdivisions) {
            out.value = total;
            out.error_estimate = total_err;
            throw max_subdivisions_error("integrate: tolerance not met within max_subdivisions", out);
        }
        Segment s = heap.top();
        heap.pop();
        const double mid = 0.5 * (s.a + s.b);
        // intervals this narrow cannot be refined further in double precision
        if (s.b - s.a <= 1e-12 * std::max(1.0, std::abs(mid)) || mid <= s.a || mid >= s.b) {
            frozen_value += s.value;
            frozen_err += s.error;
            continue;
        }
        const Segment l = gk15(f, s.a, mid);
        const Segment r = gk15(f, mid, s.b);
        ++out.subdivisions_used;
        total += l.value + r.value - s.value;
        total_err += l.error + r.error - s.error;
        heap.push(l);
        heap.push(r);
    }
    // resum to shed accumulated rounding in the running totals
    double v = frozen_value, e = frozen_err;
    while (!heap.empty()) {
        v += heap.top().value;
        e += heap.top().error;
        heap.pop();
    }
    out.value = v;
    out.error_estimate = e;
    if (!std::isfinite(v)) throw non_convergent("integrate: integrand produced non-finite values");
    return out;
}

} // namespace

void QuadConfig::validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) throw domain_error("QuadConfig: tolerances must be positive");
    if (max_subdivisions < 10) throw domain_error("QuadConfig: max_subdivisions must be at least 10");
    if (tail_probe_points < 3) throw domain_error("QuadConfig: tail_probe_points must be at least 3");
}

DivergenceReport detect_divergence(const integrand_1d& f, double start, const QuadConfig& cfg) {
    if (!(start > 0.0) || !std::isfinite(start)) throw domain_error("detect_divergence: window start must be positive");
    const int m = cfg.tail_probe_points;
    std::vector<double> lx, ly;
    bool overflow = false;
    for (int i = 0; i < m; ++i) {
        const double x = start * std::pow(10.0, 6.0 * i / (m - 1));
        const double v = std::abs(f(x));
        overflow = overflow || std::isinf(v);
        if (v > 0.0 && std::isfinite(v)) {
            lx.push_back(std::log(x));
            ly.push_back(std::log(v));
        }
    }
    DivergenceReport rep;
    if (overflow) {
        rep.status = TailStatus::divergent;
        rep.exponent = std::numeric_limits<double>::infinity();
        return rep;
    }
    // mostly underflowed probes: faster than any power
    if (lx.size() < 3) return rep;

    const double n = static_cast<double>(lx.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    const double slope = sxy / sxx;
    double ss = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        const double r = ly[i] - (my + slope * (lx[i] - mx));
        ss += r * r;
    }
    rep.exponent = slope;
    rep.residual = std::sqrt(ss / n);

    if (slope >= -1.0 - divergence_epsilon) {
        rep.status = rep.residual > 0.1 ? TailStatus::inconclusive : TailStatus::divergent;
    } else if (rep.residual > 0.1 && slope > -2.0) {
        rep.status = TailStatus::inconclusive;
    } else {
        rep.status = TailStatus::convergent;
    }
    return rep;
}

QuadResult integrate(const integrand_1d& f, double a, double b, const QuadConfig& cfg) {
    cfg.validate();
    if (std::isnan(a) || std::isnan(b) || !std::isfinite(a)) throw domain_error("integrate: bad limits");
    if (b < a) throw domain_error("integrate: b < a");
    if (std::isfinite(b)) return adapt(f, a, b, cfg);

    // semi-infinite: x = a + t/(1-t) on the first unit, x = a + e^s beyond it, truncated at a
    // finite horizon and closed with a power-law remainder
    const double horizon = 1e12 * std::max(1.0, std::abs(a));
    const double x_max = a + horizon;

    const DivergenceReport tail = detect_divergence(f, (x_max - a) * 1e-6 + a, cfg);

    auto head = [&f, a](double t) {
        const double u = 1.0 - t;
        const double v = f(a + t / u);
        return v == 0.0 ? 0.0 : v / (u * u);
    };
    auto body = [&f, a](double s) {
        const double e = std::exp(s);
        const double v = f(a + e);
        return v == 0.0 ? 0.0 : v * e;
    };
    QuadResult out;
    if (tail.status == TailStatus::divergent) {
        // nothing finite to report
        out.value = std::numeric_limits<double>::quiet_NaN();
        out.diverged = true;
        out.tail_exponent = tail.exponent;
        return out;
    }
    out = adapt(head, 0.0, 0.5, cfg);
    const QuadResult rest = adapt(body, 0.0, std::log(horizon), cfg);
    out.value += rest.value;
    out.error_estimate += rest.error_estimate;
    out.subdivisions_used += rest.subdivisions_used;
    out.tail_exponent = tail.exponent;

    if (tail.status == TailStatus::inconclusive) {
        out.low_confidence = true;
        return out;
    }
    if (std::isfinite(tail.exponent)) {
        const double fx = f(x_max);
        const double rem = fx * x_max / (-1.0 - tail.exponent);
        out.value += rem;
        // remainder uncertainty: shift the exponent by the fit residual
        const double alt = fx * x_max / (-1.0 - tail.exponent + tail.residual + 1e-3);
        out.error_estimate += std::abs(alt - rem);
    }
    return out;
}

QuadResult integrate_pieces(const integrand_1d& f, std::span<const double> points, const QuadConfig& cfg) {
    if (points.size() < 2) throw domain_error("integrate_pieces: need at least two points");
    QuadResult out;
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        if (points[i + 1] < points[i]) throw domain_error("integrate_pieces: points must be sorted");
        if (points[i + 1] == points[i]) continue;
        const QuadResult r = integrate(f, points[i], points[i + 1], cfg);
        out.value += r.value;
        out.error_estimate += r.error_estimate;
        out.subdivisions_used += r.subdivisions_used;
        out.diverged = out.diverged || r.diverged;
        out.low_confidence = out.low_confidence || r.low_confidence;
        if (!std::isnan(r.tail_exponent)) out.tail_exponent = r.tail_exponent;
    }
    return out;
}

QuadResult integrate_2d(const integrand_2d& f, double ax, double bx, double ay, double by, const QuadConfig& cfg) {
    if (!std::isfinite(bx) || !std::isfinite(by)) throw unsupported("integrate_2d: bounded rectangles only");
    double inner_err = 0.0;
    int inner_subdiv = 0;
    auto outer = [&](double y) {
        const QuadResult r = integrate([&f, y](double x) { return f(x, y); }, ax, bx, cfg);
        inner_err = std::max(inner_err, r.error_estimate);
        inner_subdiv += r.subdivisions_used;
        return r.value;
    };
    QuadResult out = integrate(outer, ay, by, cfg);
    out.error_estimate += inner_err * (by - ay);
    out.subdivisions_used += inner_subdiv;
    return out;
}

} // namespace fracent
