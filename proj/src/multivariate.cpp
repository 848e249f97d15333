#include "fracent/multivariate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <vector>

#include "fracent/errors.hpp"

namespace fracent {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

// 4-point Gauss-Legendre on [-1, 1]
constexpr std::array<double, 4> gl_x = {-0.861136311594052575, -0.339981043584856265, 0.339981043584856265,
                                        0.861136311594052575};
constexpr std::array<double, 4> gl_w = {0.347854845137453857, 0.652145154862546143, 0.652145154862546143,
                                        0.347854845137453857};

// piecewise-linear CDF through tabulated nodes
class TabulatedLaw final : public detail::Law {
public:
    TabulatedLaw(std::vector<double> xs, std::vector<double> cs, std::string label)
        : xs_(std::move(xs)), cs_(std::move(cs)), label_(std::move(label)) {}

    double cdf(double x) const override {
        if (x <= xs_.front()) return 0.0;
        if (x >= xs_.back()) return 1.0;
        const auto i = segment(x);
        const double w = (x - xs_[i]) / (xs_[i + 1] - xs_[i]);
        return std::clamp(cs_[i] + w * (cs_[i + 1] - cs_[i]), 0.0, 1.0);
    }
    double pdf(double x) const override {
        if (x < xs_.front() || x >= xs_.back()) return 0.0;
        const auto i = segment(x);
        return (cs_[i + 1] - cs_[i]) / (xs_[i + 1] - xs_[i]);
    }
    double quantile(double u) const override {
        const auto it = std::lower_bound(cs_.begin(), cs_.end(), u);
        if (it == cs_.begin()) return xs_.front();
        if (it == cs_.end()) return xs_.back();
        const auto i = static_cast<std::size_t>(it - cs_.begin()) - 1;
        const double d = cs_[i + 1] - cs_[i];
        return d > 0.0 ? xs_[i] + (u - cs_[i]) / d * (xs_[i + 1] - xs_[i]) : xs_[i];
    }
    double lower() const override { return xs_.front(); }
    double upper() const override { return xs_.back(); }
    std::string label() const override { return label_; }

private:
    std::size_t segment(double x) const {
        const auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
        return std::min(static_cast<std::size_t>(it - xs_.begin()) - 1, xs_.size() - 2);
    }
    std::vector<double> xs_, cs_;
    std::string label_;
};

// values on a (g+1) x (g+1) mesh over a rectangle, bilinear in between
struct Mesh {
    double ax, bx, ay, by;
    int g;
    std::vector<double> v;  // row-major in x

    double& at(int i, int j) { return v[static_cast<std::size_t>(i) * (g + 1) + j]; }
    double at(int i, int j) const { return v[static_cast<std::size_t>(i) * (g + 1) + j]; }

    double operator()(double x, double y) const {
        const double u = std::clamp((x - ax) / (bx - ax), 0.0, 1.0) * g;
        const double w = std::clamp((y - ay) / (by - ay), 0.0, 1.0) * g;
        const int i = std::min(static_cast<int>(u), g - 1);
        const int j = std::min(static_cast<int>(w), g - 1);
        const double fu = u - i, fw = w - j;
        return (1 - fu) * ((1 - fw) * at(i, j) + fw * at(i, j + 1)) + fu * ((1 - fw) * at(i + 1, j) + fw * at(i + 1, j + 1));
    }
};

// cumulative integral of f(x_i, .) along y for each mesh column, normalised per column
Mesh conditional_mesh(const std::function<double(double, double)>& f, double ax, double bx, double ay, double by,
                      int g) {
    Mesh m{ax, bx, ay, by, g, std::vector<double>(static_cast<std::size_t>(g + 1) * (g + 1))};
    const double hx = (bx - ax) / g, hy = (by - ay) / g;
    for (int i = 0; i <= g; ++i) {
        const double x = ax + i * hx;
        m.at(i, 0) = 0.0;
        for (int j = 0; j < g; ++j) {
            double s = 0.0;
            for (int k = 0; k < 4; ++k) s += gl_w[k] * f(x, ay + (j + 0.5 + 0.5 * gl_x[k]) * hy);
            m.at(i, j + 1) = m.at(i, j) + 0.5 * hy * s;
        }
        const double total = m.at(i, g);
        for (int j = 0; j <= g; ++j) m.at(i, j) = total > 0.0 ? m.at(i, j) / total : static_cast<double>(j) / g;
    }
    return m;
}

double kernel(FracOrder alpha, double p) {
    p = std::clamp(p, 0.0, 1.0);
    return p <= 0.0 ? 0.0 : phi_kernel(alpha, p, -std::log(p));
}

void require_bounded(const BivariateLaw& j, const char* what) {
    if (!j.marginal_x().bounded() || !j.marginal_y().bounded())
        throw unsupported(std::string(what) + ": bounded supports only");
}

double plane(const BivariateLaw& j, const integrand_2d& f, const QuadConfig& cfg) {
    const auto& x = j.marginal_x();
    const auto& y = j.marginal_y();
    return integrate_2d(f, x.lower(), x.upper(), y.lower(), y.upper(), cfg).value;
}

} // namespace

BivariateLaw::BivariateLaw(std::string label, joint_fn joint, Distribution x, Distribution y,
                           conditional_fn y_given_x, conditional_fn x_given_y)
    : label_(std::move(label)), joint_(std::move(joint)), x_(std::move(x)), y_(std::move(y)),
      y_given_x_(std::move(y_given_x)), x_given_y_(std::move(x_given_y)) {}

BivariateLaw BivariateLaw::independent(const Distribution& x, const Distribution& y) {
    return BivariateLaw(
        "indep(" + x.label() + "," + y.label() + ")", [x, y](double s, double t) { return x.cdf(s) * y.cdf(t); }, x, y,
        [y](double t, double) { return y.cdf(t); }, [x](double s, double) { return x.cdf(s); });
}

BivariateLaw BivariateLaw::triangle() {
    auto joint = [](double x, double y) {
        x = std::clamp(x, 0.0, 1.0);
        y = std::clamp(y, 0.0, 1.0);
        return y >= x ? x * x : 2.0 * x * y - y * y;
    };
    // Y | X = x ~ U(0, x), X | Y = y ~ U(y, 1)
    auto y_given_x = [](double y, double x) {
        if (x <= 0.0) return y >= 0.0 ? 1.0 : 0.0;
        return std::clamp(y / x, 0.0, 1.0);
    };
    auto x_given_y = [](double x, double y) {
        if (y >= 1.0) return x >= 1.0 ? 1.0 : 0.0;
        return std::clamp((x - y) / (1.0 - y), 0.0, 1.0);
    };
    return BivariateLaw("triangle", joint, make("beta:p=2,q=1"), make("beta:p=1,q=2"), y_given_x, x_given_y);
}

BivariateLaw BivariateLaw::fgm(double theta, const Distribution& x, const Distribution& y) {
    if (!(theta >= -1.0 && theta <= 1.0)) throw domain_error("fgm: theta must lie in [-1, 1]");
    auto joint = [=](double s, double t) {
        const double u = x.cdf(s), v = y.cdf(t);
        return u * v * (1.0 + theta * (1.0 - u) * (1.0 - v));
    };
    auto y_given_x = [=](double t, double s) {
        const double u = x.cdf(s), v = y.cdf(t);
        return std::clamp(v * (1.0 + theta * (1.0 - 2.0 * u) * (1.0 - v)), 0.0, 1.0);
    };
    auto x_given_y = [=](double s, double t) {
        const double u = x.cdf(s), v = y.cdf(t);
        return std::clamp(u * (1.0 + theta * (1.0 - 2.0 * v) * (1.0 - u)), 0.0, 1.0);
    };
    return BivariateLaw("fgm:theta=" + fmt(theta) + "(" + x.label() + "," + y.label() + ")", joint, x, y, y_given_x,
                        x_given_y);
}

BivariateLaw BivariateLaw::from_density(std::function<double(double, double)> density, double ax, double bx, double ay,
                                        double by, std::string label, int grid) {
    if (!(ax < bx && ay < by) || !std::isfinite(bx) || !std::isfinite(by))
        throw domain_error("from_density: need a bounded non-empty rectangle");
    if (grid < 4) throw domain_error("from_density: grid too coarse");
    const int g = grid;
    const double hx = (bx - ax) / g, hy = (by - ay) / g;

    auto joint = std::make_shared<Mesh>(Mesh{ax, bx, ay, by, g, std::vector<double>(static_cast<std::size_t>(g + 1) * (g + 1))});
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j) {
            double m = 0.0;
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b) {
                    const double v = density(ax + (i + 0.5 + 0.5 * gl_x[a]) * hx, ay + (j + 0.5 + 0.5 * gl_x[b]) * hy);
                    if (!(v >= 0.0) || !std::isfinite(v)) throw domain_error("from_density: density must be finite and >= 0");
                    m += gl_w[a] * gl_w[b] * v;
                }
            m *= 0.25 * hx * hy;
            joint->at(i + 1, j + 1) = m + joint->at(i, j + 1) + joint->at(i + 1, j) - joint->at(i, j);
        }
    const double total = joint->at(g, g);
    if (!(total > 0.0)) throw domain_error("from_density: density has no mass");
    for (double& v : joint->v) v /= total;

    std::vector<double> xs(g + 1), ys(g + 1), cx(g + 1), cy(g + 1);
    for (int i = 0; i <= g; ++i) {
        xs[i] = ax + i * hx;
        ys[i] = ay + i * hy;
        cx[i] = joint->at(i, g);
        cy[i] = joint->at(g, i);
    }
    xs[g] = bx;
    ys[g] = by;
    Distribution mx(std::make_shared<TabulatedLaw>(xs, cx, label + ".x"));
    Distribution my(std::make_shared<TabulatedLaw>(ys, cy, label + ".y"));

    auto y_given_x = std::make_shared<Mesh>(conditional_mesh(density, ax, bx, ay, by, g));
    auto swapped_density = [density](double y, double x) { return density(x, y); };
    auto x_given_y = std::make_shared<Mesh>(conditional_mesh(swapped_density, ay, by, ax, bx, g));

    return BivariateLaw(
        label, [joint](double x, double y) { return (*joint)(x, y); }, mx, my,
        [y_given_x](double y, double x) { return (*y_given_x)(x, y); },
        [x_given_y](double x, double y) { return (*x_given_y)(y, x); });
}

BivariateLaw BivariateLaw::swapped() const {
    auto joint = joint_;
    return BivariateLaw(
        "swap(" + label_ + ")", [joint](double y, double x) { return joint(x, y); }, y_, x_, x_given_y_, y_given_x_);
}

QuadConfig planar_config() {
    QuadConfig cfg;
    cfg.abs_tol = 1e-8;
    cfg.rel_tol = 1e-6;
    return cfg;
}

EntropyResult bivariate_efcpe(const BivariateLaw& j, FracOrder alpha, const QuadConfig& cfg) {
    require_bounded(j, "bivariate_efcpe");
    const auto& x = j.marginal_x();
    const auto& y = j.marginal_y();
    EntropyResult r;
    r.measure = Measure::bivariate_efcpe;
    r.diagnostics = integrate_2d([&](double s, double t) { return kernel(alpha, j.cdf(s, t)); }, x.lower(), x.upper(),
                                 y.lower(), y.upper(), cfg);
    r.value = std::max(0.0, r.diagnostics.value);
    return r;
}

EntropyResult modified_bivariate_efcpe(const BivariateLaw& j, FracOrder alpha, const QuadConfig& cfg) {
    require_bounded(j, "modified_bivariate_efcpe");
    const auto& x = j.marginal_x();
    const auto& y = j.marginal_y();
    auto f = [&](double s, double t) {
        const double p = std::clamp(j.cdf(s, t), 0.0, 1.0);
        return p <= 0.0 ? 0.0 : p * neg_frac_log(alpha, -std::log(p));
    };
    EntropyResult r;
    r.measure = Measure::modified_bivariate_efcpe;
    r.diagnostics = integrate_2d(f, x.lower(), x.upper(), y.lower(), y.upper(), cfg);
    r.value = std::max(0.0, r.diagnostics.value);
    return r;
}

double independence_decomposition(const Distribution& x, const Distribution& y, FracOrder alpha,
                                  const QuadConfig& cfg) {
    if (!x.bounded() || !y.bounded()) throw domain_error("independence_decomposition: bounded supports only");
    return efcpe(x, alpha, LogMode::approx, cfg).get() * (y.upper() - y.mean()) +
           efcpe(y, alpha, LogMode::approx, cfg).get() * (x.upper() - x.mean());
}

double iid_n_efcpe(const Distribution& x, int n, FracOrder alpha, const QuadConfig& cfg) {
    if (n < 2) throw domain_error("iid_n_efcpe: n must be at least 2");
    if (!x.bounded()) throw domain_error("iid_n_efcpe: bounded support only");
    return n * std::pow(x.upper() - x.mean(), n - 1) * efcpe(x, alpha, LogMode::approx, cfg).get();
}

double fcpmi(const BivariateLaw& j, FracOrder alpha, const QuadConfig& cfg) {
    require_bounded(j, "fcpmi");
    const auto& x = j.marginal_x();
    const auto& y = j.marginal_y();

    // the fractional log needs F <= F_X F_Y; tolerate rounding-level excursions only
    const int m = 64;
    int bad = 0;
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            const double s = x.lower() + (a + 0.5) / m * (x.upper() - x.lower());
            const double t = y.lower() + (b + 0.5) / m * (y.upper() - y.lower());
            const double prod = x.cdf(s) * y.cdf(t);
            if (prod > 0.0 && j.cdf(s, t) > prod * (1.0 + 1e-9)) ++bad;
        }
    if (bad > m * m / 100)
        throw domain_error("fcpmi: F(x,y) exceeds F_X(x) F_Y(y) on " + std::to_string(bad) + " of " +
                           std::to_string(m * m) + " grid points; the law is not negatively quadrant dependent");

    auto f = [&](double s, double t) {
        const double p = j.cdf(s, t);
        const double u = x.cdf(s), v = y.cdf(t);
        if (p <= 0.0 || u <= 0.0 || v <= 0.0) return 0.0;
        const double l = std::max(0.0, std::log(u) + std::log(v) - std::log(p));
        return p * neg_frac_log_pow(alpha, l);
    };
    return std::max(0.0, plane(j, f, cfg));
}

EntropyResult conditional_efcpe(const BivariateLaw& j, FracOrder alpha, double x, const QuadConfig& cfg) {
    const auto& mx = j.marginal_x();
    if (!(x >= mx.lower() && x <= mx.upper())) throw domain_error("conditional_efcpe: x outside the support of X");
    const auto& y = j.marginal_y();
    if (!y.bounded()) throw unsupported("conditional_efcpe: bounded support of Y only");
    EntropyResult r;
    r.measure = Measure::conditional_efcpe;
    r.diagnostics =
        integrate([&](double t) { return kernel(alpha, j.cond_y_given_x(t, x)); }, y.lower(), y.upper(), cfg);
    r.value = std::max(0.0, r.diagnostics.value);
    return r;
}

DecompositionCheck decomposition_theorem_check(const BivariateLaw& j, FracOrder alpha, const QuadConfig& cfg) {
    require_bounded(j, "decomposition_theorem_check");
    const auto& x = j.marginal_x();
    DecompositionCheck d;
    d.lhs = bivariate_efcpe(j, alpha, cfg).get();
    d.weighted_x = plane(
        j, [&](double s, double t) { return std::clamp(j.cond_y_given_x(t, s), 0.0, 1.0) * kernel(alpha, x.cdf(s)); }, cfg);
    d.conditional = plane(j, [&](double s, double t) { return kernel(alpha, j.cond_y_given_x(t, s)); }, cfg);
    d.weighted_conditional =
        plane(j, [&](double s, double t) { return x.survival(s) * kernel(alpha, j.cond_y_given_x(t, s)); }, cfg);
    d.rhs = d.weighted_x + d.conditional - d.weighted_conditional;
    return d;
}

namespace {

// split "a:x=1,y=2,b:z=3" into family texts; a token holding '=' but no ':' continues the previous family
std::vector<std::string> split_families(std::string_view text) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto comma = std::min(text.find(',', pos), text.size());
        const auto tok = text.substr(pos, comma - pos);
        const bool continues = tok.find('=') != std::string_view::npos && tok.find(':') == std::string_view::npos;
        if (continues && !out.empty()) out.back() += "," + std::string(tok);
        else out.emplace_back(tok);
        pos = comma + 1;
    }
    return out;
}

double parse_number(std::string_view text) {
    const std::string s(text);
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != s.size()) throw domain_error("bad number '" + s + "'");
    return v;
}

std::string_view inner(std::string_view text, std::string_view head) {
    if (text.size() < head.size() + 2 || text.substr(0, head.size() + 1) != std::string(head) + "(" || text.back() != ')')
        throw domain_error("bad joint law '" + std::string(text) + "'");
    return text.substr(head.size() + 1, text.size() - head.size() - 2);
}

} // namespace

BivariateLaw parse_joint_law(std::string_view text) {
    if (text == "triangle") return BivariateLaw::triangle();
    if (text.rfind("indep(", 0) == 0) {
        const auto fams = split_families(inner(text, "indep"));
        if (fams.size() != 2) throw domain_error("indep() takes two laws");
        return BivariateLaw::independent(make(fams[0]), make(fams[1]));
    }
    if (text.rfind("fgm:theta=", 0) == 0) {
        const auto u = make(Family::uniform(1.0));
        return BivariateLaw::fgm(parse_number(text.substr(10)), u, u);
    }
    if (text.rfind("fgm(", 0) == 0) {
        const auto body = inner(text, "fgm");
        const auto comma = body.find(',');
        if (comma == std::string_view::npos) throw domain_error("fgm() takes theta and two laws");
        const auto fams = split_families(body.substr(comma + 1));
        if (fams.size() != 2) throw domain_error("fgm() takes theta and two laws");
        return BivariateLaw::fgm(parse_number(body.substr(0, comma)), make(fams[0]), make(fams[1]));
    }
    throw domain_error("unknown joint law '" + std::string(text) + "'");
}

} // namespace fracent
