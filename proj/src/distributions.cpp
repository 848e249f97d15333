#include "fracent/distributions.hpp"

#include <boost/math/special_functions/beta.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "fracent/errors.hpp"
#include "fracent/quadrature.hpp"

namespace fracent {

namespace {

struct FamilyInfo {
    FamilyKind kind;
    const char* name;
    std::vector<std::string> params;
};

const std::vector<FamilyInfo>& catalog() {
    static const std::vector<FamilyInfo> c = {
        {FamilyKind::uniform, "uniform", {"a"}},
        {FamilyKind::frechet, "frechet", {"a", "b"}},
        {FamilyKind::exponential, "exponential", {"lambda"}},
        {FamilyKind::pareto, "pareto", {"k"}},
        {FamilyKind::weibull, "weibull", {"scale", "shape"}},
        {FamilyKind::log_uniform, "loguniform", {"a", "b"}},
        {FamilyKind::beta, "beta", {"p", "q"}},
        {FamilyKind::triangular_sum, "trisum", {}},
    };
    return c;
}

const FamilyInfo& info(FamilyKind k) {
    for (const auto& f : catalog())
        if (f.kind == k) return f;
    throw domain_error("unknown family kind");
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

using detail::Law;

class Uniform final : public Law {
public:
    explicit Uniform(double a) : a_(a) {}
    double cdf(double x) const override { return clamp01(x / a_); }
    double survival(double x) const override { return clamp01((a_ - x) / a_); }
    double pdf(double x) const override { return (x >= 0.0 && x < a_) ? 1.0 / a_ : 0.0; }
    double quantile(double u) const override { return u * a_; }
    double lower() const override { return 0.0; }
    double upper() const override { return a_; }
    double mean() const override { return 0.5 * a_; }
    std::string label() const override { return family()->to_string(); }
    std::optional<Family> family() const override { return Family::uniform(a_); }

private:
    double a_;
};

class Frechet final : public Law {
public:
    Frechet(double a, double b) : a_(a), b_(b) {}
    double cdf(double x) const override { return x <= 0.0 ? 0.0 : std::exp(-neg_log_cdf(x)); }
    double survival(double x) const override { return x <= 0.0 ? 1.0 : -std::expm1(-neg_log_cdf(x)); }
    double pdf(double x) const override {
        if (x <= 0.0) return 0.0;
        return a_ * b_ * std::pow(x, -a_ - 1.0) * cdf(x);
    }
    double quantile(double u) const override { return std::pow(b_ / (-std::log(u)), 1.0 / a_); }
    double lower() const override { return 0.0; }
    double upper() const override { return INFINITY; }
    double mean() const override { return a_ > 1.0 ? std::pow(b_, 1.0 / a_) * std::tgamma(1.0 - 1.0 / a_) : INFINITY; }
    double neg_log_cdf(double x) const override { return x <= 0.0 ? INFINITY : b_ * std::pow(x, -a_); }
    std::string label() const override { return family()->to_string(); }
    std::optional<Family> family() const override { return Family::frechet(a_, b_); }

private:
    double a_, b_;
};

class Exponential final : public Law {
public:
    explicit Exponential(double lambda) : l_(lambda) {}
    double cdf(double x) const override { return x <= 0.0 ? 0.0 : -std::expm1(-l_ * x); }
    double survival(double x) const override { return x <= 0.0 ? 1.0 : std::exp(-l_ * x); }
    double pdf(double x) const override { return x < 0.0 ? 0.0 : l_ * std::exp(-l_ * x); }
    double quantile(double u) const override { return -std::log1p(-u) / l_; }
    double lower() const override { return 0.0; }
    double upper() const override { return INFINITY; }
    double mean() const override { return 1.0 / l_; }
    double neg_log_survival(double x) const override { return x <= 0.0 ? 0.0 : l_ * x; }
    std::string label() const override { return family()->to_string(); }
    std::optional<Family> family() const override { return Family::exponential(l_); }

private:
    double l_;
};

// F(x) = 1 - (1 + x)^-k
class Pareto final : public Law {
public:
    explicit Pareto(double k) : k_(k) {}
    double cdf(double x) const override { return x <= 0.0 ? 0.0 : -std::expm1(-k_ * std::log1p(x)); }
    double survival(double x) const override { return x <= 0.0 ? 1.0 : std::exp(-k_ * std::log1p(x)); }
    double pdf(double x) const override { return x < 0.0 ? 0.0 : k_ * std::pow(1.0 + x, -k_ - 1.0); }
    double quantile(double u) const override { return std::expm1(-std::log1p(-u) / k_); }
    double lower() const override { return 0.0; }
    double upper() const override { return INFINITY; }
    double mean() const override { return k_ > 1.0 ? 1.0 / (k_ - 1.0) : INFINITY; }
    double neg_log_survival(double x) const override { return x <= 0.0 ? 0.0 : k_ * std::log1p(x); }
    std::string label() const override { return family()->to_string(); }
    std::optional<Family> family() const override { return Family::pareto(k_); }

private:
    double k_;
};

class Weibull final : public Law {
public:
    Weibull(double scale, double shape) : s_(scale), k_(shape) {}
    double cdf(double x) const override { return x <= 0.0 ? 0.0 : -std::expm1(-z(x)); }
    double survival(double x) const override { return x <= 0.0 ? 1.0 : std::exp(-z(x)); }
    double pdf(double x) const override {
        if (x < 0.0 || (x == 0.0 && k_ < 1.0)) return x < 0.0 ? 0.0 : INFINITY;
        return (k_ / s_) * std::pow(x / s_, k_ - 1.0) * std::exp(-z(x));
    }
    double quantile(double u) const override { return s_ * std::pow(-std::log1p(-u), 1.0 / k_); }
    double lower() const override { return 0.0; }
    double upper() const override { return INFINITY; }
    double mean() const override { return s_ * std::tgamma(1.0 + 1.0 / k_); }
    double neg_log_survival(double x) const override { return x <= 0.0 ? 0.0 : z(x); }
    double neg_log_cdf(double x) const override {
        if (x <= 0.0) return INFINITY;
        const double zz = z(x);
        return zz < 0.5 ? -std::log(-std::expm1(-zz)) : -std::log1p(-std::exp(-zz));
    }
    std::string label() const override { return family()->to_string(); }
    std::optional<Family> family() const override { return Family::weibull(s_, k_); }

private:
    double z(double x) const { return std::pow(x / s_, k_); }
    double s_, k_;
};

class LogUniform final : public Law {
public:
    LogUniform(double a, double b) : a_(a), b_(b), r_(std::log(b / a)) {}
    double cdf(double x) const override { return x <= a_ ? 0.0 : clamp01(std::log(x / a_) / r_); }
    double survival(double x) const override { return x >= b_ ? 0.0 : clamp01(std::log(b_ / x) / r_); }
    double pdf(double x) const override { return (x >= a_ && x < b_) ? 1.0 / (x * r_) : 0.0; }
    double quantile(double u) const override { return a_ * std::exp(u * r_); }
    double lower() const override { return a_; }
    double upper() const override { return b_; }
    double mean() const override { return (b_ - a_) / r_; }
    std::string label() const override { return family()->to_string(); }
    std::optional<Family> family() const override { return Family::log_uniform(a_, b_); }

private:
    double a_, b_, r_;
};

class Beta final : public Law {
public:
    Beta(double p, double q) : p_(p), q_(q) {}
    double cdf(double x) const override {
        if (x <= 0.0) return 0.0;
        if (x >= 1.0) return 1.0;
        return boost::math::ibeta(p_, q_, x);
    }
    double survival(double x) const override {
        if (x <= 0.0) return 1.0;
        if (x >= 1.0) return 0.0;
        return boost::math::ibetac(p_, q_, x);
    }
    double pdf(double x) const override {
        if (x < 0.0 || x > 1.0) return 0.0;
        if ((x == 0.0 && p_ < 1.0) || (x == 1.0 && q_ < 1.0)) return INFINITY;
        return boost::math::ibeta_derivative(p_, q_, x);
    }
    double quantile(double u) const override { return boost::math::ibeta_inv(p_, q_, u); }
    double lower() const override { return 0.0; }
    double upper() const override { return 1.0; }
    double mean() const override { return p_ / (p_ + q_); }
    std::string label() const override { return family()->to_string(); }
    std::optional<Family> family() const override { return Family::beta(p_, q_); }

private:
    double p_, q_;
};

// sum of two independent standard uniforms
class TriangularSum final : public Law {
public:
    double cdf(double x) const override {
        if (x <= 0.0) return 0.0;
        if (x >= 2.0) return 1.0;
        return x <= 1.0 ? 0.5 * x * x : 1.0 - 0.5 * (2.0 - x) * (2.0 - x);
    }
    double survival(double x) const override { return cdf(2.0 - x); }
    double pdf(double x) const override {
        if (x < 0.0 || x > 2.0) return 0.0;
        return x <= 1.0 ? x : 2.0 - x;
    }
    double quantile(double u) const override {
        return u <= 0.5 ? std::sqrt(2.0 * u) : 2.0 - std::sqrt(2.0 * (1.0 - u));
    }
    double lower() const override { return 0.0; }
    double upper() const override { return 2.0; }
    double mean() const override { return 1.0; }
    std::string label() const override { return "trisum"; }
    std::optional<Family> family() const override { return Family::triangular_sum(); }
};

class Degenerate final : public Law {
public:
    explicit Degenerate(double c) : c_(c) {}
    double cdf(double x) const override { return x >= c_ ? 1.0 : 0.0; }
    double pdf(double) const override { return std::nan(""); }
    bool has_pdf() const override { return false; }
    double quantile(double) const override { return c_; }
    double lower() const override { return c_; }
    double upper() const override { return c_; }
    double mean() const override { return c_; }
    std::string label() const override { return "degenerate:c=" + fmt(c_); }

private:
    double c_;
};

class Affine final : public Law {
public:
    Affine(Distribution x, double a, double b) : x_(std::move(x)), a_(a), b_(b) {}
    double cdf(double y) const override { return x_.cdf(back(y)); }
    double survival(double y) const override { return x_.survival(back(y)); }
    double pdf(double y) const override { return x_.pdf(back(y)) / a_; }
    bool has_pdf() const override { return x_.has_pdf(); }
    double quantile(double u) const override { return a_ * x_.quantile(u) + b_; }
    double lower() const override { return a_ * x_.lower() + b_; }
    double upper() const override { return a_ * x_.upper() + b_; }
    double mean() const override { return a_ * x_.mean() + b_; }
    double neg_log_cdf(double y) const override { return x_.neg_log_cdf(back(y)); }
    double neg_log_survival(double y) const override { return x_.neg_log_survival(back(y)); }
    std::string label() const override { return "affine(" + x_.label() + ";a=" + fmt(a_) + ",b=" + fmt(b_) + ")"; }

private:
    double back(double y) const { return (y - b_) / a_; }
    Distribution x_;
    double a_, b_;
};

class Prhr final : public Law {
public:
    Prhr(Distribution x, double delta) : x_(std::move(x)), d_(delta) {}
    double cdf(double y) const override {
        const double l = neg_log_cdf(y);
        return std::isinf(l) ? 0.0 : std::exp(-l);
    }
    double survival(double y) const override {
        const double l = neg_log_cdf(y);
        return std::isinf(l) ? 1.0 : -std::expm1(-l);
    }
    double pdf(double y) const override {
        const double f = x_.pdf(y);
        if (f == 0.0) return 0.0;
        return d_ * std::exp(-(d_ - 1.0) * x_.neg_log_cdf(y)) * f;
    }
    bool has_pdf() const override { return x_.has_pdf(); }
    double quantile(double u) const override { return x_.quantile(std::pow(u, 1.0 / d_)); }
    double lower() const override { return x_.lower(); }
    double upper() const override { return x_.upper(); }
    double neg_log_cdf(double y) const override { return d_ * x_.neg_log_cdf(y); }
    std::string label() const override { return "prhr(" + x_.label() + ";delta=" + fmt(d_) + ")"; }

private:
    Distribution x_;
    double d_;
};

class Convolution final : public Law {
public:
    Convolution(Distribution x, Distribution y) : x_(std::move(x)), y_(std::move(y)) {
        cfg_.abs_tol = 1e-13;
        cfg_.rel_tol = 1e-11;
    }
    double cdf(double z) const override {
        if (z <= lower()) return 0.0;
        if (z >= upper()) return 1.0;
        const double hi = std::min(x_.upper(), z - y_.lower());
        if (hi <= x_.lower()) return 0.0;
        return clamp01(integrate([&](double s) { return x_.pdf(s) * y_.cdf(z - s); }, x_.lower(), hi, cfg_).value);
    }
    double survival(double z) const override {
        if (z <= lower()) return 1.0;
        if (z >= upper()) return 0.0;
        return clamp01(integrate([&](double s) { return x_.pdf(s) * y_.survival(z - s); }, x_.lower(), x_.upper(), cfg_).value);
    }
    double pdf(double z) const override {
        const double lo = std::max(x_.lower(), z - y_.upper());
        const double hi = std::min(x_.upper(), z - y_.lower());
        if (hi <= lo) return 0.0;
        return integrate([&](double s) { return x_.pdf(s) * y_.pdf(z - s); }, lo, hi, cfg_).value;
    }
    double lower() const override { return x_.lower() + y_.lower(); }
    double upper() const override { return x_.upper() + y_.upper(); }
    double mean() const override { return x_.mean() + y_.mean(); }
    std::string label() const override { return "sum(" + x_.label() + ";" + y_.label() + ")"; }

private:
    Distribution x_, y_;
    QuadConfig cfg_;
};

void require(bool ok, const std::string& what) {
    if (!ok) throw domain_error(what);
}

bool positive(double v) { return std::isfinite(v) && v > 0.0; }

} // namespace

namespace detail {

double Law::quantile(double u) const {
    if (!(u > 0.0 && u < 1.0)) {
        if (u == 0.0) return lower();
        if (u == 1.0) return upper();
        throw domain_error("quantile: u must lie in [0, 1]");
    }
    double lo = lower();
    double hi = upper();
    if (std::isinf(hi)) {
        hi = std::max(1.0, 2.0 * std::abs(lo));
        for (int i = 0; cdf(hi) < u; ++i) {
            if (i > 2000) throw non_convergent("quantile: could not bracket");
            hi *= 2.0;
        }
    }
    for (int i = 0; i < 300 && hi - lo > 1e-14 * std::max(1.0, std::abs(hi)); ++i) {
        const double mid = 0.5 * (lo + hi);
        if (cdf(mid) < u)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double Law::mean() const {
    const double l = lower();
    QuadConfig cfg;
    cfg.abs_tol = 1e-12;
    cfg.rel_tol = 1e-10;
    const QuadResult r = integrate([this](double x) { return survival(x); }, l, upper(), cfg);
    if (r.diverged) return INFINITY;
    return l + r.value;
}

double Law::neg_log_cdf(double x) const {
    const double f = cdf(x);
    if (f <= 0.0) return INFINITY;
    if (f <= 0.5) return -std::log(f);
    return -std::log1p(-survival(x));
}

double Law::neg_log_survival(double x) const {
    const double s = survival(x);
    if (s <= 0.0) return INFINITY;
    if (s <= 0.5) return -std::log(s);
    return -std::log1p(-cdf(x));
}

} // namespace detail

Family Family::uniform(double a) { return {FamilyKind::uniform, {{"a", a}}}; }
Family Family::frechet(double a, double b) { return {FamilyKind::frechet, {{"a", a}, {"b", b}}}; }
Family Family::exponential(double lambda) { return {FamilyKind::exponential, {{"lambda", lambda}}}; }
Family Family::pareto(double k) { return {FamilyKind::pareto, {{"k", k}}}; }
Family Family::weibull(double scale, double shape) { return {FamilyKind::weibull, {{"scale", scale}, {"shape", shape}}}; }
Family Family::log_uniform(double a, double b) { return {FamilyKind::log_uniform, {{"a", a}, {"b", b}}}; }
Family Family::beta(double p, double q) { return {FamilyKind::beta, {{"p", p}, {"q", q}}}; }
Family Family::triangular_sum() { return {FamilyKind::triangular_sum, {}}; }

double Family::param(const std::string& name) const {
    const auto it = params.find(name);
    if (it == params.end()) throw domain_error("family " + this->name() + " has no parameter '" + name + "'");
    return it->second;
}

std::string Family::name() const { return info(kind).name; }

std::string Family::to_string() const {
    std::string out = name();
    const auto& names = info(kind).params;
    for (std::size_t i = 0; i < names.size(); ++i) {
        out += (i == 0 ? ":" : ",");
        out += names[i] + "=" + fmt(param(names[i]));
    }
    return out;
}

Family parse_family(std::string_view text) {
    const auto colon = text.find(':');
    const std::string name(text.substr(0, colon));
    const FamilyInfo* fi = nullptr;
    for (const auto& f : catalog())
        if (name == f.name) fi = &f;
    if (!fi) throw domain_error("unknown family '" + name + "'");

    Family fam{fi->kind, {}};
    if (colon != std::string_view::npos) {
        std::string_view rest = text.substr(colon + 1);
        while (!rest.empty()) {
            const auto comma = rest.find(',');
            const std::string_view item = rest.substr(0, comma);
            const auto eq = item.find('=');
            if (eq == std::string_view::npos) throw domain_error("expected key=value in '" + std::string(item) + "'");
            const std::string key(item.substr(0, eq));
            const std::string val(item.substr(eq + 1));
            if (std::find(fi->params.begin(), fi->params.end(), key) == fi->params.end())
                throw domain_error("family " + name + " has no parameter '" + key + "'");
            std::size_t used = 0;
            double v = 0.0;
            try {
                v = std::stod(val, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != val.size() || val.empty()) throw domain_error("bad number '" + val + "' for " + key);
            fam.params[key] = v;
            if (comma == std::string_view::npos) break;
            rest = rest.substr(comma + 1);
        }
    }
    for (const auto& p : fi->params)
        if (!fam.params.count(p)) throw domain_error("family " + name + " needs parameter '" + p + "'");
    return fam;
}

Distribution::Distribution(std::shared_ptr<const detail::Law> law) : law_(std::move(law)) {
    if (!law_) throw domain_error("Distribution: null law");
}

double Distribution::quantile(double u) const {
    if (!(u >= 0.0 && u <= 1.0)) throw domain_error("quantile: u must lie in [0, 1]");
    if (u == 0.0) return lower();
    if (u == 1.0) return upper();
    return law_->quantile(u);
}

bool Distribution::bounded() const { return std::isfinite(upper()); }

Distribution make(const Family& f) {
    switch (f.kind) {
    case FamilyKind::uniform:
        require(positive(f.param("a")), "uniform: a must be positive");
        return Distribution(std::make_shared<Uniform>(f.param("a")));
    case FamilyKind::frechet:
        require(positive(f.param("a")) && positive(f.param("b")), "frechet: a and b must be positive");
        return Distribution(std::make_shared<Frechet>(f.param("a"), f.param("b")));
    case FamilyKind::exponential:
        require(positive(f.param("lambda")), "exponential: lambda must be positive");
        return Distribution(std::make_shared<Exponential>(f.param("lambda")));
    case FamilyKind::pareto:
        require(positive(f.param("k")), "pareto: k must be positive");
        return Distribution(std::make_shared<Pareto>(f.param("k")));
    case FamilyKind::weibull:
        require(positive(f.param("scale")) && positive(f.param("shape")), "weibull: scale and shape must be positive");
        return Distribution(std::make_shared<Weibull>(f.param("scale"), f.param("shape")));
    case FamilyKind::log_uniform:
        require(positive(f.param("a")) && positive(f.param("b")) && f.param("a") < f.param("b"),
                "loguniform: need 0 < a < b");
        return Distribution(std::make_shared<LogUniform>(f.param("a"), f.param("b")));
    case FamilyKind::beta:
        require(positive(f.param("p")) && positive(f.param("q")), "beta: p and q must be positive");
        return Distribution(std::make_shared<Beta>(f.param("p"), f.param("q")));
    case FamilyKind::triangular_sum:
        return Distribution(std::make_shared<TriangularSum>());
    }
    throw domain_error("make: unknown family");
}

Distribution make(std::string_view family_text) { return make(parse_family(family_text)); }

Distribution affine(const Distribution& x, double a, double b) {
    require(positive(a), "affine: a must be positive");
    require(std::isfinite(b) && b >= 0.0, "affine: b must be non-negative");
    if (a == 1.0 && b == 0.0) return x;
    return Distribution(std::make_shared<Affine>(x, a, b));
}

Distribution prhr(const Distribution& x, double delta) {
    require(positive(delta), "prhr: delta must be positive");
    if (delta == 1.0) return x;
    return Distribution(std::make_shared<Prhr>(x, delta));
}

Distribution independent_sum(const Distribution& x, const Distribution& y) {
    if (!x.bounded() || !y.bounded()) throw unsupported("independent_sum: both supports must be bounded");
    if (!x.has_pdf() || !y.has_pdf()) throw unsupported("independent_sum: densities required");
    auto standard_uniform = [](const Distribution& d) {
        const auto f = d.family();
        return f && f->kind == FamilyKind::uniform && f->param("a") == 1.0;
    };
    if (standard_uniform(x) && standard_uniform(y)) return make(Family::triangular_sum());
    return Distribution(std::make_shared<Convolution>(x, y));
}

Distribution degenerate(double c) {
    require(std::isfinite(c) && c >= 0.0, "degenerate: c must be finite and non-negative");
    return Distribution(std::make_shared<Degenerate>(c));
}

} // namespace fracent
