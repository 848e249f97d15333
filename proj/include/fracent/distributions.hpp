#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

namespace fracent {

enum class FamilyKind { uniform, frechet, exponential, pareto, weibull, log_uniform, beta, triangular_sum };

// a catalog law with named parameters, e.g. frechet:a=1,b=1
struct Family {
    FamilyKind kind = FamilyKind::uniform;
    std::map<std::string, double> params;

    static Family uniform(double a);
    static Family frechet(double a, double b);
    static Family exponential(double lambda);
    static Family pareto(double k);
    static Family weibull(double scale, double shape);
    static Family log_uniform(double a, double b);
    static Family beta(double p, double q);
    static Family triangular_sum();

    double param(const std::string& name) const;
    std::string name() const;
    // canonical text form, parseable by parse_family
    std::string to_string() const;
};

Family parse_family(std::string_view text);

namespace detail {

class Law {
public:
    virtual ~Law() = default;
    virtual double cdf(double x) const = 0;
    virtual double survival(double x) const { return 1.0 - cdf(x); }
    virtual double pdf(double x) const = 0;
    virtual bool has_pdf() const { return true; }
    virtual double quantile(double u) const;
    virtual double lower() const = 0;
    virtual double upper() const = 0;
    virtual double mean() const;
    virtual double neg_log_cdf(double x) const;
    virtual double neg_log_survival(double x) const;
    virtual std::string label() const = 0;
    virtual std::optional<Family> family() const { return std::nullopt; }
};

} // namespace detail

// immutable univariate law; cheap to copy
class Distribution {
public:
    explicit Distribution(std::shared_ptr<const detail::Law> law);

    double cdf(double x) const { return law_->cdf(x); }
    double survival(double x) const { return law_->survival(x); }
    double pdf(double x) const { return law_->pdf(x); }
    bool has_pdf() const { return law_->has_pdf(); }
    double quantile(double u) const;
    double lower() const { return law_->lower(); }
    double upper() const { return law_->upper(); }
    bool bounded() const;
    // +inf when the mean does not exist
    double mean() const { return law_->mean(); }
    // -log F(x) and -log S(x), both accurate where the other tail is small
    double neg_log_cdf(double x) const { return law_->neg_log_cdf(x); }
    double neg_log_survival(double x) const { return law_->neg_log_survival(x); }
    std::string label() const { return law_->label(); }
    std::optional<Family> family() const { return law_->family(); }

private:
    std::shared_ptr<const detail::Law> law_;
};

Distribution make(const Family& family);
Distribution make(std::string_view family_text);

// law of a X + b
Distribution affine(const Distribution& x, double a, double b);
// proportional reversed hazard: F^delta
Distribution prhr(const Distribution& x, double delta);
// X + Y for independent bounded laws with densities
Distribution independent_sum(const Distribution& x, const Distribution& y);
// point mass at c
Distribution degenerate(double c);

} // namespace fracent
