#include "fracent/chaos.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fracent/errors.hpp"

namespace fracent {

namespace {

std::vector<double> ranks(const std::vector<double>& v) {
    std::vector<std::size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](auto i, auto j) { return v[i] < v[j]; });
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < idx.size();) {
        std::size_t j = i;
        while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
        const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) r[idx[k]] = avg;
        i = j + 1;
    }
    return r;
}

} // namespace

void LogisticConfig::validate() const {
    if (!(s >= 0.0 && s <= 4.0)) throw domain_error("logistic map: s must lie in [0, 4]");
    if (!(x0 >= 0.0 && x0 <= 1.0)) throw domain_error("logistic map: x0 must lie in [0, 1]");
    if (burn_in < 0) throw domain_error("logistic map: burn_in must be >= 0");
    if (length < 2) throw domain_error("logistic map: length must be >= 2");
}

std::vector<double> logistic_orbit(const LogisticConfig& cfg) {
    cfg.validate();
    double x = cfg.x0;
    auto step = [&] { x = std::clamp(cfg.s * x * (1.0 - x), 0.0, 1.0); };
    for (int i = 0; i < cfg.burn_in; ++i) step();
    std::vector<double> out;
    out.reserve(cfg.length);
    for (int i = 0; i < cfg.length; ++i) {
        step();
        out.push_back(x);
    }
    return out;
}

Sample logistic_series(const LogisticConfig& cfg) { return Sample(logistic_orbit(cfg)); }

std::vector<ChaosCell> efcpe_vs_s(const std::vector<double>& s_list, const std::vector<double>& alphas,
                                  const LogisticConfig& cfg) {
    std::vector<ChaosCell> out;
    for (double s : s_list) {
        LogisticConfig c = cfg;
        c.s = s;
        const Sample sample = logistic_series(c);
        for (double a : alphas) out.push_back({s, a, empirical_efcpe(sample, FracOrder(a))});
    }
    return out;
}

std::vector<BifurcationPoint> bifurcation_sweep(double s_min, double s_max, int steps, const LogisticConfig& cfg,
                                                int keep) {
    if (!(s_min >= 0.0 && s_min < s_max && s_max <= 4.0))
        throw domain_error("bifurcation_sweep: need 0 <= s_min < s_max <= 4");
    if (steps < 1 || keep < 1) throw domain_error("bifurcation_sweep: steps and keep must be >= 1");
    std::vector<BifurcationPoint> out;
    out.reserve(static_cast<std::size_t>(steps) * keep);
    for (int i = 0; i < steps; ++i) {
        LogisticConfig c = cfg;
        c.s = steps == 1 ? s_min : s_min + (s_max - s_min) * i / (steps - 1);
        c.length = std::max(keep, 2);
        const auto orbit = logistic_orbit(c);
        for (int j = c.length - keep; j < c.length; ++j) out.push_back({c.s, orbit[j]});
    }
    return out;
}

double spearman(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size() || a.size() < 2) throw domain_error("spearman: need two equal-length series, n >= 2");
    const auto ra = ranks(a), rb = ranks(b);
    const double m = 0.5 * (static_cast<double>(a.size()) + 1.0);
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sab += (ra[i] - m) * (rb[i] - m);
        saa += (ra[i] - m) * (ra[i] - m);
        sbb += (rb[i] - m) * (rb[i] - m);
    }
    if (saa == 0.0 || sbb == 0.0) throw domain_error("spearman: a series is constant");
    return sab / std::sqrt(saa * sbb);
}

} // namespace fracent
