#include "fracent/orders.hpp"

#include <algorithm>
#include <cmath>

#include "fracent/errors.hpp"

namespace fracent {

namespace {

constexpr double edge = 1e-4;
constexpr double margin_tol = 1e-10;

} // namespace

std::string to_string(Verdict v) {
    switch (v) {
    case Verdict::yes: return "yes";
    case Verdict::no: return "no";
    case Verdict::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

OrderReport dispersive_check(const Distribution& x, const Distribution& y, int grid) {
    if (grid < 2) throw domain_error("dispersive_check: grid must be >= 2");
    if (!x.has_pdf() || !y.has_pdf()) throw domain_error("dispersive_check: both laws need densities");
    OrderReport r;
    r.grid_size = grid;
    r.min_margin = INFINITY;
    bool defined = true;
    double at = 0.0;
    for (int i = 0; i < grid; ++i) {
        const double v = edge + (1.0 - 2.0 * edge) * i / (grid - 1);
        const double f = x.pdf(x.quantile(v)), g = y.pdf(y.quantile(v));
        if (!std::isfinite(f) || !std::isfinite(g)) {
            defined = false;
            continue;
        }
        const double top = std::max(f, g);
        const double d = top > 0.0 ? (f - g) / top : 0.0;
        if (d < r.min_margin) r.min_margin = d, at = v;
    }
    if (r.min_margin < -margin_tol) {
        r.holds = Verdict::no;
        r.witness = at;
    } else {
        r.holds = defined ? Verdict::yes : Verdict::inconclusive;
    }
    return r;
}

std::vector<OrderingRow> ordering_validation(const Distribution& x, const Distribution& y,
                                             const std::vector<double>& alphas, Measure measure,
                                             const QuadConfig& cfg) {
    if (measure != Measure::efcpe && measure != Measure::efcre && measure != Measure::paired)
        throw domain_error("ordering_validation: measure must be efcpe, efcre or paired");
    const auto rep = dispersive_check(x, y);
    if (rep.holds != Verdict::yes)
        throw domain_error("ordering_validation: X <=disp Y is not established (" + to_string(rep.holds) + ")");
    auto eval = [&](const Distribution& d, FracOrder a) {
        switch (measure) {
        case Measure::efcre: return efcre(d, a, LogMode::approx, cfg);
        case Measure::paired: return paired_phi_entropy(d, a, LogMode::approx, cfg);
        default: return efcpe(d, a, LogMode::approx, cfg);
        }
    };
    std::vector<OrderingRow> rows;
    for (double a : alphas) {
        const FracOrder al(a);
        OrderingRow row;
        row.alpha = a;
        row.x = eval(x, al);
        row.y = eval(y, al);
        row.compared = row.x.value && row.y.value;
        if (row.compared) row.holds = *row.x.value <= *row.y.value * (1.0 + 1e-9) + 1e-12;
        rows.push_back(row);
    }
    return rows;
}

} // namespace fracent
