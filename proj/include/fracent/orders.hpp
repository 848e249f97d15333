#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fracent/distributions.hpp"
#include "fracent/entropy.hpp"

namespace fracent {

enum class Verdict { yes, no, inconclusive };

std::string to_string(Verdict v);

struct OrderReport {
    Verdict holds = Verdict::inconclusive;
    // a v where f(F^-1 v) < g(G^-1 v); always set for a No
    std::optional<double> witness;
    int grid_size = 0;
    // smallest (f(F^-1 v) - g(G^-1 v)) / max(f, g) on the grid
    double min_margin = 0.0;
};

// X <=disp Y on v in (1e-4, 1 - 1e-4)
OrderReport dispersive_check(const Distribution& x, const Distribution& y, int grid = 4096);

struct OrderingRow {
    double alpha = 0.0;
    EntropyResult x, y;
    // false when either side diverged
    bool compared = false;
    bool holds = false;
};

// measure(X) <= measure(Y) per alpha; measure is efcpe, efcre or paired.
// throws domain_error unless dispersive_check says Yes
std::vector<OrderingRow> ordering_validation(const Distribution& x, const Distribution& y,
                                             const std::vector<double>& alphas, Measure measure = Measure::efcpe,
                                             const QuadConfig& cfg = {});

} // namespace fracent
