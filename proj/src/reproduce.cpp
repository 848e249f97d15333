#include "fracent/reproduce.hpp"

#include <cmath>
#include <fstream>

#include "json.hpp"

#include "fracent/coherent.hpp"
#include "fracent/empirical.hpp"
#include "fracent/entropy.hpp"
#include "fracent/errors.hpp"
#include "fracent/multivariate.hpp"

namespace fracent {

using nlohmann::json;

namespace {

double num(const json& cell, const char* key) {
    if (!cell.contains(key)) throw domain_error(std::string("fixture cell lacks '") + key + "'");
    return cell.at(key).get<double>();
}

std::string str(const json& cell, const char* key) {
    if (!cell.contains(key)) throw domain_error(std::string("fixture cell lacks '") + key + "'");
    return cell.at(key).get<std::string>();
}

std::optional<double> value_of(const EntropyResult& r) { return r.value; }

std::optional<double> evaluate(const json& cell, const std::string& data_dir) {
    const auto q = str(cell, "quantity");
    auto alpha = [&] { return FracOrder(num(cell, "alpha")); };
    auto dist = [&] { return make(str(cell, "dist")); };
    auto n = [&] { return cell.at("n").get<int>(); };
    if (q == "efcpe") return value_of(efcpe(dist(), alpha()));
    if (q == "modified_efcpe") return value_of(modified_efcpe(dist(), alpha()));
    if (q == "efcpe_closed_form") return efcpe_closed_form(parse_family(str(cell, "dist")), alpha());
    if (q == "closed_form_gap")
        return efcpe(dist(), alpha()).get() - efcpe_closed_form(parse_family(str(cell, "dist")), alpha());
    if (q == "exp_mean") return exp_spacing_moments(n(), num(cell, "lambda"), alpha()).mean;
    if (q == "exp_var") return exp_spacing_moments(n(), num(cell, "lambda"), alpha()).variance;
    if (q == "unif_mean") return unif_spacing_moments(n(), alpha()).mean;
    if (q == "unif_var") return unif_spacing_moments(n(), alpha()).variance;
    if (q == "omega1") return omega_bounds(parse_distortion(str(cell, "system")), alpha()).omega1;
    if (q == "omega2") return omega_bounds(parse_distortion(str(cell, "system")), alpha()).omega2;
    if (q == "omega2_bound")
        return omega_bounds(parse_distortion(str(cell, "system")), alpha()).omega2 * efcpe(dist(), alpha()).get();
    if (q == "system_efcpe") return value_of(system_efcpe(parse_distortion(str(cell, "system")), dist(), alpha()));
    if (q == "parallel_closed_form") return parallel_uniform_closed_form(n(), alpha());
    if (q == "sandwich") return sandwich_check(parse_distortion(str(cell, "system")), dist(), alpha()).holds ? 1.0 : 0.0;
    if (q == "modified_bivariate_efcpe")
        return value_of(modified_bivariate_efcpe(parse_joint_law(str(cell, "law")), alpha()));
    if (q == "empirical_efcpe") return empirical_efcpe(load_sample_csv(data_dir + "/" + str(cell, "file")), alpha());
    if (q == "profile_argmin") {
        const auto s = load_sample_csv(data_dir + "/" + str(cell, "file"));
        double best = INFINITY, at = 0.0;
        for (int i = 1; i <= 20; ++i) {
            const double a = 0.05 * i;
            const double v = empirical_efcpe(s, FracOrder(a));
            if (v < best) best = v, at = a;
        }
        return at;
    }
    throw domain_error("unknown fixture quantity '" + q + "'");
}

bool meets(const json& cell, double v) {
    const auto how = cell.value("match", std::string("printed"));
    if (how == "true") return v == 1.0;
    if (how == "range") {
        const auto r = cell.at("range");
        return v > r.at(0).get<double>() && v < r.at(1).get<double>();
    }
    const auto p = parse_printed(str(cell, "printed"));
    if (how == "printed") return matches_printed(v, p);
    if (how == "sig_figs") return matches_sig_figs(v, p.value, cell.at("sig_figs").get<int>());
    if (how == "rel") return std::abs(v - p.value) <= num(cell, "rel_tol") * std::abs(p.value);
    if (how == "abs") return std::abs(v - p.value) <= num(cell, "abs_tol");
    throw domain_error("unknown match rule '" + how + "'");
}

CellOutcome judge(const json& cell, const std::string& data_dir) {
    CellOutcome c;
    c.id = str(cell, "id");
    c.quantity = str(cell, "quantity");
    c.printed = cell.value("printed", std::string());
    c.expected_discrepant = cell.value("expected_discrepant", false);
    const bool want_divergence = cell.value("match", std::string()) == "diverged";
    c.computed = evaluate(cell, data_dir);
    if (!c.computed) {
        c.status = "diverged";
        c.pass = want_divergence;
        if (!c.pass) c.note = "the integral diverges";
        return c;
    }
    if (want_divergence) {
        c.status = "converged";
        c.note = "expected the integral to diverge";
        return c;
    }
    const bool ok = meets(cell, *c.computed);
    if (!c.expected_discrepant) {
        c.status = ok ? "match" : "mismatch";
        c.pass = ok;
        return c;
    }
    if (ok) {
        c.status = "unexpected_match";
        c.note = "cell is marked discrepant but matches the printed value";
        return c;
    }
    if (cell.contains("derived")) {
        const double d = num(cell, "derived");
        if (std::abs(*c.computed - d) > num(cell, "derived_tol")) {
            c.status = "derived_mismatch";
            c.note = "differs from the derived value " + std::to_string(d);
            return c;
        }
    }
    c.status = "discrepant";
    c.pass = true;
    return c;
}

} // namespace

PrintedNumber parse_printed(const std::string& text) {
    const auto e = text.find_first_of("eE");
    const std::string mant = text.substr(0, e);
    const int exp10 = e == std::string::npos ? 0 : std::stoi(text.substr(e + 1));
    const auto dot = mant.find('.');
    const int decimals = dot == std::string::npos ? 0 : static_cast<int>(mant.size() - dot - 1);
    PrintedNumber p;
    std::size_t used = 0;
    p.value = std::stod(mant, &used) * std::pow(10.0, exp10);
    if (used != mant.size()) throw domain_error("bad printed number '" + text + "'");
    if (std::isinf(p.value) && e != std::string::npos) p.value = HUGE_VAL;
    p.unit = std::pow(10.0, exp10 - decimals);
    bool leading = true;
    for (char ch : mant) {
        if (ch < '0' || ch > '9') continue;
        if (leading && ch == '0') continue;
        leading = false;
        ++p.significant;
    }
    return p;
}

bool matches_printed(double v, const PrintedNumber& p) { return std::abs(v - p.value) < p.unit; }

bool matches_sig_figs(double v, double p, int figures) {
    if (p == 0.0) return v == 0.0;
    const double unit = std::pow(10.0, std::floor(std::log10(std::abs(p))) - (figures - 1));
    return std::abs(v - p) <= 0.5 * unit * (1.0 + 1e-9);
}

FixtureReport reproduce_fixture(const std::string& data_dir, const std::string& fixture) {
    const std::string path = data_dir + "/expectations/" + fixture + ".json";
    std::ifstream in(path);
    if (!in) throw domain_error("cannot open fixture " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw domain_error("malformed fixture " + path + ": " + e.what());
    }
    FixtureReport r;
    r.fixture = doc.value("fixture", fixture);
    r.title = doc.value("title", std::string());
    for (const auto& cell : doc.at("cells")) {
        r.cells.push_back(judge(cell, data_dir));
        (r.cells.back().pass ? r.passed : r.failed)++;
    }
    return r;
}

std::string fixture_for_table(const std::string& table) {
    if (table.size() == 1 && table[0] >= '1' && table[0] <= '6') return "table" + table;
    throw domain_error("no fixture for table '" + table + "' (1-6)");
}

std::string fixture_for_example(const std::string& example) {
    if (example == "2.1") return "example_2_1";
    if (example == "2.2") return "example_2_2";
    if (example == "2.4") return "table3";
    if (example == "4.3") return "example_4_3";
    throw domain_error("no fixture for example '" + example + "' (2.1, 2.2, 2.4, 4.3)");
}

std::string default_data_dir() { return FRACENT_DATA_DIR; }

} // namespace fracent
