#include "fracent/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "fracent/chaos.hpp"
#include "fracent/coherent.hpp"
#include "fracent/empirical.hpp"
#include "fracent/entropy.hpp"
#include "fracent/errors.hpp"
#include "fracent/multivariate.hpp"
#include "fracent/orders.hpp"
#include "fracent/reproduce.hpp"

namespace fracent::cli {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

class usage_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// a flat table plus document-level fields; serialised as JSON or CSV
struct Report {
    ordered_json meta = ordered_json::object();
    std::vector<std::string> columns;
    std::vector<std::vector<ordered_json>> rows;
    int status = ok;

    void add(std::vector<ordered_json> row) { rows.push_back(std::move(row)); }
};

ordered_json number(double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); }

ordered_json number(const std::optional<double>& v) { return v ? number(*v) : ordered_json(nullptr); }

std::string csv_cell(const ordered_json& v) {
    if (v.is_null()) return "";
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_float()) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.12g", v.get<double>());
        return buf;
    }
    if (v.is_number()) return v.dump();
    if (v.is_string()) {
        const auto s = v.get<std::string>();
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string q = "\"";
        for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
        return q + "\"";
    }
    return v.dump();
}

std::string render(const Report& r, const std::string& format) {
    if (format == "csv") {
        std::string s;
        for (std::size_t i = 0; i < r.columns.size(); ++i) s += (i ? "," : "") + r.columns[i];
        s += "\n";
        for (const auto& row : r.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) s += (i ? "," : "") + csv_cell(row[i]);
            s += "\n";
        }
        return s;
    }
    ordered_json doc = r.meta;
    ordered_json rows = ordered_json::array();
    for (const auto& row : r.rows) {
        ordered_json obj = ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i) obj[r.columns[i]] = row[i];
        rows.push_back(obj);
    }
    doc["rows"] = rows;
    return doc.dump(2) + "\n";
}

struct Common {
    std::vector<double> alpha, alphas;
    std::string mode = "approx";
    std::string format = "json";
    std::string out;
    double abs_tol = QuadConfig{}.abs_tol;
    double rel_tol = QuadConfig{}.rel_tol;
    int max_subdiv = QuadConfig{}.max_subdivisions;

    std::vector<double> alpha_list() const {
        std::vector<double> all = alpha;
        all.insert(all.end(), alphas.begin(), alphas.end());
        if (all.empty()) throw usage_error("give --alpha or --alphas");
        for (double a : all) FracOrder{a};
        return all;
    }
    QuadConfig quad() const {
        QuadConfig c;
        c.abs_tol = abs_tol;
        c.rel_tol = rel_tol;
        c.max_subdivisions = max_subdiv;
        c.validate();
        return c;
    }
    LogMode log_mode() const { return parse_log_mode(mode); }
};

void add_output(CLI::App* app, Common& c) {
    app->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    app->add_option("--out", c.out, "write to this file instead of standard output");
}

void add_alpha(CLI::App* app, Common& c) {
    app->add_option("--alpha", c.alpha, "fractional order in (0, 1]")->expected(1)->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    app->add_option("--alphas", c.alphas, "comma-separated orders")->delimiter(',');
}

void add_quad(CLI::App* app, Common& c) {
    app->add_option("--mode", c.mode, "approx or exact")->check(CLI::IsMember({"approx", "exact"}));
    app->add_option("--abs-tol", c.abs_tol, "absolute quadrature tolerance");
    app->add_option("--rel-tol", c.rel_tol, "relative quadrature tolerance");
    app->add_option("--max-subdiv", c.max_subdiv, "subdivision budget");
}

void entropy_columns(Report& r) {
    r.columns = {"alpha", "value", "diverged", "error_estimate", "subdivisions", "low_confidence", "tail_exponent"};
}

void entropy_row(Report& r, double alpha, const EntropyResult& e) {
    const auto& d = e.diagnostics;
    r.add({alpha, number(e.value), e.diverged(), number(d.error_estimate), d.subdivisions_used, d.low_confidence,
           number(d.tail_exponent)});
    if (e.diverged()) r.status = numeric_failure;
}

// ---- verbs ----

Report do_measure(const Common& c, const std::string& kind, const std::string& dist_text) {
    const auto x = make(dist_text);
    const auto mode = c.log_mode();
    const auto cfg = c.quad();
    Report r;
    r.meta["command"] = "measure";
    r.meta["kind"] = kind;
    r.meta["dist"] = x.label();
    r.meta["mode"] = to_string(mode);
    entropy_columns(r);
    for (double a : c.alpha_list()) {
        const FracOrder al(a);
        if (kind == "closed_form") {
            const auto fam = x.family();
            if (!fam) throw domain_error("closed_form needs a catalog law");
            EntropyResult e;
            e.value = efcpe_closed_form(*fam, al);
            entropy_row(r, a, e);
            continue;
        }
        EntropyResult e;
        if (kind == "efcpe") e = efcpe(x, al, mode, cfg);
        else if (kind == "modified_efcpe") e = modified_efcpe(x, al, mode, cfg);
        else if (kind == "efcre") e = efcre(x, al, mode, cfg);
        else if (kind == "paired") e = paired_phi_entropy(x, al, mode, cfg);
        else if (kind == "classic_residual") e = classic_fractional(x, a, false, cfg);
        else if (kind == "classic_past") e = classic_fractional(x, a, true, cfg);
        else throw usage_error("unknown --kind '" + kind + "'");
        entropy_row(r, a, e);
    }
    return r;
}

Report do_dynamic(const Common& c, const std::string& kind, const std::string& dist_text, double t) {
    const auto x = make(dist_text);
    const auto mode = c.log_mode();
    const auto cfg = c.quad();
    Report r;
    r.meta["command"] = "dynamic";
    r.meta["kind"] = kind;
    r.meta["dist"] = x.label();
    r.meta["t"] = t;
    r.meta["mode"] = to_string(mode);
    if (kind == "mean_inactivity_time") {
        r.columns = {"t", "value"};
        r.add({t, number(mean_inactivity_time(x, t, cfg))});
        return r;
    }
    if (kind == "decomposition") {
        r.columns = {"alpha", "integral_term", "boundary_term", "value"};
        for (double a : c.alpha_list()) {
            const auto parts = dynamic_decomposition(x, FracOrder(a), t, cfg);
            r.add({a, number(parts.integral_term), number(parts.boundary_term),
                   number(dynamic_efcpe(x, FracOrder(a), t, LogMode::approx, cfg).value)});
        }
        return r;
    }
    if (kind == "tau" || kind == "w") {
        r.columns = {"alpha", "value"};
        for (double a : c.alpha_list())
            r.add({a, number(kind == "tau" ? tau_alpha(x, FracOrder(a), t, mode, cfg)
                                           : W_alpha(x, FracOrder(a), t, mode, cfg))});
        return r;
    }
    entropy_columns(r);
    for (double a : c.alpha_list()) {
        if (kind == "dynamic_efcpe") entropy_row(r, a, dynamic_efcpe(x, FracOrder(a), t, mode, cfg));
        else if (kind == "dynamic_efcre") entropy_row(r, a, dynamic_efcre(x, FracOrder(a), t, mode, cfg));
        else throw usage_error("unknown --kind '" + kind + "'");
    }
    return r;
}

Report do_empirical(const Common& c, const std::string& file, const std::string& draw_law, int n,
                    std::uint64_t seed, const std::string& moments, double lambda) {
    Report r;
    r.meta["command"] = "empirical";
    if (!moments.empty()) {
        if (moments != "exp" && moments != "unif") throw usage_error("--moments takes exp or unif");
        if (n < 2) throw usage_error("--moments needs --n >= 2");
        r.meta["moments"] = moments;
        r.meta["n"] = n;
        if (moments == "exp") r.meta["lambda"] = lambda;
        r.columns = {"alpha", "mean", "variance"};
        for (double a : c.alpha_list()) {
            const auto m = moments == "exp" ? exp_spacing_moments(n, lambda, FracOrder(a))
                                            : unif_spacing_moments(n, FracOrder(a));
            r.add({a, number(m.mean), number(m.variance)});
        }
        return r;
    }
    if (file.empty() == draw_law.empty()) throw usage_error("give exactly one of --file and --draw");
    std::optional<Sample> s;
    if (!file.empty()) {
        s.emplace(load_sample_csv(file));
        r.meta["file"] = file;
    } else {
        if (n < 2) throw usage_error("--draw needs --n >= 2");
        const auto x = make(draw_law);
        s.emplace(draw(x, static_cast<std::size_t>(n), seed));
        r.meta["draw"] = x.label();
        r.meta["seed"] = seed;
    }
    r.meta["n"] = s->size();
    r.columns = {"alpha", "value"};
    for (double a : c.alpha_list()) r.add({a, number(empirical_efcpe(*s, FracOrder(a)))});
    return r;
}

Report do_bivariate(const Common& c, const std::string& kind, const std::string& law_text,
                    const std::optional<double>& at_x) {
    const auto j = parse_joint_law(law_text);
    auto cfg = c.quad();
    const auto planar = planar_config();
    // the planar defaults apply unless tolerances were given
    if (cfg.abs_tol == QuadConfig{}.abs_tol && cfg.rel_tol == QuadConfig{}.rel_tol) {
        cfg.abs_tol = planar.abs_tol;
        cfg.rel_tol = planar.rel_tol;
    }
    Report r;
    r.meta["command"] = "bivariate";
    r.meta["kind"] = kind;
    r.meta["law"] = j.label();
    if (kind == "decomposition") {
        r.columns = {"alpha", "lhs", "rhs", "weighted_x", "conditional", "weighted_conditional"};
        for (double a : c.alpha_list()) {
            const auto d = decomposition_theorem_check(j, FracOrder(a), cfg);
            r.add({a, number(d.lhs), number(d.rhs), number(d.weighted_x), number(d.conditional),
                   number(d.weighted_conditional)});
        }
        return r;
    }
    if (kind == "fcpmi") {
        r.columns = {"alpha", "value"};
        for (double a : c.alpha_list()) r.add({a, number(fcpmi(j, FracOrder(a), cfg))});
        return r;
    }
    entropy_columns(r);
    for (double a : c.alpha_list()) {
        if (kind == "bivariate_efcpe") entropy_row(r, a, bivariate_efcpe(j, FracOrder(a), cfg));
        else if (kind == "modified_bivariate_efcpe") entropy_row(r, a, modified_bivariate_efcpe(j, FracOrder(a), cfg));
        else if (kind == "conditional_efcpe") {
            if (!at_x) throw usage_error("conditional_efcpe needs --x");
            r.meta["x"] = *at_x;
            entropy_row(r, a, conditional_efcpe(j, FracOrder(a), *at_x, c.quad()));
        } else
            throw usage_error("unknown --kind '" + kind + "'");
    }
    return r;
}

Report do_coherent(const Common& c, const std::string& system, const std::string& dist_text,
                   const std::string& compare_with, std::optional<double> sup_density,
                   std::optional<double> inf_density) {
    const auto q = parse_distortion(system);
    const auto x = make(dist_text);
    const auto cfg = c.quad();
    Report r;
    r.meta["command"] = "coherent";
    r.meta["system"] = q.label();
    r.meta["dist"] = x.label();
    if (!compare_with.empty()) {
        const auto q2 = parse_distortion(compare_with);
        r.meta["compare"] = q2.label();
        r.columns = {"alpha", "ratio_inf", "ratio_sup", "first", "second", "holds"};
        for (double a : c.alpha_list()) {
            const auto s = compare_systems(q, q2, x, FracOrder(a), cfg);
            r.add({a, number(s.ratio_inf), number(s.ratio_sup), number(s.first), number(s.second), s.holds});
        }
        return r;
    }
    const bool uniform01 = x.family() && x.family()->to_string() == Family::uniform(1.0).to_string();
    r.columns = {"alpha", "omega1", "omega2", "component", "lower", "upper", "system", "closed_form",
                 "sandwich", "density_lower", "density_upper", "grid_points"};
    for (double a : c.alpha_list()) {
        const FracOrder al(a);
        const auto s = sandwich_check(q, x, al, cfg);
        std::optional<double> closed;
        if (uniform01 && q.kind() == DistortionKind::parallel) closed = parallel_uniform_closed_form(q.components(), al);
        std::optional<double> dl, du;
        if (sup_density || inf_density) {
            const auto b = density_bounds(q, al, sup_density, inf_density, cfg);
            dl = b.lower;
            du = b.upper;
        }
        r.add({a, number(s.omega.omega1), number(s.omega.omega2), number(s.component), number(s.lower),
               number(s.upper), number(s.value), number(closed), s.holds, number(dl), number(du),
               s.omega.grid_points});
    }
    return r;
}

Report do_orders(const Common& c, const std::string& xs, const std::string& ys, int grid, const std::string& kind) {
    const auto x = make(xs), y = make(ys);
    const auto rep = dispersive_check(x, y, grid);
    Report r;
    r.meta["command"] = "orders";
    r.meta["x"] = x.label();
    r.meta["y"] = y.label();
    r.meta["kind"] = kind;
    ordered_json d;
    d["holds"] = to_string(rep.holds);
    d["witness"] = number(rep.witness);
    d["grid_size"] = rep.grid_size;
    d["min_margin"] = number(rep.min_margin);
    r.meta["dispersive"] = d;
    r.columns = {"alpha", "x_value", "x_diverged", "y_value", "y_diverged", "compared", "holds"};
    if (rep.holds != Verdict::yes) return r;
    const auto m = parse_measure(kind);
    for (const auto& row : ordering_validation(x, y, c.alpha_list(), m, c.quad()))
        r.add({row.alpha, number(row.x.value), row.x.diverged(), number(row.y.value), row.y.diverged(), row.compared,
               row.compared ? ordered_json(row.holds) : ordered_json(nullptr)});
    return r;
}

Report do_chaos(const Common& c, const std::string& sweep, const std::vector<double>& s_list, LogisticConfig cfg,
                double s_min, double s_max, int steps, int keep) {
    Report r;
    r.meta["command"] = "chaos";
    r.meta["sweep"] = sweep;
    r.meta["x0"] = cfg.x0;
    r.meta["burn_in"] = cfg.burn_in;
    if (sweep == "bifurcation") {
        r.meta["keep"] = keep;
        r.columns = {"s", "value"};
        for (const auto& p : bifurcation_sweep(s_min, s_max, steps, cfg, keep)) r.add({p.s, p.value});
        return r;
    }
    if (sweep != "efcpe") throw usage_error("--sweep takes efcpe or bifurcation");
    if (s_list.empty()) throw usage_error("efcpe sweep needs --s");
    r.meta["length"] = cfg.length;
    r.columns = {"s", "alpha", "value"};
    for (const auto& cell : efcpe_vs_s(s_list, c.alpha_list(), cfg)) r.add({cell.s, cell.alpha, cell.value});
    return r;
}

Report do_reproduce(const std::string& table, const std::string& example, const std::string& data_dir) {
    if (table.empty() == example.empty()) throw usage_error("give exactly one of --table and --example");
    const auto name = table.empty() ? fixture_for_example(example) : fixture_for_table(table);
    const auto rep = reproduce_fixture(data_dir, name);
    Report r;
    r.meta["command"] = "reproduce";
    r.meta["fixture"] = rep.fixture;
    r.meta["title"] = rep.title;
    r.meta["passed"] = rep.passed;
    r.meta["failed"] = rep.failed;
    r.columns = {"id", "quantity", "computed", "printed", "status", "expected_discrepant", "pass", "note"};
    for (const auto& cell : rep.cells)
        r.add({cell.id, cell.quantity, number(cell.computed), cell.printed, cell.status, cell.expected_discrepant,
               cell.pass, cell.note});
    if (rep.failed > 0) r.status = numeric_failure;
    return r;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Fractional cumulative entropy toolkit", "fracent"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "expand all subcommand help");

    Common c;
    std::function<Report()> action;

    // measure
    std::string kind = "efcpe", dist;
    auto* measure = app.add_subcommand("measure", "univariate measures of a catalog law");
    measure->add_option("--kind", kind, "efcpe, modified_efcpe, efcre, paired, classic_residual, classic_past, closed_form");
    measure->add_option("--dist", dist, "catalog law, e.g. uniform:a=1")->required();
    add_alpha(measure, c);
    add_quad(measure, c);
    add_output(measure, c);
    measure->callback([&] { action = [&] { return do_measure(c, kind, dist); }; });

    // dynamic
    double t = 0.0;
    std::string dyn_kind = "dynamic_efcpe";
    auto* dynamic = app.add_subcommand("dynamic", "past and residual lifetime measures at time t");
    dynamic->add_option("--kind", dyn_kind, "dynamic_efcpe, dynamic_efcre, mean_inactivity_time, tau, w, decomposition");
    dynamic->add_option("--dist", dist, "catalog law")->required();
    dynamic->add_option("--t", t, "time point")->required();
    add_alpha(dynamic, c);
    add_quad(dynamic, c);
    add_output(dynamic, c);
    dynamic->callback([&] { action = [&] { return do_dynamic(c, dyn_kind, dist, t); }; });

    // empirical
    std::string file, draw_law, moments;
    int n = 0;
    std::uint64_t seed = 1;
    double lambda = 1.0;
    auto* empirical = app.add_subcommand("empirical", "spacing estimator from data, draws, or its moments");
    empirical->add_option("--file", file, "CSV with one numeric column");
    empirical->add_option("--draw", draw_law, "catalog law to sample from");
    empirical->add_option("--n", n, "sample size for --draw or --moments");
    empirical->add_option("--seed", seed, "seed for --draw");
    empirical->add_option("--moments", moments, "exp or unif: exact estimator moments");
    empirical->add_option("--lambda", lambda, "rate for --moments exp");
    add_alpha(empirical, c);
    add_output(empirical, c);
    empirical->callback([&] { action = [&] { return do_empirical(c, file, draw_law, n, seed, moments, lambda); }; });

    // bivariate
    std::string biv_kind = "bivariate_efcpe", law;
    std::optional<double> at_x;
    auto* bivariate = app.add_subcommand("bivariate", "joint-law measures");
    bivariate->add_option("--kind", biv_kind,
                          "bivariate_efcpe, modified_bivariate_efcpe, fcpmi, conditional_efcpe, decomposition");
    bivariate->add_option("--law", law, "triangle, indep(famX,famY), fgm:theta=t, fgm(t,famX,famY)")->required();
    bivariate->add_option("--x", at_x, "conditioning value for conditional_efcpe");
    add_alpha(bivariate, c);
    add_quad(bivariate, c);
    add_output(bivariate, c);
    bivariate->callback([&] { action = [&] { return do_bivariate(c, biv_kind, law, at_x); }; });

    // coherent
    std::string system, compare_with;
    std::optional<double> sup_density, inf_density;
    auto* coherent = app.add_subcommand("coherent", "system EFCPE and its bounds");
    coherent->add_option("--system", system, "parallel:n, series:n, kofn:k,n, 2of4, identity")->required();
    coherent->add_option("--dist", dist, "component law")->required();
    coherent->add_option("--compare", compare_with, "second system for the two-system bound");
    coherent->add_option("--sup-density", sup_density, "M >= sup f, for the density lower bound");
    coherent->add_option("--inf-density", inf_density, "L <= inf f, for the density upper bound");
    add_alpha(coherent, c);
    add_quad(coherent, c);
    add_output(coherent, c);
    coherent->callback([&] {
        action = [&] { return do_coherent(c, system, dist, compare_with, sup_density, inf_density); };
    });

    // orders
    std::string xs, ys, ord_kind = "efcpe";
    int grid = 4096;
    auto* orders = app.add_subcommand("orders", "dispersive order and the implied entropy ordering");
    orders->add_option("--x", xs, "law expected to be less dispersed")->required();
    orders->add_option("--y", ys, "law expected to be more dispersed")->required();
    orders->add_option("--grid", grid, "grid size for the dispersive check");
    orders->add_option("--kind", ord_kind, "efcpe, efcre or paired");
    add_alpha(orders, c);
    add_quad(orders, c);
    add_output(orders, c);
    orders->callback([&] { action = [&] { return do_orders(c, xs, ys, grid, ord_kind); }; });

    // chaos
    std::string sweep = "efcpe";
    std::vector<double> s_list;
    LogisticConfig lcfg;
    double s_min = 2.5, s_max = 4.0;
    int steps = 301, keep = 100;
    auto* chaos = app.add_subcommand("chaos", "logistic-map sweeps");
    chaos->add_option("--sweep", sweep, "efcpe or bifurcation");
    chaos->add_option("--s", s_list, "control parameters for the efcpe sweep")->delimiter(',');
    chaos->add_option("--x0", lcfg.x0, "initial value");
    chaos->add_option("--burn-in", lcfg.burn_in, "discarded iterates");
    chaos->add_option("--length", lcfg.length, "retained iterates");
    chaos->add_option("--s-min", s_min, "bifurcation range start");
    chaos->add_option("--s-max", s_max, "bifurcation range end");
    chaos->add_option("--steps", steps, "bifurcation steps");
    chaos->add_option("--keep", keep, "iterates kept per s");
    add_alpha(chaos, c);
    add_output(chaos, c);
    chaos->callback([&] { action = [&] { return do_chaos(c, sweep, s_list, lcfg, s_min, s_max, steps, keep); }; });

    // reproduce
    std::string table, example, data_dir = default_data_dir();
    auto* reproduce = app.add_subcommand("reproduce", "regenerate a printed table or worked example against stored expectations");
    reproduce->add_option("--table", table, "1-6");
    reproduce->add_option("--example", example, "2.1, 2.2, 2.4, 4.3");
    reproduce->add_option("--data-dir", data_dir, "directory holding expectations/");
    add_output(reproduce, c);
    reproduce->callback([&] { action = [&] { return do_reproduce(table, example, data_dir); }; });

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        const auto subs = app.get_subcommands();
        err << (subs.empty() ? app.help() : subs.front()->help());
        return user_error;
    }

    try {
        const Report r = action();
        const std::string text = render(r, c.format);
        if (c.out.empty()) {
            out << text;
        } else {
            std::ofstream f(c.out, std::ios::binary);
            if (!f) throw usage_error("cannot write '" + c.out + "'");
            f << text;
        }
        if (r.status == numeric_failure) err << "error: a measure diverged or a check failed; see the report\n";
        return r.status;
    } catch (const usage_error& e) {
        err << "error: " << e.what() << "\n";
        return user_error;
    } catch (const fracent::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return user_error;
    } catch (const unsupported& e) {
        err << "error: " << e.what() << "\n";
        return user_error;
    } catch (const diverged_error& e) {
        err << "error: " << e.what() << "\n";
        return numeric_failure;
    } catch (const non_convergent& e) {
        err << "error: " << e.what() << "\n";
        return numeric_failure;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return numeric_failure;
    }
}

} // namespace fracent::cli
