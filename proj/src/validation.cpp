#include "boxwing/validation.hpp"

#include "boxwing/design_space.hpp"
#include "boxwing/doe.hpp"
#include "boxwing/empirical.hpp"
#include "boxwing/ingestion.hpp"
#include "boxwing/optimizer.hpp"
#include "boxwing/sensitivity.hpp"
#include "boxwing/surrogate.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <ostream>
#include <random>

namespace boxwing {

bool CheckResult::pass() const {
    if (lines.empty()) return false;
    for (const CheckLine& l : lines)
        if (!l.pass) return false;
    return true;
}

namespace {

std::string num(double v, const char* format = "%.6g") {
    char buf[64];
    std::snprintf(buf, sizeof buf, format, v);
    return buf;
}

CheckLine in_band(const std::string& name, double computed, double expected,
                  double rel_tol) {
    const double lo = expected - rel_tol * std::abs(expected);
    const double hi = expected + rel_tol * std::abs(expected);
    CheckLine l;
    l.name = name;
    l.pass = computed >= lo && computed <= hi;
    l.detail = "computed " + num(computed) + ", expected " + num(expected) + " +/- " +
               num(100.0 * rel_tol) + "% = [" + num(lo) + ", " + num(hi) + "]";
    return l;
}

CheckLine within(const std::string& name, double computed, double expected,
                 double abs_tol) {
    CheckLine l;
    l.name = name;
    l.pass = std::abs(computed - expected) <= abs_tol;
    l.detail = "computed " + num(computed) + ", expected " + num(expected) +
               " +/- " + num(abs_tol);
    return l;
}

// The two sizing problems this toolkit ships reference values for. The
// deflection bound is always a tenth of the semi-span.
SizingProblem reference_problem(const std::string& prefix, double stress_limit,
                                double defl_limit) {
    SizingProblem p;
    p.objective = load_builtin_model(prefix + ".mass");
    p.constraints.push_back(
        {"sigma_front", load_builtin_model(prefix + ".sigma_front"), stress_limit});
    p.constraints.push_back(
        {"sigma_rear", load_builtin_model(prefix + ".sigma_rear"), stress_limit});
    p.constraints.push_back(
        {"deflection", load_builtin_model(prefix + ".uz"), defl_limit});
    p.lower.assign(p.objective.labels.size(), -1.0);
    p.upper.assign(p.objective.labels.size(), 1.0);
    return p;
}

const std::vector<double> kStartLowerSix = {0, 0, 0, -1, -1, -1, -1, -1, -1};
const std::vector<double> kStartCenter = {0, 0, 0, 0, 0, 0, 0, 0, 0};

WingDescription front_wing() {
    WingDescription w;
    w.span_b_m = 35.0;
    w.area_S_m2 = 153.14;
    w.sweep_quarter_chord_deg = 38.1;
    w.taper_lambda = 0.29;
    w.thickness_to_chord = 0.11;
    w.load_factor_nz = 2.5;
    w.mtom_kg = 126414.0;
    w.dive_speed_VD_ms = 245.0;
    return w;
}

WingDescription rear_wing() {
    WingDescription w = front_wing();
    w.area_S_m2 = 127.5;
    w.sweep_quarter_chord_deg = -24.2;
    w.taper_lambda = 0.38;
    return w;
}

CheckResult check_design_accounting() {
    CheckResult c{"c1", "face-centred composite design row accounting", {}};
    const DesignMatrix d = ccf(builtin_space("prp300"), 8);
    c.lines.push_back({"total_rows", d.n_rows() == 538,
                       "computed " + std::to_string(d.n_rows()) + ", expected 538"});
    c.lines.push_back({"factorial_rows", d.count(Provenance::factorial) == 512,
                       "computed " + std::to_string(d.count(Provenance::factorial)) +
                           ", expected 512"});
    c.lines.push_back({"center_rows", d.count(Provenance::center) == 8,
                       "computed " + std::to_string(d.count(Provenance::center)) +
                           ", expected 8"});
    c.lines.push_back({"face_rows", d.count(Provenance::axial_face) == 18,
                       "computed " + std::to_string(d.count(Provenance::axial_face)) +
                           ", expected 18"});
    const DesignMatrix unique = deduplicate(d);
    c.lines.push_back({"distinct_rows", unique.n_rows() == 531,
                       "computed " + std::to_string(unique.n_rows()) +
                           ", expected 531"});
    return c;
}

CheckResult check_intercepts() {
    CheckResult c{"c2", "embedded model values at the design-space centroid", {}};
    const std::map<std::string, double> expected = {
        {"prp300.sigma_front", 269.438}, {"prp300.sigma_rear", 193.116},
        {"prp300.uz", 1525.664},         {"prp300.mass", 16514.7},
        {"prosib.sigma_front", 177.383}, {"prosib.sigma_rear", 161.686},
        {"prosib.uz", 500.339},          {"prosib.mass", 2158.0},
    };
    for (const std::string& id : builtin_model_ids()) {
        const PolynomialSurrogate m = load_builtin_model(id);
        const std::vector<double> zeros(m.labels.size(), 0.0);
        c.lines.push_back(within(id, m.evaluate(zeros), expected.at(id), 1e-9));
    }
    return c;
}

CheckResult check_effects() {
    CheckResult c{"c3", "front-stress main effects and Pareto ranking", {}};
    const PolynomialSurrogate model = load_builtin_model("prp300.sigma_front");
    const ResponseDataset data =
        evaluate_design(full_factorial(model.labels), {model});

    const std::vector<std::pair<std::string, double>> reference = {
        {"x1", 64.8}, {"x2", 102.6}, {"x4", 74.6},  {"x5", 11.4},  {"x6", 18.2},
        {"x8", 3.5},  {"x9", 13.9},  {"x13", 4.3},  {"x15", 5.7},
    };
    std::vector<std::pair<std::vector<std::string>, double>> effects;
    for (const auto& [label, published] : reference) {
        const double sigma = main_effect(data, model.response_name, label);
        effects.push_back({{label}, sigma});
        CheckLine l;
        l.name = "effect_" + label;
        l.pass = std::abs(sigma - published) <= 0.02 * published;
        l.detail = "computed " + num(sigma) + ", expected " + num(published) +
                   " +/- 2%";
        c.lines.push_back(l);
    }

    const EffectTable table = pareto(effects, model.response_name, 0.1);
    const std::vector<std::string> expected_order = {"x2", "x4",  "x1",  "x6", "x9",
                                                     "x5", "x15", "x13", "x8"};
    std::vector<std::string> computed_order;
    std::string order_text;
    for (const EffectEntry& e : table.entries) {
        computed_order.push_back(e.factor_labels.front());
        order_text += (order_text.empty() ? "" : ",") + e.factor_labels.front();
    }
    c.lines.push_back({"pareto_order", computed_order == expected_order,
                       "computed " + order_text + ", expected x2,x4,x1,x6,x9,x5,x15,x13,x8"});

    bool flags_ok = true;
    std::string flags_text;
    for (std::size_t i = 0; i < table.entries.size(); ++i) {
        const bool expected_flag = i < 6; // the six strongest factors
        flags_ok = flags_ok && table.entries[i].significant == expected_flag;
        flags_text += table.entries[i].significant ? '1' : '0';
    }
    c.lines.push_back({"significance_flags", flags_ok,
                       "computed " + flags_text + ", expected 111111000"});
    return c;
}

CheckResult check_fit_closure() {
    CheckResult c{"c4", "refit from oracle data recovers embedded coefficients", {}};
    for (const std::string& id : builtin_model_ids()) {
        const PolynomialSurrogate model = load_builtin_model(id);
        const DesignMatrix design = deduplicate(ccf(model.labels, 8));
        const ResponseDataset data = evaluate_design(design, {model});
        const PolynomialSurrogate refit =
            fit(data, model.response_name, basis_of(model), model.unit);

        double max_dev = std::abs(refit.intercept - model.intercept);
        for (std::size_t i = 0; i < model.terms.size(); ++i)
            max_dev = std::max(max_dev, std::abs(refit.terms[i].coefficient -
                                                 model.terms[i].coefficient));
        const double mean_res =
            refit.mean_residual ? std::abs(*refit.mean_residual) : 1.0;
        CheckLine l;
        l.name = id;
        l.pass = max_dev <= 1e-6 && mean_res <= 1e-9;
        l.detail = "max coefficient deviation " + num(max_dev, "%.3e") +
                   " (tol 1e-6), |mean residual| " + num(mean_res, "%.3e") +
                   " (tol 1e-9)";
        c.lines.push_back(l);
    }
    return c;
}

void append_constraint_lines(CheckResult& c, const SizingResult& res,
                             const std::string& name, double published,
                             double published_tol) {
    for (const ConstraintStatus& st : res.constraint_status) {
        if (st.name != name) continue;
        CheckLine l;
        l.name = name + "_margin";
        l.pass = st.value <= st.limit * (1.0 + 1e-6) && st.margin < 0.01;
        l.detail = "computed " + num(st.value) + " vs limit " + num(st.limit) +
                   ", margin " + num(100.0 * st.margin) + "% (must be < 1%)";
        c.lines.push_back(l);
        if (published_tol > 0.0)
            c.lines.push_back(
                within(name + "_published", st.value, published, published_tol));
    }
}

CheckResult check_sizing_sf12() {
    CheckResult c{"c5", "combined wing sizing, safety factor 1.2", {}};
    const DesignSpace space = builtin_space("prp300");
    const SizingProblem p =
        reference_problem("prp300", admissible_stress(345.0, 1.2),
                          deflection_limit(36000.0));
    const SizingResult res = solve(p, kStartLowerSix, {}, &space);

    c.lines.push_back({"converged_feasible", res.converged && res.feasible,
                       std::string("converged=") + (res.converged ? "yes" : "no") +
                           ", feasible=" + (res.feasible ? "yes" : "no") +
                           ", kkt residual " + num(res.kkt_residual, "%.2e")});
    c.lines.push_back(in_band("combined_mass", res.objective_value, 14992.0, 0.005));
    c.lines.push_back(
        within("t_sk_FB", res.physical_opt.at("t_sk_FB"), 10.3, 0.16));
    c.lines.push_back(
        within("t_sk_FT", res.physical_opt.at("t_sk_FT"), 8.3, 0.16));
    c.lines.push_back(within("t_st_F", res.physical_opt.at("t_st_F"), 5.7, 0.11));

    bool at_lower = true;
    std::string lower_text;
    for (const char* label : {"x5", "x6", "x8", "x9", "x13", "x15"}) {
        const double x = res.x_opt[p.objective.index_of(label)];
        at_lower = at_lower && std::abs(x + 1.0) <= 1e-6;
        lower_text += std::string(lower_text.empty() ? "" : ",") + label + "=" +
                      num(x, "%.4g");
    }
    c.lines.push_back({"six_variables_at_lower_bound", at_lower, lower_text});

    append_constraint_lines(c, res, "sigma_front", 285.0, 0.0);
    append_constraint_lines(c, res, "deflection", 1794.0, 5.0);
    return c;
}

CheckResult check_sizing_sf15() {
    CheckResult c{"c6", "combined wing sizing, safety factor 1.5", {}};
    const DesignSpace space = builtin_space("prp300");
    const SizingProblem p =
        reference_problem("prp300", admissible_stress(345.0, 1.5),
                          deflection_limit(36000.0));
    const SizingResult res = solve(p, kStartLowerSix, {}, &space);

    c.lines.push_back({"converged_feasible", res.converged && res.feasible,
                       std::string("converged=") + (res.converged ? "yes" : "no") +
                           ", feasible=" + (res.feasible ? "yes" : "no") +
                           ", kkt residual " + num(res.kkt_residual, "%.2e")});
    c.lines.push_back(in_band("combined_mass", res.objective_value, 15882.0, 0.005));
    c.lines.push_back(
        within("t_sk_FB", res.physical_opt.at("t_sk_FB"), 12.7, 0.16));
    c.lines.push_back(
        within("t_sk_FT", res.physical_opt.at("t_sk_FT"), 12.6, 0.16));
    return c;
}

CheckResult check_mass_report() {
    CheckResult c{"c7", "mass report against the reference configuration", {}};
    const DesignSpace space = builtin_space("prp300");
    const SizingProblem p =
        reference_problem("prp300", admissible_stress(345.0, 1.2),
                          deflection_limit(36000.0));
    const SizingResult res = solve(p, kStartLowerSix, {}, &space);
    const MassReport report =
        mass_report(res, {{"vertical_wing", 593.0}}, 17699.0);

    c.lines.push_back(in_band("box_wing_total", report.total, 15585.0, 0.005));
    CheckLine l;
    l.name = "saving_fraction";
    const double fraction = report.saving_fraction.value_or(0.0);
    l.pass = fraction >= 0.11 && fraction <= 0.13;
    l.detail = "computed " + num(100.0 * fraction) + "% (" + num(*report.saving) +
               " kg), expected about 12% in [11%, 13%]";
    c.lines.push_back(l);
    return c;
}

CheckResult check_sizing_nine_var() {
    CheckResult c{"c8", "nine-variable wing sizing at the 230 MPa limit", {}};
    const DesignSpace space = builtin_space("prosib40");
    const SizingProblem p = reference_problem(
        "prosib", admissible_stress(345.0, 1.5), deflection_limit(22100.0));
    const SizingResult res = solve(p, kStartCenter, {}, &space);

    c.lines.push_back({"converged_feasible", res.converged && res.feasible,
                       std::string("converged=") + (res.converged ? "yes" : "no") +
                           ", feasible=" + (res.feasible ? "yes" : "no") +
                           ", kkt residual " + num(res.kkt_residual, "%.2e")});
    CheckLine mass = in_band("combined_mass", res.objective_value, 1961.6, 0.01);
    {
        // Cross-check under a 600 mm deflection bound: the mass lands in band
        // but the rear stress detaches from its limit. The two reference
        // values are mutually exclusive under the shipped models.
        SizingProblem alt = p;
        alt.constraints[2].limit = 600.0;
        const SizingResult alt_res = solve(alt, kStartCenter, {}, &space);
        mass.detail += "; with a 600 mm deflection bound instead: mass " +
                       num(alt_res.objective_value) + ", rear stress " +
                       num(alt_res.constraint_status[1].value);
    }
    c.lines.push_back(mass);
    c.lines.push_back(
        within("sigma_front_at_limit", res.constraint_status[0].value, 230.0, 2.0));
    c.lines.push_back(
        within("sigma_rear_at_limit", res.constraint_status[1].value, 230.0, 2.0));
    return c;
}

CheckResult check_empirical() {
    CheckResult c{"c9", "Jemitola wing-mass formula reproduction", {}};
    const double front = jemitola_wing_mass(front_wing());
    const double rear = jemitola_wing_mass(rear_wing());
    c.lines.push_back(in_band("front_wing_mass", front, 8870.0, 0.02));
    c.lines.push_back(in_band("rear_wing_mass", rear, 7172.0, 0.02));

    WingDescription doubled = front_wing();
    doubled.load_factor_nz *= 2.0;
    const double ratio = jemitola_wing_mass(doubled) / front;
    c.lines.push_back(within("load_factor_scaling", ratio, std::pow(2.0, 0.27), 1e-10));
    return c;
}

CheckResult check_properties() {
    CheckResult c{"c10", "property suite: round trips, gradients, KKT, grid oracle,"
                         " curvature", {}};
    std::mt19937_64 engine(20210968);
    auto unit = [&] { return ((engine() >> 11) + 1.0) * 0x1.0p-53; };

    // Codify/decode round trip, including values outside the range.
    for (const char* id : {"prp300", "prosib40"}) {
        const DesignSpace space = builtin_space(id);
        double worst = 0.0;
        for (const DesignVariable& var : space.variables) {
            const double probes[] = {var.lower,
                                     var.upper,
                                     var.midpoint(),
                                     var.lower - 0.3 * var.step(),
                                     var.upper + 0.7 * var.step(),
                                     var.lower + unit() * (var.upper - var.lower),
                                     var.lower + unit() * (var.upper - var.lower)};
            for (double v : probes) {
                const double back = decode(codify(v, var), var);
                worst = std::max(worst,
                                 std::abs(back - v) / std::max(1.0, std::abs(v)));
            }
        }
        CheckLine l;
        l.name = std::string("codify_round_trip_") + id;
        l.pass = worst <= 1e-12;
        l.detail = "max relative deviation " + num(worst, "%.3e") + " (tol 1e-12)";
        c.lines.push_back(l);
    }

    // Analytic gradients against central finite differences.
    for (const std::string& id : builtin_model_ids()) {
        const PolynomialSurrogate model = load_builtin_model(id);
        const std::size_t n = model.labels.size();
        const double h = 1e-5;
        double worst = 0.0;
        for (int p = 0; p < 100; ++p) {
            std::vector<double> x(n);
            for (double& xi : x) xi = 2.0 * unit() - 1.0;
            const std::vector<double> g = model.gradient(x);
            for (std::size_t i = 0; i < n; ++i) {
                std::vector<double> xp = x, xm = x;
                xp[i] += h;
                xm[i] -= h;
                const double fd =
                    (model.evaluate(xp) - model.evaluate(xm)) / (2.0 * h);
                worst = std::max(worst, std::abs(g[i] - fd) /
                                            std::max(1.0, std::abs(g[i])));
            }
        }
        CheckLine l;
        l.name = "gradient_" + id;
        l.pass = worst <= 1e-5;
        l.detail = "max relative deviation " + num(worst, "%.3e") +
                   " over 100 points (tol 1e-5)";
        c.lines.push_back(l);
    }

    // KKT residuals at every converged reference optimum.
    struct Case {
        const char* name;
        SizingProblem problem;
        std::vector<double> x0;
    };
    std::vector<Case> cases;
    cases.push_back({"sf12", reference_problem("prp300", 287.5, 1800.0),
                     kStartLowerSix});
    cases.push_back({"sf15", reference_problem("prp300", 230.0, 1800.0),
                     kStartLowerSix});
    cases.push_back({"nine_var", reference_problem("prosib", 230.0, 1105.0),
                     kStartCenter});
    cases.push_back({"nine_var_600", reference_problem("prosib", 230.0, 600.0),
                     kStartCenter});
    for (const Case& k : cases) {
        const SizingResult res = solve(k.problem, k.x0);
        CheckLine l;
        l.name = std::string("kkt_") + k.name;
        l.pass = res.converged && res.kkt_residual <= 1e-5;
        l.detail = "kkt residual " + num(res.kkt_residual, "%.3e") +
                   " (tol 1e-5), converged=" + (res.converged ? "yes" : "no");
        c.lines.push_back(l);
    }

    // Two-variable problem against a brute-force grid oracle.
    {
        PolynomialSurrogate f;
        f.response_name = "mass_kg";
        f.unit = ResponseUnit::kg;
        f.labels = {"x1", "x2"};
        f.intercept = 50.0;
        f.terms = {{{{"x1", 1}}, 5.0},          {{{"x2", 1}}, 6.0},
                   {{{"x1", 2}}, 8.0},          {{{"x2", 2}}, 7.0},
                   {{{"x1", 1}, {"x2", 1}}, 3.0}};
        PolynomialSurrogate g;
        g.response_name = "sigma_F_MPa";
        g.unit = ResponseUnit::MPa;
        g.labels = f.labels;
        g.intercept = 30.0;
        g.terms = {{{{"x1", 1}}, -10.0}, {{{"x2", 1}}, -12.0}};
        SizingProblem p;
        p.objective = f;
        p.constraints.push_back({"sigma", g, 20.0});
        p.lower = {-1.0, -1.0};
        p.upper = {1.0, 1.0};

        double grid_best = std::numeric_limits<double>::infinity();
        const int steps = 2000;
        for (int i = 0; i <= steps; ++i) {
            for (int j = 0; j <= steps; ++j) {
                const std::vector<double> x = {-1.0 + 2.0 * i / steps,
                                               -1.0 + 2.0 * j / steps};
                if (g.evaluate(x) > 20.0) continue;
                grid_best = std::min(grid_best, f.evaluate(x));
            }
        }
        const SizingResult res = solve(p, {0.0, 0.0});
        CheckLine l;
        l.name = "two_variable_grid_oracle";
        l.pass = res.converged &&
                 std::abs(res.objective_value - grid_best) <=
                     1e-3 * std::abs(grid_best);
        l.detail = "solver " + num(res.objective_value, "%.8g") + " vs grid " +
                   num(grid_best, "%.8g") + " (tol 0.1%)";
        c.lines.push_back(l);
    }

    // Curvature contrast equals the summed pure-quadratic coefficients.
    {
        const PolynomialSurrogate model = load_builtin_model("prp300.sigma_front");
        const ResponseDataset data =
            evaluate_design(deduplicate(ccf(model.labels, 8)), {model});
        const CurvatureCheck cc = curvature_check(data, model.response_name);
        double quad_sum = 0.0;
        for (const Term& t : model.terms)
            if (t.factors.size() == 1 && t.factors[0].second == 2)
                quad_sum += t.coefficient;
        CheckLine l;
        l.name = "curvature_delta_identity";
        l.pass = std::abs(cc.delta - std::abs(quad_sum)) <= 1e-9 && cc.significant;
        l.detail = "delta " + num(cc.delta, "%.9g") + " vs quadratic sum " +
                   num(std::abs(quad_sum), "%.9g") + " (tol 1e-9), significant=" +
                   (cc.significant ? "yes" : "no");
        c.lines.push_back(l);
    }
    return c;
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return s;
}

} // namespace

std::vector<CheckResult> run_validation(const std::string& filter) {
    struct Entry {
        const char* id;
        const char* title;
        CheckResult (*build)();
    };
    // Titles duplicated here so filtering can happen before the (possibly
    // expensive) check runs.
    const Entry entries[] = {
        {"c1", "face-centred composite design row accounting", check_design_accounting},
        {"c2", "embedded model values at the design-space centroid", check_intercepts},
        {"c3", "front-stress main effects and Pareto ranking", check_effects},
        {"c4", "refit from oracle data recovers embedded coefficients", check_fit_closure},
        {"c5", "combined wing sizing, safety factor 1.2", check_sizing_sf12},
        {"c6", "combined wing sizing, safety factor 1.5", check_sizing_sf15},
        {"c7", "mass report against the reference configuration", check_mass_report},
        {"c8", "nine-variable wing sizing at the 230 MPa limit", check_sizing_nine_var},
        {"c9", "Jemitola wing-mass formula reproduction", check_empirical},
        {"c10", "property suite: round trips, gradients, KKT, grid oracle, curvature",
         check_properties},
    };
    const std::string needle = lower(filter);
    // An exact id match selects just that check ("c1" must not also pull in
    // "c10"); otherwise fall back to substring matching on id or title.
    bool exact = false;
    for (const Entry& e : entries)
        if (needle == e.id) exact = true;
    std::vector<CheckResult> results;
    for (const Entry& e : entries) {
        if (!needle.empty()) {
            if (exact) {
                if (needle != e.id) continue;
            } else if (lower(e.id).find(needle) == std::string::npos &&
                       lower(e.title).find(needle) == std::string::npos) {
                continue;
            }
        }
        results.push_back(e.build());
    }
    return results;
}

void print_validation_report(std::ostream& os, const std::vector<CheckResult>& results,
                             bool verbose) {
    std::size_t passed = 0;
    for (const CheckResult& r : results) {
        const bool ok = r.pass();
        if (ok) ++passed;
        os << (ok ? "[PASS] " : "[FAIL] ") << r.id << "  " << r.title << "\n";
        if (!ok || verbose)
            for (const CheckLine& l : r.lines)
                os << "    " << (l.pass ? "[pass] " : "[FAIL] ") << l.name << ": "
                   << l.detail << "\n";
    }
    os << passed << "/" << results.size() << " checks passed\n";
}

bool all_passed(const std::vector<CheckResult>& results) {
    for (const CheckResult& r : results)
        if (!r.pass()) return false;
    return !results.empty();
}

} // namespace boxwing
