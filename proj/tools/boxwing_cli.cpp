#include "boxwing/csv.hpp"
#include "boxwing/design_space.hpp"
#include "boxwing/doe.hpp"
#include "boxwing/empirical.hpp"
#include "boxwing/errors.hpp"
#include "boxwing/ingestion.hpp"
#include "boxwing/optimizer.hpp"
#include "boxwing/sensitivity.hpp"
#include "boxwing/surrogate.hpp"
#include "boxwing/validation.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace boxwing;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitChecksFailed = 1;
constexpr int kExitInputError = 2;
constexpr int kExitNumericalError = 3;

struct GlobalOptions {
    std::string space;
    std::string out;
    std::uint64_t seed = 0;
    bool force = false;
    bool verbose = false;
};

std::string require_out(const GlobalOptions& g, const char* what) {
    if (g.out.empty())
        throw InputError(std::string("--out is required to write the ") + what);
    return g.out;
}

void write_text(const std::string& path, const std::string& text, bool force) {
    if (!force && std::filesystem::exists(path))
        throw InputError("refusing to overwrite '" + path + "' (pass --force)");
    std::ofstream out(path);
    if (!out) throw InputError("cannot write '" + path + "'");
    out << text;
}

std::string num(double v, const char* format = "%.6g") {
    char buf[64];
    std::snprintf(buf, sizeof buf, format, v);
    return buf;
}

// ---- gen-design ------------------------------------------------------

struct GenDesignArgs {
    std::string kind = "ccf";
    std::size_t replicates = 1;
    bool dedup = false;
};

int cmd_gen_design(const GlobalOptions& g, const GenDesignArgs& a) {
    if (g.space.empty())
        throw InputError("--space is required (builtin id or JSON file)");
    const DesignSpace space = load_space(g.space);

    DesignMatrix design;
    if (a.kind == "factorial") {
        design = full_factorial(space);
    } else if (a.kind == "ccf") {
        if (a.replicates < 1)
            throw InputError("--replicates must be at least 1");
        design = ccf(space, a.replicates);
    } else {
        throw InputError("--kind must be 'factorial' or 'ccf', not '" + a.kind + "'");
    }
    if (a.dedup) design = deduplicate(design);

    const std::string path = require_out(g, "design CSV");
    write_design_csv(design, path, /*with_provenance=*/true, g.force);
    std::cout << "wrote " << path << ": " << design.n_rows() << " rows ("
              << design.count(Provenance::factorial) << " factorial, "
              << design.count(Provenance::center) << " center, "
              << design.count(Provenance::axial_face) << " face)\n";
    return kExitOk;
}

// ---- evaluate --------------------------------------------------------

struct EvaluateArgs {
    std::string design_path;
    std::vector<std::string> models;
    std::string join_path;
    std::vector<std::string> noise;
};

int cmd_evaluate(const GlobalOptions& g, const EvaluateArgs& a) {
    const DesignMatrix design = read_design_csv(a.design_path);
    if (a.models.empty() == a.join_path.empty())
        throw InputError("give exactly one of --models or --join");

    ResponseDataset dataset;
    if (!a.models.empty()) {
        std::vector<PolynomialSurrogate> models;
        for (const std::string& ref : a.models) models.push_back(load_model(ref));
        NoiseSpec noise;
        noise.seed = g.seed;
        for (const std::string& spec : a.noise) {
            const std::size_t eq = spec.find('=');
            if (eq == std::string::npos || eq == 0)
                throw InputError("--noise expects response=sigma, got '" + spec + "'");
            char* end = nullptr;
            const double sigma = std::strtod(spec.c_str() + eq + 1, &end);
            if (end == spec.c_str() + eq + 1 || *end != '\0')
                throw InputError("--noise expects response=sigma, got '" + spec + "'");
            noise.sigma_by_response[spec.substr(0, eq)] = sigma;
        }
        dataset = evaluate_design(design, models,
                                  noise.sigma_by_response.empty() ? nullptr : &noise);
    } else {
        dataset = join_external(design, a.join_path);
    }

    const std::string path = require_out(g, "dataset CSV");
    write_dataset_csv(dataset, path, g.force);
    std::cout << "wrote " << path << ": " << dataset.design.n_rows() << " rows, "
              << dataset.responses.size() << " response column"
              << (dataset.responses.size() == 1 ? "" : "s") << " (";
    bool first = true;
    for (const auto& [name, values] : dataset.responses) {
        std::cout << (first ? "" : ", ") << name;
        first = false;
    }
    std::cout << ")\n";
    return kExitOk;
}

// ---- fit -------------------------------------------------------------

struct FitArgs {
    std::string data_path;
    std::string response;
    std::string basis = "quadratic";
    std::string from_model;
    std::string unit = "kg";
    std::string qq_path;
    bool curvature = false;
};

int cmd_fit(const GlobalOptions& g, const FitArgs& a) {
    const ResponseDataset dataset = read_dataset_csv(a.data_path);

    std::vector<Term> basis;
    ResponseUnit unit = response_unit_from_string(a.unit);
    if (!a.from_model.empty()) {
        const PolynomialSurrogate reference = load_model(a.from_model);
        basis = basis_of(reference);
        unit = reference.unit;
    } else if (a.basis == "linear") {
        basis = linear_basis(dataset.design.labels);
    } else if (a.basis == "interactions") {
        basis = two_factor_basis(dataset.design.labels);
    } else if (a.basis == "quadratic") {
        basis = quadratic_basis(dataset.design.labels);
    } else {
        throw InputError("--basis must be linear, interactions or quadratic "
                         "(or use --from-model), not '" + a.basis + "'");
    }

    const PolynomialSurrogate model = fit(dataset, a.response, basis, unit);
    const std::string path = require_out(g, "model JSON");
    write_model_file(model, path, g.force);

    std::cout << "wrote " << path << ": " << a.response << " over "
              << model.labels.size() << " variables, " << (model.terms.size() + 1)
              << " coefficients";
    if (model.residual_std)
        std::cout << ", residual std " << num(*model.residual_std, "%.4g");
    if (model.mean_residual)
        std::cout << ", mean residual " << num(*model.mean_residual, "%.3e");
    std::cout << "\n";
    if (g.verbose) {
        std::cout << "  intercept " << num(model.intercept, "%.8g") << "\n";
        for (const Term& t : model.terms)
            std::cout << "  " << t.key() << " " << num(t.coefficient, "%.8g") << "\n";
    }

    if (!a.qq_path.empty()) {
        const ResidualDiagnostics diag = residual_diagnostics(model, dataset);
        csv::Table t;
        t.header = {"theoretical", "observed"};
        for (const auto& [q, r] : diag.qq_pairs)
            t.rows.push_back({csv::format_double(q), csv::format_double(r)});
        csv::write(t, a.qq_path, g.force);
        std::cout << "wrote " << a.qq_path << ": " << t.rows.size()
                  << " quantile pairs\n";
    }
    if (a.curvature) {
        const CurvatureCheck cc = curvature_check(dataset, a.response);
        std::cout << "curvature: |factorial mean - center mean| = "
                  << num(cc.delta, "%.6g") << " vs threshold "
                  << num(cc.threshold, "%.6g") << " -> "
                  << (cc.significant ? "significant (keep quadratic terms)"
                                     : "not significant") << "\n";
    }
    return kExitOk;
}

// ---- effects ---------------------------------------------------------

struct EffectsArgs {
    std::string data_path;
    std::string response;
    double threshold = 0.1;
    std::vector<std::string> interactions;
    std::string mean_plot_path;
    std::string youden_path;
    std::string scatter_path;
};

std::vector<std::string> split_factors(const std::string& spec) {
    std::vector<std::string> labels;
    std::string current;
    for (char c : spec) {
        if (c == '*') {
            if (current.empty())
                throw InputError("bad interaction spec '" + spec + "'");
            labels.push_back(current);
            current.clear();
        } else {
            current += c;
        }
    }
    if (current.empty()) throw InputError("bad interaction spec '" + spec + "'");
    labels.push_back(current);
    if (labels.size() < 2)
        throw InputError("an interaction needs at least two factors: '" + spec + "'");
    return labels;
}

int cmd_effects(const GlobalOptions& g, const EffectsArgs& a) {
    ResponseDataset dataset = read_dataset_csv(a.data_path);

    // Untagged corner-point data is accepted as a factorial block.
    const bool any_factorial =
        dataset.design.count(Provenance::factorial) > 0;
    if (!any_factorial) {
        bool all_corners = true;
        for (const auto& row : dataset.design.rows)
            for (double v : row)
                all_corners = all_corners && (v == -1.0 || v == 1.0);
        if (!all_corners)
            throw InputError("the dataset has no factorial rows and is not a "
                             "pure corner-point design");
        dataset.design.provenance.assign(dataset.design.n_rows(),
                                         Provenance::factorial);
    }
    const ResponseDataset factorial = factorial_subset(dataset);

    std::vector<std::pair<std::vector<std::string>, double>> effects;
    for (const std::string& label : factorial.design.labels)
        effects.push_back(
            {{label}, main_effect(factorial, a.response, label)});
    for (const std::string& spec : a.interactions) {
        const std::vector<std::string> labels = split_factors(spec);
        effects.push_back(
            {labels, interaction_effect(factorial, a.response, labels)});
    }

    const EffectTable table = pareto(effects, a.response, a.threshold);
    const std::string path = require_out(g, "effect table CSV");
    write_effect_table_csv(table, path, g.force);

    std::cout << "wrote " << path << ": " << table.entries.size()
              << " effects on " << a.response << " over "
              << factorial.design.n_rows() << " factorial rows\n";
    for (const EffectEntry& e : table.entries) {
        std::string name;
        for (const std::string& l : e.factor_labels)
            name += (name.empty() ? "" : "*") + l;
        std::cout << "  " << name << ": " << num(e.sigma, "%.6g") << " ("
                  << num(100.0 * e.normalized, "%.3g") << "%"
                  << (e.significant ? ", significant" : "") << ")\n";
    }

    if (!a.mean_plot_path.empty())
        write_mean_plot_csv(factorial, a.response, a.mean_plot_path, g.force);
    if (!a.youden_path.empty())
        write_youden_csv(factorial, a.response, a.youden_path, g.force);
    if (!a.scatter_path.empty())
        write_scatter_csv(factorial, a.response, a.scatter_path, g.force);
    return kExitOk;
}

// ---- optimize --------------------------------------------------------

struct OptimizeArgs {
    std::string problem_path;
};

int cmd_optimize(const GlobalOptions& g, const OptimizeArgs& a) {
    ProblemFile file = load_problem_file(a.problem_path);
    if (!file.space && !g.space.empty()) {
        file.space = load_space(g.space);
        if (file.space->labels() != file.problem.objective.labels)
            throw InputError("--space does not match the problem's models");
    }

    const SizingResult result =
        solve(file.problem, file.x0, file.options,
              file.space ? &*file.space : nullptr);

    std::optional<MassReport> report;
    if (!file.fixed_masses.empty() || file.reference_total)
        report = mass_report(result, file.fixed_masses, file.reference_total);

    std::cout << "objective (" << file.problem.objective.response_name
              << "): " << num(result.objective_value, "%.8g") << "\n";
    for (const ConstraintStatus& c : result.constraint_status)
        std::cout << "  " << c.name << " = " << num(c.value, "%.6g") << " / "
                  << num(c.limit, "%.6g") << (c.active ? "  [active]" : "")
                  << "\n";
    std::cout << "converged: " << (result.converged ? "yes" : "no")
              << "  feasible: " << (result.feasible ? "yes" : "no")
              << "  kkt residual: " << num(result.kkt_residual, "%.2e")
              << "  (start " << (result.winning_start + 1) << " of "
              << result.starts_tried << ", " << result.iterations
              << " outer iterations)\n";
    if (!result.physical_opt.empty() && g.verbose)
        for (const auto& [name, value] : result.physical_opt)
            std::cout << "  " << name << " = " << num(value, "%.6g") << "\n";
    if (report) {
        std::cout << "mass report: optimum " << num(report->optimum_mass, "%.8g");
        for (const auto& [name, mass] : report->fixed_masses)
            std::cout << " + " << name << " " << num(mass, "%.6g");
        std::cout << " = " << num(report->total, "%.8g");
        if (report->reference_total)
            std::cout << "; reference " << num(*report->reference_total, "%.8g")
                      << " -> saving " << num(*report->saving, "%.6g") << " ("
                      << num(100.0 * *report->saving_fraction, "%.3g") << "%)";
        std::cout << "\n";
    }

    if (!g.out.empty())
        write_text(g.out,
                   result_to_json_text(result, report ? &*report : nullptr),
                   g.force);

    if (!result.converged || !result.feasible) {
        std::cerr << "error: the solver did not reach a feasible converged "
                     "optimum\n";
        return kExitNumericalError;
    }
    return kExitOk;
}

// ---- jemitola --------------------------------------------------------

struct JemitolaArgs {
    std::string input_path;
    WingDescription wing;
    int n_flags = 0; // how many of the eight wing flags were given
};

int cmd_jemitola(const GlobalOptions& g, const JemitolaArgs& a) {
    if (!a.input_path.empty() && a.n_flags > 0)
        throw InputError("give either --input or the wing flags, not both");
    if (a.input_path.empty() && a.n_flags != 8)
        throw InputError("without --input, all eight wing flags are required "
                         "(--span --area --sweep --taper --tc --nz --mtom --vd)");
    const WingDescription wing =
        a.input_path.empty() ? a.wing : load_wing_file(a.input_path);
    const double mass = jemitola_wing_mass(wing);

    std::cout << "wing mass: " << num(mass, "%.6g") << " kg (span "
              << num(wing.span_b_m) << " m, area " << num(wing.area_S_m2)
              << " m^2, sweep " << num(wing.sweep_quarter_chord_deg)
              << " deg, taper " << num(wing.taper_lambda) << ", t/c "
              << num(wing.thickness_to_chord) << ", n_z "
              << num(wing.load_factor_nz) << ", MTOM " << num(wing.mtom_kg)
              << " kg, V_D " << num(wing.dive_speed_VD_ms) << " m/s)\n";

    if (!g.out.empty()) {
        json j;
        j["input"] = json::parse(wing_to_json_text(wing));
        j["wing_mass_kg"] = mass;
        write_text(g.out, j.dump(2) + "\n", g.force);
    }
    return kExitOk;
}

// ---- validate --------------------------------------------------------

struct ValidateArgs {
    std::string filter;
};

int cmd_validate(const GlobalOptions& g, const ValidateArgs& a) {
    const std::vector<CheckResult> results = run_validation(a.filter);
    if (results.empty())
        throw InputError("no validation check matches filter '" + a.filter + "'");
    print_validation_report(std::cout, results, g.verbose);
    return all_passed(results) ? kExitOk : kExitChecksFailed;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"box-wing structural surrogate toolkit"};
    app.fallthrough();
    app.require_subcommand(1);

    GlobalOptions g;
    app.add_option("--space", g.space, "design space: builtin id or JSON file");
    app.add_option("--out", g.out, "output path");
    app.add_option("--seed", g.seed, "seed for noise injection and multistart");
    app.add_flag("--force", g.force, "overwrite existing output files");
    app.add_flag("--verbose", g.verbose, "more detailed output");

    GenDesignArgs gen;
    CLI::App* gen_cmd =
        app.add_subcommand("gen-design", "generate a design matrix CSV");
    gen_cmd->add_option("--kind", gen.kind, "factorial or ccf")
        ->capture_default_str();
    gen_cmd->add_option("--replicates", gen.replicates,
                        "center-point replicates (ccf)")
        ->capture_default_str();
    gen_cmd->add_flag("--dedup", gen.dedup, "drop duplicate rows");

    EvaluateArgs eval;
    CLI::App* eval_cmd = app.add_subcommand(
        "evaluate", "evaluate models over a design, or join external data");
    eval_cmd->add_option("--design", eval.design_path, "design CSV")->required();
    eval_cmd->add_option("--models", eval.models,
                         "model ids or files (comma separated)")
        ->delimiter(',');
    eval_cmd->add_option("--join", eval.join_path,
                         "externally produced response CSV to join");
    eval_cmd->add_option("--noise", eval.noise,
                         "response=sigma Gaussian noise (repeatable)");

    FitArgs fita;
    CLI::App* fit_cmd =
        app.add_subcommand("fit", "least-squares fit of a response surface");
    fit_cmd->add_option("--data", fita.data_path, "dataset CSV")->required();
    fit_cmd->add_option("--response", fita.response, "response column")->required();
    fit_cmd->add_option("--basis", fita.basis,
                        "linear, interactions or quadratic")
        ->capture_default_str();
    fit_cmd->add_option("--from-model", fita.from_model,
                        "reuse an existing model's terms");
    fit_cmd->add_option("--unit", fita.unit, "response unit (MPa, mm, kg)")
        ->capture_default_str();
    fit_cmd->add_option("--qq", fita.qq_path, "write Q-Q plot data CSV");
    fit_cmd->add_flag("--curvature", fita.curvature,
                      "report the center-vs-factorial curvature contrast");

    EffectsArgs eff;
    CLI::App* eff_cmd = app.add_subcommand(
        "effects", "factor effects and Pareto ranking from factorial data");
    eff_cmd->add_option("--data", eff.data_path, "dataset CSV")->required();
    eff_cmd->add_option("--response", eff.response, "response column")->required();
    eff_cmd->add_option("--threshold", eff.threshold,
                        "significance threshold on normalized effects")
        ->capture_default_str();
    eff_cmd->add_option("--interaction", eff.interactions,
                        "interaction spec like x1*x2 (repeatable)");
    eff_cmd->add_option("--mean-plot", eff.mean_plot_path,
                        "write level-means plot data CSV");
    eff_cmd->add_option("--youden", eff.youden_path, "write Youden plot data CSV");
    eff_cmd->add_option("--scatter", eff.scatter_path,
                        "write scatter plot data CSV");

    OptimizeArgs opt;
    CLI::App* opt_cmd =
        app.add_subcommand("optimize", "constrained sizing optimization");
    opt_cmd->add_option("--problem", opt.problem_path, "problem JSON")->required();

    JemitolaArgs jem;
    CLI::App* jem_cmd = app.add_subcommand(
        "jemitola", "empirical box-wing-adjusted wing mass estimate");
    jem_cmd->add_option("--input", jem.input_path, "wing description JSON");
    CLI::Option* jo1 = jem_cmd->add_option("--span", jem.wing.span_b_m, "span [m]");
    CLI::Option* jo2 =
        jem_cmd->add_option("--area", jem.wing.area_S_m2, "gross area [m^2]");
    CLI::Option* jo3 = jem_cmd->add_option(
        "--sweep", jem.wing.sweep_quarter_chord_deg, "quarter-chord sweep [deg]");
    CLI::Option* jo4 =
        jem_cmd->add_option("--taper", jem.wing.taper_lambda, "taper ratio");
    CLI::Option* jo5 = jem_cmd->add_option(
        "--tc", jem.wing.thickness_to_chord, "thickness-to-chord ratio");
    CLI::Option* jo6 =
        jem_cmd->add_option("--nz", jem.wing.load_factor_nz, "load factor");
    CLI::Option* jo7 = jem_cmd->add_option("--mtom", jem.wing.mtom_kg, "MTOM [kg]");
    CLI::Option* jo8 = jem_cmd->add_option("--vd", jem.wing.dive_speed_VD_ms,
                                           "dive speed [m/s]");

    ValidateArgs val;
    CLI::App* val_cmd =
        app.add_subcommand("validate", "published-reference reproduction report");
    val_cmd->add_option("--filter", val.filter,
                        "substring selecting checks by id or title");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInputError;
    }

    for (const CLI::Option* o : {jo1, jo2, jo3, jo4, jo5, jo6, jo7, jo8})
        jem.n_flags += o->count() > 0 ? 1 : 0;

    try {
        if (gen_cmd->parsed()) return cmd_gen_design(g, gen);
        if (eval_cmd->parsed()) return cmd_evaluate(g, eval);
        if (fit_cmd->parsed()) return cmd_fit(g, fita);
        if (eff_cmd->parsed()) return cmd_effects(g, eff);
        if (opt_cmd->parsed()) return cmd_optimize(g, opt);
        if (jem_cmd->parsed()) return cmd_jemitola(g, jem);
        if (val_cmd->parsed()) return cmd_validate(g, val);
        throw InputError("no subcommand given");
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitNumericalError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitOk;
}
