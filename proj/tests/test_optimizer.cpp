#include "boxwing/optimizer.hpp"
#include "boxwing/errors.hpp"

#include "doctest.h"
#include "json.hpp"

#include <cmath>
#include <string>
#include <vector>

using namespace boxwing;

namespace {

Term make_term(std::vector<std::pair<std::string, int>> factors, double c) {
    Term t;
    t.factors = std::move(factors);
    t.coefficient = c;
    return t;
}

PolynomialSurrogate model2(const std::string& name, double intercept,
                           std::vector<Term> terms, ResponseUnit unit) {
    PolynomialSurrogate m;
    m.response_name = name;
    m.unit = unit;
    m.labels = {"x1", "x2"};
    m.intercept = intercept;
    m.terms = std::move(terms);
    return m;
}

SizingProblem reference_problem(const std::string& prefix, double stress_limit,
                                double defl_limit) {
    SizingProblem p;
    p.objective = load_builtin_model(prefix + ".mass");
    p.constraints = {{"sigma_front", load_builtin_model(prefix + ".sigma_front"),
                      stress_limit},
                     {"sigma_rear", load_builtin_model(prefix + ".sigma_rear"),
                      stress_limit},
                     {"deflection", load_builtin_model(prefix + ".uz"), defl_limit}};
    p.lower.assign(9, -1.0);
    p.upper.assign(9, 1.0);
    return p;
}

void check_point(const std::vector<double>& got, const std::vector<double>& want,
                 double tol) {
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < want.size(); ++i)
        CHECK_MESSAGE(std::abs(got[i] - want[i]) <= tol, "coordinate ", i, ": ",
                      got[i], " vs ", want[i]);
}

} // namespace

TEST_CASE("stress and deflection limits derive from the stated rules") {
    CHECK(admissible_stress(345.0, 1.2) == doctest::Approx(287.5));
    CHECK(admissible_stress(345.0, 1.5) == doctest::Approx(230.0));
    CHECK(deflection_limit(36000.0) == doctest::Approx(1800.0));
    CHECK(deflection_limit(22100.0) == doctest::Approx(1105.0));
    CHECK_THROWS_AS(admissible_stress(0.0, 1.2), InputError);
    CHECK_THROWS_AS(admissible_stress(345.0, 0.9), InputError);
    CHECK_THROWS_AS(deflection_limit(-1.0), InputError);
}

TEST_CASE("an interior optimum of a convex bowl is found exactly") {
    // f = 1 - 0.6*x1 + 0.4*x2 + x1^2 + x2^2, minimum at (0.3, -0.2)
    SizingProblem p;
    p.objective = model2("mass_kg", 1.0,
                         {make_term({{"x1", 1}}, -0.6), make_term({{"x2", 1}}, 0.4),
                          make_term({{"x1", 2}}, 1.0), make_term({{"x2", 2}}, 1.0)},
                         ResponseUnit::kg);
    p.constraints = {{"slack", model2("g_kg", 0.0,
                                      {make_term({{"x1", 1}}, 1.0),
                                       make_term({{"x2", 1}}, 1.0)},
                                      ResponseUnit::kg),
                      10.0}};
    p.lower = {-1.0, -1.0};
    p.upper = {1.0, 1.0};

    const SizingResult r = solve(p, {0.0, 0.0});
    CHECK(r.converged);
    CHECK(r.feasible);
    check_point(r.x_opt, {0.3, -0.2}, 1e-6);
    CHECK(r.objective_value == doctest::Approx(1.0 - 0.09 - 0.04).epsilon(1e-9));
    CHECK(r.active_set.empty());
    REQUIRE(r.constraint_status.size() == 1);
    CHECK(r.constraint_status[0].multiplier == doctest::Approx(0.0));
    CHECK(r.kkt_residual <= 1e-6);
}

TEST_CASE("a linear program pins variables against bounds and the constraint") {
    // min -x1 - 2*x2 subject to x1 + x2 <= 0.5: optimum (-0.5, 1)
    SizingProblem p;
    p.objective = model2("mass_kg", 0.0,
                         {make_term({{"x1", 1}}, -1.0), make_term({{"x2", 1}}, -2.0)},
                         ResponseUnit::kg);
    p.constraints = {{"budget", model2("g_kg", 0.0,
                                       {make_term({{"x1", 1}}, 1.0),
                                        make_term({{"x2", 1}}, 1.0)},
                                       ResponseUnit::kg),
                      0.5}};
    p.lower = {-1.0, -1.0};
    p.upper = {1.0, 1.0};

    const SizingResult r = solve(p, {0.0, 0.0});
    CHECK(r.converged);
    CHECK(r.feasible);
    check_point(r.x_opt, {-0.5, 1.0}, 1e-6);
    CHECK(r.objective_value == doctest::Approx(-1.5).epsilon(1e-8));
    REQUIRE(r.active_set.size() == 1);
    CHECK(r.active_set[0] == "budget");
    CHECK(r.constraint_status[0].multiplier > 0.0);
}

TEST_CASE("an unsatisfiable constraint yields a non-feasible result") {
    SizingProblem p;
    p.objective = model2("mass_kg", 0.0, {make_term({{"x1", 1}}, 1.0)},
                         ResponseUnit::kg);
    p.constraints = {{"impossible", model2("g_kg", 100.0, {}, ResponseUnit::kg), 50.0}};
    p.lower = {-1.0, -1.0};
    p.upper = {1.0, 1.0};
    const SizingResult r = solve(p, {0.0, 0.0});
    CHECK_FALSE(r.feasible);
}

TEST_CASE("combined sizing at safety factor 1.2 reproduces the frozen optimum") {
    const SizingProblem p =
        reference_problem("prp300", admissible_stress(345.0, 1.2),
                          deflection_limit(36000.0));
    const std::vector<double> x0 = {0, 0, 0, -1, -1, -1, -1, -1, -1};
    const SizingResult r = solve(p, x0, {}, nullptr);
    CHECK(r.converged);
    CHECK(r.feasible);
    CHECK(r.objective_value == doctest::Approx(15155.5206).epsilon(0.5 / 15155.0));
    check_point(r.x_opt,
                {-0.095476, 0.152017, 0.251502, -1, -1, -1, -1, -1, -1}, 1e-3);
    // thickness-driving variables rest on their lower bounds
    for (std::size_t i = 3; i < 9; ++i) CHECK(r.x_opt[i] == doctest::Approx(-1.0));
}

TEST_CASE("combined sizing at safety factor 1.5 reproduces the frozen optimum") {
    const SizingProblem p =
        reference_problem("prp300", admissible_stress(345.0, 1.5),
                          deflection_limit(36000.0));
    const std::vector<double> x0 = {0, 0, 0, -1, -1, -1, -1, -1, -1};
    const SizingResult r = solve(p, x0, {}, nullptr);
    CHECK(r.converged);
    CHECK(r.feasible);
    CHECK(r.objective_value == doctest::Approx(16042.1077).epsilon(0.5 / 16042.0));
    check_point(r.x_opt, {1.0, 0.623656, -0.194079, -1, -1, -1, -1, -1, -1}, 1e-3);
}

TEST_CASE("nine-variable sizing reproduces the frozen optima at both spans") {
    SUBCASE("1105 mm deflection limit") {
        const SizingProblem p =
            reference_problem("prosib", 230.0, deflection_limit(22100.0));
        const SizingResult r = solve(p, std::vector<double>(9, 0.0));
        CHECK(r.converged);
        CHECK(r.feasible);
        CHECK(r.objective_value == doctest::Approx(1847.1816).epsilon(0.5 / 1847.0));
        check_point(r.x_opt,
                    {-0.42106, -0.604277, -1, 1, -0.181274, -0.303362, -1, -1, -1},
                    1e-3);
    }
    SUBCASE("600 mm deflection limit") {
        const SizingProblem p = reference_problem("prosib", 230.0, 600.0);
        const SizingResult r = solve(p, std::vector<double>(9, 0.0));
        CHECK(r.converged);
        CHECK(r.feasible);
        CHECK(r.objective_value == doctest::Approx(1950.6047).epsilon(0.5 / 1950.0));
        check_point(r.x_opt,
                    {-0.601607, -0.503008, -1, 0.930659, 0.387955, 0.20538, -1,
                     -0.461954, -1},
                    1e-3);
    }
}

TEST_CASE("solving with a design space decodes the optimum to physical values") {
    const DesignSpace space = builtin_space("prp300");
    const SizingProblem p =
        reference_problem("prp300", admissible_stress(345.0, 1.2),
                          deflection_limit(36000.0));
    const std::vector<double> x0 = {0, 0, 0, -1, -1, -1, -1, -1, -1};
    const SizingResult r = solve(p, x0, {}, &space);
    REQUIRE_FALSE(r.physical_opt.empty());
    // x4 (front stringer thickness, 1.5..7 mm) sits at codified r.x_opt[2]
    const double expected = 4.25 + 2.75 * r.x_opt[2];
    CHECK(r.physical_opt.at("t_st_F") == doctest::Approx(expected).epsilon(1e-9));
    // the linked rear web ratio follows the rear skin ratio variable
    CHECK(r.physical_opt.at("tau_web_R") == doctest::Approx(r.physical_opt.at("tau_sk_R")));
}

TEST_CASE("mass accounting combines optimum, fixed items, and the reference") {
    SizingResult r;
    r.objective_value = 14992.0;
    r.converged = true;
    r.feasible = true;
    const MassReport m = mass_report(r, {{"vertical_wing", 593.0}}, 17699.0);
    CHECK(m.optimum_mass == doctest::Approx(14992.0));
    CHECK(m.total == doctest::Approx(15585.0));
    REQUIRE(m.reference_total.has_value());
    REQUIRE(m.saving.has_value());
    CHECK(*m.saving == doctest::Approx(2114.0));
    REQUIRE(m.saving_fraction.has_value());
    CHECK(*m.saving_fraction == doctest::Approx(2114.0 / 17699.0));

    CHECK_THROWS_AS(mass_report(r, {{"bad", -1.0}}, std::nullopt), InputError);
    CHECK_THROWS_AS(mass_report(r, {}, 0.0), InputError);
}

TEST_CASE("problem JSON supplies limits and defaults from the stated rules") {
    const std::string text = R"({
        "space": "prp300",
        "objective": "prp300.mass",
        "stress_constraints": [
            {"name": "sigma_front", "model": "prp300.sigma_front"},
            {"name": "sigma_rear", "model": "prp300.sigma_rear"}
        ],
        "deflection_constraint": {"name": "deflection", "model": "prp300.uz"},
        "yield_strength_MPa": 345.0,
        "safety_factor": 1.2,
        "wingspan_mm": 36000.0,
        "x0": [0, 0, 0, -1, -1, -1, -1, -1, -1],
        "fixed_masses": {"vertical_wing": 593.0},
        "reference_total_kg": 17699.0
    })";
    const ProblemFile pf = problem_from_json_text(text, ".");
    CHECK(pf.problem.constraints.size() == 3);
    CHECK(pf.problem.constraints[0].limit == doctest::Approx(287.5));
    CHECK(pf.problem.constraints[1].limit == doctest::Approx(287.5));
    CHECK(pf.problem.constraints[2].limit == doctest::Approx(1800.0));
    CHECK(pf.problem.lower == std::vector<double>(9, -1.0));
    CHECK(pf.problem.upper == std::vector<double>(9, 1.0));
    CHECK(pf.x0 == std::vector<double>{0, 0, 0, -1, -1, -1, -1, -1, -1});
    REQUIRE(pf.space.has_value());
    CHECK(pf.space->id == "prp300");
    CHECK(pf.fixed_masses.at("vertical_wing") == doctest::Approx(593.0));
    REQUIRE(pf.reference_total.has_value());
    CHECK(*pf.reference_total == doctest::Approx(17699.0));

    CHECK_THROWS_AS(problem_from_json_text("{}", "."), InputError);
    CHECK_THROWS_AS(problem_from_json_text("not json", "."), InputError);
}

TEST_CASE("an explicit constraint limit overrides the derived default") {
    const std::string text = R"({
        "objective": "prosib.mass",
        "stress_constraints": [
            {"name": "sigma_front", "model": "prosib.sigma_front", "limit": 200.0}
        ],
        "yield_strength_MPa": 345.0,
        "safety_factor": 1.5
    })";
    const ProblemFile pf = problem_from_json_text(text, ".");
    REQUIRE(pf.problem.constraints.size() == 1);
    CHECK(pf.problem.constraints[0].limit == doctest::Approx(200.0));
    CHECK(pf.x0 == std::vector<double>(9, 0.0)); // defaults to the centroid
}

TEST_CASE("result JSON carries the optimum, constraint table, and mass report") {
    SizingProblem p;
    p.objective = model2("mass_kg", 1.0,
                         {make_term({{"x1", 1}}, -0.6), make_term({{"x2", 1}}, 0.4),
                          make_term({{"x1", 2}}, 1.0), make_term({{"x2", 2}}, 1.0)},
                         ResponseUnit::kg);
    p.constraints = {{"slack", model2("g_kg", 0.0, {make_term({{"x1", 1}}, 1.0)},
                                      ResponseUnit::kg),
                      10.0}};
    p.lower = {-1.0, -1.0};
    p.upper = {1.0, 1.0};
    const SizingResult r = solve(p, {0.0, 0.0});
    const MassReport m = mass_report(r, {{"extra", 2.0}}, 100.0);

    const nlohmann::json j = nlohmann::json::parse(result_to_json_text(r, &m));
    CHECK(j.at("converged").get<bool>());
    CHECK(j.at("feasible").get<bool>());
    CHECK(j.at("x_opt").size() == 2);
    CHECK(j.at("objective_value").get<double>() == doctest::Approx(r.objective_value));
    CHECK(j.at("constraints").size() == 1);
    CHECK(j.at("constraints")[0].at("name").get<std::string>() == "slack");
    CHECK(j.at("mass_report").at("total_kg").get<double>() ==
          doctest::Approx(r.objective_value + 2.0));
    CHECK(j.at("mass_report").at("reference_total_kg").get<double>() ==
          doctest::Approx(100.0));
}

TEST_CASE("the shipped problem files parse with the expected limits") {
    const std::string dir = std::string(BOXWING_DATA_DIR) + "/problems/";
    const ProblemFile sf12 = load_problem_file(dir + "prp300_sf12.json");
    REQUIRE(sf12.problem.constraints.size() == 3);
    CHECK(sf12.problem.constraints[0].limit == doctest::Approx(287.5));
    CHECK(sf12.problem.constraints[2].limit == doctest::Approx(1800.0));
    CHECK(sf12.fixed_masses.at("vertical_wing") == doctest::Approx(593.0));

    const ProblemFile sf15 = load_problem_file(dir + "prp300_sf15.json");
    CHECK(sf15.problem.constraints[0].limit == doctest::Approx(230.0));

    const ProblemFile nine = load_problem_file(dir + "prosib40_sf15.json");
    CHECK(nine.problem.constraints[2].limit == doctest::Approx(1105.0));
    CHECK(nine.x0 == std::vector<double>(9, 0.0));

    const ProblemFile short_span = load_problem_file(dir + "prosib40_sf15_600.json");
    CHECK(short_span.problem.constraints[2].limit == doctest::Approx(600.0));
}

TEST_CASE("solver options are validated") {
    SizingProblem p;
    p.objective = model2("mass_kg", 0.0, {make_term({{"x1", 1}}, 1.0)},
                         ResponseUnit::kg);
    p.lower = {-1.0, -1.0};
    p.upper = {1.0, 1.0};
    SolveOptions bad;
    bad.multistart = 0;
    CHECK_THROWS_AS(solve(p, {0.0, 0.0}, bad), InputError);
    bad = {};
    bad.feasibility_tol = -1.0;
    CHECK_THROWS_AS(solve(p, {0.0, 0.0}, bad), InputError);
    CHECK_THROWS_AS(solve(p, {0.0}, {}), InputError); // x0 wrong length
}
