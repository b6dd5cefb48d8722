#pragma once

#include "boxwing/design_space.hpp"
#include "boxwing/surrogate.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace boxwing {

// Yield strength divided by the safety factor.
double admissible_stress(double yield_strength_mpa, double safety_factor);

// Geometric-linearity deflection bound: 10% of the semi-span.
double deflection_limit(double wingspan_b_mm);

struct Constraint {
    std::string name; // e.g. "sigma_front"
    PolynomialSurrogate model;
    double limit = 0.0; // model value must stay <= limit
};

// min objective(x) subject to constraint models <= limits and per-variable
// box bounds (within [-1, 1]). All models share the objective's label order.
struct SizingProblem {
    PolynomialSurrogate objective; // combined wing mass, kg
    std::vector<Constraint> constraints;
    std::vector<double> lower; // per variable, >= -1
    std::vector<double> upper; // per variable, <= +1

    std::size_t n_vars() const { return objective.labels.size(); }
    void validate() const; // throws InputError
};

struct SolveOptions {
    double feasibility_tol = 1e-6; // on normalized constraints
    double kkt_tol = 1e-6;         // projected stationarity + complementarity
    int max_outer = 60;
    int max_inner = 300;
    int multistart = 8;        // deterministic seed points (>= 1); extra
    std::uint64_t seed = 0;    // seeds beyond the fixed patterns are drawn
                               // reproducibly from this
    double active_margin = 0.01; // constraint within 1% of limit -> active
};

struct ConstraintStatus {
    std::string name;
    double value = 0.0;
    double limit = 0.0;
    double margin = 0.0; // (limit - value) / |limit|
    bool active = false;
    double multiplier = 0.0; // normalized-problem Lagrange multiplier
};

struct SizingResult {
    std::vector<double> x_opt;
    std::map<std::string, double> physical_opt; // decoded; empty without a space
    double objective_value = 0.0;
    std::vector<ConstraintStatus> constraint_status;
    std::vector<std::string> active_set;
    bool converged = false;
    bool feasible = false;
    int iterations = 0;    // outer iterations of the winning start
    int starts_tried = 0;
    int winning_start = -1;
    double kkt_residual = 0.0;
};

// Augmented-Lagrangian solver with projected-Newton inner iterations on the
// box. Deterministic for fixed inputs; multistart runs a fixed pattern of
// start points (x0, midpoint, corners, alternating corners) plus seeded
// random interior points, and returns the best feasible converged result.
SizingResult solve(const SizingProblem& problem, const std::vector<double>& x0,
                   const SolveOptions& options = {},
                   const DesignSpace* space = nullptr);

struct MassReport {
    double optimum_mass = 0.0;          // converged objective
    std::map<std::string, double> fixed_masses;
    double total = 0.0;                 // optimum + sum of fixed masses
    std::optional<double> reference_total;
    std::optional<double> saving;       // reference - total
    std::optional<double> saving_fraction; // saving / reference
};

// Aggregates the converged optimum with fixed component masses and an
// optional reference configuration total.
MassReport mass_report(const SizingResult& result,
                       const std::map<std::string, double>& fixed_masses,
                       std::optional<double> reference_total = std::nullopt);

// Problem JSON: {"space"?, "objective", "stress_constraints":[{"name","model",
// "limit"?}], "deflection_constraint"?, "yield_strength_MPa"?, "safety_factor"?,
// "wingspan_mm"? | "deflection_limit_mm"?, "bounds"?, "x0"?, "options"?,
// "fixed_masses"?, "reference_total_kg"?}. Model references are file paths or
// builtin ids; stress limits default to yield/SF, the deflection limit to
// 0.1*b/2.
struct ProblemFile {
    SizingProblem problem;
    std::vector<double> x0;
    SolveOptions options;
    std::optional<DesignSpace> space;
    std::map<std::string, double> fixed_masses;
    std::optional<double> reference_total;
};

ProblemFile load_problem_file(const std::string& path);
ProblemFile problem_from_json_text(const std::string& text, const std::string& base_dir);

std::string result_to_json_text(const SizingResult& result, const MassReport* report);

} // namespace boxwing
