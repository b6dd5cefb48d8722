#include "boxwing/optimizer.hpp"

#include "boxwing/errors.hpp"
#include "file_util.hpp"

#include <json.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <limits>
#include <random>
#include <set>

namespace boxwing {

using nlohmann::json;

double admissible_stress(double yield_strength_mpa, double safety_factor) {
    if (!(yield_strength_mpa > 0.0) || !std::isfinite(yield_strength_mpa))
        throw InputError("yield strength must be a positive number of MPa");
    if (!(safety_factor >= 1.0) || !std::isfinite(safety_factor))
        throw InputError("the safety factor must be at least 1");
    return yield_strength_mpa / safety_factor;
}

double deflection_limit(double wingspan_b_mm) {
    if (!(wingspan_b_mm > 0.0) || !std::isfinite(wingspan_b_mm))
        throw InputError("the wingspan must be a positive number of mm");
    return 0.1 * (wingspan_b_mm / 2.0);
}

void SizingProblem::validate() const {
    objective.validate();
    const std::size_t n = objective.labels.size();
    if (lower.size() != n || upper.size() != n)
        throw InputError("bounds must give one lower and one upper value per variable");
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(lower[i]) || !std::isfinite(upper[i]))
            throw InputError("bounds must be finite");
        if (lower[i] < -1.0 || upper[i] > 1.0 || lower[i] > upper[i])
            throw InputError("bounds must satisfy -1 <= lower <= upper <= 1 "
                             "(variable " + objective.labels[i] + ")");
    }
    std::set<std::string> names;
    for (const Constraint& c : constraints) {
        if (c.name.empty()) throw InputError("a constraint has no name");
        if (!names.insert(c.name).second)
            throw InputError("duplicate constraint name '" + c.name + "'");
        c.model.validate();
        if (c.model.labels != objective.labels)
            throw InputError("constraint '" + c.name + "' uses a different variable "
                             "set than the objective");
        if (!std::isfinite(c.limit))
            throw InputError("constraint '" + c.name + "' has a non-finite limit");
    }
}

namespace {

std::span<const double> as_span(const Eigen::VectorXd& v) {
    return {v.data(), static_cast<std::size_t>(v.size())};
}

// Model scaled to comparable magnitude: value = (raw - shift) / scale.
struct ScaledModel {
    const PolynomialSurrogate* model = nullptr;
    double shift = 0.0;
    double scale = 1.0;

    double value(const Eigen::VectorXd& x) const {
        return (model->evaluate(as_span(x)) - shift) / scale;
    }
    Eigen::VectorXd grad(const Eigen::VectorXd& x) const {
        std::vector<double> g = model->gradient(as_span(x));
        return Eigen::Map<Eigen::VectorXd>(g.data(), g.size()) / scale;
    }
    Eigen::MatrixXd hess(const Eigen::VectorXd& x) const {
        const auto n = static_cast<Eigen::Index>(model->labels.size());
        std::vector<double> h = model->hessian(as_span(x));
        using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                       Eigen::RowMajor>;
        return Eigen::Map<RowMajor>(h.data(), n, n) / scale;
    }
};

struct StartOutcome {
    Eigen::VectorXd x;
    Eigen::VectorXd lam; // one multiplier per constraint, normalized problem
    double violation = std::numeric_limits<double>::infinity();
    double stationarity = std::numeric_limits<double>::infinity();
    double complementarity = std::numeric_limits<double>::infinity();
    int outer_iterations = 0;
    bool converged = false;
};

// Augmented-Lagrangian (PHR) outer loop around a projected-Newton inner
// minimizer on the box. Works on the normalized objective/constraints.
StartOutcome minimize_from(const ScaledModel& obj, const std::vector<ScaledModel>& cons,
                           const Eigen::VectorXd& lo, const Eigen::VectorXd& hi,
                           Eigen::VectorXd x, const SolveOptions& opt) {
    const auto n = x.size();
    const auto m = static_cast<Eigen::Index>(cons.size());
    Eigen::VectorXd lam = Eigen::VectorXd::Zero(m);
    double mu = 10.0;

    auto proj = [&](const Eigen::VectorXd& v) -> Eigen::VectorXd {
        return v.cwiseMax(lo).cwiseMin(hi);
    };
    auto pg_norm = [&](const Eigen::VectorXd& v, const Eigen::VectorXd& g) {
        return (v - proj(v - g)).cwiseAbs().maxCoeff();
    };

    auto al_value = [&](const Eigen::VectorXd& v) {
        double f = obj.value(v);
        for (Eigen::Index i = 0; i < m; ++i) {
            const double t = lam(i) + mu * cons[i].value(v);
            if (t > 0.0)
                f += (t * t - lam(i) * lam(i)) / (2.0 * mu);
            else
                f -= lam(i) * lam(i) / (2.0 * mu);
        }
        return f;
    };
    auto al_grad = [&](const Eigen::VectorXd& v) {
        Eigen::VectorXd g = obj.grad(v);
        for (Eigen::Index i = 0; i < m; ++i) {
            const double t = lam(i) + mu * cons[i].value(v);
            if (t > 0.0) g += t * cons[i].grad(v);
        }
        return g;
    };
    auto al_hess = [&](const Eigen::VectorXd& v) {
        Eigen::MatrixXd h = obj.hess(v);
        for (Eigen::Index i = 0; i < m; ++i) {
            const double t = lam(i) + mu * cons[i].value(v);
            if (t > 0.0) {
                const Eigen::VectorXd gi = cons[i].grad(v);
                h += mu * gi * gi.transpose() + t * cons[i].hess(v);
            }
        }
        return h;
    };

    auto inner = [&](Eigen::VectorXd v, double tol) {
        for (int it = 0; it < opt.max_inner; ++it) {
            const Eigen::VectorXd g = al_grad(v);
            if (pg_norm(v, g) <= tol) break;

            // Free variables: not pinned at a bound with an outward gradient.
            std::vector<Eigen::Index> free;
            for (Eigen::Index i = 0; i < n; ++i) {
                const bool at_lo = v(i) <= lo(i) + 1e-12 && g(i) > 0.0;
                const bool at_hi = v(i) >= hi(i) - 1e-12 && g(i) < 0.0;
                if (!at_lo && !at_hi) free.push_back(i);
            }

            Eigen::VectorXd d = Eigen::VectorXd::Zero(n);
            if (!free.empty()) {
                const auto k = static_cast<Eigen::Index>(free.size());
                const Eigen::MatrixXd h = al_hess(v);
                Eigen::MatrixXd hf(k, k);
                Eigen::VectorXd gf(k);
                for (Eigen::Index a = 0; a < k; ++a) {
                    gf(a) = g(free[a]);
                    for (Eigen::Index b = 0; b < k; ++b)
                        hf(a, b) = h(free[a], free[b]);
                }
                // Newton step with escalating diagonal regularization.
                Eigen::VectorXd df;
                bool solved = false;
                double tau = 1e-10;
                for (int t = 0; t < 60; ++t) {
                    Eigen::LLT<Eigen::MatrixXd> llt(
                        hf + tau * Eigen::MatrixXd::Identity(k, k));
                    if (llt.info() == Eigen::Success) {
                        df = -llt.solve(gf);
                        solved = true;
                        break;
                    }
                    tau = std::max(tau * 10.0, 1e-8);
                }
                if (!solved || df.dot(gf) > -1e-14 * df.norm() * gf.norm())
                    df = -gf;
                for (Eigen::Index a = 0; a < k; ++a) d(free[a]) = df(a);
            }

            // Projected backtracking line search (Armijo on the sharper of the
            // unprojected and projected directional derivatives).
            const double f0 = al_value(v);
            const double g0d = g.dot(d);
            Eigen::VectorXd vn = v;
            bool ok = false;
            double alpha = 1.0;
            for (int t = 0; t < 60; ++t) {
                vn = proj(v + alpha * d);
                const double bound =
                    f0 + 1e-4 * std::min(g0d * alpha, g.dot(vn - v));
                if (al_value(vn) <= bound) {
                    ok = true;
                    break;
                }
                alpha *= 0.5;
            }
            if (!ok) {
                // Last resort: projected gradient descent.
                alpha = 1.0;
                bool improved = false;
                for (int t = 0; t < 60; ++t) {
                    vn = proj(v - alpha * g);
                    if (al_value(vn) < f0) {
                        improved = true;
                        break;
                    }
                    alpha *= 0.5;
                }
                if (!improved) break;
            }
            if ((vn - v).cwiseAbs().maxCoeff() < 1e-16) break;
            v = vn;
        }
        return v;
    };

    StartOutcome out;
    double inner_tol = 1e-2;
    double prev_violation = std::numeric_limits<double>::infinity();
    for (int outer = 0; outer < opt.max_outer; ++outer) {
        x = inner(x, inner_tol);

        double violation = 0.0;
        Eigen::VectorXd lam_new(m), cvals(m);
        for (Eigen::Index i = 0; i < m; ++i) {
            cvals(i) = cons[i].value(x);
            violation = std::max(violation, std::max(0.0, cvals(i)));
            lam_new(i) = std::max(0.0, lam(i) + mu * cvals(i));
        }
        Eigen::VectorXd gl = obj.grad(x);
        for (Eigen::Index i = 0; i < m; ++i) gl += lam_new(i) * cons[i].grad(x);
        const double stationarity = pg_norm(x, gl);
        double complementarity = 0.0;
        for (Eigen::Index i = 0; i < m; ++i)
            complementarity = std::max(
                complementarity, std::abs(lam_new(i) * std::min(0.0, cvals(i))));

        out.x = x;
        out.lam = lam_new;
        out.violation = violation;
        out.stationarity = stationarity;
        out.complementarity = complementarity;
        out.outer_iterations = outer + 1;
        if (violation <= opt.feasibility_tol && stationarity <= opt.kkt_tol &&
            complementarity <= opt.kkt_tol && inner_tol <= opt.kkt_tol) {
            out.converged = true;
            return out;
        }

        lam = lam_new;
        if (violation > 0.25 * prev_violation && violation > opt.feasibility_tol)
            mu = std::min(mu * 10.0, 1e12);
        prev_violation = std::max(violation, 1e-300);
        inner_tol = std::max(opt.kkt_tol, inner_tol * 0.1);
    }
    return out;
}

std::vector<Eigen::VectorXd> start_points(const Eigen::VectorXd& x0,
                                          const Eigen::VectorXd& lo,
                                          const Eigen::VectorXd& hi,
                                          const SolveOptions& opt) {
    const auto n = x0.size();
    std::vector<Eigen::VectorXd> starts;
    starts.push_back(x0);
    starts.push_back(Eigen::VectorXd::Zero(n));
    starts.push_back(Eigen::VectorXd::Constant(n, -1.0));
    starts.push_back(Eigen::VectorXd::Constant(n, 1.0));
    Eigen::VectorXd alt(n), half(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        alt(i) = (i % 2 == 0) ? 1.0 : -1.0;
        half(i) = (i < n / 2) ? -1.0 : 1.0;
    }
    starts.push_back(alt);
    starts.push_back(-alt);
    starts.push_back(half);
    starts.push_back(-half);

    if (static_cast<std::size_t>(opt.multistart) < starts.size())
        starts.resize(static_cast<std::size_t>(opt.multistart));

    std::mt19937_64 engine(opt.seed);
    auto unit = [&] { return ((engine() >> 11) + 1.0) * 0x1.0p-53; };
    while (starts.size() < static_cast<std::size_t>(opt.multistart)) {
        Eigen::VectorXd r(n);
        for (Eigen::Index i = 0; i < n; ++i)
            r(i) = lo(i) + unit() * (hi(i) - lo(i));
        starts.push_back(r);
    }
    for (Eigen::VectorXd& s : starts) s = s.cwiseMax(lo).cwiseMin(hi);
    return starts;
}

void validate_options(const SolveOptions& opt) {
    if (!(opt.feasibility_tol > 0.0) || !(opt.kkt_tol > 0.0))
        throw InputError("solver tolerances must be positive");
    if (opt.max_outer < 1 || opt.max_inner < 1)
        throw InputError("iteration limits must be at least 1");
    if (opt.multistart < 1)
        throw InputError("multistart must run at least one start point");
    if (!(opt.active_margin >= 0.0) || !(opt.active_margin < 1.0))
        throw InputError("the active-set margin must lie in [0, 1)");
}

} // namespace

SizingResult solve(const SizingProblem& problem, const std::vector<double>& x0,
                   const SolveOptions& options, const DesignSpace* space) {
    problem.validate();
    validate_options(options);
    const std::size_t n = problem.n_vars();
    if (x0.size() != n)
        throw InputError("the start point must give one value per variable (" +
                         std::to_string(n) + "), got " + std::to_string(x0.size()));
    for (double v : x0)
        if (!std::isfinite(v)) throw InputError("the start point must be finite");
    if (space) {
        space->validate();
        if (space->labels() != problem.objective.labels)
            throw InputError("the design space variables do not match the "
                             "problem's models");
    }

    const Eigen::VectorXd lo =
        Eigen::Map<const Eigen::VectorXd>(problem.lower.data(), n);
    const Eigen::VectorXd hi =
        Eigen::Map<const Eigen::VectorXd>(problem.upper.data(), n);

    ScaledModel obj;
    obj.model = &problem.objective;
    obj.shift = 0.0;
    obj.scale = std::max(
        1.0, std::abs(problem.objective.evaluate(
                 as_span(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n))))));
    std::vector<ScaledModel> cons;
    for (const Constraint& c : problem.constraints)
        cons.push_back({&c.model, c.limit, std::max(1.0, std::abs(c.limit))});

    const std::vector<Eigen::VectorXd> starts = start_points(
        Eigen::Map<const Eigen::VectorXd>(x0.data(), n), lo, hi, options);

    auto true_feasible = [&](const Eigen::VectorXd& x) {
        for (const Constraint& c : problem.constraints) {
            const double tol =
                options.feasibility_tol * std::max(1.0, std::abs(c.limit));
            if (c.model.evaluate(as_span(x)) > c.limit + tol) return false;
        }
        return true;
    };

    // Rank: converged+feasible by objective, then feasible by objective,
    // then anything by violation.
    StartOutcome best;
    int best_index = -1;
    int best_rank = 3;
    double best_score = std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < starts.size(); ++s) {
        StartOutcome r = minimize_from(obj, cons, lo, hi, starts[s], options);
        const bool feasible = true_feasible(r.x);
        const double objective = problem.objective.evaluate(as_span(r.x));
        const int rank = (r.converged && feasible) ? 0 : feasible ? 1 : 2;
        const double score = rank == 2 ? r.violation : objective;
        if (rank < best_rank || (rank == best_rank && score < best_score)) {
            best = std::move(r);
            best_index = static_cast<int>(s);
            best_rank = rank;
            best_score = score;
        }
    }
    if (best_index < 0)
        throw NumericalError("the solver produced no usable iterate");

    SizingResult result;
    result.x_opt.assign(best.x.data(), best.x.data() + best.x.size());
    result.objective_value = problem.objective.evaluate(as_span(best.x));
    result.converged = best.converged;
    result.feasible = true_feasible(best.x);
    result.iterations = best.outer_iterations;
    result.starts_tried = static_cast<int>(starts.size());
    result.winning_start = best_index;
    result.kkt_residual =
        std::max({best.violation, best.stationarity, best.complementarity});
    for (std::size_t i = 0; i < problem.constraints.size(); ++i) {
        const Constraint& c = problem.constraints[i];
        ConstraintStatus st;
        st.name = c.name;
        st.value = c.model.evaluate(as_span(best.x));
        st.limit = c.limit;
        st.margin = (c.limit - st.value) /
                    (c.limit != 0.0 ? std::abs(c.limit) : 1.0);
        st.active = st.margin < options.active_margin;
        st.multiplier = best.lam(static_cast<Eigen::Index>(i));
        if (st.active) result.active_set.push_back(c.name);
        result.constraint_status.push_back(std::move(st));
    }
    if (space) result.physical_opt = decode_point(result.x_opt, *space);
    return result;
}

MassReport mass_report(const SizingResult& result,
                       const std::map<std::string, double>& fixed_masses,
                       std::optional<double> reference_total) {
    MassReport report;
    report.optimum_mass = result.objective_value;
    report.total = result.objective_value;
    for (const auto& [name, mass] : fixed_masses) {
        if (!std::isfinite(mass) || mass < 0.0)
            throw InputError("fixed mass '" + name + "' must be >= 0");
        report.fixed_masses[name] = mass;
        report.total += mass;
    }
    if (reference_total) {
        if (!(*reference_total > 0.0) || !std::isfinite(*reference_total))
            throw InputError("the reference total mass must be positive");
        report.reference_total = *reference_total;
        report.saving = *reference_total - report.total;
        report.saving_fraction = *report.saving / *reference_total;
    }
    return report;
}

namespace {

std::string resolve_reference(const std::string& ref, const std::string& base_dir) {
    namespace fs = std::filesystem;
    if (!base_dir.empty() && fs::path(ref).is_relative()) {
        const fs::path joined = fs::path(base_dir) / ref;
        if (fs::exists(joined)) return joined.string();
    }
    return ref;
}

} // namespace

ProblemFile problem_from_json_text(const std::string& text, const std::string& base_dir) {
    ProblemFile file;
    try {
        const json j = json::parse(text);

        if (j.contains("space"))
            file.space = load_space(
                resolve_reference(j.at("space").get<std::string>(), base_dir));

        file.problem.objective = load_model(
            resolve_reference(j.at("objective").get<std::string>(), base_dir));
        const std::size_t n = file.problem.objective.labels.size();

        std::optional<double> sigma_adm;
        if (j.contains("yield_strength_MPa") || j.contains("safety_factor"))
            sigma_adm = admissible_stress(j.at("yield_strength_MPa").get<double>(),
                                          j.at("safety_factor").get<double>());

        if (j.contains("stress_constraints"))
            for (const auto& jc : j.at("stress_constraints")) {
                Constraint c;
                c.name = jc.at("name").get<std::string>();
                c.model = load_model(
                    resolve_reference(jc.at("model").get<std::string>(), base_dir));
                if (jc.contains("limit"))
                    c.limit = jc.at("limit").get<double>();
                else if (sigma_adm)
                    c.limit = *sigma_adm;
                else
                    throw InputError("stress constraint '" + c.name + "' has no "
                                     "limit and no yield strength / safety factor "
                                     "is given");
                file.problem.constraints.push_back(std::move(c));
            }

        if (j.contains("deflection_constraint")) {
            const auto& jc = j.at("deflection_constraint");
            Constraint c;
            c.name = jc.at("name").get<std::string>();
            c.model = load_model(
                resolve_reference(jc.at("model").get<std::string>(), base_dir));
            if (jc.contains("limit"))
                c.limit = jc.at("limit").get<double>();
            else if (j.contains("deflection_limit_mm"))
                c.limit = j.at("deflection_limit_mm").get<double>();
            else if (j.contains("wingspan_mm"))
                c.limit = deflection_limit(j.at("wingspan_mm").get<double>());
            else
                throw InputError("deflection constraint '" + c.name + "' has no "
                                 "limit; give limit, deflection_limit_mm or "
                                 "wingspan_mm");
            file.problem.constraints.push_back(std::move(c));
        }

        file.problem.lower.assign(n, -1.0);
        file.problem.upper.assign(n, 1.0);
        if (j.contains("bounds")) {
            file.problem.lower = j.at("bounds").at("lower").get<std::vector<double>>();
            file.problem.upper = j.at("bounds").at("upper").get<std::vector<double>>();
        }

        file.x0.assign(n, 0.0);
        if (j.contains("x0")) file.x0 = j.at("x0").get<std::vector<double>>();

        if (j.contains("options")) {
            const auto& jo = j.at("options");
            file.options.feasibility_tol =
                jo.value("feasibility_tol", file.options.feasibility_tol);
            file.options.kkt_tol = jo.value("kkt_tol", file.options.kkt_tol);
            file.options.max_outer = jo.value("max_outer", file.options.max_outer);
            file.options.max_inner = jo.value("max_inner", file.options.max_inner);
            file.options.multistart = jo.value("multistart", file.options.multistart);
            file.options.seed = jo.value("seed", file.options.seed);
            file.options.active_margin =
                jo.value("active_margin", file.options.active_margin);
        }

        if (j.contains("fixed_masses"))
            for (const auto& [name, mass] : j.at("fixed_masses").items())
                file.fixed_masses[name] = mass.get<double>();
        if (j.contains("reference_total_kg"))
            file.reference_total = j.at("reference_total_kg").get<double>();
    } catch (const json::exception& e) {
        throw InputError(std::string("problem JSON: ") + e.what());
    }

    file.problem.validate();
    if (file.space && file.space->labels() != file.problem.objective.labels)
        throw InputError("the problem's design space does not match its models");
    if (file.x0.size() != file.problem.n_vars())
        throw InputError("x0 must give one value per variable");
    validate_options(file.options);
    return file;
}

ProblemFile load_problem_file(const std::string& path) {
    return problem_from_json_text(detail::read_text_file(path),
                                  std::filesystem::path(path).parent_path().string());
}

std::string result_to_json_text(const SizingResult& result, const MassReport* report) {
    json j;
    j["x_opt"] = result.x_opt;
    if (!result.physical_opt.empty()) {
        j["physical_opt"] = json::object();
        for (const auto& [name, value] : result.physical_opt)
            j["physical_opt"][name] = value;
    }
    j["objective_value"] = result.objective_value;
    j["constraints"] = json::array();
    for (const ConstraintStatus& c : result.constraint_status)
        j["constraints"].push_back({{"name", c.name},
                                    {"value", c.value},
                                    {"limit", c.limit},
                                    {"margin", c.margin},
                                    {"active", c.active},
                                    {"multiplier", c.multiplier}});
    j["active_set"] = result.active_set;
    j["converged"] = result.converged;
    j["feasible"] = result.feasible;
    j["iterations"] = result.iterations;
    j["starts_tried"] = result.starts_tried;
    j["winning_start"] = result.winning_start;
    j["kkt_residual"] = result.kkt_residual;
    if (report) {
        json jr;
        jr["optimum_mass_kg"] = report->optimum_mass;
        jr["fixed_masses_kg"] = json::object();
        for (const auto& [name, mass] : report->fixed_masses)
            jr["fixed_masses_kg"][name] = mass;
        jr["total_kg"] = report->total;
        if (report->reference_total) jr["reference_total_kg"] = *report->reference_total;
        if (report->saving) jr["saving_kg"] = *report->saving;
        if (report->saving_fraction) jr["saving_fraction"] = *report->saving_fraction;
        j["mass_report"] = std::move(jr);
    }
    return j.dump(2) + "\n";
}

} // namespace boxwing
