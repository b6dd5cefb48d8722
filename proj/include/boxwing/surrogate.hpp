#pragma once

#include "boxwing/doe.hpp"

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace boxwing {

enum class ResponseUnit { MPa, mm, kg };

std::string to_string(ResponseUnit u);
ResponseUnit response_unit_from_string(const std::string& s);

// One monomial: coefficient * prod(x_label^exponent). Exponents are 1 or 2;
// a squared factor must be the term's only factor (pure quadratic). Total
// degree is at most 4 (up to 4-factor interactions).
struct Term {
    std::vector<std::pair<std::string, int>> factors;
    double coefficient = 0.0;

    int degree() const;
    std::string key() const; // canonical "x1*x2" / "x2^2" form
    void validate(const std::vector<std::string>& labels) const;
};

// Response surface: intercept + sparse monomial terms over an ordered label
// set. Immutable in practice; evaluation, gradient and Hessian are exact.
struct PolynomialSurrogate {
    std::string response_name;
    ResponseUnit unit = ResponseUnit::kg;
    std::vector<std::string> labels;
    double intercept = 0.0;
    std::vector<Term> terms;
    std::optional<double> residual_std;   // metadata from the owning fit
    std::optional<double> mean_residual;  // metadata from the owning fit

    void validate() const; // throws InputError (also checks duplicate terms)

    double evaluate(std::span<const double> x) const;
    std::vector<double> gradient(std::span<const double> x) const;
    // Dense symmetric Hessian, row-major n*n.
    std::vector<double> hessian(std::span<const double> x) const;

    // Partial evaluation: fixes the given labels at the given codified
    // values and returns the reduced model over the remaining labels.
    PolynomialSurrogate restrict_to(const std::map<std::string, double>& fixed) const;

    std::size_t index_of(const std::string& label) const;
};

// Design points joined with response vectors (one value per design row).
struct ResponseDataset {
    DesignMatrix design;
    std::map<std::string, std::vector<double>> responses;

    const std::vector<double>& response(const std::string& name) const;
    void validate() const; // throws InputError
};

// Parses a coefficient subscript (a run of digits) against a label set.
// The digits must be a concatenation of label numbers in non-decreasing
// order forming exactly `n_factors` factors; two equal labels form the pure
// quadratic and are only allowed when n_factors == 2. Exactly one parse must
// exist, otherwise InputError (ambiguous or impossible subscripts are
// rejected, never guessed).
std::vector<std::pair<std::string, int>>
parse_subscript(const std::string& digits, const std::vector<std::string>& labels,
                int n_factors);

// Ordinary least squares via column-pivoted QR. The basis is a list of term
// skeletons (coefficients ignored); an intercept column is always included.
// residual_std uses the N - p denominator (p = basis size + 1).
PolynomialSurrogate fit(const ResponseDataset& dataset, const std::string& response_name,
                        const std::vector<Term>& basis, ResponseUnit unit);

// The term skeletons of an existing model (for refits).
std::vector<Term> basis_of(const PolynomialSurrogate& model);
// Generated bases over a label set.
std::vector<Term> linear_basis(const std::vector<std::string>& labels);
std::vector<Term> two_factor_basis(const std::vector<std::string>& labels);
// linear + all 2-factor interactions + all pure quadratics.
std::vector<Term> quadratic_basis(const std::vector<std::string>& labels);

struct ResidualDiagnostics {
    std::vector<double> residuals; // observed - predicted, in dataset order
    double residual_std = 0.0;
    double mean_residual = 0.0;
    // (theoretical quantile, sorted residual) at plotting positions
    // (i - 0.5)/N; theoretical side is scaled by residual_std.
    std::vector<std::pair<double, double>> qq_pairs;
};

ResidualDiagnostics residual_diagnostics(const PolynomialSurrogate& model,
                                         const ResponseDataset& dataset);

struct CurvatureCheck {
    double factorial_mean = 0.0;
    double center_mean = 0.0;
    double delta = 0.0;     // |factorial_mean - center_mean|
    double threshold = 0.0; // k * s * sqrt(1/Nc + 1/Nf)
    bool significant = false;
};

// Detects response-surface curvature from the factorial-vs-center contrast.
// The significance threshold uses the residual std of a quadratic-free fit
// (intercept + linear + 2-factor interactions), scaled by `multiplier`.
CurvatureCheck curvature_check(const ResponseDataset& dataset,
                               const std::string& response_name,
                               double multiplier = 3.0);

// Model JSON: {"response_name","unit","labels","intercept",
//   "terms":[{"factors":[["x1",1],...],"coefficient":c}],
//   "residual_std"?, "mean_residual"?}
PolynomialSurrogate model_from_json_text(const std::string& text);
std::string model_to_json_text(const PolynomialSurrogate& model);
PolynomialSurrogate load_model_file(const std::string& path);
void write_model_file(const PolynomialSurrogate& model, const std::string& path,
                      bool allow_overwrite);

// Embedded reference models. Ids: prp300.sigma_front, prp300.sigma_rear,
// prp300.uz, prp300.mass, prosib.sigma_front, prosib.sigma_rear, prosib.uz,
// prosib.mass.
std::vector<std::string> builtin_model_ids();
bool is_builtin_model(const std::string& id);
PolynomialSurrogate load_builtin_model(const std::string& id);
// Resolves a model reference: existing file path, else builtin id.
PolynomialSurrogate load_model(const std::string& path_or_id);

// Dataset CSV: design label columns (+ optional provenance), then response
// columns. Known response names: sigma_F_MPa, sigma_R_MPa, uz_mm, mass_kg;
// any other trailing column is accepted as a response too.
void write_dataset_csv(const ResponseDataset& dataset, const std::string& path,
                       bool allow_overwrite);
ResponseDataset read_dataset_csv(const std::string& path);

} // namespace boxwing
