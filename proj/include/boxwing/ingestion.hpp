#pragma once

#include "boxwing/surrogate.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace boxwing {

// Optional deterministic Gaussian perturbation applied to generated
// responses (emulates measurement/solver scatter in tests).
struct NoiseSpec {
    std::uint64_t seed = 0;
    std::map<std::string, double> sigma_by_response; // response name -> sigma
};

// Evaluates the given models at every design row, in row order. Each model
// contributes one response column named after its response_name.
ResponseDataset evaluate_design(const DesignMatrix& design,
                                const std::vector<PolynomialSurrogate>& models,
                                const NoiseSpec* noise = nullptr);

// Joins externally produced response rows onto a design. Rows are matched on
// the codified coordinates (tolerance 1e-9 per coordinate), not on order; a
// bijection is required. Missing, duplicate, or unmatched rows raise
// InputError naming the offending design/data row indices.
ResponseDataset join_external(const DesignMatrix& design, const std::string& csv_path);

} // namespace boxwing
