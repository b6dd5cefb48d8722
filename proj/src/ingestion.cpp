#include "boxwing/ingestion.hpp"

#include "boxwing/errors.hpp"
#include "boxwing/stats.hpp"

#include <cmath>
#include <set>

namespace boxwing {

ResponseDataset evaluate_design(const DesignMatrix& design,
                                const std::vector<PolynomialSurrogate>& models,
                                const NoiseSpec* noise) {
    design.validate();
    if (models.empty()) throw InputError("no models to evaluate");
    std::set<std::string> names;
    for (const PolynomialSurrogate& m : models) {
        m.validate();
        if (m.labels != design.labels)
            throw InputError("model " + m.response_name + " expects variables [" +
                             [&] {
                                 std::string s;
                                 for (const auto& l : m.labels)
                                     s += (s.empty() ? "" : ",") + l;
                                 return s;
                             }() +
                             "], which do not match the design");
        if (!names.insert(m.response_name).second)
            throw InputError("two models share the response name " + m.response_name);
    }

    ResponseDataset dataset;
    dataset.design = design;
    for (const PolynomialSurrogate& m : models) {
        std::vector<double> values;
        values.reserve(design.n_rows());
        for (const auto& row : design.rows) values.push_back(m.evaluate(row));
        dataset.responses[m.response_name] = std::move(values);
    }

    if (noise) {
        // One sampler per response, keyed off the response name so adding a
        // model does not shift the draws of the others.
        for (const auto& [name, sigma] : noise->sigma_by_response) {
            auto it = dataset.responses.find(name);
            if (it == dataset.responses.end())
                throw InputError("noise sigma given for unknown response '" + name + "'");
            if (!(sigma >= 0.0) || !std::isfinite(sigma))
                throw InputError("noise sigma for " + name + " must be >= 0");
            if (sigma == 0.0) continue;
            stats::GaussianSampler sampler(noise->seed ^ stats::fnv1a64(name));
            for (double& v : it->second) v += sampler.next(sigma);
        }
    }
    dataset.validate();
    return dataset;
}

ResponseDataset join_external(const DesignMatrix& design, const std::string& csv_path) {
    design.validate();
    const ResponseDataset external = read_dataset_csv(csv_path);
    if (external.design.labels != design.labels)
        throw InputError("'" + csv_path + "': variable columns do not match the design");

    constexpr double tol = 1e-9;
    auto matches = [&](const std::vector<double>& a, const std::vector<double>& b) {
        for (std::size_t i = 0; i < a.size(); ++i)
            if (std::abs(a[i] - b[i]) > tol) return false;
        return true;
    };

    std::vector<bool> used(external.design.n_rows(), false);
    std::vector<std::size_t> match_of(design.n_rows());
    for (std::size_t d = 0; d < design.n_rows(); ++d) {
        std::size_t found = external.design.n_rows();
        for (std::size_t e = 0; e < external.design.n_rows(); ++e) {
            if (!matches(design.rows[d], external.design.rows[e])) continue;
            if (found != external.design.n_rows())
                throw InputError("'" + csv_path + "': data rows " +
                                 std::to_string(found + 1) + " and " +
                                 std::to_string(e + 1) +
                                 " both match design row " + std::to_string(d + 1));
            found = e;
        }
        if (found == external.design.n_rows())
            throw InputError("'" + csv_path + "': no data row matches design row " +
                             std::to_string(d + 1));
        if (used[found])
            throw InputError("'" + csv_path + "': data row " +
                             std::to_string(found + 1) +
                             " matches more than one design row (design rows "
                             "must be distinct)");
        used[found] = true;
        match_of[d] = found;
    }
    for (std::size_t e = 0; e < used.size(); ++e)
        if (!used[e])
            throw InputError("'" + csv_path + "': data row " + std::to_string(e + 1) +
                             " matches no design row");

    ResponseDataset joined;
    joined.design = design;
    for (const auto& [name, values] : external.responses) {
        std::vector<double> ordered(design.n_rows());
        for (std::size_t d = 0; d < design.n_rows(); ++d)
            ordered[d] = values[match_of[d]];
        joined.responses[name] = std::move(ordered);
    }
    joined.validate();
    return joined;
}

} // namespace boxwing
