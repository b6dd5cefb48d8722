#include "boxwing/sensitivity.hpp"

#include "boxwing/csv.hpp"
#include "boxwing/errors.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace boxwing {

namespace {

std::string joined(const std::vector<std::string>& labels) {
    std::string s;
    for (const std::string& l : labels) {
        if (!s.empty()) s += '*';
        s += l;
    }
    return s;
}

// Signed two-level contrast over rows whose level is the sign of the product
// of the chosen coordinates. Every coordinate must sit exactly on -1 or +1.
double contrast(const ResponseDataset& dataset, const std::string& response_name,
                const std::vector<std::string>& labels) {
    dataset.validate();
    if (labels.empty()) throw InputError("effect needs at least one factor");
    if (labels.size() > 3)
        throw InputError("effects are defined for 1 to 3 factors, got " +
                         std::to_string(labels.size()));
    std::set<std::string> unique(labels.begin(), labels.end());
    if (unique.size() != labels.size())
        throw InputError("effect factors must be distinct: " + joined(labels));

    std::vector<std::size_t> idx;
    for (const std::string& l : labels) {
        std::size_t i = 0;
        for (; i < dataset.design.labels.size(); ++i)
            if (dataset.design.labels[i] == l) break;
        if (i == dataset.design.labels.size())
            throw InputError("dataset has no variable '" + l + "'");
        idx.push_back(i);
    }

    const std::vector<double>& y = dataset.response(response_name);
    const std::size_t n_rows = dataset.design.n_rows();
    if (n_rows == 0) throw InputError("effect over an empty dataset");
    double sum_low = 0.0, sum_high = 0.0;
    std::size_t n_low = 0, n_high = 0;
    for (std::size_t r = 0; r < n_rows; ++r) {
        if (dataset.design.provenance[r] != Provenance::factorial)
            throw InputError("effects are defined on factorial rows only; filter "
                             "the dataset first");
        double sign = 1.0;
        for (std::size_t i : idx) {
            const double v = dataset.design.rows[r][i];
            if (v != -1.0 && v != 1.0)
                throw InputError("effect needs coordinates at -1 or +1, found " +
                                 csv::format_double(v));
            sign *= v;
        }
        if (sign < 0.0) {
            sum_low += y[r];
            ++n_low;
        } else {
            sum_high += y[r];
            ++n_high;
        }
    }
    if (n_low != n_high)
        throw InputError("effect levels are unbalanced (" + std::to_string(n_low) +
                         " low vs " + std::to_string(n_high) + " high rows)");
    return std::abs(sum_low - sum_high) / static_cast<double>(n_low);
}

} // namespace

double main_effect(const ResponseDataset& dataset, const std::string& response_name,
                   const std::string& label) {
    return contrast(dataset, response_name, {label});
}

double interaction_effect(const ResponseDataset& dataset, const std::string& response_name,
                          const std::vector<std::string>& labels) {
    if (labels.size() < 2)
        throw InputError("an interaction effect needs at least two factors");
    return contrast(dataset, response_name, labels);
}

ResponseDataset factorial_subset(const ResponseDataset& dataset) {
    dataset.validate();
    ResponseDataset out;
    out.design.labels = dataset.design.labels;
    for (const auto& [name, values] : dataset.responses) out.responses[name] = {};
    for (std::size_t r = 0; r < dataset.design.n_rows(); ++r) {
        if (dataset.design.provenance[r] != Provenance::factorial) continue;
        out.design.rows.push_back(dataset.design.rows[r]);
        out.design.provenance.push_back(Provenance::factorial);
        for (const auto& [name, values] : dataset.responses)
            out.responses[name].push_back(values[r]);
    }
    if (out.design.rows.empty())
        throw InputError("dataset has no factorial rows");
    return out;
}

EffectTable pareto(const std::vector<std::pair<std::vector<std::string>, double>>& effects,
                   const std::string& response_name, double threshold) {
    if (effects.empty()) throw InputError("no effects to rank");
    if (!(threshold >= 0.0) || !std::isfinite(threshold))
        throw InputError("the significance threshold must be a non-negative number");

    EffectTable table;
    table.response_name = response_name;
    table.threshold = threshold;
    for (const auto& [labels, sigma] : effects) {
        if (labels.empty()) throw InputError("an effect entry has no factors");
        if (!std::isfinite(sigma) || sigma < 0.0)
            throw InputError("effect " + joined(labels) +
                             " has an invalid magnitude");
        table.entries.push_back({labels, sigma, 0.0, false});
    }
    std::sort(table.entries.begin(), table.entries.end(),
              [](const EffectEntry& a, const EffectEntry& b) {
                  if (a.sigma != b.sigma) return a.sigma > b.sigma;
                  return a.factor_labels < b.factor_labels;
              });
    const double sigma_max = table.entries.front().sigma;
    if (sigma_max <= 0.0)
        throw InputError("all effects are zero; nothing to normalize");
    for (EffectEntry& e : table.entries) {
        e.normalized = e.sigma / sigma_max;
        e.significant = e.normalized >= threshold;
    }
    return table;
}

LevelMeans level_means(const ResponseDataset& dataset, const std::string& response_name,
                       const std::string& label) {
    dataset.validate();
    std::size_t i = 0;
    for (; i < dataset.design.labels.size(); ++i)
        if (dataset.design.labels[i] == label) break;
    if (i == dataset.design.labels.size())
        throw InputError("dataset has no variable '" + label + "'");

    const std::vector<double>& y = dataset.response(response_name);
    double sum_low = 0.0, sum_high = 0.0;
    std::size_t n_low = 0, n_high = 0;
    for (std::size_t r = 0; r < dataset.design.n_rows(); ++r) {
        const double v = dataset.design.rows[r][i];
        if (v == -1.0) {
            sum_low += y[r];
            ++n_low;
        } else if (v == 1.0) {
            sum_high += y[r];
            ++n_high;
        }
    }
    if (n_low == 0 || n_high == 0)
        throw InputError("variable " + label + " is not observed at both levels");
    return {sum_low / static_cast<double>(n_low), sum_high / static_cast<double>(n_high)};
}

void write_effect_table_csv(const EffectTable& table, const std::string& path,
                            bool allow_overwrite) {
    csv::Table t;
    t.header = {"factors", "sigma", "normalized", "significant"};
    for (const EffectEntry& e : table.entries)
        t.rows.push_back({joined(e.factor_labels), csv::format_double(e.sigma),
                          csv::format_double(e.normalized),
                          e.significant ? "true" : "false"});
    csv::write(t, path, allow_overwrite);
}

void write_mean_plot_csv(const ResponseDataset& dataset, const std::string& response_name,
                         const std::string& path, bool allow_overwrite) {
    csv::Table t;
    t.header = {"label", "level", "mean"};
    for (const std::string& label : dataset.design.labels) {
        const LevelMeans m = level_means(dataset, response_name, label);
        t.rows.push_back({label, "-1", csv::format_double(m.mean_low)});
        t.rows.push_back({label, "1", csv::format_double(m.mean_high)});
    }
    csv::write(t, path, allow_overwrite);
}

void write_youden_csv(const ResponseDataset& dataset, const std::string& response_name,
                      const std::string& path, bool allow_overwrite) {
    csv::Table t;
    t.header = {"label", "mean_low", "mean_high"};
    for (const std::string& label : dataset.design.labels) {
        const LevelMeans m = level_means(dataset, response_name, label);
        t.rows.push_back({label, csv::format_double(m.mean_low),
                          csv::format_double(m.mean_high)});
    }
    csv::write(t, path, allow_overwrite);
}

void write_scatter_csv(const ResponseDataset& dataset, const std::string& response_name,
                       const std::string& path, bool allow_overwrite) {
    dataset.validate();
    const std::vector<double>& y = dataset.response(response_name);
    csv::Table t;
    t.header = {"label", "x", "response"};
    for (std::size_t i = 0; i < dataset.design.labels.size(); ++i)
        for (std::size_t r = 0; r < dataset.design.n_rows(); ++r)
            t.rows.push_back({dataset.design.labels[i],
                              csv::format_double(dataset.design.rows[r][i]),
                              csv::format_double(y[r])});
    csv::write(t, path, allow_overwrite);
}

} // namespace boxwing
