#pragma once

#include "boxwing/surrogate.hpp"

#include <string>
#include <vector>

namespace boxwing {

struct EffectEntry {
    std::vector<std::string> factor_labels; // 1..3 labels
    double sigma = 0.0;       // effect magnitude, response unit
    double normalized = 0.0;  // sigma / sigma_max
    bool significant = false; // normalized >= threshold
};

struct EffectTable {
    std::string response_name;
    double threshold = 0.1;
    std::vector<EffectEntry> entries; // sorted by sigma descending
};

// Two-level contrast of a single factor over the factorial subset:
// |sum r(x_l=-1) - sum r(x_l=+1)| / 2^(n-1). The dataset must contain only
// factorial rows (use the provenance tags to filter first) with both levels
// equally represented.
double main_effect(const ResponseDataset& dataset, const std::string& response_name,
                   const std::string& label);

// Same contrast on the sign of the product of 2 or 3 distinct factors.
double interaction_effect(const ResponseDataset& dataset, const std::string& response_name,
                          const std::vector<std::string>& labels);

// Keeps only factorial-tagged rows of a dataset.
ResponseDataset factorial_subset(const ResponseDataset& dataset);

// Sorts effects descending (ties by lexicographic factor set), normalizes by
// the largest, and flags entries with normalized >= threshold.
EffectTable pareto(const std::vector<std::pair<std::vector<std::string>, double>>& effects,
                   const std::string& response_name, double threshold = 0.1);

struct LevelMeans {
    double mean_low = 0.0;  // response mean at x_label = -1
    double mean_high = 0.0; // response mean at x_label = +1
};

LevelMeans level_means(const ResponseDataset& dataset, const std::string& response_name,
                       const std::string& label);

// Plot-data exports (CSV; no rendering).
void write_effect_table_csv(const EffectTable& table, const std::string& path,
                            bool allow_overwrite);
// label,level,mean — two rows per factor.
void write_mean_plot_csv(const ResponseDataset& dataset, const std::string& response_name,
                         const std::string& path, bool allow_overwrite);
// label,mean_low,mean_high — one row per factor.
void write_youden_csv(const ResponseDataset& dataset, const std::string& response_name,
                      const std::string& path, bool allow_overwrite);
// label,x,response — one row per (factor, design row).
void write_scatter_csv(const ResponseDataset& dataset, const std::string& response_name,
                       const std::string& path, bool allow_overwrite);

} // namespace boxwing
