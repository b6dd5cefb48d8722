#include "boxwing/doe.hpp"

#include "boxwing/csv.hpp"
#include "boxwing/errors.hpp"

#include <cmath>
#include <map>
#include <set>

namespace boxwing {

std::string to_string(Provenance p) {
    switch (p) {
    case Provenance::factorial: return "factorial";
    case Provenance::center: return "center";
    case Provenance::axial_face: return "axial_face";
    case Provenance::external: return "external";
    }
    throw InputError("invalid provenance value");
}

Provenance provenance_from_string(const std::string& s) {
    if (s == "factorial") return Provenance::factorial;
    if (s == "center") return Provenance::center;
    if (s == "axial_face") return Provenance::axial_face;
    if (s == "external") return Provenance::external;
    throw InputError("unknown provenance '" + s + "'");
}

std::size_t DesignMatrix::count(Provenance p) const {
    std::size_t n = 0;
    for (Provenance q : provenance)
        if (q == p) ++n;
    return n;
}

void DesignMatrix::validate() const {
    if (labels.empty()) throw InputError("design matrix has no variables");
    std::set<std::string> seen(labels.begin(), labels.end());
    if (seen.size() != labels.size())
        throw InputError("design matrix labels are not unique");
    if (provenance.size() != rows.size())
        throw InputError("design matrix provenance length does not match row count");
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != labels.size())
            throw InputError("design matrix row " + std::to_string(i) +
                             " has wrong width");
        for (double v : rows[i])
            if (!std::isfinite(v))
                throw InputError("design matrix row " + std::to_string(i) +
                                 " contains a non-finite value");
    }
}

namespace {

void check_row_budget(std::size_t n_vars, std::size_t extra) {
    if (n_vars >= 64 ||
        (std::uint64_t{1} << n_vars) + extra > kMaxDesignRows)
        throw InputError("design would exceed the row limit of " +
                         std::to_string(kMaxDesignRows) + " points");
}

} // namespace

DesignMatrix full_factorial(const std::vector<std::string>& labels) {
    if (labels.empty()) throw InputError("cannot build a design with no variables");
    check_row_budget(labels.size(), 0);
    const std::size_t n = labels.size();
    const std::uint64_t total = std::uint64_t{1} << n;

    DesignMatrix m;
    m.labels = labels;
    m.rows.reserve(total);
    m.provenance.assign(total, Provenance::factorial);
    for (std::uint64_t i = 0; i < total; ++i) {
        std::vector<double> row(n);
        // Treat i as an n-digit base-2 counter: the first label is the most
        // significant digit, 0 maps to -1, so -1 sorts before +1 and the
        // last label flips fastest.
        for (std::size_t j = 0; j < n; ++j) {
            const std::uint64_t bit = (i >> (n - 1 - j)) & 1u;
            row[j] = bit ? 1.0 : -1.0;
        }
        m.rows.push_back(std::move(row));
    }
    return m;
}

DesignMatrix full_factorial(const DesignSpace& space) {
    space.validate();
    return full_factorial(space.labels());
}

DesignMatrix ccf(const std::vector<std::string>& labels, std::size_t center_replicates) {
    if (labels.empty()) throw InputError("cannot build a design with no variables");
    check_row_budget(labels.size(), center_replicates + 2 * labels.size());

    DesignMatrix m = full_factorial(labels);
    const std::size_t n = labels.size();
    for (std::size_t i = 0; i < center_replicates; ++i) {
        m.rows.emplace_back(n, 0.0);
        m.provenance.push_back(Provenance::center);
    }
    for (std::size_t j = 0; j < n; ++j) {
        for (double level : {-1.0, 1.0}) {
            std::vector<double> row(n, 0.0);
            row[j] = level;
            m.rows.push_back(std::move(row));
            m.provenance.push_back(Provenance::axial_face);
        }
    }
    return m;
}

DesignMatrix ccf(const DesignSpace& space, std::size_t center_replicates) {
    space.validate();
    return ccf(space.labels(), center_replicates);
}

DesignMatrix deduplicate(const DesignMatrix& matrix) {
    matrix.validate();
    DesignMatrix out;
    out.labels = matrix.labels;
    std::set<std::vector<double>> seen;
    for (std::size_t i = 0; i < matrix.rows.size(); ++i) {
        if (seen.insert(matrix.rows[i]).second) {
            out.rows.push_back(matrix.rows[i]);
            out.provenance.push_back(matrix.provenance[i]);
        }
    }
    return out;
}

void write_design_csv(const DesignMatrix& matrix, const std::string& path,
                      bool with_provenance, bool allow_overwrite) {
    matrix.validate();
    csv::Table t;
    t.header = matrix.labels;
    if (with_provenance) t.header.push_back("provenance");
    t.rows.reserve(matrix.n_rows());
    for (std::size_t i = 0; i < matrix.n_rows(); ++i) {
        std::vector<std::string> row;
        row.reserve(t.header.size());
        for (double v : matrix.rows[i]) row.push_back(csv::format_double(v));
        if (with_provenance) row.push_back(to_string(matrix.provenance[i]));
        t.rows.push_back(std::move(row));
    }
    csv::write(t, path, allow_overwrite);
}

DesignMatrix read_design_csv(const std::string& path) {
    const csv::Table t = csv::read(path);
    const bool has_prov = t.has_column("provenance");
    DesignMatrix m;
    for (const std::string& name : t.header)
        if (name != "provenance") m.labels.push_back(name);
    if (has_prov && t.header.back() != "provenance")
        throw InputError("'" + path + "': the provenance column must come last");

    const std::size_t width = m.labels.size();
    m.rows.reserve(t.rows.size());
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        std::vector<double> row(width);
        for (std::size_t j = 0; j < width; ++j)
            row[j] = csv::parse_double(t.rows[i][j],
                                       path + " row " + std::to_string(i + 1));
        m.rows.push_back(std::move(row));
        m.provenance.push_back(has_prov ? provenance_from_string(t.rows[i][width])
                                        : Provenance::external);
    }
    m.validate();
    return m;
}

} // namespace boxwing
