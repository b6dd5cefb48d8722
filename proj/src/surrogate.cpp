#include "boxwing/surrogate.hpp"

#include "boxwing/csv.hpp"
#include "boxwing/errors.hpp"
#include "boxwing/stats.hpp"
#include "file_util.hpp"

#include <json.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <set>

namespace boxwing {

using nlohmann::json;

std::string to_string(ResponseUnit u) {
    switch (u) {
    case ResponseUnit::MPa: return "MPa";
    case ResponseUnit::mm: return "mm";
    case ResponseUnit::kg: return "kg";
    }
    throw InputError("invalid response unit value");
}

ResponseUnit response_unit_from_string(const std::string& s) {
    if (s == "MPa") return ResponseUnit::MPa;
    if (s == "mm") return ResponseUnit::mm;
    if (s == "kg") return ResponseUnit::kg;
    throw InputError("unknown response unit '" + s + "' (expected MPa, mm or kg)");
}

namespace {

// Orders "x2" before "x13": compare the non-digit prefix, then the numeric
// suffix; labels without a numeric suffix fall back to plain string order.
bool label_less(const std::string& a, const std::string& b) {
    auto split = [](const std::string& s) {
        std::size_t i = s.size();
        while (i > 0 && std::isdigit(static_cast<unsigned char>(s[i - 1]))) --i;
        long num = -1;
        if (i < s.size()) num = std::stol(s.substr(i));
        return std::pair<std::string, long>(s.substr(0, i), num);
    };
    const auto [pa, na] = split(a);
    const auto [pb, nb] = split(b);
    if (pa != pb) return pa < pb;
    if (na != nb) return na < nb;
    return a < b;
}

std::size_t index_in(const std::vector<std::string>& labels, const std::string& label) {
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == label) return i;
    throw InputError("unknown variable label '" + label + "'");
}

double term_value(const Term& term, std::span<const double> x,
                  const std::vector<std::string>& labels) {
    double v = 1.0;
    for (const auto& [label, exp] : term.factors) {
        const double xi = x[index_in(labels, label)];
        v *= (exp == 2) ? xi * xi : xi;
    }
    return v;
}

} // namespace

int Term::degree() const {
    int d = 0;
    for (const auto& [label, exp] : factors) d += exp;
    return d;
}

std::string Term::key() const {
    auto sorted = factors;
    std::sort(sorted.begin(), sorted.end(),
              [](const auto& a, const auto& b) { return label_less(a.first, b.first); });
    std::string k;
    for (const auto& [label, exp] : sorted) {
        if (!k.empty()) k += '*';
        k += label;
        if (exp == 2) k += "^2";
    }
    return k;
}

void Term::validate(const std::vector<std::string>& labels) const {
    if (factors.empty())
        throw InputError("a term must have at least one factor");
    if (!std::isfinite(coefficient))
        throw InputError("term " + key() + " has a non-finite coefficient");
    std::set<std::string> seen;
    for (const auto& [label, exp] : factors) {
        index_in(labels, label);
        if (exp != 1 && exp != 2)
            throw InputError("term " + key() + ": exponents must be 1 or 2");
        if (exp == 2 && factors.size() != 1)
            throw InputError("term " + key() +
                             ": a squared factor must be the term's only factor");
        if (!seen.insert(label).second)
            throw InputError("term " + key() + " repeats variable " + label);
    }
    if (degree() > 4)
        throw InputError("term " + key() + " exceeds the maximum degree of 4");
}

void PolynomialSurrogate::validate() const {
    if (response_name.empty()) throw InputError("model has no response name");
    if (labels.empty()) throw InputError("model has no variables");
    std::set<std::string> unique(labels.begin(), labels.end());
    if (unique.size() != labels.size())
        throw InputError("model labels are not unique");
    if (!std::isfinite(intercept))
        throw InputError("model intercept is not finite");
    std::set<std::string> keys;
    for (const Term& t : terms) {
        t.validate(labels);
        if (!keys.insert(t.key()).second)
            throw InputError("model has duplicate term " + t.key());
    }
    if (residual_std && (!std::isfinite(*residual_std) || *residual_std < 0.0))
        throw InputError("model residual_std must be finite and non-negative");
    if (mean_residual && !std::isfinite(*mean_residual))
        throw InputError("model mean_residual must be finite");
}

std::size_t PolynomialSurrogate::index_of(const std::string& label) const {
    return index_in(labels, label);
}

double PolynomialSurrogate::evaluate(std::span<const double> x) const {
    if (x.size() != labels.size())
        throw InputError("model " + response_name + " expects " +
                         std::to_string(labels.size()) + " values, got " +
                         std::to_string(x.size()));
    double v = intercept;
    for (const Term& t : terms) v += t.coefficient * term_value(t, x, labels);
    return v;
}

std::vector<double> PolynomialSurrogate::gradient(std::span<const double> x) const {
    if (x.size() != labels.size())
        throw InputError("model " + response_name + " expects " +
                         std::to_string(labels.size()) + " values, got " +
                         std::to_string(x.size()));
    std::vector<double> g(labels.size(), 0.0);
    for (const Term& t : terms) {
        if (t.factors.size() == 1 && t.factors[0].second == 2) {
            const std::size_t i = index_in(labels, t.factors[0].first);
            g[i] += 2.0 * t.coefficient * x[i];
            continue;
        }
        for (std::size_t a = 0; a < t.factors.size(); ++a) {
            double prod = t.coefficient;
            for (std::size_t b = 0; b < t.factors.size(); ++b)
                if (b != a) prod *= x[index_in(labels, t.factors[b].first)];
            g[index_in(labels, t.factors[a].first)] += prod;
        }
    }
    return g;
}

std::vector<double> PolynomialSurrogate::hessian(std::span<const double> x) const {
    if (x.size() != labels.size())
        throw InputError("model " + response_name + " expects " +
                         std::to_string(labels.size()) + " values, got " +
                         std::to_string(x.size()));
    const std::size_t n = labels.size();
    std::vector<double> h(n * n, 0.0);
    for (const Term& t : terms) {
        if (t.factors.size() == 1 && t.factors[0].second == 2) {
            const std::size_t i = index_in(labels, t.factors[0].first);
            h[i * n + i] += 2.0 * t.coefficient;
            continue;
        }
        if (t.factors.size() < 2) continue;
        for (std::size_t a = 0; a + 1 < t.factors.size(); ++a) {
            for (std::size_t b = a + 1; b < t.factors.size(); ++b) {
                double prod = t.coefficient;
                for (std::size_t c = 0; c < t.factors.size(); ++c)
                    if (c != a && c != b)
                        prod *= x[index_in(labels, t.factors[c].first)];
                const std::size_t i = index_in(labels, t.factors[a].first);
                const std::size_t j = index_in(labels, t.factors[b].first);
                h[i * n + j] += prod;
                h[j * n + i] += prod;
            }
        }
    }
    return h;
}

PolynomialSurrogate
PolynomialSurrogate::restrict_to(const std::map<std::string, double>& fixed) const {
    validate();
    for (const auto& [label, value] : fixed) {
        index_in(labels, label);
        if (!std::isfinite(value))
            throw InputError("fixed value for " + label + " is not finite");
    }
    PolynomialSurrogate out;
    out.response_name = response_name;
    out.unit = unit;
    for (const std::string& label : labels)
        if (!fixed.count(label)) out.labels.push_back(label);
    if (out.labels.empty())
        throw InputError("cannot fix every variable of model " + response_name);
    out.intercept = intercept;

    std::map<std::string, std::size_t> merged; // key -> index into out.terms
    for (const Term& t : terms) {
        double scale = 1.0;
        Term reduced;
        for (const auto& [label, exp] : t.factors) {
            auto it = fixed.find(label);
            if (it == fixed.end()) {
                reduced.factors.push_back({label, exp});
            } else {
                scale *= (exp == 2) ? it->second * it->second : it->second;
            }
        }
        const double c = t.coefficient * scale;
        if (reduced.factors.empty()) {
            out.intercept += c;
            continue;
        }
        reduced.coefficient = c;
        const std::string k = reduced.key();
        auto it = merged.find(k);
        if (it == merged.end()) {
            merged.emplace(k, out.terms.size());
            out.terms.push_back(std::move(reduced));
        } else {
            out.terms[it->second].coefficient += c;
        }
    }
    out.validate();
    return out;
}

const std::vector<double>& ResponseDataset::response(const std::string& name) const {
    auto it = responses.find(name);
    if (it == responses.end()) {
        std::string known;
        for (const auto& [k, v] : responses) {
            if (!known.empty()) known += ", ";
            known += k;
        }
        throw InputError("dataset has no response '" + name + "' (available: " +
                         (known.empty() ? "none" : known) + ")");
    }
    return it->second;
}

void ResponseDataset::validate() const {
    design.validate();
    if (responses.empty()) throw InputError("dataset has no response columns");
    for (const auto& [name, values] : responses) {
        if (name.empty()) throw InputError("dataset has an unnamed response");
        if (values.size() != design.n_rows())
            throw InputError("response " + name + " has " +
                             std::to_string(values.size()) + " values for " +
                             std::to_string(design.n_rows()) + " design rows");
        for (double v : values)
            if (!std::isfinite(v))
                throw InputError("response " + name + " contains a non-finite value");
    }
}

std::vector<std::pair<std::string, int>>
parse_subscript(const std::string& digits, const std::vector<std::string>& labels,
                int n_factors) {
    if (digits.empty()) throw InputError("empty coefficient subscript");
    for (char c : digits)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw InputError("subscript '" + digits + "' contains a non-digit");
    if (n_factors < 1 || n_factors > 4)
        throw InputError("a term may have 1 to 4 factors, not " +
                         std::to_string(n_factors));

    // Each label contributes its numeric suffix as a token.
    struct Token {
        std::string text;
        long value;
        std::string label;
    };
    std::vector<Token> tokens;
    std::set<std::string> texts;
    for (const std::string& label : labels) {
        std::size_t i = label.size();
        while (i > 0 && std::isdigit(static_cast<unsigned char>(label[i - 1]))) --i;
        if (i == label.size())
            throw InputError("label '" + label + "' has no numeric suffix, so "
                             "subscripts cannot reference it");
        const std::string text = label.substr(i);
        if (!texts.insert(text).second)
            throw InputError("two labels share the subscript number " + text);
        tokens.push_back({text, std::stol(text), label});
    }

    // Depth-first split of the digit run into exactly n_factors tokens in
    // non-decreasing numeric order; a repeated token is only legal as the
    // pure-quadratic pair.
    std::vector<std::vector<std::string>> parses;
    std::vector<std::string> current;
    auto walk = [&](auto&& self, std::size_t pos, long last) -> void {
        if (current.size() == static_cast<std::size_t>(n_factors)) {
            if (pos == digits.size()) parses.push_back(current);
            return;
        }
        for (const Token& tok : tokens) {
            if (digits.compare(pos, tok.text.size(), tok.text) != 0) continue;
            if (tok.value < last) continue;
            if (tok.value == last && !(n_factors == 2 && current.size() == 1))
                continue;
            current.push_back(tok.label);
            self(self, pos + tok.text.size(), tok.value);
            current.pop_back();
        }
    };
    walk(walk, 0, std::numeric_limits<long>::min());

    if (parses.empty())
        throw InputError("subscript '" + digits + "' does not split into " +
                         std::to_string(n_factors) + " factors over the "
                         "available labels");
    if (parses.size() > 1) {
        std::string alts;
        for (const auto& p : parses) {
            if (!alts.empty()) alts += " | ";
            for (std::size_t i = 0; i < p.size(); ++i)
                alts += (i ? "*" : "") + p[i];
        }
        throw InputError("subscript '" + digits + "' is ambiguous: " + alts);
    }

    const std::vector<std::string>& p = parses.front();
    std::vector<std::pair<std::string, int>> factors;
    if (n_factors == 2 && p[0] == p[1]) {
        factors.push_back({p[0], 2});
    } else {
        for (const std::string& label : p) factors.push_back({label, 1});
    }
    return factors;
}

PolynomialSurrogate fit(const ResponseDataset& dataset, const std::string& response_name,
                        const std::vector<Term>& basis, ResponseUnit unit) {
    dataset.validate();
    const std::vector<double>& y_values = dataset.response(response_name);
    const std::vector<std::string>& labels = dataset.design.labels;

    std::set<std::string> keys;
    for (const Term& t : basis) {
        t.validate(labels);
        if (!keys.insert(t.key()).second)
            throw InputError("fit basis contains duplicate term " + t.key());
    }

    const std::size_t n_rows = dataset.design.n_rows();
    const std::size_t n_params = basis.size() + 1;
    if (n_rows < n_params)
        throw NumericalError("fitting " + std::to_string(n_params) +
                             " coefficients needs at least that many rows, got " +
                             std::to_string(n_rows) + "; the system is underdetermined");

    Eigen::MatrixXd X(n_rows, n_params);
    Eigen::VectorXd y(n_rows);
    for (std::size_t i = 0; i < n_rows; ++i) {
        X(i, 0) = 1.0;
        for (std::size_t j = 0; j < basis.size(); ++j)
            X(i, j + 1) = term_value(basis[j], dataset.design.rows[i], labels);
        y(i) = y_values[i];
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
    if (qr.rank() < static_cast<Eigen::Index>(n_params))
        throw NumericalError("least-squares system is rank deficient (rank " +
                             std::to_string(qr.rank()) + " of " +
                             std::to_string(n_params) + "); the design does not "
                             "separate all basis terms");
    const Eigen::VectorXd beta = qr.solve(y);

    PolynomialSurrogate model;
    model.response_name = response_name;
    model.unit = unit;
    model.labels = labels;
    model.intercept = beta(0);
    model.terms = basis;
    for (std::size_t j = 0; j < basis.size(); ++j)
        model.terms[j].coefficient = beta(j + 1);

    const Eigen::VectorXd r = y - X * beta;
    model.mean_residual = r.mean();
    if (n_rows > n_params)
        model.residual_std =
            std::sqrt(r.squaredNorm() / static_cast<double>(n_rows - n_params));
    model.validate();
    return model;
}

std::vector<Term> basis_of(const PolynomialSurrogate& model) {
    std::vector<Term> basis = model.terms;
    for (Term& t : basis) t.coefficient = 0.0;
    return basis;
}

std::vector<Term> linear_basis(const std::vector<std::string>& labels) {
    std::vector<Term> basis;
    for (const std::string& l : labels) basis.push_back({{{l, 1}}, 0.0});
    return basis;
}

std::vector<Term> two_factor_basis(const std::vector<std::string>& labels) {
    std::vector<Term> basis = linear_basis(labels);
    for (std::size_t i = 0; i < labels.size(); ++i)
        for (std::size_t j = i + 1; j < labels.size(); ++j)
            basis.push_back({{{labels[i], 1}, {labels[j], 1}}, 0.0});
    return basis;
}

std::vector<Term> quadratic_basis(const std::vector<std::string>& labels) {
    std::vector<Term> basis = two_factor_basis(labels);
    for (const std::string& l : labels) basis.push_back({{{l, 2}}, 0.0});
    return basis;
}

ResidualDiagnostics residual_diagnostics(const PolynomialSurrogate& model,
                                         const ResponseDataset& dataset) {
    model.validate();
    dataset.validate();
    const std::vector<double>& y = dataset.response(model.response_name);
    const std::size_t n_rows = dataset.design.n_rows();
    const std::size_t n_params = model.terms.size() + 1;
    if (n_rows <= n_params)
        throw InputError("residual diagnostics need more rows than coefficients (" +
                         std::to_string(n_rows) + " rows, " +
                         std::to_string(n_params) + " coefficients)");

    ResidualDiagnostics d;
    d.residuals.reserve(n_rows);
    double ss = 0.0, sum = 0.0;
    for (std::size_t i = 0; i < n_rows; ++i) {
        const double r = y[i] - model.evaluate(dataset.design.rows[i]);
        d.residuals.push_back(r);
        ss += r * r;
        sum += r;
    }
    d.residual_std = std::sqrt(ss / static_cast<double>(n_rows - n_params));
    d.mean_residual = sum / static_cast<double>(n_rows);

    std::vector<double> sorted = d.residuals;
    std::sort(sorted.begin(), sorted.end());
    d.qq_pairs.reserve(n_rows);
    for (std::size_t i = 0; i < n_rows; ++i) {
        const double p = (static_cast<double>(i) + 0.5) / static_cast<double>(n_rows);
        d.qq_pairs.push_back({stats::normal_quantile(p) * d.residual_std, sorted[i]});
    }
    return d;
}

CurvatureCheck curvature_check(const ResponseDataset& dataset,
                               const std::string& response_name,
                               double multiplier) {
    dataset.validate();
    const std::vector<double>& y = dataset.response(response_name);
    double sum_f = 0.0, sum_c = 0.0;
    std::size_t n_f = 0, n_c = 0;
    for (std::size_t i = 0; i < dataset.design.n_rows(); ++i) {
        switch (dataset.design.provenance[i]) {
        case Provenance::factorial:
            sum_f += y[i];
            ++n_f;
            break;
        case Provenance::center:
            sum_c += y[i];
            ++n_c;
            break;
        default: break;
        }
    }
    if (n_f == 0 || n_c == 0)
        throw InputError("curvature check needs both factorial and center rows");

    const PolynomialSurrogate flat =
        fit(dataset, response_name, two_factor_basis(dataset.design.labels),
            ResponseUnit::kg);
    if (!flat.residual_std)
        throw InputError("curvature check needs enough rows for a residual estimate");

    CurvatureCheck c;
    c.factorial_mean = sum_f / static_cast<double>(n_f);
    c.center_mean = sum_c / static_cast<double>(n_c);
    c.delta = std::abs(c.factorial_mean - c.center_mean);
    c.threshold = multiplier * *flat.residual_std *
                  std::sqrt(1.0 / static_cast<double>(n_c) +
                            1.0 / static_cast<double>(n_f));
    c.significant = c.delta > c.threshold;
    return c;
}

PolynomialSurrogate model_from_json_text(const std::string& text) {
    PolynomialSurrogate m;
    try {
        const json j = json::parse(text);
        m.response_name = j.at("response_name").get<std::string>();
        m.unit = response_unit_from_string(j.at("unit").get<std::string>());
        m.labels = j.at("labels").get<std::vector<std::string>>();
        m.intercept = j.at("intercept").get<double>();
        for (const auto& jt : j.at("terms")) {
            Term t;
            for (const auto& jf : jt.at("factors"))
                t.factors.push_back({jf.at(0).get<std::string>(), jf.at(1).get<int>()});
            t.coefficient = jt.at("coefficient").get<double>();
            m.terms.push_back(std::move(t));
        }
        if (j.contains("residual_std")) m.residual_std = j.at("residual_std").get<double>();
        if (j.contains("mean_residual"))
            m.mean_residual = j.at("mean_residual").get<double>();
    } catch (const json::exception& e) {
        throw InputError(std::string("model JSON: ") + e.what());
    }
    m.validate();
    return m;
}

std::string model_to_json_text(const PolynomialSurrogate& model) {
    model.validate();
    json j;
    j["response_name"] = model.response_name;
    j["unit"] = to_string(model.unit);
    j["labels"] = model.labels;
    j["intercept"] = model.intercept;
    j["terms"] = json::array();
    for (const Term& t : model.terms) {
        json jt;
        jt["factors"] = json::array();
        for (const auto& [label, exp] : t.factors)
            jt["factors"].push_back(json::array({label, exp}));
        jt["coefficient"] = t.coefficient;
        j["terms"].push_back(std::move(jt));
    }
    if (model.residual_std) j["residual_std"] = *model.residual_std;
    if (model.mean_residual) j["mean_residual"] = *model.mean_residual;
    return j.dump(2) + "\n";
}

PolynomialSurrogate load_model_file(const std::string& path) {
    return model_from_json_text(detail::read_text_file(path));
}

void write_model_file(const PolynomialSurrogate& model, const std::string& path,
                      bool allow_overwrite) {
    detail::write_text_file(path, model_to_json_text(model), allow_overwrite);
}

PolynomialSurrogate load_model(const std::string& path_or_id) {
    if (std::filesystem::exists(path_or_id)) return load_model_file(path_or_id);
    if (is_builtin_model(path_or_id)) return load_builtin_model(path_or_id);
    std::string ids;
    for (const std::string& id : builtin_model_ids()) {
        if (!ids.empty()) ids += ", ";
        ids += id;
    }
    throw InputError("'" + path_or_id + "' is neither an existing file nor a builtin "
                     "model id (builtins: " + ids + ")");
}

void write_dataset_csv(const ResponseDataset& dataset, const std::string& path,
                       bool allow_overwrite) {
    dataset.validate();
    csv::Table t;
    t.header = dataset.design.labels;
    t.header.push_back("provenance");
    for (const auto& [name, values] : dataset.responses) t.header.push_back(name);

    for (std::size_t i = 0; i < dataset.design.n_rows(); ++i) {
        std::vector<std::string> row;
        row.reserve(t.header.size());
        for (double v : dataset.design.rows[i]) row.push_back(csv::format_double(v));
        row.push_back(to_string(dataset.design.provenance[i]));
        for (const auto& [name, values] : dataset.responses)
            row.push_back(csv::format_double(values[i]));
        t.rows.push_back(std::move(row));
    }
    csv::write(t, path, allow_overwrite);
}

ResponseDataset read_dataset_csv(const std::string& path) {
    const csv::Table t = csv::read(path);
    static const std::set<std::string> known = {"sigma_F_MPa", "sigma_R_MPa",
                                                "uz_mm", "mass_kg"};

    // The provenance column, when present, separates design columns from
    // response columns; without it, only the known response names at the
    // tail are recognized.
    std::size_t split;
    bool has_prov = false;
    if (t.has_column("provenance")) {
        split = t.column("provenance");
        has_prov = true;
    } else {
        split = t.header.size();
        while (split > 0 && known.count(t.header[split - 1])) --split;
        if (split == t.header.size())
            throw InputError("'" + path + "': no response columns found (add a "
                             "provenance column or use the standard response names)");
    }
    if (split == 0)
        throw InputError("'" + path + "': no design columns before the responses");

    ResponseDataset d;
    d.design.labels.assign(t.header.begin(), t.header.begin() + split);
    const std::size_t first_resp = has_prov ? split + 1 : split;
    for (std::size_t j = first_resp; j < t.header.size(); ++j) {
        if (t.header[j] == "provenance")
            throw InputError("'" + path + "': duplicate provenance column");
        d.responses[t.header[j]] = {};
    }
    if (d.responses.empty())
        throw InputError("'" + path + "': no response columns after provenance");

    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        const std::string ctx = path + " row " + std::to_string(i + 1);
        std::vector<double> coords(split);
        for (std::size_t j = 0; j < split; ++j)
            coords[j] = csv::parse_double(t.rows[i][j], ctx);
        d.design.rows.push_back(std::move(coords));
        d.design.provenance.push_back(
            has_prov ? provenance_from_string(t.rows[i][split]) : Provenance::external);
        for (std::size_t j = first_resp; j < t.header.size(); ++j)
            d.responses[t.header[j]].push_back(csv::parse_double(t.rows[i][j], ctx));
    }
    d.validate();
    return d;
}

} // namespace boxwing
