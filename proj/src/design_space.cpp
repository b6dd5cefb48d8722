#include "boxwing/design_space.hpp"

#include "boxwing/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using nlohmann::json;

namespace boxwing {

std::string to_string(Unit u) {
    return u == Unit::millimetre ? "mm" : "ratio";
}

Unit unit_from_string(const std::string& s) {
    if (s == "mm" || s == "millimetre") return Unit::millimetre;
    if (s == "ratio") return Unit::ratio;
    throw InputError("unknown unit '" + s + "' (expected mm or ratio)");
}

void DesignVariable::validate() const {
    if (label.empty()) throw InputError("design variable without a label");
    if (name.empty()) throw InputError("design variable '" + label + "' without a name");
    if (!(std::isfinite(lower) && std::isfinite(upper)))
        throw InputError("variable '" + label + "': non-finite bounds");
    if (!(lower < upper))
        throw InputError("variable '" + label + "': lower must be < upper");
}

std::vector<std::string> DesignSpace::labels() const {
    std::vector<std::string> out;
    out.reserve(variables.size());
    for (const auto& v : variables) out.push_back(v.label);
    return out;
}

const DesignVariable& DesignSpace::by_label(const std::string& label) const {
    for (const auto& v : variables)
        if (v.label == label) return v;
    throw InputError("space '" + id + "': no variable labelled '" + label + "'");
}

const DesignVariable& DesignSpace::by_name(const std::string& name) const {
    for (const auto& v : variables)
        if (v.name == name) return v;
    throw InputError("space '" + id + "': no variable named '" + name + "'");
}

void DesignSpace::validate() const {
    if (variables.empty()) throw InputError("design space has no variables");
    for (const auto& v : variables) v.validate();
    for (std::size_t i = 0; i < variables.size(); ++i)
        for (std::size_t j = i + 1; j < variables.size(); ++j) {
            if (variables[i].label == variables[j].label)
                throw InputError("duplicate variable label '" + variables[i].label + "'");
            if (variables[i].name == variables[j].name)
                throw InputError("duplicate variable name '" + variables[i].name + "'");
        }
    for (const auto& link : linkages) {
        if (link.leader.empty() || link.follower.empty())
            throw InputError("linkage with empty leader or follower");
        by_name(link.leader); // leader must be a variable
        for (const auto& v : variables)
            if (v.name == link.follower)
                throw InputError("linkage follower '" + link.follower +
                                 "' must not be a design variable");
    }
}

double codify(double value, const DesignVariable& var) {
    if (!std::isfinite(value))
        throw InputError("codify('" + var.label + "'): non-finite value");
    return (value - var.midpoint()) / var.step();
}

double decode(double x, const DesignVariable& var) {
    if (!std::isfinite(x))
        throw InputError("decode('" + var.label + "'): non-finite value");
    return var.midpoint() + x * var.step();
}

std::vector<double> codify_point(const std::map<std::string, double>& values,
                                 const DesignSpace& space) {
    std::vector<double> x;
    x.reserve(space.size());
    for (const auto& var : space.variables) {
        const auto it = values.find(var.name);
        if (it == values.end())
            throw InputError("codify_point: missing value for '" + var.name + "'");
        x.push_back(codify(it->second, var));
    }
    for (const auto& [name, _] : values) {
        const bool known = std::any_of(space.variables.begin(), space.variables.end(),
                                       [&](const auto& v) { return v.name == name; });
        if (!known) throw InputError("codify_point: unknown parameter '" + name + "'");
    }
    return x;
}

std::map<std::string, double> decode_point(const std::vector<double>& x,
                                           const DesignSpace& space) {
    if (x.size() != space.size())
        throw InputError("decode_point: expected " + std::to_string(space.size()) +
                         " coordinates, got " + std::to_string(x.size()));
    std::map<std::string, double> out;
    for (std::size_t i = 0; i < x.size(); ++i)
        out[space.variables[i].name] = decode(x[i], space.variables[i]);
    for (const auto& link : space.linkages) out[link.follower] = out.at(link.leader);
    return out;
}

double taper_value(const TaperLaw& law, double y) {
    if (law.y_root == law.half_span)
        throw InputError("taper_value: degenerate span (y_root equals half_span)");
    return ((1.0 - law.ratio) * y + law.ratio * law.y_root - law.half_span) /
           (law.y_root - law.half_span) * law.root_value;
}

DesignSpace space_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw InputError(std::string("design space JSON: ") + e.what());
    }
    DesignSpace space;
    try {
        space.id = j.value("id", "");
        for (const auto& jv : j.at("variables")) {
            DesignVariable v;
            v.label = jv.at("label").get<std::string>();
            v.name = jv.at("name").get<std::string>();
            v.lower = jv.at("lower").get<double>();
            v.upper = jv.at("upper").get<double>();
            v.unit = unit_from_string(jv.value("unit", "mm"));
            space.variables.push_back(std::move(v));
        }
        if (j.contains("linkages"))
            for (const auto& jl : j.at("linkages"))
                space.linkages.push_back({jl.at("leader").get<std::string>(),
                                          jl.at("follower").get<std::string>()});
        if (j.contains("fixed_parameters"))
            for (const auto& [k, v] : j.at("fixed_parameters").items())
                space.fixed_parameters[k] = v.get<double>();
    } catch (const json::exception& e) {
        throw InputError(std::string("design space JSON: ") + e.what());
    }
    space.validate();
    return space;
}

std::string space_to_json_text(const DesignSpace& space) {
    json j;
    j["id"] = space.id;
    j["variables"] = json::array();
    for (const auto& v : space.variables)
        j["variables"].push_back({{"label", v.label},
                                  {"name", v.name},
                                  {"lower", v.lower},
                                  {"upper", v.upper},
                                  {"unit", to_string(v.unit)}});
    j["linkages"] = json::array();
    for (const auto& l : space.linkages)
        j["linkages"].push_back({{"leader", l.leader}, {"follower", l.follower}});
    j["fixed_parameters"] = json::object();
    for (const auto& [k, v] : space.fixed_parameters) j["fixed_parameters"][k] = v;
    return j.dump(2) + "\n";
}

DesignSpace load_space(const std::string& path_or_id) {
    if (std::filesystem::exists(path_or_id)) {
        std::ifstream in(path_or_id);
        if (!in) throw InputError("cannot open design space file '" + path_or_id + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        return space_from_json_text(ss.str());
    }
    if (is_builtin_space(path_or_id)) return builtin_space(path_or_id);
    throw InputError("'" + path_or_id + "' is neither an existing file nor a builtin "
                     "design space id (builtins: prp300, prosib40)");
}

} // namespace boxwing
