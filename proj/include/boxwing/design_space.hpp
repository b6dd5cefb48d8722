#pragma once

#include <map>
#include <string>
#include <vector>

namespace boxwing {

enum class Unit { millimetre, ratio };

std::string to_string(Unit u);
Unit unit_from_string(const std::string& s);

// One physical design parameter together with its two-level codification
// range. The codified value is x = (v - (lower+upper)/2) / step with
// step = (upper-lower)/2, so lower maps to -1 and upper to +1.
struct DesignVariable {
    std::string label; // short id used in coefficient subscripts, e.g. "x2"
    std::string name;  // descriptive, e.g. "t_sk_FB"
    double lower = 0.0;
    double upper = 0.0;
    Unit unit = Unit::millimetre;

    double step() const { return (upper - lower) / 2.0; }
    double midpoint() const { return (lower + upper) / 2.0; }
    void validate() const; // throws InputError
};

// Identity coupling: the follower parameter always takes the leader
// variable's value when a point is decoded.
struct LinkageRule {
    std::string leader;   // a variable name
    std::string follower; // a derived parameter name (never a variable)
};

// Affine spanwise reduction law: root_value at y_root, ratio*root_value at
// the half-span station, linear in between.
struct TaperLaw {
    double root_value = 0.0;
    double ratio = 1.0;
    double y_root = 0.0;
    double half_span = 0.0;
};

struct DesignSpace {
    std::string id;
    std::vector<DesignVariable> variables; // order defines column order everywhere
    std::vector<LinkageRule> linkages;
    std::map<std::string, double> fixed_parameters;

    std::size_t size() const { return variables.size(); }
    std::vector<std::string> labels() const;
    const DesignVariable& by_label(const std::string& label) const;
    const DesignVariable& by_name(const std::string& name) const;
    void validate() const; // throws InputError
};

// Codification per variable. Values outside [lower, upper] are permitted and
// map to |x| > 1; only non-finite input is rejected.
double codify(double value, const DesignVariable& var);
double decode(double x, const DesignVariable& var);

// Vector forms keyed by variable *name*; decode_point also applies linkages
// to populate follower parameters.
std::vector<double> codify_point(const std::map<std::string, double>& values,
                                 const DesignSpace& space);
std::map<std::string, double> decode_point(const std::vector<double>& x,
                                           const DesignSpace& space);

double taper_value(const TaperLaw& law, double y);

// JSON document I/O: {"id", "variables":[{label,name,lower,upper,unit}],
// "linkages":[{leader,follower}], "fixed_parameters":{...}}. The step is
// derived, never stored.
DesignSpace space_from_json_text(const std::string& text);
std::string space_to_json_text(const DesignSpace& space);

// Built-in spaces are addressable by id ("prp300", "prosib40").
bool is_builtin_space(const std::string& id);
DesignSpace builtin_space(const std::string& id);
// Resolves a --space argument: an existing file path wins, otherwise a
// builtin id. Throws InputError when neither matches.
DesignSpace load_space(const std::string& path_or_id);

} // namespace boxwing
