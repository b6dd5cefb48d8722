#include "boxwing/empirical.hpp"

#include "boxwing/errors.hpp"
#include "file_util.hpp"

#include <json.hpp>

#include <cmath>

namespace boxwing {

using nlohmann::json;

void WingDescription::validate() const {
    auto positive = [](double v, const char* what) {
        if (!(v > 0.0) || !std::isfinite(v))
            throw InputError(std::string(what) + " must be a positive number");
    };
    positive(span_b_m, "the span");
    positive(area_S_m2, "the planform area");
    positive(thickness_to_chord, "the thickness-to-chord ratio");
    positive(load_factor_nz, "the load factor");
    positive(mtom_kg, "the maximum take-off mass");
    positive(dive_speed_VD_ms, "the dive speed");
    if (!std::isfinite(sweep_quarter_chord_deg) ||
        std::abs(sweep_quarter_chord_deg) >= 90.0)
        throw InputError("the quarter-chord sweep must lie in (-90, 90) degrees");
    if (!(taper_lambda > 0.0) || taper_lambda > 1.0 || !std::isfinite(taper_lambda))
        throw InputError("the taper ratio must lie in (0, 1]");
    if (thickness_to_chord >= 1.0)
        throw InputError("the thickness-to-chord ratio must be below 1");
}

double jemitola_wing_mass(const WingDescription& wing) {
    wing.validate();
    constexpr double kDegToRad = 3.14159265358979323846 / 180.0;
    const double cos_sweep = std::cos(wing.sweep_quarter_chord_deg * kDegToRad);
    const double taper_factor =
        (1.0 + 2.0 * wing.taper_lambda) / (3.0 * (1.0 + wing.taper_lambda));
    const double loading =
        std::pow(wing.load_factor_nz * wing.mtom_kg / wing.area_S_m2, 0.3);
    const double speed =
        std::sqrt(wing.dive_speed_VD_ms / wing.thickness_to_chord);
    const double core = wing.span_b_m * wing.area_S_m2 / cos_sweep * taper_factor *
                        loading * speed;
    return 0.028 * std::pow(core, 0.9);
}

WingDescription wing_from_json_text(const std::string& text) {
    WingDescription w;
    try {
        const json j = json::parse(text);
        w.span_b_m = j.at("span_b_m").get<double>();
        w.area_S_m2 = j.at("area_S_m2").get<double>();
        w.sweep_quarter_chord_deg = j.at("sweep_quarter_chord_deg").get<double>();
        w.taper_lambda = j.at("taper_lambda").get<double>();
        w.thickness_to_chord = j.at("thickness_to_chord").get<double>();
        w.load_factor_nz = j.at("load_factor_nz").get<double>();
        w.mtom_kg = j.at("mtom_kg").get<double>();
        w.dive_speed_VD_ms = j.at("dive_speed_VD_ms").get<double>();
    } catch (const json::exception& e) {
        throw InputError(std::string("wing JSON: ") + e.what());
    }
    w.validate();
    return w;
}

WingDescription load_wing_file(const std::string& path) {
    return wing_from_json_text(detail::read_text_file(path));
}

std::string wing_to_json_text(const WingDescription& wing) {
    wing.validate();
    json j;
    j["span_b_m"] = wing.span_b_m;
    j["area_S_m2"] = wing.area_S_m2;
    j["sweep_quarter_chord_deg"] = wing.sweep_quarter_chord_deg;
    j["taper_lambda"] = wing.taper_lambda;
    j["thickness_to_chord"] = wing.thickness_to_chord;
    j["load_factor_nz"] = wing.load_factor_nz;
    j["mtom_kg"] = wing.mtom_kg;
    j["dive_speed_VD_ms"] = wing.dive_speed_VD_ms;
    return j.dump(2) + "\n";
}

} // namespace boxwing
