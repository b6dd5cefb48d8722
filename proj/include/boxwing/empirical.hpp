#pragma once

#include <string>

namespace boxwing {

// Simply-tapered equivalent wing, SI units throughout.
struct WingDescription {
    double span_b_m = 0.0;
    double area_S_m2 = 0.0;
    double sweep_quarter_chord_deg = 0.0; // signed; negative = forward sweep
    double taper_lambda = 0.0;            // in (0, 1]
    double thickness_to_chord = 0.0;
    double load_factor_nz = 0.0;
    double mtom_kg = 0.0;
    double dive_speed_VD_ms = 0.0;

    void validate() const; // throws InputError
};

// Empirical cantilever-derived wing mass adjusted for box wings:
//   M_W = 0.028 * [ b*S/cos(sweep) * (1+2*lambda)/(3*(1+lambda))
//                   * (n_z*MTOM/S)^0.3 * (V_D/(t/c))^0.5 ]^0.9   [kg]
// Sweep enters through cos of the signed angle (even in the sign).
double jemitola_wing_mass(const WingDescription& wing);

WingDescription wing_from_json_text(const std::string& text);
WingDescription load_wing_file(const std::string& path);
std::string wing_to_json_text(const WingDescription& wing);

} // namespace boxwing
