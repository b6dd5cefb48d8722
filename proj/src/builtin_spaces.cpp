#include "boxwing/design_space.hpp"

#include "boxwing/errors.hpp"

namespace boxwing {

namespace {

DesignSpace make_prp300() {
    DesignSpace s;
    s.id = "prp300";
    s.variables = {
        {"x1", "t_sk_FT", 6.0, 14.0, Unit::millimetre},
        {"x2", "t_sk_FB", 6.0, 14.0, Unit::millimetre},
        {"x4", "t_st_F", 1.5, 7.0, Unit::millimetre},
        {"x5", "h_st_FT", 40.0, 70.0, Unit::millimetre},
        {"x6", "h_st_FB", 40.0, 70.0, Unit::millimetre},
        {"x8", "alpha_st_F", 0.7, 1.0, Unit::ratio},
        {"x9", "t_sk_RT", 6.0, 14.0, Unit::millimetre},
        {"x13", "h_st_RT", 40.0, 70.0, Unit::millimetre},
        {"x15", "tau_sk_R", 0.25, 0.49, Unit::ratio},
    };
    // The rear wing uses one thickness ratio for skins and webs alike.
    s.linkages = {{"tau_sk_R", "tau_web_R"}};
    s.fixed_parameters = {
        {"p_st_F", 155.0},    // front stringer pitch, mm
        {"p_st_R", 170.0},    // rear stringer pitch, mm
        {"p_rib", 600.0},     // rib pitch, mm
        {"t_rib", 4.0},       // rib thickness, mm
        {"tau_sk_F", 0.295},  // front skin tip-to-root thickness ratio
    };
    return s;
}

DesignSpace make_prosib40() {
    DesignSpace s;
    s.id = "prosib40";
    s.variables = {
        {"x1", "t_sk_FT", 1.25, 5.0, Unit::millimetre},
        {"x2", "t_sk_FB", 1.25, 5.0, Unit::millimetre},
        {"x3", "t_web_F", 1.5, 6.5, Unit::millimetre},
        {"x4", "t_st_F", 1.5, 6.5, Unit::millimetre},
        {"x5", "t_sk_RT", 1.25, 5.0, Unit::millimetre},
        {"x6", "t_sk_RB", 1.25, 5.0, Unit::millimetre},
        {"x7", "t_web_R", 1.5, 6.5, Unit::millimetre},
        {"x8", "t_st_R", 1.5, 6.5, Unit::millimetre},
        {"x9", "h_st", 30.0, 45.0, Unit::millimetre},
    };
    return s;
}

} // namespace

bool is_builtin_space(const std::string& id) {
    return id == "prp300" || id == "prosib40";
}

DesignSpace builtin_space(const std::string& id) {
    if (id == "prp300") return make_prp300();
    if (id == "prosib40") return make_prosib40();
    throw InputError("unknown builtin design space '" + id + "'");
}

} // namespace boxwing
