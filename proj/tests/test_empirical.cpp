#include "boxwing/empirical.hpp"
#include "boxwing/errors.hpp"

#include "doctest.h"
#include "temp_dir.hpp"

#include <cmath>
#include <fstream>

using namespace boxwing;

namespace {

WingDescription wing(double b, double S, double sweep, double lambda, double tc,
                     double nz, double mtom, double vd) {
    WingDescription w;
    w.span_b_m = b;
    w.area_S_m2 = S;
    w.sweep_quarter_chord_deg = sweep;
    w.taper_lambda = lambda;
    w.thickness_to_chord = tc;
    w.load_factor_nz = nz;
    w.mtom_kg = mtom;
    w.dive_speed_VD_ms = vd;
    return w;
}

} // namespace

TEST_CASE("wing mass matches independent hand evaluation") {
    // 0.028 * [ b*S/cos(sweep) * (1+2L)/(3(1+L)) * (nz*MTOM/S)^0.3
    //           * sqrt(VD/(t/c)) ]^0.9
    CHECK(jemitola_wing_mass(wing(35, 153.14, 38.1, 0.29, 0.11, 2.5, 126414, 245)) ==
          doctest::Approx(8878.879632055872).epsilon(1e-12));
    CHECK(jemitola_wing_mass(wing(35, 127.5, -24.2, 0.38, 0.11, 2.5, 126414, 245)) ==
          doctest::Approx(7183.423647550003).epsilon(1e-12));
    CHECK(jemitola_wing_mass(wing(30, 120, 25, 0.5, 0.12, 2.5, 80000, 220)) ==
          doctest::Approx(5101.239142638133).epsilon(1e-12));
}

TEST_CASE("doubling the load factor scales mass by 2^0.27") {
    const WingDescription base = wing(35, 153.14, 38.1, 0.29, 0.11, 2.5, 126414, 245);
    WingDescription doubled = base;
    doubled.load_factor_nz = 5.0;
    const double ratio = jemitola_wing_mass(doubled) / jemitola_wing_mass(base);
    CHECK(ratio == doctest::Approx(std::pow(2.0, 0.27)).epsilon(1e-12));
}

TEST_CASE("sweep enters through its cosine, so the sign is immaterial") {
    const double fwd = jemitola_wing_mass(wing(30, 120, -25, 0.5, 0.12, 2.5, 80000, 220));
    const double aft = jemitola_wing_mass(wing(30, 120, 25, 0.5, 0.12, 2.5, 80000, 220));
    CHECK(fwd == aft);
}

TEST_CASE("mass grows with take-off mass and shrinks with thickness ratio") {
    const WingDescription base = wing(30, 120, 25, 0.5, 0.12, 2.5, 80000, 220);
    WingDescription heavier = base;
    heavier.mtom_kg = 90000;
    CHECK(jemitola_wing_mass(heavier) > jemitola_wing_mass(base));
    WingDescription thicker = base;
    thicker.thickness_to_chord = 0.14;
    CHECK(jemitola_wing_mass(thicker) < jemitola_wing_mass(base));
}

TEST_CASE("wing validation rejects out-of-domain geometry") {
    const WingDescription base = wing(30, 120, 25, 0.5, 0.12, 2.5, 80000, 220);
    CHECK_NOTHROW(base.validate());

    WingDescription bad = base;
    bad.span_b_m = 0.0;
    CHECK_THROWS_AS(bad.validate(), InputError);
    bad = base;
    bad.sweep_quarter_chord_deg = 90.0;
    CHECK_THROWS_AS(bad.validate(), InputError);
    bad = base;
    bad.taper_lambda = 0.0;
    CHECK_THROWS_AS(bad.validate(), InputError);
    bad = base;
    bad.taper_lambda = 1.2;
    CHECK_THROWS_AS(bad.validate(), InputError);
    bad = base;
    bad.thickness_to_chord = 1.0;
    CHECK_THROWS_AS(bad.validate(), InputError);
    bad = base;
    bad.load_factor_nz = -2.5;
    CHECK_THROWS_AS(bad.validate(), InputError);
    CHECK_THROWS_AS(jemitola_wing_mass(bad), InputError);
}

TEST_CASE("wing JSON round trips and loads from disk") {
    TempDir tmp;
    const WingDescription w = wing(35, 153.14, 38.1, 0.29, 0.11, 2.5, 126414, 245);
    const WingDescription back = wing_from_json_text(wing_to_json_text(w));
    CHECK(back.span_b_m == w.span_b_m);
    CHECK(back.area_S_m2 == w.area_S_m2);
    CHECK(back.sweep_quarter_chord_deg == w.sweep_quarter_chord_deg);
    CHECK(back.taper_lambda == w.taper_lambda);
    CHECK(back.thickness_to_chord == w.thickness_to_chord);
    CHECK(back.load_factor_nz == w.load_factor_nz);
    CHECK(back.mtom_kg == w.mtom_kg);
    CHECK(back.dive_speed_VD_ms == w.dive_speed_VD_ms);

    const std::string path = tmp.file("wing.json");
    {
        std::ofstream out(path);
        out << wing_to_json_text(w);
    }
    CHECK(jemitola_wing_mass(load_wing_file(path)) ==
          doctest::Approx(jemitola_wing_mass(w)));

    CHECK_THROWS_AS(wing_from_json_text("{}"), InputError);
    CHECK_THROWS_AS(wing_from_json_text("nope"), InputError);
    CHECK_THROWS_AS(load_wing_file("no/such/wing.json"), InputError);
}
