#include "boxwing/design_space.hpp"
#include "boxwing/errors.hpp"

#include "doctest.h"

#include <cmath>
#include <map>

using namespace boxwing;

namespace {

DesignVariable var(const char* label, const char* name, double lo, double hi,
                   Unit u = Unit::millimetre) {
    DesignVariable v;
    v.label = label;
    v.name = name;
    v.lower = lo;
    v.upper = hi;
    v.unit = u;
    return v;
}

DesignSpace small_space() {
    DesignSpace s;
    s.id = "toy";
    s.variables = {var("x1", "t_a", 6.0, 14.0), var("x2", "t_b", 1.5, 7.0),
                   var("x3", "r_c", 0.25, 0.49, Unit::ratio)};
    s.linkages = {{"r_c", "r_d"}};
    s.fixed_parameters = {{"pitch", 600.0}};
    return s;
}

} // namespace

TEST_CASE("codify maps bounds to the unit interval endpoints") {
    const DesignVariable v = var("x1", "t", 6.0, 14.0);
    CHECK(codify(6.0, v) == doctest::Approx(-1.0));
    CHECK(codify(14.0, v) == doctest::Approx(1.0));
    CHECK(codify(10.0, v) == doctest::Approx(0.0));
    CHECK(codify(12.0, v) == doctest::Approx(0.5));
    // out-of-range physical values are allowed and land outside [-1, 1]
    CHECK(codify(18.0, v) == doctest::Approx(2.0));
    CHECK_THROWS_AS(codify(std::nan(""), v), InputError);
}

TEST_CASE("decode is the exact inverse of codify") {
    const DesignVariable v = var("x4", "h", 40.0, 70.0);
    for (double x : {-1.0, -0.3, 0.0, 0.7, 1.0, 1.8}) {
        CHECK(codify(decode(x, v), v) == doctest::Approx(x).epsilon(1e-12));
    }
}

TEST_CASE("variable and space validation reject degenerate input") {
    DesignVariable v = var("x1", "t", 5.0, 5.0);
    CHECK_THROWS_AS(v.validate(), InputError);
    v.upper = 4.0; // inverted
    CHECK_THROWS_AS(v.validate(), InputError);

    DesignSpace s = small_space();
    s.variables[1].label = "x1"; // duplicate label
    CHECK_THROWS_AS(s.validate(), InputError);

    s = small_space();
    s.linkages[0].leader = "nonexistent";
    CHECK_THROWS_AS(s.validate(), InputError);
}

TEST_CASE("point codification round trips by name and applies linkages") {
    const DesignSpace s = small_space();
    const std::map<std::string, double> physical = {
        {"t_a", 12.0}, {"t_b", 1.5}, {"r_c", 0.37}};
    const std::vector<double> x = codify_point(physical, s);
    REQUIRE(x.size() == 3);
    CHECK(x[0] == doctest::Approx(0.5));
    CHECK(x[1] == doctest::Approx(-1.0));
    CHECK(x[2] == doctest::Approx(0.0));

    const auto decoded = decode_point(x, s);
    CHECK(decoded.at("t_a") == doctest::Approx(12.0));
    CHECK(decoded.at("t_b") == doctest::Approx(1.5));
    CHECK(decoded.at("r_c") == doctest::Approx(0.37));
    // follower parameter mirrors its leader variable
    CHECK(decoded.at("r_d") == doctest::Approx(0.37));
}

TEST_CASE("codify_point requires every variable by name") {
    const DesignSpace s = small_space();
    CHECK_THROWS_AS(codify_point({{"t_a", 12.0}}, s), InputError);
}

TEST_CASE("taper law interpolates linearly from root to half-span") {
    TaperLaw law;
    law.root_value = 10.0;
    law.ratio = 0.5;
    law.y_root = 0.0;
    law.half_span = 20.0;
    CHECK(taper_value(law, 0.0) == doctest::Approx(10.0));
    CHECK(taper_value(law, 20.0) == doctest::Approx(5.0));
    CHECK(taper_value(law, 10.0) == doctest::Approx(7.5));
}

TEST_CASE("design space JSON round trip preserves everything") {
    const DesignSpace s = small_space();
    const DesignSpace back = space_from_json_text(space_to_json_text(s));
    CHECK(back.id == s.id);
    REQUIRE(back.variables.size() == s.variables.size());
    for (std::size_t i = 0; i < s.variables.size(); ++i) {
        CHECK(back.variables[i].label == s.variables[i].label);
        CHECK(back.variables[i].name == s.variables[i].name);
        CHECK(back.variables[i].lower == s.variables[i].lower);
        CHECK(back.variables[i].upper == s.variables[i].upper);
        CHECK(back.variables[i].unit == s.variables[i].unit);
    }
    REQUIRE(back.linkages.size() == 1);
    CHECK(back.linkages[0].leader == "r_c");
    CHECK(back.linkages[0].follower == "r_d");
    CHECK(back.fixed_parameters.at("pitch") == doctest::Approx(600.0));
}

TEST_CASE("malformed space JSON raises InputError") {
    CHECK_THROWS_AS(space_from_json_text("not json"), InputError);
    CHECK_THROWS_AS(space_from_json_text("{}"), InputError);
    CHECK_THROWS_AS(space_from_json_text(R"({"id":"a","variables":[]})"), InputError);
}

TEST_CASE("builtin spaces expose the documented shapes") {
    CHECK(is_builtin_space("prp300"));
    CHECK(is_builtin_space("prosib40"));
    CHECK_FALSE(is_builtin_space("unknown"));
    CHECK_THROWS_AS(builtin_space("unknown"), InputError);

    const DesignSpace prp = builtin_space("prp300");
    CHECK(prp.size() == 9);
    CHECK(prp.labels() ==
          std::vector<std::string>{"x1", "x2", "x4", "x5", "x6", "x8", "x9", "x13", "x15"});
    CHECK(prp.by_label("x2").name == "t_sk_FB");
    CHECK(prp.by_label("x2").lower == doctest::Approx(6.0));
    CHECK(prp.by_label("x2").upper == doctest::Approx(14.0));
    CHECK(prp.by_label("x15").unit == Unit::ratio);
    // rear web thickness follows the rear skin-thickness ratio variable
    REQUIRE(prp.linkages.size() == 1);
    CHECK(prp.linkages[0].leader == "tau_sk_R");
    CHECK(prp.linkages[0].follower == "tau_web_R");
    CHECK(prp.fixed_parameters.at("p_rib") == doctest::Approx(600.0));
    CHECK(prp.fixed_parameters.size() == 5);

    const DesignSpace pro = builtin_space("prosib40");
    CHECK(pro.size() == 9);
    CHECK(pro.labels() ==
          std::vector<std::string>{"x1", "x2", "x3", "x4", "x5", "x6", "x7", "x8", "x9"});
    CHECK(pro.by_label("x9").name == "h_st");
    CHECK(pro.by_label("x9").lower == doctest::Approx(30.0));
    CHECK(pro.linkages.empty());
    CHECK(pro.fixed_parameters.empty());
}

TEST_CASE("load_space resolves files first, then builtin ids") {
    const DesignSpace byId = load_space("prp300");
    CHECK(byId.id == "prp300");
    CHECK_THROWS_AS(load_space("no/such/file.json"), InputError);
}
