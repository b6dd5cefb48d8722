#include "boxwing/stats.hpp"
#include "boxwing/surrogate.hpp"
#include "boxwing/errors.hpp"

#include "doctest.h"

#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

using namespace boxwing;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE_MESSAGE(in.good(), "cannot open ", path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

double coefficient(const PolynomialSurrogate& m, const std::string& key) {
    for (const Term& t : m.terms)
        if (t.key() == key) return t.coefficient;
    FAIL("missing term ", key, " in ", m.response_name);
    return 0.0;
}

} // namespace

TEST_CASE("the embedded catalogue lists eight models") {
    const std::vector<std::string> ids = builtin_model_ids();
    CHECK(ids == std::vector<std::string>{
                     "prp300.sigma_front", "prp300.sigma_rear", "prp300.uz",
                     "prp300.mass", "prosib.sigma_front", "prosib.sigma_rear",
                     "prosib.uz", "prosib.mass"});
    for (const std::string& id : ids) {
        CHECK(is_builtin_model(id));
        CHECK_NOTHROW(load_builtin_model(id).validate());
    }
    CHECK_FALSE(is_builtin_model("prp300"));
    CHECK_THROWS_AS(load_builtin_model("prp300"), InputError);
}

TEST_CASE("centroid values match the published intercepts") {
    const std::map<std::string, double> expected = {
        {"prp300.sigma_front", 269.438}, {"prp300.sigma_rear", 193.116},
        {"prp300.uz", 1525.664},         {"prp300.mass", 16514.7},
        {"prosib.sigma_front", 177.383}, {"prosib.sigma_rear", 161.686},
        {"prosib.uz", 500.339},          {"prosib.mass", 2158.0}};
    for (const auto& [id, value] : expected) {
        const PolynomialSurrogate m = load_builtin_model(id);
        const std::vector<double> center(m.labels.size(), 0.0);
        CHECK_MESSAGE(m.evaluate(center) == doctest::Approx(value).epsilon(1e-12),
                      id);
    }
}

TEST_CASE("spot coefficients of the front-stress model") {
    const PolynomialSurrogate m = load_builtin_model("prp300.sigma_front");
    CHECK(m.response_name == "sigma_F_MPa");
    CHECK(m.unit == ResponseUnit::MPa);
    CHECK(m.terms.size() == 22);
    CHECK(coefficient(m, "x1") == -32.289);
    CHECK(coefficient(m, "x2") == -51.358);
    CHECK(coefficient(m, "x2^2") == 39.84);
    CHECK(coefficient(m, "x4^2") == 13.973);
    CHECK(coefficient(m, "x1*x2*x4") == 5.426);
    REQUIRE(m.residual_std.has_value());
    CHECK(*m.residual_std == 4.415);
    REQUIRE(m.mean_residual.has_value());
    CHECK(*m.mean_residual == -2.758e-5);
}

TEST_CASE("the mass objectives carry no fit metadata") {
    for (const char* id : {"prp300.mass", "prosib.mass"}) {
        const PolynomialSurrogate m = load_builtin_model(id);
        CHECK(m.response_name == "mass_kg");
        CHECK(m.unit == ResponseUnit::kg);
        CHECK_FALSE(m.residual_std.has_value());
        CHECK_FALSE(m.mean_residual.has_value());
    }
}

TEST_CASE("nine-variable models include the four-factor interactions") {
    const PolynomialSurrogate front = load_builtin_model("prosib.sigma_front");
    CHECK(coefficient(front, "x1*x2*x3*x4") == -3.4);
    const PolynomialSurrogate rear = load_builtin_model("prosib.sigma_rear");
    CHECK(coefficient(rear, "x5*x6*x7*x8") == -2.609);
}

// The distributed JSON copies under data/models must stay byte-identical to
// the embedded tables; the checksum guards against accidental edits.
TEST_CASE("distributed model files match the embedded catalogue") {
    const std::map<std::string, std::uint64_t> frozen = {
        {"prp300.sigma_front", 0x97ECDB5298884FB6ULL},
        {"prp300.sigma_rear", 0x3ADB903AA83D886DULL},
        {"prp300.uz", 0x60C0C5570C7CBB5CULL},
        {"prp300.mass", 0xBE10867E58D6CF3EULL},
        {"prosib.sigma_front", 0xED21F91B3D269106ULL},
        {"prosib.sigma_rear", 0x1D6B9E6827C6342AULL},
        {"prosib.uz", 0x6D44AC764E272FC3ULL},
        {"prosib.mass", 0x13D7EE5EE8E68014ULL}};
    for (const auto& [id, checksum] : frozen) {
        const std::string path = std::string(BOXWING_DATA_DIR) + "/models/" + id + ".json";
        const std::string text = slurp(path);
        CHECK_MESSAGE(stats::fnv1a64(text) == checksum, id, " file drifted");

        const PolynomialSurrogate file_model = model_from_json_text(text);
        const PolynomialSurrogate builtin = load_builtin_model(id);
        CHECK(file_model.response_name == builtin.response_name);
        CHECK(file_model.unit == builtin.unit);
        CHECK(file_model.labels == builtin.labels);
        CHECK(file_model.intercept == builtin.intercept);
        REQUIRE(file_model.terms.size() == builtin.terms.size());
        for (std::size_t i = 0; i < builtin.terms.size(); ++i) {
            CHECK(file_model.terms[i].key() == builtin.terms[i].key());
            CHECK(file_model.terms[i].coefficient == builtin.terms[i].coefficient);
        }
        CHECK(file_model.residual_std == builtin.residual_std);
        CHECK(file_model.mean_residual == builtin.mean_residual);
    }
}
