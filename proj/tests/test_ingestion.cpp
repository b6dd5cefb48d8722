#include "boxwing/ingestion.hpp"
#include "boxwing/csv.hpp"
#include "boxwing/errors.hpp"

#include "doctest.h"
#include "temp_dir.hpp"

#include <algorithm>
#include <string>
#include <vector>

using namespace boxwing;

namespace {

Term make_term(std::vector<std::pair<std::string, int>> factors, double c) {
    Term t;
    t.factors = std::move(factors);
    t.coefficient = c;
    return t;
}

PolynomialSurrogate linear2(const std::string& name, double a, double b) {
    PolynomialSurrogate m;
    m.response_name = name;
    m.unit = ResponseUnit::kg;
    m.labels = {"x1", "x2"};
    m.intercept = 1.0;
    m.terms = {make_term({{"x1", 1}}, a), make_term({{"x2", 1}}, b)};
    return m;
}

} // namespace

TEST_CASE("evaluate_design produces one named column per model, in row order") {
    const DesignMatrix design = ccf(std::vector<std::string>{"x1", "x2"}, 1);
    const ResponseDataset data =
        evaluate_design(design, {linear2("m1", 2.0, 0.0), linear2("m2", 0.0, 3.0)});
    REQUIRE(data.responses.size() == 2);
    REQUIRE(data.responses.count("m1") == 1);
    REQUIRE(data.responses.count("m2") == 1);
    for (std::size_t i = 0; i < design.n_rows(); ++i) {
        CHECK(data.responses.at("m1")[i] ==
              doctest::Approx(1.0 + 2.0 * design.rows[i][0]));
        CHECK(data.responses.at("m2")[i] ==
              doctest::Approx(1.0 + 3.0 * design.rows[i][1]));
    }
}

TEST_CASE("evaluate_design rejects label mismatches and duplicate names") {
    const DesignMatrix design = full_factorial(std::vector<std::string>{"x1", "x3"});
    CHECK_THROWS_AS(evaluate_design(design, {linear2("m1", 1, 1)}), InputError);

    const DesignMatrix ok = full_factorial(std::vector<std::string>{"x1", "x2"});
    CHECK_THROWS_AS(
        evaluate_design(ok, {linear2("same", 1, 1), linear2("same", 2, 2)}),
        InputError);
}

TEST_CASE("generated noise is deterministic and per-response independent") {
    const DesignMatrix design = ccf(std::vector<std::string>{"x1", "x2"}, 4);
    NoiseSpec noise;
    noise.seed = 42;
    noise.sigma_by_response = {{"m1", 0.5}, {"m2", 0.5}};
    const std::vector<PolynomialSurrogate> models = {linear2("m1", 2.0, 0.0),
                                                     linear2("m2", 0.0, 3.0)};

    const ResponseDataset a = evaluate_design(design, models, &noise);
    const ResponseDataset b = evaluate_design(design, models, &noise);
    CHECK(a.responses.at("m1") == b.responses.at("m1")); // bitwise reproducible
    CHECK(a.responses.at("m2") == b.responses.at("m2"));

    // the two responses draw from independent streams: their deviations from
    // the clean values must differ
    const ResponseDataset clean = evaluate_design(design, models);
    std::vector<double> d1, d2;
    for (std::size_t i = 0; i < design.n_rows(); ++i) {
        d1.push_back(a.responses.at("m1")[i] - clean.responses.at("m1")[i]);
        d2.push_back(a.responses.at("m2")[i] - clean.responses.at("m2")[i]);
    }
    CHECK(d1 != d2);
    CHECK(std::any_of(d1.begin(), d1.end(), [](double v) { return v != 0.0; }));

    NoiseSpec other = noise;
    other.seed = 43;
    const ResponseDataset c = evaluate_design(design, models, &other);
    CHECK(a.responses.at("m1") != c.responses.at("m1"));
}

TEST_CASE("noise sigma must reference known responses and be non-negative") {
    const DesignMatrix design = full_factorial(std::vector<std::string>{"x1", "x2"});
    NoiseSpec noise;
    noise.sigma_by_response = {{"nope", 0.5}};
    CHECK_THROWS_AS(evaluate_design(design, {linear2("m1", 1, 1)}, &noise),
                    InputError);
    noise.sigma_by_response = {{"m1", -0.5}};
    CHECK_THROWS_AS(evaluate_design(design, {linear2("m1", 1, 1)}, &noise),
                    InputError);
}

TEST_CASE("join_external matches rows on coordinates, not order") {
    TempDir tmp;
    const DesignMatrix design = ccf(std::vector<std::string>{"x1", "x2"}, 1);
    const ResponseDataset data = evaluate_design(design, {linear2("m1", 2.0, 3.0)});

    // write the dataset with rows reversed to prove order independence
    ResponseDataset shuffled = data;
    std::reverse(shuffled.design.rows.begin(), shuffled.design.rows.end());
    std::reverse(shuffled.design.provenance.begin(), shuffled.design.provenance.end());
    std::reverse(shuffled.responses.at("m1").begin(), shuffled.responses.at("m1").end());
    const std::string path = tmp.file("external.csv");
    write_dataset_csv(shuffled, path, false);

    const ResponseDataset joined = join_external(design, path);
    CHECK(joined.design.rows == design.rows);
    CHECK(joined.design.provenance == design.provenance);
    for (std::size_t i = 0; i < design.n_rows(); ++i)
        CHECK(joined.responses.at("m1")[i] ==
              doctest::Approx(data.responses.at("m1")[i]));
}

TEST_CASE("join_external reports unmatched, duplicate, and unused rows") {
    TempDir tmp;
    const DesignMatrix design = full_factorial(std::vector<std::string>{"x1", "x2"});
    const ResponseDataset data = evaluate_design(design, {linear2("m1", 2.0, 3.0)});

    SUBCASE("a design row with no data") {
        ResponseDataset missing = data;
        missing.design.rows.pop_back();
        missing.design.provenance.pop_back();
        missing.responses.at("m1").pop_back();
        const std::string path = tmp.file("missing.csv");
        write_dataset_csv(missing, path, false);
        CHECK_THROWS_WITH_AS(join_external(design, path),
                             doctest::Contains("design row 4"), InputError);
    }

    SUBCASE("two data rows matching the same design row") {
        ResponseDataset dup = data;
        dup.design.rows.push_back(dup.design.rows[0]);
        dup.design.provenance.push_back(dup.design.provenance[0]);
        dup.responses.at("m1").push_back(-99.0);
        const std::string path = tmp.file("dup.csv");
        write_dataset_csv(dup, path, false);
        CHECK_THROWS_AS(join_external(design, path), InputError);
    }

    SUBCASE("a data row matching nothing") {
        ResponseDataset extra = data;
        extra.design.rows.push_back({0.25, 0.25});
        extra.design.provenance.push_back(Provenance::external);
        extra.responses.at("m1").push_back(-99.0);
        const std::string path = tmp.file("extra.csv");
        write_dataset_csv(extra, path, false);
        CHECK_THROWS_AS(join_external(design, path), InputError);
    }

    SUBCASE("label mismatch") {
        const DesignMatrix other = full_factorial(std::vector<std::string>{"x1", "x3"});
        const std::string path = tmp.file("labels.csv");
        write_dataset_csv(data, path, false);
        CHECK_THROWS_AS(join_external(other, path), InputError);
    }
}
