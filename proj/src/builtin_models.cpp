#include "boxwing/surrogate.hpp"

#include "boxwing/errors.hpp"

#include <initializer_list>

namespace boxwing {

namespace {

Term term(std::initializer_list<std::pair<const char*, int>> factors, double c) {
    Term t;
    for (const auto& [label, exp] : factors) t.factors.push_back({label, exp});
    t.coefficient = c;
    return t;
}

const std::vector<std::string> kPrp300Labels = {"x1", "x2", "x4",  "x5", "x6",
                                                "x8", "x9", "x13", "x15"};
const std::vector<std::string> kProsibLabels = {"x1", "x2", "x3", "x4", "x5",
                                                "x6", "x7", "x8", "x9"};

PolynomialSurrogate prp300_sigma_front() {
    PolynomialSurrogate m;
    m.response_name = "sigma_F_MPa";
    m.unit = ResponseUnit::MPa;
    m.labels = kPrp300Labels;
    m.intercept = 269.438;
    m.terms = {
        term({{"x1", 1}}, -32.289),
        term({{"x2", 1}}, -51.358),
        term({{"x4", 1}}, -37.248),
        term({{"x5", 1}}, -5.684),
        term({{"x6", 1}}, -9.092),
        term({{"x8", 1}}, -1.733),
        term({{"x9", 1}}, -6.887),
        term({{"x13", 1}}, -2.167),
        term({{"x15", 1}}, -2.853),
        term({{"x1", 1}, {"x2", 1}}, -23.2),
        term({{"x1", 1}, {"x4", 1}}, 8.455),
        term({{"x1", 1}, {"x5", 1}}, 4.076),
        term({{"x2", 2}}, 39.84),
        term({{"x2", 1}, {"x4", 1}}, 8.413),
        term({{"x2", 1}, {"x5", 1}}, -2.883),
        term({{"x2", 1}, {"x6", 1}}, 5.84),
        term({{"x4", 2}}, 13.973),
        term({{"x4", 1}, {"x5", 1}}, -2.199),
        term({{"x4", 1}, {"x6", 1}}, -4.192),
        term({{"x1", 1}, {"x2", 1}, {"x4", 1}}, 5.426),
        term({{"x1", 1}, {"x2", 1}, {"x5", 1}}, 3.453),
        term({{"x2", 1}, {"x4", 1}, {"x6", 1}}, 2.582),
    };
    m.residual_std = 4.415;
    m.mean_residual = -2.758e-5;
    return m;
}

PolynomialSurrogate prp300_sigma_rear() {
    PolynomialSurrogate m;
    m.response_name = "sigma_R_MPa";
    m.unit = ResponseUnit::MPa;
    m.labels = kPrp300Labels;
    m.intercept = 193.116;
    m.terms = {
        term({{"x1", 1}}, -11.219),
        term({{"x2", 1}}, -11.667),
        term({{"x4", 1}}, -9.29),
        term({{"x5", 1}}, -1.832),
        term({{"x6", 1}}, -1.879),
        term({{"x8", 1}}, -1.267),
        term({{"x9", 1}}, -8.687),
        term({{"x13", 1}}, -9.252),
        term({{"x15", 1}}, -5.157),
        term({{"x1", 1}, {"x2", 1}}, -0.712),
        term({{"x1", 1}, {"x4", 1}}, 1.479),
        term({{"x1", 1}, {"x5", 1}}, 0.663),
        term({{"x1", 1}, {"x13", 1}}, 0.401),
        term({{"x2", 2}}, 5.141),
        term({{"x2", 1}, {"x4", 1}}, 1.541),
        term({{"x2", 1}, {"x6", 1}}, 0.679),
        term({{"x2", 1}, {"x13", 1}}, 0.401),
        term({{"x4", 1}, {"x5", 1}}, -0.99),
        term({{"x4", 1}, {"x6", 1}}, -1.027),
        term({{"x4", 1}, {"x8", 1}}, -0.714),
        term({{"x4", 1}, {"x9", 1}}, 0.356),
        term({{"x4", 1}, {"x13", 1}}, 0.351),
        term({{"x9", 2}}, 10.71),
        term({{"x9", 1}, {"x13", 1}}, 8.322),
        term({{"x13", 1}, {"x15", 1}}, 0.369),
        term({{"x9", 1}, {"x13", 1}, {"x15", 1}}, -0.429),
    };
    m.residual_std = 1.355;
    m.mean_residual = -3.567e-6;
    return m;
}

PolynomialSurrogate prp300_uz() {
    PolynomialSurrogate m;
    m.response_name = "uz_mm";
    m.unit = ResponseUnit::mm;
    m.labels = kPrp300Labels;
    m.intercept = 1525.664;
    m.terms = {
        term({{"x1", 1}}, -141.723),
        term({{"x2", 1}}, -144.03),
        term({{"x4", 1}}, -123.96),
        term({{"x5", 1}}, -24.495),
        term({{"x6", 1}}, -23.904),
        term({{"x8", 1}}, -19.053),
        term({{"x9", 1}}, -90.84),
        term({{"x13", 1}}, -28.513),
        term({{"x15", 1}}, -37.948),
        term({{"x1", 1}, {"x2", 1}}, -4.283),
        term({{"x1", 1}, {"x4", 1}}, 23.995),
        term({{"x1", 1}, {"x5", 1}}, 9.161),
        term({{"x1", 1}, {"x9", 1}}, 8.851),
        term({{"x1", 1}, {"x15", 1}}, 3.687),
        term({{"x2", 2}}, 46.656),
        term({{"x2", 1}, {"x4", 1}}, 23.303),
        term({{"x2", 1}, {"x6", 1}}, 8.747),
        term({{"x2", 1}, {"x9", 1}}, 9.265),
        term({{"x2", 1}, {"x15", 1}}, 3.892),
        term({{"x4", 2}}, 29.367),
        term({{"x4", 1}, {"x5", 1}}, -12.108),
        term({{"x4", 1}, {"x6", 1}}, -11.952),
        term({{"x4", 1}, {"x8", 1}}, -8.667),
        term({{"x4", 1}, {"x9", 1}}, 8.121),
        term({{"x4", 1}, {"x15", 1}}, 3.516),
        term({{"x9", 2}}, 31.291),
        term({{"x9", 1}, {"x13", 1}}, 9.483),
        term({{"x1", 1}, {"x2", 1}, {"x4", 1}}, 3.56),
        term({{"x2", 1}, {"x4", 1}, {"x6", 1}}, 3.716),
    };
    m.residual_std = 12.815;
    m.mean_residual = 1.1e-4;
    return m;
}

PolynomialSurrogate prp300_mass() {
    PolynomialSurrogate m;
    m.response_name = "mass_kg";
    m.unit = ResponseUnit::kg;
    m.labels = kPrp300Labels;
    m.intercept = 16514.7;
    m.terms = {
        term({{"x1", 1}}, 686.6),
        term({{"x2", 1}}, 690.9),
        term({{"x4", 1}}, 756.2),
        term({{"x5", 1}}, 172.4),
        term({{"x6", 1}}, 173.0),
        term({{"x8", 1}}, 163.0),
        term({{"x9", 1}}, 573.5),
        term({{"x13", 1}}, 241.8),
        term({{"x15", 1}}, 222.0),
        term({{"x4", 1}, {"x5", 1}}, 111.6),
        term({{"x4", 1}, {"x6", 1}}, 112.0),
        term({{"x4", 1}, {"x8", 1}}, 103.0),
        term({{"x9", 1}, {"x15", 1}}, 39.0),
    };
    return m;
}

PolynomialSurrogate prosib_sigma_front() {
    PolynomialSurrogate m;
    m.response_name = "sigma_F_MPa";
    m.unit = ResponseUnit::MPa;
    m.labels = kProsibLabels;
    m.intercept = 177.383;
    m.terms = {
        term({{"x1", 1}}, -48.121),
        term({{"x2", 1}}, -36.301),
        term({{"x3", 1}}, -21.762),
        term({{"x4", 1}}, -46.351),
        term({{"x5", 1}}, -6.931),
        term({{"x6", 1}}, -6.93),
        term({{"x7", 1}}, -2.194),
        term({{"x8", 1}}, -8.697),
        term({{"x9", 1}}, -15.516),
        term({{"x1", 2}}, 39.5),
        term({{"x1", 1}, {"x2", 1}}, -28.631),
        term({{"x1", 1}, {"x3", 1}}, 6.107),
        term({{"x1", 1}, {"x4", 1}}, 13.243),
        term({{"x1", 1}, {"x9", 1}}, 4.108),
        term({{"x2", 2}}, 30.156),
        term({{"x2", 1}, {"x3", 1}}, 3.943),
        term({{"x2", 1}, {"x4", 1}}, 9.958),
        term({{"x2", 1}, {"x5", 1}}, 1.498),
        term({{"x2", 1}, {"x6", 1}}, 1.556),
        term({{"x2", 1}, {"x8", 1}}, 1.887),
        term({{"x2", 1}, {"x9", 1}}, 2.873),
        term({{"x3", 1}, {"x4", 1}}, 9.34),
        term({{"x3", 1}, {"x9", 1}}, 2.404),
        term({{"x4", 2}}, 7.169),
        term({{"x4", 1}, {"x5", 1}}, 2.085),
        term({{"x4", 1}, {"x6", 1}}, 2.039),
        term({{"x4", 1}, {"x8", 1}}, 2.719),
        term({{"x4", 1}, {"x9", 1}}, -1.268),
        term({{"x5", 1}, {"x8", 1}}, 1.789),
        term({{"x6", 1}, {"x8", 1}}, 1.736),
        term({{"x1", 1}, {"x2", 1}, {"x3", 1}}, 6.502),
        term({{"x1", 1}, {"x2", 1}, {"x4", 1}}, 6.996),
        term({{"x1", 1}, {"x2", 1}, {"x5", 1}}, 1.167),
        term({{"x1", 1}, {"x2", 1}, {"x6", 1}}, 1.253),
        term({{"x1", 1}, {"x2", 1}, {"x8", 1}}, 1.465),
        term({{"x1", 1}, {"x2", 1}, {"x9", 1}}, 2.19),
        term({{"x1", 1}, {"x3", 1}, {"x4", 1}}, -2.47),
        term({{"x2", 1}, {"x3", 1}, {"x4", 1}}, -2.333),
        term({{"x1", 1}, {"x2", 1}, {"x3", 1}, {"x4", 1}}, -3.4),
    };
    return m;
}

PolynomialSurrogate prosib_sigma_rear() {
    PolynomialSurrogate m;
    m.response_name = "sigma_R_MPa";
    m.unit = ResponseUnit::MPa;
    m.labels = kProsibLabels;
    m.intercept = 161.686;
    m.terms = {
        term({{"x1", 1}}, -10.766),
        term({{"x2", 1}}, -11.462),
        term({{"x3", 1}}, -3.047),
        term({{"x4", 1}}, -11.23),
        term({{"x5", 1}}, -38.5),
        term({{"x6", 1}}, -30.88),
        term({{"x7", 1}}, -18.149),
        term({{"x1", 1}, {"x4", 1}}, 2.526),
        term({{"x1", 1}, {"x5", 1}}, 1.575),
        term({{"x1", 1}, {"x6", 1}}, 1.64),
        term({{"x1", 1}, {"x8", 1}}, 1.903),
        term({{"x1", 1}, {"x9", 1}}, 1.507),
        term({{"x2", 1}, {"x4", 1}}, 2.657),
        term({{"x2", 1}, {"x5", 1}}, 1.626),
        term({{"x2", 1}, {"x6", 1}}, 1.872),
        term({{"x2", 1}, {"x8", 1}}, 2.031),
        term({{"x2", 1}, {"x9", 1}}, 1.627),
        term({{"x4", 1}, {"x5", 1}}, 1.689),
        term({{"x4", 1}, {"x6", 1}}, 1.577),
        term({{"x4", 1}, {"x8", 1}}, 1.837),
        term({{"x5", 2}}, 28.183),
        term({{"x5", 1}, {"x6", 1}}, -23.139),
        term({{"x5", 1}, {"x7", 1}}, 5.879),
        term({{"x5", 1}, {"x8", 1}}, 10.982),
        term({{"x5", 1}, {"x9", 1}}, 3.697),
        term({{"x6", 2}}, 22.634),
        term({{"x6", 1}, {"x7", 1}}, 2.997),
        term({{"x6", 1}, {"x8", 1}}, 12.586),
        term({{"x6", 1}, {"x9", 1}}, 3.703),
        term({{"x7", 1}, {"x8", 1}}, 7.93),
        term({{"x7", 1}, {"x9", 1}}, 2.2),
        term({{"x8", 2}}, 11.358),
        term({{"x8", 1}, {"x9", 1}}, -1.327),
        term({{"x1", 1}, {"x5", 1}, {"x6", 1}}, 1.471),
        term({{"x1", 1}, {"x5", 1}, {"x8", 1}}, -1.246),
        term({{"x2", 1}, {"x5", 1}, {"x6", 1}}, 1.689),
        term({{"x2", 1}, {"x5", 1}, {"x8", 1}}, -1.378),
        term({{"x4", 1}, {"x5", 1}, {"x6", 1}}, 1.51),
        term({{"x4", 1}, {"x5", 1}, {"x8", 1}}, -1.462),
        term({{"x5", 1}, {"x6", 1}, {"x7", 1}}, 4.764),
        term({{"x5", 1}, {"x6", 1}, {"x8", 1}}, 9.635),
        term({{"x5", 1}, {"x6", 1}, {"x9", 1}}, 3.1),
        term({{"x5", 1}, {"x7", 1}, {"x8", 1}}, -2.5),
        term({{"x6", 1}, {"x7", 1}, {"x8", 1}}, -1.777),
        term({{"x5", 1}, {"x6", 1}, {"x7", 1}, {"x8", 1}}, -2.609),
    };
    return m;
}

PolynomialSurrogate prosib_uz() {
    PolynomialSurrogate m;
    m.response_name = "uz_mm";
    m.unit = ResponseUnit::mm;
    m.labels = kProsibLabels;
    m.intercept = 500.339;
    m.terms = {
        term({{"x1", 1}}, -61.178),
        term({{"x2", 1}}, -66.144),
        term({{"x3", 1}}, -22.628),
        term({{"x4", 1}}, -67.484),
        term({{"x5", 1}}, -50.568),
        term({{"x6", 1}}, -48.214),
        term({{"x7", 1}}, -21.338),
        term({{"x8", 1}}, -63.95),
        term({{"x9", 1}}, -37.066),
        term({{"x1", 2}}, 18.924),
        term({{"x1", 1}, {"x3", 1}}, 5.738),
        term({{"x1", 1}, {"x4", 1}}, 18.262),
        term({{"x1", 1}, {"x5", 1}}, 3.902),
        term({{"x1", 1}, {"x6", 1}}, 3.894),
        term({{"x1", 1}, {"x7", 1}}, 0.981),
        term({{"x1", 1}, {"x8", 1}}, 4.962),
        term({{"x1", 1}, {"x9", 1}}, 5.99),
        term({{"x2", 2}}, 19.257),
        term({{"x2", 1}, {"x3", 1}}, 6.504),
        term({{"x2", 1}, {"x4", 1}}, 19.196),
        term({{"x2", 1}, {"x5", 1}}, 4.863),
        term({{"x2", 1}, {"x6", 1}}, 4.831),
        term({{"x2", 1}, {"x7", 1}}, 1.172),
        term({{"x2", 1}, {"x8", 1}}, 6.071),
        term({{"x2", 1}, {"x9", 1}}, 6.628),
        term({{"x3", 1}, {"x4", 1}}, 8.672),
        term({{"x3", 1}, {"x8", 1}}, 0.586),
        term({{"x3", 1}, {"x9", 1}}, 2.257),
        term({{"x4", 2}}, 12.654),
        term({{"x4", 1}, {"x5", 1}}, 3.936),
        term({{"x4", 1}, {"x6", 1}}, 4.039),
        term({{"x4", 1}, {"x7", 1}}, 0.812),
        term({{"x4", 1}, {"x8", 1}}, 5.318),
        term({{"x4", 1}, {"x9", 1}}, -4.261),
        term({{"x5", 2}}, 16.695),
        term({{"x5", 1}, {"x7", 1}}, 6.602),
        term({{"x5", 1}, {"x8", 1}}, 17.159),
        term({{"x5", 1}, {"x9", 1}}, 5.837),
        term({{"x6", 2}}, 15.628),
        term({{"x6", 1}, {"x7", 1}}, 4.424),
        term({{"x6", 1}, {"x8", 1}}, 16.282),
        term({{"x6", 1}, {"x9", 1}}, 5.593),
        term({{"x7", 1}, {"x8", 1}}, 8.342),
        term({{"x7", 1}, {"x9", 1}}, 2.437),
        term({{"x8", 2}}, 15.355),
        term({{"x8", 1}, {"x9", 1}}, -3.0),
        term({{"x1", 1}, {"x3", 1}, {"x4", 1}}, -3.564),
        term({{"x2", 1}, {"x3", 1}, {"x4", 1}}, -3.702),
        term({{"x5", 1}, {"x7", 1}, {"x8", 1}}, -3.465),
    };
    return m;
}

PolynomialSurrogate prosib_mass() {
    PolynomialSurrogate m;
    m.response_name = "mass_kg";
    m.unit = ResponseUnit::kg;
    m.labels = kProsibLabels;
    m.intercept = 2158.0;
    m.terms = {
        term({{"x1", 1}}, 89.8),
        term({{"x2", 1}}, 89.8),
        term({{"x3", 1}}, 69.2),
        term({{"x4", 1}}, 110.0),
        term({{"x5", 1}}, 67.4),
        term({{"x6", 1}}, 67.0),
        term({{"x7", 1}}, 43.4),
        term({{"x8", 1}}, 105.4),
        term({{"x9", 1}}, 77.2),
        term({{"x4", 1}, {"x9", 1}}, 24.6),
        term({{"x8", 1}, {"x9", 1}}, 23.6),
    };
    return m;
}

} // namespace

std::vector<std::string> builtin_model_ids() {
    return {"prp300.sigma_front", "prp300.sigma_rear", "prp300.uz", "prp300.mass",
            "prosib.sigma_front", "prosib.sigma_rear", "prosib.uz", "prosib.mass"};
}

bool is_builtin_model(const std::string& id) {
    for (const std::string& known : builtin_model_ids())
        if (id == known) return true;
    return false;
}

PolynomialSurrogate load_builtin_model(const std::string& id) {
    PolynomialSurrogate m;
    if (id == "prp300.sigma_front") m = prp300_sigma_front();
    else if (id == "prp300.sigma_rear") m = prp300_sigma_rear();
    else if (id == "prp300.uz") m = prp300_uz();
    else if (id == "prp300.mass") m = prp300_mass();
    else if (id == "prosib.sigma_front") m = prosib_sigma_front();
    else if (id == "prosib.sigma_rear") m = prosib_sigma_rear();
    else if (id == "prosib.uz") m = prosib_uz();
    else if (id == "prosib.mass") m = prosib_mass();
    else throw InputError("unknown builtin model '" + id + "'");
    m.validate();
    return m;
}

} // namespace boxwing
