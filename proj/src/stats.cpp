#include "boxwing/stats.hpp"

#include "boxwing/errors.hpp"

#include <cmath>
#include <numeric>

namespace boxwing::stats {

double mean(std::span<const double> v) {
    if (v.empty()) throw InputError("mean: empty input");
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double stddev(std::span<const double> v, std::size_t ddof) {
    if (v.size() <= ddof)
        throw InputError("stddev: need more than " + std::to_string(ddof) + " values");
    const double m = mean(v);
    double ss = 0.0;
    for (double x : v) ss += (x - m) * (x - m);
    return std::sqrt(ss / static_cast<double>(v.size() - ddof));
}

namespace {

// Acklam's rational approximation to the standard normal inverse CDF.
double acklam_inverse(double p) {
    static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                   -2.759285104469687e+02, 1.383577518672690e+02,
                                   -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                   -1.556989798598866e+02, 6.680131188771972e+01,
                                   -1.328068155288572e+01};
    static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                   -2.400758277161838e+00, -2.549732539343734e+00,
                                   4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                   2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double p_low = 0.02425;

    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (p <= 1.0 - p_low) {
        const double q = p - 0.5;
        const double r = q * q;
        return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
               (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    }
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
}

} // namespace

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw InputError("normal_quantile: p must be in (0,1)");
    constexpr double kSqrt2 = 1.4142135623730950488;
    constexpr double kSqrt2Pi = 2.5066282746310005024;
    double x = acklam_inverse(p);
    // One Halley refinement against the exact CDF.
    const double e = 0.5 * std::erfc(-x / kSqrt2) - p;
    const double u = e * kSqrt2Pi * std::exp(x * x / 2.0);
    x -= u / (1.0 + x * u / 2.0);
    return x;
}

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// Uniform in (0,1] from the top 53 bits of the engine output; unlike
// std::uniform_real_distribution this is identical on every platform.
double unit_uniform(std::mt19937_64& eng) {
    return (static_cast<double>(eng() >> 11) + 1.0) * 0x1.0p-53;
}

} // namespace

double GaussianSampler::next(double sigma) {
    if (has_spare_) {
        has_spare_ = false;
        return spare_ * sigma;
    }
    // Classic Box-Muller on two uniforms in (0,1].
    const double u1 = unit_uniform(engine_);
    const double u2 = unit_uniform(engine_);
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double z0 = r * std::cos(kTwoPi * u2);
    spare_ = r * std::sin(kTwoPi * u2);
    has_spare_ = true;
    return z0 * sigma;
}

std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : data) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace boxwing::stats
