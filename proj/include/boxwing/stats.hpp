#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <vector>

namespace boxwing::stats {

double mean(std::span<const double> v);

// Standard deviation with a configurable degrees-of-freedom correction:
// sqrt(sum((v - mean)^2) / (N - ddof)).
double stddev(std::span<const double> v, std::size_t ddof = 1);

// Inverse CDF of the standard normal distribution. Acklam's rational
// approximation refined with one Halley step; |error| < 1e-13 on (0, 1).
double normal_quantile(double p);

// Deterministic Gaussian sampler (Box-Muller on mt19937_64). Unlike
// std::normal_distribution the generated stream is identical across
// standard library implementations.
class GaussianSampler {
public:
    explicit GaussianSampler(std::uint64_t seed) : engine_(seed) {}
    double next(double sigma = 1.0);

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

// FNV-1a 64-bit checksum; used to guard embedded data blobs against
// accidental edits.
std::uint64_t fnv1a64(std::string_view data);

} // namespace boxwing::stats
