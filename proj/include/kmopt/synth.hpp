#ifndef KMOPT_SYNTH_HPP
#define KMOPT_SYNTH_HPP

#include <cstdint>
#include <string>

#include "kmopt/core.hpp"

namespace kmopt {

// Isotropic Gaussian mixture regimes: small_distance draws centers from
// [0,3]^d with per-coordinate variance 0.3; large_distance draws centers
// from [0,5]^d with variance 0.1. Variance, not standard deviation.
enum class MixtureRegime { small_distance, large_distance };

struct MixtureSpec {
    MixtureRegime regime = MixtureRegime::small_distance;
    std::size_t d = 2;
    int k_true = 1;
    std::size_t n = 1;
    std::uint64_t rng_seed = 0;
};

// Draws k_true centers uniformly from the regime's cube, then for each point
// independently picks a uniform component and samples the point from the
// isotropic Gaussian at its center. Component ids are recorded as ground
// truth; components are not balanced by construction.
Dataset generate(const MixtureSpec& spec);

// "small" / "large"
std::string regime_name(MixtureRegime regime);

}  // namespace kmopt

#endif  // KMOPT_SYNTH_HPP
