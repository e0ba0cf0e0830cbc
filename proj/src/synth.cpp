#include "kmopt/synth.hpp"

#include <cmath>
#include <stdexcept>

#include "kmopt/rng.hpp"

namespace kmopt {

std::string regime_name(MixtureRegime regime) {
    return regime == MixtureRegime::small_distance ? "small" : "large";
}

Dataset generate(const MixtureSpec& spec) {
    if (spec.k_true < 1) throw std::invalid_argument("generate: k_true must be >= 1");
    if (spec.n < 1) throw std::invalid_argument("generate: n must be >= 1");
    if (spec.d < 1) throw std::invalid_argument("generate: d must be >= 1");

    const bool small = spec.regime == MixtureRegime::small_distance;
    const double cube_side = small ? 3.0 : 5.0;
    const double sigma = std::sqrt(small ? 0.3 : 0.1);

    RandomStream rng(spec.rng_seed);
    auto center_stream = rng.derive({0});
    auto point_stream = rng.derive({1});

    const auto k = static_cast<std::size_t>(spec.k_true);
    std::vector<double> centers(k * spec.d);
    for (double& v : centers) v = center_stream.next_unit() * cube_side;

    std::vector<double> values(spec.n * spec.d);
    std::vector<int> labels(spec.n);
    for (std::size_t i = 0; i < spec.n; ++i) {
        const auto comp = point_stream.next_below(k);
        labels[i] = static_cast<int>(comp);
        const double* center = centers.data() + comp * spec.d;
        double* out = values.data() + i * spec.d;
        for (std::size_t j = 0; j < spec.d; ++j) {
            out[j] = center[j] + sigma * point_stream.next_gaussian();
        }
    }

    const std::string name = "synth-" + regime_name(spec.regime) + "-d" + std::to_string(spec.d) +
                             "-k" + std::to_string(spec.k_true) + "-n" + std::to_string(spec.n) +
                             "-s" + std::to_string(spec.rng_seed);
    return {name, spec.d, std::move(values), std::move(labels)};
}

}  // namespace kmopt
