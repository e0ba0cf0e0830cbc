#ifndef KMOPT_RNG_HPP
#define KMOPT_RNG_HPP

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

namespace kmopt {

// splitmix64 finalizer. Doubles as the output function of RandomStream and
// as the mixing step of seed derivation.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Deterministic child-seed derivation. The label length is folded in before
// the elements, so derivation is path-sensitive:
// derive(derive(s, {1}), {2}) and derive(s, {1, 2}) are distinct streams.
inline std::uint64_t derive_seed(std::uint64_t parent,
                                 std::span<const std::uint64_t> label) {
    std::uint64_t h = mix64(parent ^ 0xa0761d6478bd642fULL);
    h = mix64(h ^ (0x8bb84b93962eacc9ULL + label.size()));
    for (std::uint64_t v : label) h = mix64(h ^ v);
    return h;
}

inline std::uint64_t derive_seed(std::uint64_t parent,
                                 std::initializer_list<std::uint64_t> label) {
    return derive_seed(parent, std::span<const std::uint64_t>(label.begin(), label.size()));
}

// Seedable, splittable pseudo-random stream (splitmix64 core). Children are
// derived from the stream's seed, never from its consumed position, so
// derivation order cannot perturb sibling streams. The (master seed, label
// path) pair is kept for audit.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed)
        : state_(seed), seed_(seed), master_seed_(seed) {}

    RandomStream derive(std::span<const std::uint64_t> label) const {
        RandomStream child(derive_seed(seed_, label));
        child.master_seed_ = master_seed_;
        child.path_ = path_;
        child.path_.insert(child.path_.end(), label.begin(), label.end());
        return child;
    }

    RandomStream derive(std::initializer_list<std::uint64_t> label) const {
        return derive(std::span<const std::uint64_t>(label.begin(), label.size()));
    }

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1) with 53 random bits.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in [0, bound) via the multiply-shift reduction. Consumes exactly
    // one value; the modulo bias is of order bound / 2^64.
    std::uint64_t next_below(std::uint64_t bound) {
        if (bound == 0) throw std::invalid_argument("next_below: bound must be positive");
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * bound) >> 64);
    }

    // Standard normal via Box-Muller; consumes two uniforms per pair and
    // caches the second value.
    double next_gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = next_unit();
        double u2 = next_unit();
        if (u1 <= 0.0) u1 = 0x1.0p-53;
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

    // Uniform permutation of [0, n) by Fisher-Yates; consumes n - 1 values.
    std::vector<std::uint32_t> permutation(std::uint32_t n) {
        if (n == 0) throw std::invalid_argument("permutation: n must be positive");
        std::vector<std::uint32_t> p(n);
        for (std::uint32_t i = 0; i < n; ++i) p[i] = i;
        for (std::uint32_t i = n - 1; i > 0; --i) {
            const auto j = static_cast<std::uint32_t>(next_below(i + 1));
            std::swap(p[i], p[j]);
        }
        return p;
    }

    std::uint64_t seed() const { return seed_; }
    std::uint64_t master_seed() const { return master_seed_; }
    std::span<const std::uint64_t> path() const { return path_; }

private:
    std::uint64_t state_;
    std::uint64_t seed_;
    std::uint64_t master_seed_;
    std::vector<std::uint64_t> path_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace kmopt

#endif  // KMOPT_RNG_HPP
