#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace stylo {

// All randomness in the toolkit flows from one master seed. Each pipeline
// stage derives its own stream seed as derive_seed(master, "stage-name"),
// so re-running any stage in isolation reproduces the exact samples the
// one-shot pipeline drew. Draws avoid std:: distributions on purpose: their
// output is implementation-defined, and artifacts must be reproducible
// across standard libraries.
std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t derive_seed(std::uint64_t master, std::string_view stage);

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

    std::uint64_t next_u64() { return engine_(); }

    // Unbiased integer in [0, bound) via rejection sampling.
    std::uint64_t below(std::uint64_t bound);

    // Uniform double in [0, 1) with 53 random bits.
    double uniform();

    // Fisher-Yates; deterministic for a given seed and input order.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace stylo
