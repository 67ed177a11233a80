#ifndef DIGMOL_RNG_HPP
#define DIGMOL_RNG_HPP

#include <cstdint>
#include <vector>

namespace digmol {

// Deterministic counter-free random stream built on splitmix64.
// Sub-streams are derived by hashing, so (seed, molecule, epoch) always
// yields the same draws regardless of evaluation order across threads.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed);

    RngStream substream(std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0) const;

    std::uint64_t next_u64();

    // Uniform in [0, 1).
    double next_double();

    // Uniform in [0, n), rejection-sampled to avoid modulo bias. n must be > 0.
    std::size_t next_index(std::size_t n);

    bool next_coin() { return (next_u64() >> 63) != 0; }

    // Uniform in [lo, hi).
    double next_uniform(double lo, double hi);

    // k distinct values from [0, n), in draw order (partial Fisher-Yates).
    std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k);

    template <typename T>
    void shuffle(std::vector<T>& values) {
        for (std::size_t i = values.size(); i > 1; --i) {
            std::size_t j = next_index(i);
            std::swap(values[i - 1], values[j]);
        }
    }

    std::uint64_t state() const { return state_; }
    void set_state(std::uint64_t state) { state_ = state; }

private:
    std::uint64_t state_;
};

}  // namespace digmol

#endif
