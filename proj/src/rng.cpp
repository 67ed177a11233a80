#include "rng.hpp"

#include <cassert>

namespace digmol {
namespace {

std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed) : state_(mix64(seed ^ 0x6a09e667f3bcc908ULL)) {}

RngStream RngStream::substream(std::uint64_t a, std::uint64_t b, std::uint64_t c) const {
    RngStream child(0);
    std::uint64_t s = state_;
    s = mix64(s ^ mix64(a ^ 0xbb67ae8584caa73bULL));
    s = mix64(s ^ mix64(b ^ 0x3c6ef372fe94f82bULL));
    s = mix64(s ^ mix64(c ^ 0xa54ff53a5f1d36f1ULL));
    child.state_ = s;
    return child;
}

std::uint64_t RngStream::next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double RngStream::next_double() {
    // 53 high bits -> [0, 1)
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::size_t RngStream::next_index(std::size_t n) {
    assert(n > 0);
    std::uint64_t range = static_cast<std::uint64_t>(n);
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % range;
    std::uint64_t x;
    do {
        x = next_u64();
    } while (x >= limit);
    return static_cast<std::size_t>(x % range);
}

double RngStream::next_uniform(double lo, double hi) {
    return lo + (hi - lo) * next_double();
}

std::vector<std::size_t> RngStream::sample_without_replacement(std::size_t n, std::size_t k) {
    assert(k <= n);
    std::vector<std::size_t> pool(n);
    for (std::size_t i = 0; i < n; ++i) pool[i] = i;
    std::vector<std::size_t> out;
    out.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        std::size_t j = i + next_index(n - i);
        std::swap(pool[i], pool[j]);
        out.push_back(pool[i]);
    }
    return out;
}

}  // namespace digmol
