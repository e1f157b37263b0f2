#include "stablefit/stable_rng.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "stablefit/errors.hpp"

namespace stablefit {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

}  // namespace

Philox4x32::Block Philox4x32::encrypt(Block ctr, Key key) noexcept {
    for (int round = 0; round < 10; ++round) {
        const std::uint64_t p0 = std::uint64_t{kMul0} * ctr[0];
        const std::uint64_t p1 = std::uint64_t{kMul1} * ctr[2];
        const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
        const auto lo0 = static_cast<std::uint32_t>(p0);
        const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
        const auto lo1 = static_cast<std::uint32_t>(p1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        key[0] += kWeyl0;
        key[1] += kWeyl1;
    }
    return ctr;
}

StreamKey replicate_seed(std::uint64_t base_seed, std::uint64_t index) noexcept {
    // splitmix64 is a bijection on 64-bit words, so distinct indices give
    // distinct stream ids under the same base seed.
    return {base_seed, splitmix64(index)};
}

UniformStream::UniformStream(StreamKey key) noexcept : key_(key) {}

std::uint64_t UniformStream::next_bits() {
    if (used_ == 4) {
        const Philox4x32::Block counter{
            static_cast<std::uint32_t>(block_index_), static_cast<std::uint32_t>(block_index_ >> 32),
            static_cast<std::uint32_t>(key_.stream_id),
            static_cast<std::uint32_t>(key_.stream_id >> 32)};
        const Philox4x32::Key key{static_cast<std::uint32_t>(key_.seed),
                                  static_cast<std::uint32_t>(key_.seed >> 32)};
        buffer_ = Philox4x32::encrypt(counter, key);
        ++block_index_;
        used_ = 0;
    }
    const std::uint64_t bits = (std::uint64_t{buffer_[used_]} << 32) | buffer_[used_ + 1];
    used_ += 2;
    return bits;
}

double UniformStream::open() {
    constexpr double scale = 0x1.0p-53;
    return (static_cast<double>(next_bits() >> 11) + 0.5) * scale;
}

double UniformStream::open_closed() {
    constexpr double scale = 0x1.0p-53;
    return (static_cast<double>(next_bits() >> 11) + 1.0) * scale;
}

StableSampler::StableSampler(const StableParams& params, std::uint64_t seed, std::uint64_t stream_id)
    : StableSampler(params, StreamKey{seed, stream_id}) {}

StableSampler::StableSampler(const StableParams& params, StreamKey key)
    : params_(params),
      uniforms_(key),
      cauchy_branch_(std::abs(params.alpha() - 1.0) < 1e-8) {
    if (!params.is_symmetric()) {
        throw DomainError("the stable sampler only generates symmetric laws (beta = 0, mu = 0)");
    }
}

double StableSampler::next_standard() {
    const double v = std::numbers::pi * (uniforms_.open() - 0.5);
    const double w = -std::log(uniforms_.open_closed());
    if (cauchy_branch_) {
        return std::tan(v);
    }
    const double a = params_.alpha();
    return std::sin(a * v) / std::pow(std::cos(v), 1.0 / a)
           * std::pow(std::cos((1.0 - a) * v) / w, (1.0 - a) / a);
}

std::vector<double> StableSampler::draw_values(std::size_t n) {
    if (n == 0) {
        throw DomainError("requested an empty draw (n = 0)");
    }
    std::vector<double> out(n);
    for (double& x : out) {
        x = next();
    }
    return out;
}

Sample StableSampler::draw(std::size_t n) {
    if (n == 0) {
        throw DomainError("requested an empty draw (n = 0)");
    }
    return Sample(draw_values(n));
}

}  // namespace stablefit
