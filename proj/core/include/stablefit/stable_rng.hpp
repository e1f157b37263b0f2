#pragma once

#include <array>
#include <cstddef>
#include <cstdint>

#include "stablefit/ecf.hpp"
#include "stablefit/stable_model.hpp"

namespace stablefit {

/// Philox4x32-10 counter-based generator (Salmon et al., Random123).
/// Output block i of stream (key, stream_id) is a pure function of
/// (key, stream_id, i), so streams never need to be generated serially.
class Philox4x32 {
public:
    using Block = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    [[nodiscard]] static Block encrypt(Block counter, Key key) noexcept;
};

struct StreamKey {
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;

    friend bool operator==(const StreamKey&, const StreamKey&) = default;
};

/// Stream parameters for replication `index` of a run seeded with `base_seed`.
/// Injective in (base_seed, index).
[[nodiscard]] StreamKey replicate_seed(std::uint64_t base_seed, std::uint64_t index) noexcept;

/// Uniform doubles from one Philox stream, two per 128-bit block.
class UniformStream {
public:
    explicit UniformStream(StreamKey key) noexcept;

    /// Uniform on the open interval (0, 1).
    double open();
    /// Uniform on (0, 1]; zero is never returned.
    double open_closed();

private:
    std::uint64_t next_bits();

    StreamKey key_;
    std::uint64_t block_index_ = 0;
    Philox4x32::Block buffer_{};
    int used_ = 4;
};

/// Symmetric stable variates by the Chambers-Mallows-Stuck transform
///   X = sin(alpha V) / cos(V)^(1/alpha) * (cos((1 - alpha) V) / W)^((1 - alpha) / alpha)
/// with V ~ U(-pi/2, pi/2), W ~ Exp(1); alpha = 1 uses X = tan V. Output is
/// scaled by sigma. Single owner; copy to fork an identical stream.
class StableSampler {
public:
    /// Throws DomainError unless params.beta() == 0 and params.mu() == 0.
    StableSampler(const StableParams& params, std::uint64_t seed, std::uint64_t stream_id = 0);
    StableSampler(const StableParams& params, StreamKey key);

    [[nodiscard]] const StableParams& params() const noexcept { return params_; }

    /// One standardized (sigma = 1) variate.
    double next_standard();
    double next() { return params_.sigma() * next_standard(); }

    /// n draws. Throws DomainError for n < 2 since Sample needs two values;
    /// use draw_values for a single variate.
    Sample draw(std::size_t n);
    /// Throws DomainError for n == 0.
    std::vector<double> draw_values(std::size_t n);

private:
    StableParams params_;
    UniformStream uniforms_;
    bool cauchy_branch_;
};

}  // namespace stablefit
