#pragma once

#include "dcsbox/params.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace dcsbox {

/// First `length` samples of the orbit of params.seed_x0. Use Orbit directly to stream.
std::vector<OrbitSample> orbit_stream(const GenerationParams& params, std::size_t length);

/// Orbit indices m < limit with T^m(x0) ∈ gate, index 0 included only when x0 is in the gate.
std::vector<std::uint64_t> sampling_times(const GenerationParams& params, std::uint64_t limit);

// Sliding view over the orbit at position τ: whether T^τ(x0) passed the gate,
// and the n-bit word packed LSB-first from b_{τ+offset} ... b_{τ+offset+n-1},
// where b_m is the threshold bit of the digit ⌊β·T^m(x0)⌋.
class GatedWindow {
public:
    explicit GatedWindow(const GenerationParams& params);

    std::uint64_t tau() const noexcept { return tau_; }
    bool gate_hit();
    std::uint32_t word();
    void advance(std::uint64_t steps = 1) noexcept { tau_ += steps; }

private:
    void fill_through(std::uint64_t index);

    static constexpr std::size_t kRing = 64;

    std::uint32_t beta_int_;
    u128 beta_frac_;
    unsigned width_;
    DyadicSet gate_;
    unsigned n_;
    unsigned offset_;
    u128 state_;                // T^computed_(x0)
    std::uint64_t computed_ = 0;  // positions [0, computed_) have flag and bit
    std::uint64_t tau_ = 0;
    std::array<std::uint8_t, kRing> flags_{};
    std::array<std::uint8_t, kRing> bits_{};
};

}  // namespace dcsbox
