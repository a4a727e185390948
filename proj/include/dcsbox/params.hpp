#pragma once

#include "dcsbox/dyadic.hpp"
#include "dcsbox/fixed_point.hpp"

#include <cstdint>
#include <string>
#include <string_view>

namespace dcsbox {

enum class Stride {
    Overlapping,      // τ advances by one after every test, accepted or not
    SkipAfterAccept,  // τ jumps past the consumed window after an acceptance
};

std::string_view to_string(Stride s);
Stride parse_stride(std::string_view text);

// Index permutation π applied after collection: S(x) = L[π(x)].
struct Mixer {
    enum class Kind { Identity, XorRotate };

    Kind kind = Kind::Identity;
    std::uint32_t constant = 0;

    static Mixer identity() { return {}; }
    static Mixer xor_rotate(std::uint32_t c) { return {Kind::XorRotate, c}; }
    /// "identity" or "xorrot:<c>" (c decimal or 0x-prefixed hex).
    static Mixer parse(std::string_view text);

    /// π(x) for an n-bit index.
    std::uint32_t permute(std::uint32_t x, unsigned n) const noexcept;
    std::string to_string() const;

    friend bool operator==(const Mixer&, const Mixer&) = default;
};

inline constexpr unsigned kMaxWordSize = 16;
inline constexpr std::uint64_t kDefaultBudget = 1'000'000;

struct GenerationParams {
    BetaValue beta = BetaValue::default_value();
    FixedPointState seed_x0 = default_seed();
    DyadicSet gate = DyadicSet::default_gate();
    unsigned word_size = 8;
    std::uint64_t budget = kDefaultBudget;
    Mixer mixer;
    Stride stride = Stride::Overlapping;
    // Distance between the gated state and the first state whose digit feeds
    // the word. 1 keeps the gate decision out of the word; 0 is the literal
    // b_τ...b_{τ+n-1} window, whose first bit is pinned by the gate.
    unsigned window_offset = 1;

    static GenerationParams defaults() { return {}; }

    unsigned width() const noexcept { return beta.width(); }
    void validate() const;

    friend bool operator==(const GenerationParams&, const GenerationParams&) = default;
};

}  // namespace dcsbox
