#pragma once

// Fixed-point β-transformation T(x) = βx mod 1 on B-bit fractions.
//
// A state x ∈ [0,1) is stored as an unsigned B-bit integer `frac` with
// x = frac / 2^B. β is stored as ⌊β⌋ plus a B-bit fractional part, i.e. the
// B-bit truncation of the real base. One step multiplies exactly and keeps
// the carried-out integer part as the digit, truncating the fraction.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace dcsbox {

using u128 = unsigned __int128;

inline constexpr unsigned kMinWidth = 16;
inline constexpr unsigned kMaxWidth = 128;
inline constexpr unsigned kDefaultWidth = 64;

/// All-ones mask of the low `width` bits.
constexpr u128 width_mask(unsigned width) {
    return width >= 128 ? ~u128{0} : ((u128{1} << width) - 1);
}

class FixedPointState {
public:
    FixedPointState() = default;
    FixedPointState(u128 frac, unsigned width);

    /// Truncating conversion of a decimal literal in [0,1), e.g. "0.3".
    static FixedPointState from_decimal(std::string_view text, unsigned width);

    u128 frac() const noexcept { return frac_; }
    unsigned width() const noexcept { return width_; }
    double to_double() const noexcept;
    std::string to_hex() const;

    friend bool operator==(const FixedPointState&, const FixedPointState&) = default;

private:
    u128 frac_ = 0;
    unsigned width_ = kDefaultWidth;
};

class BetaValue {
public:
    BetaValue() = default;
    BetaValue(std::uint32_t int_part, u128 frac, unsigned width);

    static BetaValue from_decimal(std::string_view text, unsigned width);
    /// Accepts a preset name (phi, silver, pi, pi100) or a decimal literal.
    static BetaValue parse(std::string_view text, unsigned width);
    static BetaValue default_value(unsigned width = kDefaultWidth);

    std::uint32_t int_part() const noexcept { return int_part_; }
    u128 frac() const noexcept { return frac_; }
    unsigned width() const noexcept { return width_; }
    double to_double() const noexcept;

    friend bool operator==(const BetaValue&, const BetaValue&) = default;

private:
    std::uint32_t int_part_ = 1;
    u128 frac_ = 0;
    unsigned width_ = kDefaultWidth;
};

/// Decimal expansion behind a named β preset, or empty when `name` is not one.
std::string_view beta_preset_digits(std::string_view name);
std::vector<std::string_view> beta_preset_names();

/// Default seed x0 = 0.3 truncated to `width` bits.
FixedPointState default_seed(unsigned width = kDefaultWidth);

struct StepResult {
    FixedPointState next;
    std::uint32_t digit = 0;
};

StepResult beta_step(const FixedPointState& state, const BetaValue& beta);

/// 1 iff 2·digit ≥ ⌊β⌋.
constexpr std::uint8_t threshold_bit(std::uint32_t digit, std::uint32_t beta_int) noexcept {
    return (std::uint64_t{2} * digit < beta_int) ? 0 : 1;
}
inline std::uint8_t threshold_bit(std::uint32_t digit, const BetaValue& beta) noexcept {
    return threshold_bit(digit, beta.int_part());
}

struct OrbitSample {
    FixedPointState state_after;
    std::uint32_t digit = 0;
    std::uint8_t bit = 0;

    friend bool operator==(const OrbitSample&, const OrbitSample&) = default;
};

// Streaming orbit. `state()` is the pre-step state T^m(x0) where m = index();
// `advance()` applies one step and returns the sample it produced.
class Orbit {
public:
    Orbit(BetaValue beta, FixedPointState seed);

    const FixedPointState& state() const noexcept { return state_; }
    std::uint64_t index() const noexcept { return index_; }
    const BetaValue& beta() const noexcept { return beta_; }

    OrbitSample advance();

private:
    BetaValue beta_;
    FixedPointState state_;
    std::uint64_t index_ = 0;
};

namespace detail {
// Raw step on masked integers; `next` receives the new fraction.
std::uint32_t step_raw(u128 x, std::uint32_t beta_int, u128 beta_frac, unsigned width, u128& next) noexcept;
}

}  // namespace dcsbox
