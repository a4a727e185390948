#include "dcsbox/fixed_point.hpp"

#include "dcsbox/errors.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <array>
#include <cctype>
#include <cmath>
#include <limits>
#include <utility>

namespace dcsbox {

namespace mp = boost::multiprecision;

namespace {

void check_width(unsigned width) {
    if (width < kMinWidth || width > kMaxWidth) {
        throw ConfigError("fractional width must lie in [16, 128], got " + std::to_string(width));
    }
}

mp::uint256_t to_wide(u128 v) {
    mp::uint256_t r = static_cast<std::uint64_t>(v >> 64);
    r <<= 64;
    r |= static_cast<std::uint64_t>(v);
    return r;
}

u128 from_wide(const mp::uint256_t& v) {
    const auto lo = static_cast<std::uint64_t>(v & 0xFFFFFFFFFFFFFFFFull);
    const auto hi = static_cast<std::uint64_t>((v >> 64) & 0xFFFFFFFFFFFFFFFFull);
    return (u128{hi} << 64) | lo;
}

struct Decimal {
    mp::cpp_int int_part;
    mp::cpp_int frac_digits;  // fractional digits as an integer
    mp::cpp_int frac_scale;   // 10^(number of fractional digits)
};

Decimal parse_decimal(std::string_view text) {
    if (text.empty()) throw ConfigError("empty decimal literal");
    Decimal d{0, 0, 1};
    std::size_t i = 0;
    bool any_digit = false;
    for (; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i) {
        d.int_part = d.int_part * 10 + (text[i] - '0');
        any_digit = true;
    }
    if (i < text.size() && text[i] == '.') {
        ++i;
        for (; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i) {
            d.frac_digits = d.frac_digits * 10 + (text[i] - '0');
            d.frac_scale *= 10;
            any_digit = true;
        }
    }
    if (i != text.size() || !any_digit) {
        throw ConfigError("not a decimal literal: '" + std::string(text) + "'");
    }
    return d;
}

// ⌊frac_digits · 2^width / frac_scale⌋
u128 truncate_fraction(const Decimal& d, unsigned width) {
    mp::cpp_int scaled = d.frac_digits;
    scaled <<= width;
    scaled /= d.frac_scale;
    mp::uint256_t w = static_cast<mp::uint256_t>(scaled);
    return from_wide(w);
}

struct Preset {
    std::string_view name;
    std::string_view digits;
};

// 60 significant digits each; enough for the 128-bit maximum width.
constexpr std::array<Preset, 4> kPresets{{
    {"phi", "1.61803398874989484820458683436563811772030917980576286213544862"},
    {"silver", "2.41421356237309504880168872420969807856967187537694807317667974"},
    {"pi", "3.14159265358979323846264338327950288419716939937510582097494459"},
    {"pi100", "314.159265358979323846264338327950288419716939937510582097494459"},
}};

constexpr std::string_view kDefaultBeta = "pi100";
constexpr std::string_view kDefaultSeed = "0.3";

}  // namespace

FixedPointState::FixedPointState(u128 frac, unsigned width) : frac_(frac), width_(width) {
    check_width(width);
    if ((frac & ~width_mask(width)) != 0) {
        throw ConfigError("state fraction does not fit in " + std::to_string(width) + " bits");
    }
}

FixedPointState FixedPointState::from_decimal(std::string_view text, unsigned width) {
    check_width(width);
    const Decimal d = parse_decimal(text);
    if (d.int_part != 0) {
        throw ConfigError("seed must lie in [0,1): '" + std::string(text) + "'");
    }
    return FixedPointState(truncate_fraction(d, width), width);
}

double FixedPointState::to_double() const noexcept {
    return std::ldexp(static_cast<double>(frac_), -static_cast<int>(width_));
}

std::string FixedPointState::to_hex() const {
    static constexpr char kHex[] = "0123456789abcdef";
    const unsigned nibbles = (width_ + 3) / 4;
    std::string out(nibbles, '0');
    u128 v = frac_;
    for (unsigned i = 0; i < nibbles; ++i) {
        out[nibbles - 1 - i] = kHex[static_cast<unsigned>(v & 0xF)];
        v >>= 4;
    }
    return out;
}

BetaValue::BetaValue(std::uint32_t int_part, u128 frac, unsigned width)
    : int_part_(int_part), frac_(frac), width_(width) {
    check_width(width);
    if ((frac & ~width_mask(width)) != 0) {
        throw ConfigError("beta fraction does not fit in " + std::to_string(width) + " bits");
    }
    if (int_part == 0 || (int_part == 1 && frac == 0)) {
        throw ConfigError("beta must be greater than 1");
    }
}

BetaValue BetaValue::from_decimal(std::string_view text, unsigned width) {
    check_width(width);
    const Decimal d = parse_decimal(text);
    if (d.int_part > std::numeric_limits<std::uint32_t>::max()) {
        throw ConfigError("integer part of beta exceeds 32 bits: '" + std::string(text) + "'");
    }
    return BetaValue(static_cast<std::uint32_t>(d.int_part), truncate_fraction(d, width), width);
}

BetaValue BetaValue::parse(std::string_view text, unsigned width) {
    if (auto digits = beta_preset_digits(text); !digits.empty()) return from_decimal(digits, width);
    return from_decimal(text, width);
}

BetaValue BetaValue::default_value(unsigned width) { return parse(kDefaultBeta, width); }

double BetaValue::to_double() const noexcept {
    return int_part_ + std::ldexp(static_cast<double>(frac_), -static_cast<int>(width_));
}

std::string_view beta_preset_digits(std::string_view name) {
    for (const auto& p : kPresets) {
        if (p.name == name) return p.digits;
    }
    return {};
}

std::vector<std::string_view> beta_preset_names() {
    std::vector<std::string_view> names;
    for (const auto& p : kPresets) names.push_back(p.name);
    return names;
}

FixedPointState default_seed(unsigned width) { return FixedPointState::from_decimal(kDefaultSeed, width); }

namespace detail {

// βx = (I + F/2^B)·X/2^B, so ⌊βx·2^B⌋ = I·X + ⌊F·X / 2^B⌋ exactly.
std::uint32_t step_raw(u128 x, std::uint32_t beta_int, u128 beta_frac, unsigned width, u128& next) noexcept {
    if (width <= 64) {
        const u128 fx = beta_frac * x;
        const u128 q = u128{beta_int} * x + (fx >> width);
        next = q & width_mask(width);
        return static_cast<std::uint32_t>(q >> width);
    }
    const mp::uint256_t wx = to_wide(x);
    const mp::uint256_t q = mp::uint256_t(beta_int) * wx + ((to_wide(beta_frac) * wx) >> width);
    next = from_wide(q & to_wide(width_mask(width)));
    return static_cast<std::uint32_t>(q >> width);
}

}  // namespace detail

StepResult beta_step(const FixedPointState& state, const BetaValue& beta) {
    if (state.width() != beta.width()) {
        throw ConfigError("state width " + std::to_string(state.width()) + " does not match beta width " +
                          std::to_string(beta.width()));
    }
    u128 next = 0;
    const auto digit = detail::step_raw(state.frac(), beta.int_part(), beta.frac(), state.width(), next);
    return {FixedPointState(next, state.width()), digit};
}

Orbit::Orbit(BetaValue beta, FixedPointState seed) : beta_(std::move(beta)), state_(seed) {
    if (state_.width() != beta_.width()) {
        throw ConfigError("seed width does not match beta width");
    }
}

OrbitSample Orbit::advance() {
    u128 next = 0;
    const auto digit = detail::step_raw(state_.frac(), beta_.int_part(), beta_.frac(), state_.width(), next);
    state_ = FixedPointState(next, state_.width());
    ++index_;
    return {state_, digit, threshold_bit(digit, beta_)};
}

}  // namespace dcsbox
