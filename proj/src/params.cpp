#include "dcsbox/params.hpp"

#include "dcsbox/errors.hpp"

#include <charconv>

namespace dcsbox {

std::string_view to_string(Stride s) {
    return s == Stride::Overlapping ? "overlapping" : "skip";
}

Stride parse_stride(std::string_view text) {
    if (text == "overlapping") return Stride::Overlapping;
    if (text == "skip") return Stride::SkipAfterAccept;
    throw ConfigError("stride must be 'overlapping' or 'skip', got '" + std::string(text) + "'");
}

Mixer Mixer::parse(std::string_view text) {
    if (text == "identity") return identity();
    constexpr std::string_view prefix = "xorrot:";
    if (text.substr(0, prefix.size()) == prefix) {
        std::string_view num = text.substr(prefix.size());
        int base = 10;
        if (num.size() > 2 && num[0] == '0' && (num[1] == 'x' || num[1] == 'X')) {
            num.remove_prefix(2);
            base = 16;
        }
        std::uint32_t c = 0;
        const auto* end = num.data() + num.size();
        auto [ptr, ec] = std::from_chars(num.data(), end, c, base);
        if (!num.empty() && ec == std::errc{} && ptr == end) return xor_rotate(c);
    }
    throw ConfigError("mixer must be 'identity' or 'xorrot:<c>', got '" + std::string(text) + "'");
}

std::uint32_t Mixer::permute(std::uint32_t x, unsigned n) const noexcept {
    if (kind == Kind::Identity) return x;
    const std::uint32_t mask = (std::uint32_t{1} << n) - 1;
    const std::uint32_t rot = n == 1 ? x : (((x << 1) | (x >> (n - 1))) & mask);
    return (rot ^ constant) & mask;
}

std::string Mixer::to_string() const {
    if (kind == Kind::Identity) return "identity";
    return "xorrot:" + std::to_string(constant);
}

void GenerationParams::validate() const {
    if (seed_x0.width() != beta.width()) {
        throw ConfigError("seed width " + std::to_string(seed_x0.width()) + " does not match beta width " +
                          std::to_string(beta.width()));
    }
    if (word_size < 1 || word_size > kMaxWordSize) {
        throw ConfigError("word size must lie in [1, 16], got " + std::to_string(word_size));
    }
    if (word_size > width()) throw ConfigError("word size exceeds fractional width");
    if (gate.rank() > width()) throw ConfigError("gate rank exceeds fractional width");
    const std::uint64_t minimum = std::uint64_t{word_size} << word_size;
    if (budget < minimum) {
        throw ConfigError("budget M=" + std::to_string(budget) + " is below n*2^n=" + std::to_string(minimum));
    }
    if (mixer.kind == Mixer::Kind::XorRotate && (mixer.constant >> word_size) != 0) {
        throw ConfigError("mixer constant does not fit in the word size");
    }
    if (window_offset > 1) throw ConfigError("window offset must be 0 or 1");
}

}  // namespace dcsbox
