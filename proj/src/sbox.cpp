#include "dcsbox/sbox.hpp"

#include "dcsbox/errors.hpp"
#include "dcsbox/sampling.hpp"

#include <algorithm>
#include <bit>

namespace dcsbox {

SBoxTable::SBoxTable(unsigned n, std::vector<std::uint32_t> entries, Provenance provenance)
    : n_(n), entries_(std::move(entries)), provenance_(std::move(provenance)) {
    if (n < 1 || n > kMaxWordSize) throw ConfigError("word size must lie in [1, 16]");
    if (entries_.size() != (std::size_t{1} << n)) {
        throw FormatError("expected " + std::to_string(std::size_t{1} << n) + " entries, got " +
                          std::to_string(entries_.size()));
    }
    for (auto v : entries_) {
        if ((v >> n) != 0) throw FormatError("entry " + std::to_string(v) + " does not fit in n bits");
    }
}

SBoxTable SBoxTable::identity(unsigned n) {
    std::vector<std::uint32_t> t(std::size_t{1} << n);
    for (std::size_t x = 0; x < t.size(); ++x) t[x] = static_cast<std::uint32_t>(x);
    return SBoxTable(n, std::move(t), Provenance{"identity", {}, {}});
}

bool SBoxTable::is_bijective() const {
    std::vector<bool> seen(entries_.size(), false);
    for (auto v : entries_) {
        if (seen[v]) return false;
        seen[v] = true;
    }
    return true;
}

SBoxTable generate(const GenerationParams& params) {
    params.validate();
    const unsigned n = params.word_size;
    const std::size_t target = std::size_t{1} << n;
    const std::uint64_t limit = params.budget - n;
    const std::uint64_t skip = std::uint64_t{n} + params.window_offset;

    GatedWindow window(params);
    std::vector<bool> seen(target, false);
    std::vector<std::uint32_t> collected;
    collected.reserve(target);
    GenerationTrace trace;

    while (collected.size() < target && window.tau() < limit) {
        if (window.gate_hit()) {
            const auto y = window.word();
            ++trace.acceptances;
            if (seen[y]) {
                ++trace.duplicates;
            } else {
                seen[y] = true;
                collected.push_back(y);
            }
            if (params.stride == Stride::SkipAfterAccept) {
                window.advance(skip);
                continue;
            }
        }
        window.advance();
    }
    trace.iterations = window.tau();

    if (collected.size() < target) {
        throw InsufficientBlocks(collected.size(), target, trace.iterations);
    }
    SBoxTable raw(n, std::move(collected), Provenance{"generated", params, trace});
    return apply_mixer(raw, params.mixer);
}

SBoxTable apply_mixer(const SBoxTable& table, const Mixer& mixer) {
    if (mixer.kind == Mixer::Kind::Identity) return table;
    const unsigned n = table.word_size();
    if ((mixer.constant >> n) != 0) throw ConfigError("mixer constant does not fit in the word size");
    std::vector<std::uint32_t> out(table.size());
    for (std::uint32_t x = 0; x < out.size(); ++x) out[x] = table[mixer.permute(x, n)];
    return SBoxTable(n, std::move(out), table.provenance());
}

std::vector<std::uint8_t> substitute(const SBoxTable& table, std::span<const std::uint8_t> data) {
    if (table.word_size() != 8) throw ConfigError("byte substitution requires an 8-bit table");
    std::vector<std::uint8_t> out(data.size());
    std::transform(data.begin(), data.end(), out.begin(),
                   [&](std::uint8_t b) { return static_cast<std::uint8_t>(table[b]); });
    return out;
}

namespace {

std::uint8_t gf_mul(std::uint8_t a, std::uint8_t b) {
    std::uint8_t p = 0;
    while (b) {
        if (b & 1) p ^= a;
        const bool carry = a & 0x80;
        a = static_cast<std::uint8_t>(a << 1);
        if (carry) a ^= 0x1B;
        b >>= 1;
    }
    return p;
}

// a^254 = a^-1 for a != 0
std::uint8_t gf_inverse(std::uint8_t a) {
    std::uint8_t result = 1;
    std::uint8_t base = a;
    for (unsigned e = 254; e; e >>= 1) {
        if (e & 1) result = gf_mul(result, base);
        base = gf_mul(base, base);
    }
    return a == 0 ? 0 : result;
}

}  // namespace

SBoxTable gf_baseline_sbox() {
    std::vector<std::uint32_t> t(256);
    for (unsigned x = 0; x < 256; ++x) {
        const std::uint8_t b = gf_inverse(static_cast<std::uint8_t>(x));
        const std::uint8_t s = b ^ std::rotl(b, 1) ^ std::rotl(b, 2) ^ std::rotl(b, 3) ^ std::rotl(b, 4) ^ 0x63;
        t[x] = s;
    }
    return SBoxTable(8, std::move(t), Provenance{"gf-baseline", {}, {}});
}

SBoxTable invert(const SBoxTable& table) {
    if (!table.is_bijective()) throw ConfigError("cannot invert a non-bijective table");
    std::vector<std::uint32_t> inv(table.size());
    for (std::uint32_t x = 0; x < table.size(); ++x) inv[table[x]] = x;
    return SBoxTable(table.word_size(), std::move(inv), Provenance{"derived", {}, {}});
}

}  // namespace dcsbox
