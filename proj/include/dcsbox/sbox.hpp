#pragma once

#include "dcsbox/params.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace dcsbox {

struct GenerationTrace {
    std::uint64_t iterations = 0;   // gate tests performed (final τ)
    std::uint64_t acceptances = 0;  // gated windows extracted
    std::uint64_t duplicates = 0;   // windows rejected as already seen

    friend bool operator==(const GenerationTrace&, const GenerationTrace&) = default;
};

struct Provenance {
    std::string kind = "file";  // generated | gf-baseline | identity | file | derived
    std::optional<GenerationParams> params;
    std::optional<GenerationTrace> trace;

    friend bool operator==(const Provenance&, const Provenance&) = default;
};

class SBoxTable {
public:
    SBoxTable(unsigned n, std::vector<std::uint32_t> entries, Provenance provenance = {});

    static SBoxTable identity(unsigned n);

    unsigned word_size() const noexcept { return n_; }
    std::size_t size() const noexcept { return entries_.size(); }
    std::uint32_t operator[](std::size_t x) const noexcept { return entries_[x]; }
    std::span<const std::uint32_t> entries() const noexcept { return entries_; }
    const Provenance& provenance() const noexcept { return provenance_; }

    /// Set-equality check against {0, ..., 2^n - 1}.
    bool is_bijective() const;

    friend bool operator==(const SBoxTable&, const SBoxTable&) = default;

private:
    unsigned n_;
    std::vector<std::uint32_t> entries_;
    Provenance provenance_;
};

/// Gated β-expansion S-box construction with duplicate rejection.
/// Throws InsufficientBlocks when the budget runs out first.
SBoxTable generate(const GenerationParams& params);

SBoxTable apply_mixer(const SBoxTable& table, const Mixer& mixer);

/// Byte substitution; the table must be 8-bit.
std::vector<std::uint8_t> substitute(const SBoxTable& table, std::span<const std::uint8_t> data);

/// Multiplicative inverse in GF(2^8) mod x^8+x^4+x^3+x+1 (0 -> 0) followed by the AES affine map.
SBoxTable gf_baseline_sbox();

SBoxTable invert(const SBoxTable& table);

}  // namespace dcsbox
