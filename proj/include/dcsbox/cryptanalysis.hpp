#pragma once

// S-box metrics: Walsh spectrum and nonlinearity, difference and linear
// approximation tables, algebraic normal form, and a χ² test on raw gated words.

#include "dcsbox/dyadic.hpp"
#include "dcsbox/sbox.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace dcsbox {

/// Full DDT/LAT tables are 2^n × 2^n; analysis is limited to n ≤ 12.
inline constexpr unsigned kMaxAnalysisWordSize = 12;

/// In-place Walsh–Hadamard butterfly; size must be a power of two.
void fwht(std::span<std::int32_t> values);

/// In-place binary Möbius transform (truth table <-> ANF coefficients). An involution.
void moebius(std::span<std::uint8_t> bits);

/// W(a, b) = Σ_x (−1)^{a·x ⊕ b·S(x)} for every a, via the fast transform.
std::vector<std::int32_t> walsh_row(const SBoxTable& table, std::uint32_t output_mask);

struct NonlinearityResult {
    std::vector<std::uint32_t> per_bit;  // unit output masks e_i
    std::uint32_t component_min = 0;     // over every nonzero output mask
};

NonlinearityResult nonlinearity(const SBoxTable& table);

struct DdtResult {
    unsigned n = 0;
    std::vector<std::uint32_t> cells;  // row Δx, column Δy
    std::uint32_t max = 0;             // over Δx ≠ 0
    std::map<std::uint32_t, std::uint64_t> histogram;

    std::uint32_t at(std::uint32_t dx, std::uint32_t dy) const { return cells[(std::size_t{dx} << n) | dy]; }
};

DdtResult ddt(const SBoxTable& table);

struct LatResult {
    unsigned n = 0;
    std::vector<std::int32_t> cells;  // row output mask β, column input mask α
    std::uint32_t max_abs = 0;        // over β ≠ 0
    Rational linear_prob_max;         // (2^n + max_abs) / 2^{n+1}
    std::map<std::uint32_t, std::uint64_t> histogram;  // |LAT| over β ≠ 0

    std::int32_t at(std::uint32_t alpha, std::uint32_t beta) const {
        return cells[(std::size_t{beta} << n) | alpha];
    }
};

LatResult lat(const SBoxTable& table);

struct AnfResult {
    std::vector<std::vector<std::uint8_t>> coefficients;  // per output bit, indexed by monomial mask
    std::vector<unsigned> per_bit_degree;
    std::vector<double> monomial_counts;  // index = degree, mean over output bits
};

AnfResult anf(const SBoxTable& table);

struct ChiSquareResult {
    double statistic = 0;
    unsigned dof = 0;
    std::uint64_t samples = 0;
    double lower = 0;  // central 99.9% band of χ²_dof
    double upper = 0;
    bool pass = false;

    friend bool operator==(const ChiSquareResult&, const ChiSquareResult&) = default;
};

ChiSquareResult chi_square_uniformity(std::span<const std::uint64_t> counts);

/// Tallies `samples` gated words without duplicate rejection. Throws GeneratorStall
/// when params.budget consecutive iterations pass without a gate hit.
ChiSquareResult uniformity_test(const GenerationParams& params, std::uint64_t samples);

struct CryptoReport {
    unsigned n = 0;
    std::string provenance = "file";
    bool bijective = true;
    std::vector<std::uint32_t> per_bit_nonlinearity;
    std::uint32_t min_nl = 0;
    double avg_nl = 0;
    std::uint32_t component_min_nl = 0;
    double heuristic_nl_bound = 0;  // 2^{n-1} - sqrt(2^n ln 2^n), informational
    std::uint32_t ddt_max = 0;
    Rational ddt_max_prob;
    std::map<std::uint32_t, std::uint64_t> ddt_histogram;
    std::uint32_t lat_max_abs = 0;
    Rational linear_prob_max;
    std::map<std::uint32_t, std::uint64_t> lat_histogram;
    std::vector<unsigned> per_bit_degree;
    std::vector<double> anf_monomial_counts;
    std::optional<ChiSquareResult> uniformity_chi2;

    friend bool operator==(const CryptoReport&, const CryptoReport&) = default;
};

struct UniformityRequest {
    GenerationParams params;
    std::uint64_t samples = 100'000;
};

CryptoReport analyze(const SBoxTable& table, const std::optional<UniformityRequest>& uniformity = std::nullopt);

}  // namespace dcsbox
