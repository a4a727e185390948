#pragma once

// Generation-latency model: coupon-collector expectation, a Bernoulli-gated
// Monte Carlo of the abstract generator, and measurements of the real one.

#include "dcsbox/params.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dcsbox {

inline constexpr std::string_view kSimulationPrng = "mt19937_64/splitmix64(seed,trial)";

struct LatencyConfig {
    unsigned rank_k = 3;  // gate probability p = 2^-k
    std::uint32_t c_iter = 1;
    std::uint32_t c_acc = 1;
    double f_clk_hz = 200e6;
    std::uint64_t trials = 2000;
    std::uint64_t rng_seed = 1;

    void validate() const;
};

struct LatencyStats {
    double median_cycles = 0;
    double p95_cycles = 0;
    double mean_cycles = 0;
    double median_us = 0;
    double p95_us = 0;
    std::uint64_t trials = 0;

    friend bool operator==(const LatencyStats&, const LatencyStats&) = default;
};

/// 2^n · H_{2^n}, the expected number of uniform draws to see all 2^n values.
double expected_acceptances(unsigned n);

/// c_iter · E[N_acc] / p + c_acc · E[N_acc].
double expected_cycles(const LatencyConfig& config, unsigned n);

LatencyStats simulate(const LatencyConfig& config, unsigned n);

/// Cycle count of one simulated trial; exposed for tests.
std::uint64_t simulate_trial(const LatencyConfig& config, unsigned n, std::uint64_t trial);

/// Median, nearest-rank P95 and mean of per-trial cycle counts.
LatencyStats summarize_cycles(std::vector<std::uint64_t> cycles, double f_clk_hz);

struct RealGeneratorMeasurement {
    std::uint64_t trials = 0;
    std::uint64_t failures = 0;  // trials that ended in InsufficientBlocks
    std::optional<LatencyStats> stats;  // over successful trials
    double mean_iterations = 0;
    double mean_acceptances = 0;
};

/// Seed for trial t: the fractional part of m_t · x0 for a pseudo-random multiplier m_t ∈ [1, 2^16).
FixedPointState perturbed_seed(const FixedPointState& x0, std::uint64_t rng_seed, std::uint64_t trial);

RealGeneratorMeasurement measure_real_generator(const GenerationParams& params, const LatencyConfig& config);

struct BaselineRow {
    std::string name;
    double cycles = 0;
    double micros = 0;
};

/// GF(2^8) inversion+affine fill (256 cycles) and 256 B ROM load over a 32-bit bus (64 cycles).
std::vector<BaselineRow> baseline_rows(double f_clk_hz = 200e6);

/// Microseconds.
double cycles_to_time(double cycles, double f_clk_hz);

// Comparison table, one row per design.
struct ComparisonRow {
    std::string design;
    std::optional<unsigned> k;
    double median_cycles = 0;
    std::optional<double> p95_cycles;
    double median_us = 0;
    std::optional<double> p95_us;
};

struct LatencyComparison {
    LatencyConfig config;
    unsigned n = 8;
    double predicted_cycles = 0;
    double predicted_us = 0;
    LatencyStats monte_carlo;
    std::optional<RealGeneratorMeasurement> real;
    std::vector<ComparisonRow> rows;
    bool meets_budget = false;  // P95 below 0.2 ms
};

inline constexpr double kLatencyBudgetUs = 200.0;

LatencyComparison compare_latency(const LatencyConfig& config, unsigned n,
                                  const std::optional<GenerationParams>& real_params = std::nullopt);

/// `design,k,median_cycles,p95_cycles,median_us,p95_us`
std::string comparison_csv(const LatencyComparison& cmp);
std::string comparison_text(const LatencyComparison& cmp);

}  // namespace dcsbox
