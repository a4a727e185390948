#include "dcsbox/latency.hpp"

#include "dcsbox/errors.hpp"
#include "dcsbox/sbox.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>

namespace dcsbox {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) {
    return splitmix64(splitmix64(seed) ^ splitmix64(trial + 0x632BE59BD9B4E019ull));
}

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

}  // namespace

void LatencyConfig::validate() const {
    if (trials < 1) throw ConfigError("trials must be at least 1");
    if (!(f_clk_hz > 0)) throw ConfigError("clock frequency must be positive");
    if (c_iter < 1) throw ConfigError("c_iter must be at least 1");
    if (rank_k > kMaxDyadicRank) throw ConfigError("gate rank must be at most 16");
}

double expected_acceptances(unsigned n) {
    if (n > kMaxWordSize) throw ConfigError("word size must be at most 16");
    const std::uint64_t m = std::uint64_t{1} << n;
    double h = 0;
    for (std::uint64_t i = m; i >= 1; --i) h += 1.0 / static_cast<double>(i);
    return static_cast<double>(m) * h;
}

double expected_cycles(const LatencyConfig& config, unsigned n) {
    config.validate();
    const double acc = expected_acceptances(n);
    const double inv_p = std::ldexp(1.0, static_cast<int>(config.rank_k));
    return config.c_iter * acc * inv_p + config.c_acc * acc;
}

double cycles_to_time(double cycles, double f_clk_hz) {
    if (!(f_clk_hz > 0)) throw ConfigError("clock frequency must be positive");
    return cycles / f_clk_hz * 1e6;
}

std::uint64_t simulate_trial(const LatencyConfig& config, unsigned n, std::uint64_t trial) {
    std::mt19937_64 rng(trial_seed(config.rng_seed, trial));
    const std::uint64_t coupons = std::uint64_t{1} << n;
    std::vector<bool> seen(coupons, false);
    std::uint64_t distinct = 0;
    std::uint64_t cycles = 0;
    // Accept when the top k bits of a 64-bit draw are zero: probability exactly 2^-k.
    const unsigned k = config.rank_k;
    while (distinct < coupons) {
        cycles += config.c_iter;
        if (k > 0 && (rng() >> (64 - k)) != 0) continue;
        cycles += config.c_acc;
        const auto coupon = n == 0 ? 0 : rng() >> (64 - n);
        if (!seen[coupon]) {
            seen[coupon] = true;
            ++distinct;
        }
    }
    return cycles;
}

LatencyStats summarize_cycles(std::vector<std::uint64_t> cycles, double f_clk_hz) {
    if (cycles.empty()) throw ConfigError("no trials to summarize");
    std::sort(cycles.begin(), cycles.end());
    const std::size_t count = cycles.size();
    LatencyStats s;
    s.trials = count;
    s.median_cycles = count % 2 ? static_cast<double>(cycles[count / 2])
                                : 0.5 * static_cast<double>(cycles[count / 2 - 1] + cycles[count / 2]);
    const auto rank = static_cast<std::size_t>(std::ceil(0.95 * static_cast<double>(count)));
    s.p95_cycles = static_cast<double>(cycles[std::max<std::size_t>(rank, 1) - 1]);
    s.mean_cycles = std::accumulate(cycles.begin(), cycles.end(), 0.0) / static_cast<double>(count);
    s.median_us = cycles_to_time(s.median_cycles, f_clk_hz);
    s.p95_us = cycles_to_time(s.p95_cycles, f_clk_hz);
    return s;
}

LatencyStats simulate(const LatencyConfig& config, unsigned n) {
    config.validate();
    if (n > kMaxWordSize) throw ConfigError("word size must be at most 16");
    std::vector<std::uint64_t> cycles(config.trials);
    for (std::uint64_t t = 0; t < config.trials; ++t) cycles[t] = simulate_trial(config, n, t);
    return summarize_cycles(std::move(cycles), config.f_clk_hz);
}

FixedPointState perturbed_seed(const FixedPointState& x0, std::uint64_t rng_seed, std::uint64_t trial) {
    const unsigned width = x0.width();
    std::mt19937_64 rng(trial_seed(rng_seed ^ 0xA5A5A5A5A5A5A5A5ull, trial));
    const auto int_part = static_cast<std::uint32_t>(1 + (rng() >> 48) % 0xFFFF);
    const u128 frac = ((u128{rng()} << 64) | rng()) & width_mask(width);
    u128 next = 0;
    detail::step_raw(x0.frac(), int_part, frac, width, next);
    return FixedPointState(next, width);
}

RealGeneratorMeasurement measure_real_generator(const GenerationParams& params, const LatencyConfig& config) {
    config.validate();
    params.validate();
    RealGeneratorMeasurement m;
    m.trials = config.trials;
    std::vector<std::uint64_t> cycles;
    double iters = 0;
    double accs = 0;
    for (std::uint64_t t = 0; t < config.trials; ++t) {
        GenerationParams p = params;
        p.seed_x0 = perturbed_seed(params.seed_x0, config.rng_seed, t);
        try {
            const auto table = generate(p);
            const auto& trace = *table.provenance().trace;
            cycles.push_back(config.c_iter * trace.iterations + config.c_acc * trace.acceptances);
            iters += static_cast<double>(trace.iterations);
            accs += static_cast<double>(trace.acceptances);
        } catch (const InsufficientBlocks&) {
            ++m.failures;
        }
    }
    if (!cycles.empty()) {
        m.mean_iterations = iters / static_cast<double>(cycles.size());
        m.mean_acceptances = accs / static_cast<double>(cycles.size());
        m.stats = summarize_cycles(std::move(cycles), config.f_clk_hz);
    }
    return m;
}

std::vector<BaselineRow> baseline_rows(double f_clk_hz) {
    return {
        {"gf-inv-affine", 256.0, cycles_to_time(256.0, f_clk_hz)},
        {"rom-load", 64.0, cycles_to_time(64.0, f_clk_hz)},
    };
}

LatencyComparison compare_latency(const LatencyConfig& config, unsigned n,
                                  const std::optional<GenerationParams>& real_params) {
    LatencyComparison cmp;
    cmp.config = config;
    cmp.n = n;
    cmp.predicted_cycles = expected_cycles(config, n);
    cmp.predicted_us = cycles_to_time(cmp.predicted_cycles, config.f_clk_hz);
    cmp.monte_carlo = simulate(config, n);
    cmp.meets_budget = cmp.monte_carlo.p95_us < kLatencyBudgetUs;

    cmp.rows.push_back({"chaos-model", config.rank_k, cmp.predicted_cycles, std::nullopt, cmp.predicted_us,
                        std::nullopt});
    const auto& mc = cmp.monte_carlo;
    cmp.rows.push_back({"chaos-montecarlo", config.rank_k, mc.median_cycles, mc.p95_cycles, mc.median_us, mc.p95_us});
    if (real_params) {
        cmp.real = measure_real_generator(*real_params, config);
        if (cmp.real->stats) {
            const auto& s = *cmp.real->stats;
            cmp.rows.push_back({"chaos-real", real_params->gate.rank(), s.median_cycles, s.p95_cycles, s.median_us,
                                s.p95_us});
        }
    }
    for (const auto& b : baseline_rows(config.f_clk_hz)) {
        cmp.rows.push_back({b.name, std::nullopt, b.cycles, std::nullopt, b.micros, std::nullopt});
    }
    return cmp;
}

std::string comparison_csv(const LatencyComparison& cmp) {
    std::string out = "design,k,median_cycles,p95_cycles,median_us,p95_us\n";
    for (const auto& r : cmp.rows) {
        out += r.design + ",";
        out += r.k ? std::to_string(*r.k) : "";
        out += "," + fmt("%.1f", r.median_cycles) + ",";
        out += r.p95_cycles ? fmt("%.1f", *r.p95_cycles) : "";
        out += "," + fmt("%.2f", r.median_us) + ",";
        out += r.p95_us ? fmt("%.2f", *r.p95_us) : "";
        out += "\n";
    }
    return out;
}

std::string comparison_text(const LatencyComparison& cmp) {
    std::string out;
    char line[160];
    std::snprintf(line, sizeof line, "n=%u k=%u c_iter=%u c_acc=%u f_clk=%.3g Hz trials=%llu seed=%llu prng=%s\n",
                  cmp.n, cmp.config.rank_k, cmp.config.c_iter, cmp.config.c_acc, cmp.config.f_clk_hz,
                  static_cast<unsigned long long>(cmp.config.trials),
                  static_cast<unsigned long long>(cmp.config.rng_seed), std::string(kSimulationPrng).c_str());
    out += line;
    std::snprintf(line, sizeof line, "%-18s %3s %14s %14s %12s %12s\n", "design", "k", "median_cycles", "p95_cycles",
                  "median_us", "p95_us");
    out += line;
    for (const auto& r : cmp.rows) {
        std::snprintf(line, sizeof line, "%-18s %3s %14s %14s %12s %12s\n", r.design.c_str(),
                      r.k ? std::to_string(*r.k).c_str() : "-", fmt("%.1f", r.median_cycles).c_str(),
                      r.p95_cycles ? fmt("%.1f", *r.p95_cycles).c_str() : "-", fmt("%.2f", r.median_us).c_str(),
                      r.p95_us ? fmt("%.2f", *r.p95_us).c_str() : "-");
        out += line;
    }
    out += "prng-fill (static reference): ~1-5 us for 256 draws, not simulated\n";
    if (cmp.real) {
        std::snprintf(line, sizeof line, "real generator: %llu trials, %llu failed (InsufficientBlocks)\n",
                      static_cast<unsigned long long>(cmp.real->trials),
                      static_cast<unsigned long long>(cmp.real->failures));
        out += line;
    }
    out += std::string("P95 < 0.2 ms: ") + (cmp.meets_budget ? "yes" : "no") + "\n";
    return out;
}

}  // namespace dcsbox
