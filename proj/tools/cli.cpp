#include "cli.hpp"

#include "dcsbox/cryptanalysis.hpp"
#include "dcsbox/errors.hpp"
#include "dcsbox/latency.hpp"
#include "dcsbox/report_io.hpp"
#include "dcsbox/sbox_io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <optional>
#include <ostream>

namespace dcsbox::cli {

namespace fs = std::filesystem;

namespace {

// Thrown for flag combinations CLI11 cannot express on its own.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GenerationFlags {
    std::string beta = "pi100";
    std::string x0 = "0.3";
    std::string gate = "3:5";
    unsigned n = 8;
    unsigned width = kDefaultWidth;
    std::uint64_t budget = kDefaultBudget;
    std::string mixer = "identity";
    std::string stride = "overlapping";
    unsigned window_offset = 1;

    void attach(CLI::App* cmd) {
        cmd->add_option("--beta", beta, "beta preset (phi, silver, pi, pi100) or decimal literal")
            ->capture_default_str();
        cmd->add_option("--x0", x0, "seed in [0,1) as a decimal literal")->capture_default_str();
        cmd->add_option("--gate", gate, "dyadic gate 'k:j0,j1,...'")->capture_default_str();
        cmd->add_option("--n", n, "word size in bits")->capture_default_str();
        cmd->add_option("--width", width, "fractional width B")->capture_default_str();
        cmd->add_option("--budget", budget, "iteration budget M")->capture_default_str();
        cmd->add_option("--mixer", mixer, "identity | xorrot:<c>")->capture_default_str();
        cmd->add_option("--stride", stride, "overlapping | skip")->capture_default_str();
        cmd->add_option("--window-offset", window_offset, "gap between gated state and first word digit (0 or 1)")
            ->capture_default_str();
    }

    GenerationParams build() const {
        GenerationParams p;
        p.beta = BetaValue::parse(beta, width);
        p.seed_x0 = FixedPointState::from_decimal(x0, width);
        p.gate = DyadicSet::parse(gate);
        p.word_size = n;
        p.budget = budget;
        p.mixer = Mixer::parse(mixer);
        p.stride = parse_stride(stride);
        p.window_offset = window_offset;
        p.validate();
        return p;
    }
};

// Resolves --format against the --out extension; disagreement is a usage error.
std::string resolve_format(const std::string& requested, const std::string& out_path,
                           const std::vector<std::string>& allowed, const std::string& fallback) {
    std::string from_ext;
    if (!out_path.empty()) {
        auto ext = fs::path(out_path).extension().string();
        if (!ext.empty()) ext.erase(0, 1);
        if (ext == "txt") ext = "text";
        if (std::find(allowed.begin(), allowed.end(), ext) != allowed.end()) from_ext = ext;
    }
    if (!requested.empty() && !from_ext.empty() && requested != from_ext) {
        throw UsageError("--format " + requested + " conflicts with output path '" + out_path + "'");
    }
    if (!requested.empty()) return requested;
    return from_ext.empty() ? fallback : from_ext;
}

void emit(const std::string& out_path, const std::string& contents, std::ostream& out) {
    if (out_path.empty() || out_path == "-") {
        out << contents;
    } else {
        write_text_file(out_path, contents);
    }
}

SBoxTable load_or_baseline(const std::string& input, const std::string& baseline) {
    if (!baseline.empty() && !input.empty()) throw UsageError("give either an input table or --baseline, not both");
    if (baseline == "gf") return gf_baseline_sbox();
    if (baseline == "identity") return SBoxTable::identity(8);
    if (!baseline.empty()) throw UsageError("unknown baseline '" + baseline + "'");
    if (input.empty()) throw UsageError("an input table or --baseline is required");
    return read_table_file(input);
}

std::string report_text(const CryptoReport& r) {
    std::string s;
    char line[256];
    auto join = [](const auto& v) {
        std::string t;
        for (std::size_t i = 0; i < v.size(); ++i) t += (i ? " " : "") + std::to_string(v[i]);
        return t;
    };
    std::snprintf(line, sizeof line, "source: %s (n=%u, bijective=%s)\n", r.provenance.c_str(), r.n,
                  r.bijective ? "yes" : "no");
    s += line;
    s += "nonlinearity per bit: " + join(r.per_bit_nonlinearity) + "\n";
    std::snprintf(line, sizeof line, "nonlinearity min/avg/component-min: %u / %.3f / %u (heuristic bound %.2f)\n",
                  r.min_nl, r.avg_nl, r.component_min_nl, r.heuristic_nl_bound);
    s += line;
    std::snprintf(line, sizeof line, "ddt max: %u (probability %.6f)\n", r.ddt_max, r.ddt_max_prob.to_double());
    s += line;
    std::snprintf(line, sizeof line, "lat max |bias|: %u (linear probability %.6f)\n", r.lat_max_abs,
                  r.linear_prob_max.to_double());
    s += line;
    s += "degree per bit: " + join(r.per_bit_degree) + "\n";
    s += "avg monomials by degree:";
    for (std::size_t d = 0; d < r.anf_monomial_counts.size(); ++d) {
        std::snprintf(line, sizeof line, " %zu:%.3f", d, r.anf_monomial_counts[d]);
        s += line;
    }
    s += "\n";
    if (r.uniformity_chi2) {
        const auto& c = *r.uniformity_chi2;
        std::snprintf(line, sizeof line, "chi2 uniformity: %.2f (dof %u, %llu samples, band [%.1f, %.1f]) %s\n",
                      c.statistic, c.dof, static_cast<unsigned long long>(c.samples), c.lower, c.upper,
                      c.pass ? "pass" : "FAIL");
        s += line;
    }
    return s;
}

int cmd_generate(const GenerationFlags& gen, const std::string& format_flag, const std::string& out_path,
                 std::ostream& out, std::ostream& err) {
    const auto format = resolve_format(format_flag, out_path, {"hex", "json"}, "hex");
    const auto params = gen.build();
    if (format == "hex" && params.word_size != 8) throw UsageError("hex grid output requires --n 8; use --format json");
    const auto table = generate(params);
    emit(out_path, write_table(table, format == "hex" ? TableFormat::Hex : TableFormat::Json), out);
    const auto& t = *table.provenance().trace;
    auto& log = (out_path.empty() || out_path == "-") ? err : out;
    log << "iterations=" << t.iterations << " acceptances=" << t.acceptances << " duplicates=" << t.duplicates
        << "\n";
    return kOk;
}

struct AnalyzeFlags {
    std::string input;
    std::string baseline;
    std::string out;
    std::string format;
    std::string hist_dir;
    bool allow_nonbijective = false;
    std::uint64_t uniformity_samples = 0;
};

int cmd_analyze(const AnalyzeFlags& a, const GenerationFlags& gen, std::ostream& out) {
    const auto format = resolve_format(a.format, a.out, {"json", "text"}, "json");
    const auto table = load_or_baseline(a.input, a.baseline);
    if (!a.allow_nonbijective && !table.is_bijective()) {
        throw FormatError("table is not a bijection (duplicate entries); pass --allow-nonbijective to analyze anyway");
    }
    std::optional<UniformityRequest> uniformity;
    if (a.uniformity_samples > 0) {
        const auto& prov = table.provenance();
        uniformity = UniformityRequest{prov.params ? *prov.params : gen.build(), a.uniformity_samples};
    }
    const auto report = analyze(table, uniformity);
    emit(a.out, format == "json" ? report_to_json(report) : report_text(report), out);
    if (!a.hist_dir.empty()) {
        fs::create_directories(a.hist_dir);
        write_text_file(fs::path(a.hist_dir) / "ddt.csv", ddt_histogram_csv(report));
        write_text_file(fs::path(a.hist_dir) / "lat.csv", lat_histogram_csv(report));
    }
    return kOk;
}

struct LatencyFlags {
    LatencyConfig config;
    bool measure_real = false;
    std::string format;
    std::string out;
};

std::string comparison_json(const LatencyComparison& cmp) {
    nlohmann::ordered_json j;
    j["n"] = cmp.n;
    j["k"] = cmp.config.rank_k;
    j["c_iter"] = cmp.config.c_iter;
    j["c_acc"] = cmp.config.c_acc;
    j["f_clk_hz"] = cmp.config.f_clk_hz;
    j["trials"] = cmp.config.trials;
    j["rng_seed"] = cmp.config.rng_seed;
    j["prng"] = std::string(kSimulationPrng);
    j["expected_acceptances"] = expected_acceptances(cmp.n);
    j["predicted_cycles"] = cmp.predicted_cycles;
    j["predicted_us"] = cmp.predicted_us;
    const auto& mc = cmp.monte_carlo;
    j["monte_carlo"] = {{"median_cycles", mc.median_cycles}, {"p95_cycles", mc.p95_cycles},
                        {"mean_cycles", mc.mean_cycles},     {"median_us", mc.median_us},
                        {"p95_us", mc.p95_us}};
    if (cmp.real) {
        nlohmann::ordered_json r;
        r["trials"] = cmp.real->trials;
        r["failures"] = cmp.real->failures;
        r["mean_iterations"] = cmp.real->mean_iterations;
        r["mean_acceptances"] = cmp.real->mean_acceptances;
        if (cmp.real->stats) {
            const auto& s = *cmp.real->stats;
            r["median_cycles"] = s.median_cycles;
            r["p95_cycles"] = s.p95_cycles;
            r["mean_cycles"] = s.mean_cycles;
        }
        j["real_generator"] = r;
    }
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& b : baseline_rows(cmp.config.f_clk_hz)) {
        rows.push_back({{"name", b.name}, {"cycles", b.cycles}, {"us", b.micros}});
    }
    j["baselines"] = rows;
    j["meets_0_2ms_budget"] = cmp.meets_budget;
    return j.dump(2) + "\n";
}

int cmd_latency(const LatencyFlags& l, const GenerationFlags& gen, std::ostream& out) {
    const auto format = resolve_format(l.format, l.out, {"text", "csv", "json"}, "text");
    std::optional<GenerationParams> real;
    if (l.measure_real) real = gen.build();
    const auto cmp = compare_latency(l.config, gen.n, real);
    std::string body = format == "csv" ? comparison_csv(cmp) : format == "json" ? comparison_json(cmp)
                                                                                : comparison_text(cmp);
    emit(l.out, body, out);
    return kOk;
}

int cmd_compare(const std::vector<std::string>& inputs, const std::vector<std::string>& baselines,
                const std::string& format_flag, const std::string& out_path, std::ostream& out) {
    const auto format = resolve_format(format_flag, out_path, {"text", "csv", "json"}, "text");
    std::vector<std::pair<std::string, CryptoReport>> reports;
    for (const auto& b : baselines) reports.emplace_back(b, analyze(load_or_baseline("", b)));
    for (const auto& path : inputs) reports.emplace_back(path, analyze(read_table_file(path)));
    if (reports.empty()) throw UsageError("compare needs at least one table or --baseline");

    std::string body;
    if (format == "json") {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& [name, r] : reports) {
            auto j = nlohmann::ordered_json::parse(report_to_json(r));
            arr.push_back({{"name", name}, {"report", j}});
        }
        body = arr.dump(2) + "\n";
    } else {
        char line[256];
        const char* fmt_row = format == "csv" ? "%s,%u,%.3f,%u,%u,%u,%.6f,%u\n" : "%-24s %6u %8.3f %8u %7u %7u %9.6f %6u\n";
        body = format == "csv" ? "name,min_nl,avg_nl,component_min_nl,ddt_max,lat_max_abs,linear_prob_max,max_degree\n"
                               : "name                     min_nl   avg_nl  comp_nl ddt_max lat_max  lin_prob degree\n";
        for (const auto& [name, r] : reports) {
            const unsigned deg = *std::max_element(r.per_bit_degree.begin(), r.per_bit_degree.end());
            std::snprintf(line, sizeof line, fmt_row, name.c_str(), r.min_nl, r.avg_nl, r.component_min_nl, r.ddt_max,
                          r.lat_max_abs, r.linear_prob_max.to_double(), deg);
            body += line;
        }
    }
    emit(out_path, body, out);
    return kOk;
}

int cmd_invert(const std::string& input, const std::string& format_flag, const std::string& out_path,
               std::ostream& out) {
    const auto table = read_table_file(input);
    const auto fallback = table.word_size() == 8 ? "hex" : "json";
    const auto format = resolve_format(format_flag, out_path, {"hex", "json"}, fallback);
    if (!table.is_bijective()) throw FormatError("table is not a bijection; it has no inverse");
    emit(out_path, write_table(invert(table), format == "hex" ? TableFormat::Hex : TableFormat::Json), out);
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Chaotic dyadic-sampled S-box generator and analyzer", "dcsbox"};
    app.require_subcommand(1);

    GenerationFlags gen_flags;
    std::string gen_format, gen_out;
    auto* gen = app.add_subcommand("generate", "generate an S-box from a gated beta-expansion orbit");
    gen_flags.attach(gen);
    gen->add_option("--format", gen_format, "hex | json")->check(CLI::IsMember({"hex", "json"}));
    gen->add_option("--out", gen_out, "output path (stdout when omitted)");

    AnalyzeFlags an_flags;
    GenerationFlags an_gen;
    auto* an = app.add_subcommand("analyze", "compute the cryptanalytic metric suite of a table");
    an->add_option("input", an_flags.input, "table file (hex grid or JSON)");
    an->add_option("--baseline", an_flags.baseline, "built-in table: gf | identity")
        ->check(CLI::IsMember({"gf", "identity"}));
    an->add_option("--out", an_flags.out, "report path (stdout when omitted)");
    an->add_option("--format", an_flags.format, "json | text")->check(CLI::IsMember({"json", "text"}));
    an->add_option("--hist-dir", an_flags.hist_dir, "directory for ddt.csv and lat.csv");
    an->add_flag("--allow-nonbijective", an_flags.allow_nonbijective, "analyze tables with repeated entries");
    an->add_option("--uniformity", an_flags.uniformity_samples, "also run the chi-square test on N raw gated words");
    an_gen.attach(an);

    LatencyFlags lat_flags;
    GenerationFlags lat_gen;
    auto* lat = app.add_subcommand("latency", "coupon-collector latency model vs Monte Carlo and baselines");
    lat->add_option("--k", lat_flags.config.rank_k, "gate rank (p = 2^-k)")->capture_default_str();
    lat->add_option("--trials", lat_flags.config.trials, "Monte Carlo trials")->capture_default_str();
    lat->add_option("--fclk", lat_flags.config.f_clk_hz, "clock frequency in Hz")->capture_default_str();
    lat->add_option("--citer", lat_flags.config.c_iter, "cycles per orbit iteration")->capture_default_str();
    lat->add_option("--cacc", lat_flags.config.c_acc, "extra cycles per accepted draw")->capture_default_str();
    lat->add_option("--seed", lat_flags.config.rng_seed, "PRNG seed")->capture_default_str();
    lat->add_flag("--measure-real", lat_flags.measure_real, "also time the real generator over perturbed seeds");
    lat->add_option("--format", lat_flags.format, "text | csv | json")->check(CLI::IsMember({"text", "csv", "json"}));
    lat->add_option("--out", lat_flags.out, "output path (stdout when omitted)");
    lat_gen.attach(lat);

    std::vector<std::string> cmp_inputs, cmp_baselines;
    std::string cmp_format, cmp_out;
    auto* cmp = app.add_subcommand("compare", "tabulate metrics of several tables side by side");
    cmp->add_option("inputs", cmp_inputs, "table files");
    cmp->add_option("--baseline", cmp_baselines, "built-in tables: gf | identity")
        ->check(CLI::IsMember({"gf", "identity"}));
    cmp->add_option("--format", cmp_format, "text | csv | json")->check(CLI::IsMember({"text", "csv", "json"}));
    cmp->add_option("--out", cmp_out, "output path (stdout when omitted)");

    std::string inv_input, inv_format, inv_out;
    auto* inv = app.add_subcommand("invert", "write the inverse of a bijective table");
    inv->add_option("input", inv_input, "table file")->required();
    inv->add_option("--format", inv_format, "hex | json")->check(CLI::IsMember({"hex", "json"}));
    inv->add_option("--out", inv_out, "output path (stdout when omitted)");

    std::vector<const char*> argv{"dcsbox"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*gen) return cmd_generate(gen_flags, gen_format, gen_out, out, err);
        if (*an) return cmd_analyze(an_flags, an_gen, out);
        if (*lat) return cmd_latency(lat_flags, lat_gen, out);
        if (*cmp) return cmd_compare(cmp_inputs, cmp_baselines, cmp_format, cmp_out, out);
        if (*inv) return cmd_invert(inv_input, inv_format, inv_out, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const InsufficientBlocks& e) {
        err << "error: " << e.what() << "\n";
        return kGenerationFailure;
    } catch (const GeneratorStall& e) {
        err << "error: " << e.what() << "\n";
        return kGenerationFailure;
    } catch (const FormatError& e) {
        err << "error: " << e.what() << "\n";
        return kFormatError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kFormatError;
    }
    return kUsage;
}

}  // namespace dcsbox::cli
