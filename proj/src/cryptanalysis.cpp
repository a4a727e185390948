#include "dcsbox/cryptanalysis.hpp"

#include "dcsbox/errors.hpp"
#include "dcsbox/sampling.hpp"

#include <boost/math/distributions/chi_squared.hpp>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <numeric>

namespace dcsbox {

namespace {

void require_analyzable(const SBoxTable& table) {
    if (table.word_size() > kMaxAnalysisWordSize) {
        throw ConfigError("analysis supports word sizes up to 12 bits");
    }
}

std::uint32_t parity(std::uint32_t v) { return static_cast<std::uint32_t>(std::popcount(v) & 1); }

}  // namespace

void fwht(std::span<std::int32_t> values) {
    const std::size_t size = values.size();
    if (!std::has_single_bit(size)) throw ConfigError("transform length must be a power of two");
    for (std::size_t h = 1; h < size; h <<= 1) {
        for (std::size_t i = 0; i < size; i += h << 1) {
            for (std::size_t j = i; j < i + h; ++j) {
                const auto a = values[j];
                const auto b = values[j + h];
                values[j] = a + b;
                values[j + h] = a - b;
            }
        }
    }
}

void moebius(std::span<std::uint8_t> bits) {
    const std::size_t size = bits.size();
    if (!std::has_single_bit(size)) throw ConfigError("transform length must be a power of two");
    for (std::size_t h = 1; h < size; h <<= 1) {
        for (std::size_t i = 0; i < size; i += h << 1) {
            for (std::size_t j = i; j < i + h; ++j) bits[j + h] ^= bits[j];
        }
    }
}

std::vector<std::int32_t> walsh_row(const SBoxTable& table, std::uint32_t output_mask) {
    std::vector<std::int32_t> row(table.size());
    for (std::size_t x = 0; x < row.size(); ++x) row[x] = parity(output_mask & table[x]) ? -1 : 1;
    fwht(row);
    return row;
}

namespace {

std::uint32_t max_abs_excluding_zero(const std::vector<std::int32_t>& row) {
    std::uint32_t m = 0;
    for (std::size_t a = 1; a < row.size(); ++a) m = std::max(m, static_cast<std::uint32_t>(std::abs(row[a])));
    return m;
}

}  // namespace

NonlinearityResult nonlinearity(const SBoxTable& table) {
    require_analyzable(table);
    const unsigned n = table.word_size();
    const std::uint32_t half = std::uint32_t{1} << (n - 1);
    NonlinearityResult r;
    std::uint32_t worst = 0;
    for (std::uint32_t b = 1; b < table.size(); ++b) {
        const auto m = max_abs_excluding_zero(walsh_row(table, b));
        worst = std::max(worst, m);
        if (std::has_single_bit(b)) r.per_bit.push_back(half - m / 2);
    }
    r.component_min = half - worst / 2;
    return r;
}

DdtResult ddt(const SBoxTable& table) {
    require_analyzable(table);
    DdtResult r;
    r.n = table.word_size();
    const std::size_t size = table.size();
    r.cells.assign(size * size, 0);
    for (std::size_t dx = 0; dx < size; ++dx) {
        auto* row = &r.cells[dx * size];
        for (std::size_t x = 0; x < size; ++x) ++row[table[x] ^ table[x ^ dx]];
    }
    for (std::size_t i = size; i < r.cells.size(); ++i) {
        r.max = std::max(r.max, r.cells[i]);
        ++r.histogram[r.cells[i]];
    }
    return r;
}

LatResult lat(const SBoxTable& table) {
    require_analyzable(table);
    LatResult r;
    r.n = table.word_size();
    const std::size_t size = table.size();
    r.cells.resize(size * size);
    for (std::uint32_t b = 0; b < size; ++b) {
        const auto row = walsh_row(table, b);
        std::copy(row.begin(), row.end(), r.cells.begin() + static_cast<std::ptrdiff_t>(b * size));
    }
    for (std::size_t i = size; i < r.cells.size(); ++i) {
        const auto v = static_cast<std::uint32_t>(std::abs(r.cells[i]));
        r.max_abs = std::max(r.max_abs, v);
        ++r.histogram[v];
    }
    r.linear_prob_max = make_rational(size + r.max_abs, 2 * size);
    return r;
}

AnfResult anf(const SBoxTable& table) {
    const unsigned n = table.word_size();
    AnfResult r;
    r.monomial_counts.assign(n + 1, 0.0);
    for (unsigned i = 0; i < n; ++i) {
        std::vector<std::uint8_t> coeff(table.size());
        for (std::size_t x = 0; x < coeff.size(); ++x) coeff[x] = static_cast<std::uint8_t>((table[x] >> i) & 1u);
        moebius(coeff);
        unsigned degree = 0;
        for (std::size_t mono = 0; mono < coeff.size(); ++mono) {
            if (!coeff[mono]) continue;
            const auto d = static_cast<unsigned>(std::popcount(mono));
            degree = std::max(degree, d);
            r.monomial_counts[d] += 1.0;
        }
        r.per_bit_degree.push_back(degree);
        r.coefficients.push_back(std::move(coeff));
    }
    for (auto& c : r.monomial_counts) c /= n;
    return r;
}

ChiSquareResult chi_square_uniformity(std::span<const std::uint64_t> counts) {
    if (counts.size() < 2) throw ConfigError("chi-square test needs at least two bins");
    ChiSquareResult r;
    r.samples = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
    if (r.samples == 0) throw ConfigError("chi-square test needs at least one sample");
    r.dof = static_cast<unsigned>(counts.size() - 1);
    const double expected = static_cast<double>(r.samples) / static_cast<double>(counts.size());
    for (auto c : counts) {
        const double d = static_cast<double>(c) - expected;
        r.statistic += d * d / expected;
    }
    const boost::math::chi_squared dist(r.dof);
    r.lower = boost::math::quantile(dist, 0.0005);
    r.upper = boost::math::quantile(dist, 0.9995);
    r.pass = r.statistic >= r.lower && r.statistic <= r.upper;
    return r;
}

ChiSquareResult uniformity_test(const GenerationParams& params, std::uint64_t samples) {
    params.validate();
    const std::uint64_t bins = std::uint64_t{1} << params.word_size;
    if (samples < 50 * bins) {
        throw ConfigError("uniformity test needs at least 50 samples per bin (" + std::to_string(50 * bins) + ")");
    }
    std::vector<std::uint64_t> counts(bins, 0);
    GatedWindow window(params);
    const std::uint64_t skip = std::uint64_t{params.word_size} + params.window_offset;
    std::uint64_t drawn = 0;
    std::uint64_t since_hit = 0;
    while (drawn < samples) {
        if (window.gate_hit()) {
            ++counts[window.word()];
            ++drawn;
            since_hit = 0;
            if (params.stride == Stride::SkipAfterAccept) {
                window.advance(skip);
                continue;
            }
        } else if (++since_hit >= params.budget) {
            throw GeneratorStall("gate not hit within " + std::to_string(params.budget) + " iterations after " +
                                 std::to_string(drawn) + " samples");
        }
        window.advance();
    }
    return chi_square_uniformity(counts);
}

CryptoReport analyze(const SBoxTable& table, const std::optional<UniformityRequest>& uniformity) {
    require_analyzable(table);
    CryptoReport rep;
    const unsigned n = rep.n = table.word_size();
    rep.provenance = table.provenance().kind;
    rep.bijective = table.is_bijective();

    auto nl = nonlinearity(table);
    rep.per_bit_nonlinearity = nl.per_bit;
    rep.min_nl = *std::min_element(nl.per_bit.begin(), nl.per_bit.end());
    rep.avg_nl = std::accumulate(nl.per_bit.begin(), nl.per_bit.end(), 0.0) / n;
    rep.component_min_nl = nl.component_min;
    const double size = std::ldexp(1.0, static_cast<int>(n));
    rep.heuristic_nl_bound = size / 2 - std::sqrt(size * std::log(size));

    auto d = ddt(table);
    rep.ddt_max = d.max;
    rep.ddt_max_prob = make_rational(d.max, table.size());
    rep.ddt_histogram = std::move(d.histogram);

    auto l = lat(table);
    rep.lat_max_abs = l.max_abs;
    rep.linear_prob_max = l.linear_prob_max;
    rep.lat_histogram = std::move(l.histogram);

    auto a = anf(table);
    rep.per_bit_degree = std::move(a.per_bit_degree);
    rep.anf_monomial_counts = std::move(a.monomial_counts);

    if (uniformity) rep.uniformity_chi2 = uniformity_test(uniformity->params, uniformity->samples);
    return rep;
}

}  // namespace dcsbox
