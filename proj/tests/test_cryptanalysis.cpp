#include "dcsbox/cryptanalysis.hpp"
#include "dcsbox/errors.hpp"
#include "dcsbox/report_io.hpp"
#include "oracle.hpp"

#include <doctest.h>

#include <numeric>
#include <random>

using namespace dcsbox;

namespace {

SBoxTable random_table(unsigned n, std::mt19937_64& rng) { return SBoxTable(n, oracle::random_permutation(n, rng)); }

std::vector<std::uint32_t> as_vector(const SBoxTable& t) { return {t.entries().begin(), t.entries().end()}; }

}  // namespace

TEST_CASE("walsh row basics") {
    const auto id = SBoxTable::identity(8);
    CHECK(walsh_row(id, 1)[1] == 256);
    CHECK(walsh_row(id, 0)[0] == 256);
    std::mt19937_64 rng(11);
    for (int i = 0; i < 20; ++i) {
        const auto t = random_table(8, rng);
        for (std::uint32_t b = 0; b < 256; ++b) {
            const auto row = walsh_row(t, b);
            const long long energy = std::accumulate(row.begin(), row.end(), 0LL,
                                                     [](long long acc, std::int32_t w) { return acc + 1LL * w * w; });
            CHECK(energy == 65536);
        }
    }
}

TEST_CASE("fast transform equals direct summation") {
    std::mt19937_64 rng(5);
    for (unsigned n = 1; n <= 6; ++n) {
        for (int trial = 0; trial < (n == 4 ? 50 : 5); ++trial) {
            const auto t = random_table(n, rng);
            const auto s = as_vector(t);
            for (std::uint32_t b = 0; b < t.size(); ++b) {
                const auto row = walsh_row(t, b);
                for (std::uint32_t a = 0; a < t.size(); ++a) {
                    if (row[a] != oracle::walsh(s, a, b)) {
                        FAIL_CHECK("mismatch n=" << n << " a=" << a << " b=" << b);
                    }
                }
            }
        }
    }
    // Non-bijective tables too.
    std::vector<std::uint32_t> s(16);
    for (auto& v : s) v = static_cast<std::uint32_t>(rng() % 16);
    const SBoxTable t(4, s);
    for (std::uint32_t b = 0; b < 16; ++b) {
        for (std::uint32_t a = 0; a < 16; ++a) CHECK(walsh_row(t, b)[a] == oracle::walsh(s, a, b));
    }
    std::vector<std::int32_t> bad(3);
    CHECK_THROWS_AS(fwht(bad), ConfigError);
}

TEST_CASE("gf baseline spectrum and nonlinearity against brute force") {
    const auto gf = gf_baseline_sbox();
    const auto s = as_vector(gf);
    for (std::uint32_t b = 1; b < 256; ++b) {
        const auto row = walsh_row(gf, b);
        std::int32_t m = 0;
        for (std::uint32_t a = 0; a < 256; ++a) m = std::max(m, std::abs(row[a]));
        CHECK(m == 32);
    }
    const auto nl = nonlinearity(gf);
    CHECK(nl.per_bit == std::vector<std::uint32_t>(8, 112));
    CHECK(nl.component_min == 112);
    unsigned brute_min = 128;
    for (std::uint32_t b = 1; b < 256; ++b) brute_min = std::min(brute_min, oracle::nonlinearity_for_mask(s, b));
    CHECK(brute_min == 112);
    for (unsigned i = 0; i < 8; ++i) CHECK(oracle::nonlinearity_for_mask(s, 1u << i) == 112);
}

TEST_CASE("identity has zero nonlinearity") {
    const auto nl = nonlinearity(SBoxTable::identity(8));
    CHECK(nl.per_bit == std::vector<std::uint32_t>(8, 0));
    CHECK(nl.component_min == 0);
}

TEST_CASE("nonlinearity matches brute force on random tables") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 3; ++trial) {
        const auto t = random_table(8, rng);
        const auto s = as_vector(t);
        const auto nl = nonlinearity(t);
        for (unsigned i = 0; i < 8; ++i) CHECK(nl.per_bit[i] == oracle::nonlinearity_for_mask(s, 1u << i));
    }
}

TEST_CASE("ddt") {
    const auto id = ddt(SBoxTable::identity(8));
    for (std::uint32_t d = 0; d < 256; ++d) CHECK(id.at(d, d) == 256);
    CHECK(id.max == 256);

    const auto gf = gf_baseline_sbox();
    const auto g = ddt(gf);
    CHECK(g.max == 4);
    CHECK(g.max == oracle::ddt_max(as_vector(gf)));
    CHECK(g.at(0, 0) == 256);

    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 10; ++trial) {
        const auto t = random_table(8, rng);
        const auto d = ddt(t);
        if (trial < 2) CHECK(d.max == oracle::ddt_max(as_vector(t)));
        for (std::uint32_t dx = 1; dx < 256; ++dx) {
            std::uint32_t row = 0, col = 0;
            for (std::uint32_t dy = 0; dy < 256; ++dy) {
                CHECK(d.at(dx, dy) % 2 == 0);
                row += d.at(dx, dy);
                col += d.at(dy, dx);
            }
            CHECK(row == 256);
            CHECK(col == 256);
        }
        std::uint64_t cells = 0;
        for (const auto& [v, c] : d.histogram) cells += c;
        CHECK(cells == 256 * 255);
        CHECK(d.max % 2 == 0);
        CHECK(d.max >= 2);
    }
}

TEST_CASE("lat") {
    const auto id = lat(SBoxTable::identity(8));
    for (std::uint32_t m = 1; m < 256; ++m) CHECK(id.at(m, m) == 256);

    const auto gf = gf_baseline_sbox();
    const auto l = lat(gf);
    CHECK(l.max_abs == 32);
    CHECK(l.linear_prob_max == Rational{9, 16});
    CHECK(l.linear_prob_max.to_double() == 0.5625);
    const auto s = as_vector(gf);
    std::mt19937_64 rng(8);
    for (int i = 0; i < 500; ++i) {
        const auto a = static_cast<std::uint32_t>(rng() & 0xFF);
        const auto b = static_cast<std::uint32_t>(rng() & 0xFF);
        CHECK(l.at(a, b) == oracle::lat_entry(s, a, b));
    }
    long brute = 0;
    for (std::uint32_t b = 1; b < 256; b += 37) {
        for (std::uint32_t a = 0; a < 256; ++a) brute = std::max(brute, std::labs(oracle::lat_entry(s, a, b)));
    }
    CHECK(brute == 32);

    for (int trial = 0; trial < 5; ++trial) {
        const auto t = random_table(8, rng);
        const auto r = lat(t);
        for (std::uint32_t b = 0; b < 256; ++b) {
            for (std::uint32_t a = 0; a < 256; ++a) {
                CHECK(r.at(a, b) % 2 == 0);
                if (a != 0 && b != 0) CHECK(r.at(a, b) % 4 == 0);
            }
        }
        std::uint64_t cells = 0;
        for (const auto& [v, c] : r.histogram) cells += c;
        CHECK(cells == 256 * 255);
        CHECK(r.max_abs % 2 == 0);
    }
}

TEST_CASE("input translation leaves ddt and lat maxima unchanged") {
    std::mt19937_64 rng(13);
    const auto s = generate(GenerationParams{});
    for (int i = 0; i < 5; ++i) {
        const auto c = static_cast<std::uint32_t>(rng() & 0xFF);
        std::vector<std::uint32_t> shifted(256);
        for (std::uint32_t x = 0; x < 256; ++x) shifted[x] = s[x ^ c];
        const SBoxTable t(8, shifted);
        CHECK(ddt(t).max == ddt(s).max);
        CHECK(lat(t).max_abs == lat(s).max_abs);
    }
}

TEST_CASE("anf") {
    const auto id = anf(SBoxTable::identity(8));
    CHECK(id.per_bit_degree == std::vector<unsigned>(8, 1));
    CHECK(id.monomial_counts[1] == 1.0);
    for (unsigned i = 0; i < 8; ++i) CHECK(id.coefficients[i][1u << i] == 1);

    const auto gf = anf(gf_baseline_sbox());
    CHECK(gf.per_bit_degree == std::vector<unsigned>(8, 7));

    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        const auto t = random_table(8, rng);
        const auto a = anf(t);
        for (unsigned i = 0; i < 8; ++i) {
            std::vector<std::uint8_t> truth(256);
            for (std::uint32_t x = 0; x < 256; ++x) truth[x] = (t[x] >> i) & 1;
            if (trial < 3) CHECK(a.coefficients[i] == oracle::anf_by_subsets(truth));
            CHECK(a.per_bit_degree[i] <= 7);
        }
        const double total = std::accumulate(a.monomial_counts.begin(), a.monomial_counts.end(), 0.0);
        double from_coeff = 0;
        for (const auto& c : a.coefficients) from_coeff += std::accumulate(c.begin(), c.end(), 0.0);
        CHECK(total == doctest::Approx(from_coeff / 8));
    }
}

TEST_CASE("moebius is an involution") {
    for (unsigned n = 1; n <= 4; ++n) {
        const std::uint32_t size = 1u << n;
        for (std::uint32_t f = 0; f < (1u << size); ++f) {
            std::vector<std::uint8_t> truth(size);
            for (std::uint32_t x = 0; x < size; ++x) truth[x] = (f >> x) & 1;
            auto twice = truth;
            moebius(twice);
            CHECK(twice == oracle::anf_by_subsets(truth));
            moebius(twice);
            CHECK(twice == truth);
        }
    }
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<std::uint8_t> truth(256);
        for (auto& b : truth) b = rng() & 1;
        auto twice = truth;
        moebius(twice);
        moebius(twice);
        CHECK(twice == truth);
    }
}

TEST_CASE("chi-square") {
    std::vector<std::uint64_t> flat(256, 400);
    const auto r = chi_square_uniformity(flat);
    CHECK(r.statistic == 0.0);
    CHECK(r.dof == 255);
    CHECK(r.lower == doctest::Approx(187.1708).epsilon(1e-5));
    CHECK(r.upper == doctest::Approx(335.9167).epsilon(1e-5));
    CHECK_FALSE(r.pass);  // zero lies below the lower tail

    std::vector<std::uint64_t> spike(256, 0);
    spike[0] = 12800;
    CHECK(chi_square_uniformity(spike).statistic == doctest::Approx(12800.0 * 255));
}

TEST_CASE("uniformity of raw gated words") {
    GenerationParams p;
    const auto good = uniformity_test(p, 100'000);
    CHECK(good.samples == 100'000);
    CHECK(good.pass);

    GenerationParams zero;
    zero.seed_x0 = FixedPointState(0, 64);
    zero.gate = DyadicSet(3, {0});
    const auto bad = uniformity_test(zero, 12'800);
    CHECK(bad.statistic == doctest::Approx(12'800.0 * 255));
    CHECK_FALSE(bad.pass);

    zero.gate = DyadicSet::default_gate();
    zero.budget = 5'000;
    CHECK_THROWS_AS(uniformity_test(zero, 12'800), GeneratorStall);
    CHECK_THROWS_AS(uniformity_test(p, 12'799), ConfigError);
}

TEST_CASE("analyze assembles every metric") {
    const auto gf = analyze(gf_baseline_sbox());
    CHECK(gf.per_bit_nonlinearity == std::vector<std::uint32_t>(8, 112));
    CHECK(gf.avg_nl == 112.0);
    CHECK(gf.min_nl == 112);
    CHECK(gf.component_min_nl == 112);
    CHECK(gf.ddt_max == 4);
    CHECK(gf.ddt_max_prob == Rational{1, 64});
    CHECK(gf.lat_max_abs == 32);
    CHECK(gf.per_bit_degree == std::vector<unsigned>(8, 7));
    CHECK(gf.bijective);
    CHECK(gf.provenance == "gf-baseline");
    CHECK(gf.heuristic_nl_bound == doctest::Approx(128 - std::sqrt(256 * std::log(256.0))));

    const auto id = analyze(SBoxTable::identity(8));
    CHECK(id.per_bit_nonlinearity == std::vector<std::uint32_t>(8, 0));
    CHECK(id.per_bit_degree == std::vector<unsigned>(8, 1));
    CHECK(id.ddt_max == 256);

    std::vector<std::uint32_t> dup(256);
    for (std::uint32_t x = 0; x < 256; ++x) dup[x] = x & 0xFE;
    CHECK_FALSE(analyze(SBoxTable(8, dup)).bijective);
    CHECK_THROWS_AS(analyze(SBoxTable::identity(13)), ConfigError);
}

TEST_CASE("report json round trip and csv") {
    UniformityRequest req{GenerationParams{}, 20'000};
    const auto rep = analyze(generate(GenerationParams{}), req);
    REQUIRE(rep.uniformity_chi2.has_value());
    const auto json = report_to_json(rep);
    const auto back = report_from_json(json);
    CHECK(back == rep);
    CHECK(report_to_json(back) == json);

    const auto gf = analyze(gf_baseline_sbox());
    CHECK(report_from_json(report_to_json(gf)) == gf);
    CHECK(ddt_histogram_csv(gf) == "value,count\n0,32895\n2,32130\n4,255\n");
    const auto lat_csv = lat_histogram_csv(gf);
    CHECK(lat_csv.rfind("abs_bias,count\n", 0) == 0);
    CHECK_THROWS_AS(report_from_json("{}"), FormatError);
}
