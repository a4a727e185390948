#include "cli_harness.hpp"
#include "dcsbox/report_io.hpp"
#include "dcsbox/sbox_io.hpp"

#include <doctest.h>
#include <json.hpp>

#include <algorithm>

using namespace dcsbox;
using testing::run_cli;
using testing::ScratchDir;

TEST_CASE("generate writes a bijective hex grid") {
    ScratchDir dir;
    const auto path = dir.file("box.hex");
    const auto r = run_cli({"generate", "--out", path});
    CHECK(r.code == 0);
    CHECK(r.out.find("iterations=") != std::string::npos);
    const auto table = read_table_file(path);
    CHECK(table.is_bijective());
    CHECK(std::ranges::equal(table.entries(), generate(GenerationParams{}).entries()));

    const auto to_stdout = run_cli({"generate"});
    CHECK(to_stdout.code == 0);
    CHECK(to_stdout.out == read_text_file(path));
    CHECK(to_stdout.err.find("acceptances=") != std::string::npos);
}

TEST_CASE("generation failure exits with code 3") {
    const auto r = run_cli({"generate", "--x0", "0", "--budget", "10000"});
    CHECK(r.code == 3);
    CHECK(r.err.find("InsufficientBlocks") != std::string::npos);
    CHECK(r.err.find("increase M") != std::string::npos);
    CHECK(r.out.empty());
}

TEST_CASE("json tables carry provenance and round trip") {
    ScratchDir dir;
    const auto path = dir.file("box.json");
    REQUIRE(run_cli({"generate", "--out", path, "--x0", "0.4142", "--mixer", "xorrot:0x5a"}).code == 0);
    const auto text = read_text_file(path);
    const auto j = nlohmann::json::parse(text);
    CHECK(j["n"] == 8);
    CHECK(j["provenance"]["kind"] == "generated");
    CHECK(j["provenance"]["params"]["mixer"] == "xorrot:90");
    CHECK(write_json(read_json(text)) == text);

    const auto small = run_cli({"generate", "--n", "4", "--format", "json"});
    CHECK(small.code == 0);
    CHECK(read_json(small.out).size() == 16);
    CHECK(run_cli({"generate", "--n", "4"}).code == 2);
}

TEST_CASE("usage errors exit with code 2") {
    CHECK(run_cli({}).code == 2);
    CHECK(run_cli({"generate", "--beta", "banana"}).code == 2);
    CHECK(run_cli({"generate", "--gate", "3:9"}).code == 2);
    CHECK(run_cli({"generate", "--budget", "10"}).code == 2);
    CHECK(run_cli({"generate", "--format", "xml"}).code == 2);
    CHECK(run_cli({"analyze"}).code == 2);
    ScratchDir dir;
    CHECK(run_cli({"generate", "--format", "json", "--out", dir.file("x.hex")}).code == 2);
    CHECK(run_cli({"latency", "--format", "csv", "--out", dir.file("x.json")}).code == 2);
    CHECK(run_cli({"--help"}).code == 0);
}

TEST_CASE("analyze the gf baseline") {
    const auto r = run_cli({"analyze", "--baseline", "gf"});
    REQUIRE(r.code == 0);
    const auto rep = report_from_json(r.out);
    CHECK(rep.per_bit_nonlinearity == std::vector<std::uint32_t>(8, 112));
    CHECK(rep.component_min_nl == 112);
    CHECK(rep.ddt_max == 4);
    CHECK(rep.lat_max_abs == 32);
    CHECK(rep.linear_prob_max.to_double() == 0.5625);
    CHECK(rep.per_bit_degree == std::vector<unsigned>(8, 7));

    const auto text = run_cli({"analyze", "--baseline", "gf", "--format", "text"});
    CHECK(text.code == 0);
    CHECK(text.out.find("ddt max: 4") != std::string::npos);
}

TEST_CASE("analyze rejects malformed and non-bijective tables") {
    ScratchDir dir;
    std::string short_grid;
    for (int i = 0; i < 255; ++i) short_grid += "00 ";
    write_text_file(dir.file("short.hex"), short_grid);
    const auto r = run_cli({"analyze", dir.file("short.hex")});
    CHECK(r.code == 4);
    CHECK_FALSE(r.err.empty());

    std::vector<std::uint32_t> dup(256, 7);
    write_text_file(dir.file("dup.hex"), write_hex(SBoxTable(8, dup)));
    CHECK(run_cli({"analyze", dir.file("dup.hex")}).code == 4);
    CHECK(run_cli({"analyze", dir.file("dup.hex"), "--allow-nonbijective"}).code == 0);
    CHECK(run_cli({"analyze", dir.file("missing.hex")}).code == 4);
}

TEST_CASE("analyze writes histograms and uniformity") {
    ScratchDir dir;
    const auto box = dir.file("box.json");
    REQUIRE(run_cli({"generate", "--out", box}).code == 0);
    const auto r = run_cli({"analyze", box, "--hist-dir", dir.file("hist"), "--uniformity", "20000"});
    REQUIRE(r.code == 0);
    const auto rep = report_from_json(r.out);
    REQUIRE(rep.uniformity_chi2.has_value());
    CHECK(rep.uniformity_chi2->samples == 20000);
    CHECK(read_text_file(dir.file("hist/ddt.csv")).rfind("value,count\n", 0) == 0);
    CHECK(read_text_file(dir.file("hist/lat.csv")).rfind("abs_bias,count\n", 0) == 0);
}

TEST_CASE("latency output is reproducible") {
    const std::vector<std::string> args{"latency", "--k", "3", "--trials", "300", "--format", "csv"};
    const auto a = run_cli(args);
    const auto b = run_cli(args);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("gf-inv-affine") != std::string::npos);

    const auto j = run_cli({"latency", "--trials", "100", "--format", "json", "--measure-real"});
    REQUIRE(j.code == 0);
    const auto doc = nlohmann::json::parse(j.out);
    CHECK(doc["real_generator"]["failures"] == 0);
    CHECK(doc["meets_0_2ms_budget"] == true);
    CHECK(doc["prng"] == "mt19937_64/splitmix64(seed,trial)");

    const auto text = run_cli({"latency", "--trials", "100"});
    CHECK(text.out.find("P95 < 0.2 ms: yes") != std::string::npos);
}

TEST_CASE("compare and invert") {
    ScratchDir dir;
    const auto box = dir.file("box.hex");
    REQUIRE(run_cli({"generate", "--out", box}).code == 0);
    const auto c = run_cli({"compare", box, "--baseline", "gf", "--format", "csv"});
    REQUIRE(c.code == 0);
    CHECK(c.out.find("gf,112,112.000,112,4,32,0.562500,7\n") != std::string::npos);

    const auto inv = dir.file("inv.hex");
    REQUIRE(run_cli({"invert", box, "--out", inv}).code == 0);
    const auto t = read_table_file(box);
    const auto ti = read_table_file(inv);
    for (std::uint32_t x = 0; x < 256; ++x) CHECK(ti[t[x]] == x);
    REQUIRE(run_cli({"invert", inv, "--out", dir.file("back.hex")}).code == 0);
    CHECK(read_text_file(dir.file("back.hex")) == read_text_file(box));

    std::vector<std::uint32_t> dup(256, 1);
    write_text_file(dir.file("dup.hex"), write_hex(SBoxTable(8, dup)));
    CHECK(run_cli({"invert", dir.file("dup.hex")}).code == 4);
}
