#include "dcsbox/errors.hpp"
#include "dcsbox/sbox_io.hpp"

#include <doctest.h>

#include <algorithm>
#include <filesystem>

using namespace dcsbox;

TEST_CASE("hex grid layout") {
    const auto text = write_hex(gf_baseline_sbox());
    CHECK(text.substr(0, 48) == "63 7C 77 7B F2 6B 6F C5 30 01 67 2B FE D7 AB 76\n");
    CHECK(std::count(text.begin(), text.end(), '\n') == 16);
    CHECK(text.size() == 16 * 48);
}

TEST_CASE("hex and json round-trip byte-exactly") {
    GenerationParams p;
    p.mixer = Mixer::xor_rotate(9);
    p.stride = Stride::SkipAfterAccept;
    const SBoxTable tables[] = {generate(p), gf_baseline_sbox(), SBoxTable::identity(8)};
    for (const auto& t : tables) {
        const auto hex = write_hex(t);
        CHECK(write_hex(read_hex(hex)) == hex);
        CHECK(std::ranges::equal(read_table(hex).entries(), t.entries()));

        const auto json = write_json(t);
        const auto back = read_json(json);
        CHECK(write_json(back) == json);
        CHECK(back == t);
        CHECK(read_table(json) == t);
    }
    // Non-byte tables travel as JSON only.
    GenerationParams small;
    small.word_size = 4;
    small.gate = DyadicSet::full();
    const auto t4 = generate(small);
    CHECK(read_json(write_json(t4)) == t4);
    CHECK_THROWS_AS(write_hex(t4), ConfigError);
}

TEST_CASE("malformed table files") {
    std::string short_grid;
    for (int i = 0; i < 255; ++i) short_grid += "00 ";
    CHECK_THROWS_AS(read_hex(short_grid), FormatError);
    CHECK_THROWS_AS(read_hex(short_grid + "00 00"), FormatError);
    CHECK_THROWS_AS(read_hex(short_grid + "0G"), FormatError);
    CHECK_THROWS_AS(read_hex(short_grid + "100"), FormatError);
    CHECK_THROWS_AS(read_json("{\"n\": 8, \"table\": [1, 2]}"), FormatError);
    CHECK_THROWS_AS(read_json("{\"n\": 8"), FormatError);
    CHECK_THROWS_AS(read_json("{\"n\": 2, \"table\": [0, 1, 2, 3], \"provenance\": {\"kind\": \"generated\", "
                              "\"params\": {\"width\": 3}}}"),
                    FormatError);
    CHECK_THROWS_AS(read_table("   \n"), FormatError);
    // Duplicate entries parse; bijectivity is the caller's decision.
    CHECK_FALSE(read_hex(short_grid + "00").is_bijective());
}

TEST_CASE("files") {
    const auto dir = std::filesystem::temp_directory_path() / "dcsbox_io_test";
    std::filesystem::create_directories(dir);
    const auto path = dir / "gf.hex";
    write_text_file(path, write_hex(gf_baseline_sbox()));
    CHECK(std::ranges::equal(read_table_file(path).entries(), gf_baseline_sbox().entries()));
    CHECK_THROWS_AS(read_table_file(dir / "missing.hex"), FormatError);
    std::filesystem::remove_all(dir);
}
