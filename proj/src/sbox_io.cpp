#include "dcsbox/sbox_io.hpp"

#include "dcsbox/errors.hpp"

#include <json.hpp>

#include <cctype>
#include <fstream>
#include <sstream>

namespace dcsbox {

using ojson = nlohmann::ordered_json;

namespace {

std::string u128_hex(u128 v, unsigned width) { return FixedPointState(v, width).to_hex(); }

u128 parse_hex_u128(const std::string& s) {
    if (s.empty() || s.size() > 32) throw FormatError("bad hex fraction '" + s + "'");
    u128 v = 0;
    for (char c : s) {
        int d;
        if (c >= '0' && c <= '9') d = c - '0';
        else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
        else if (c >= 'A' && c <= 'F') d = c - 'A' + 10;
        else throw FormatError("bad hex fraction '" + s + "'");
        v = (v << 4) | static_cast<unsigned>(d);
    }
    return v;
}

ojson params_to_json(const GenerationParams& p) {
    ojson j;
    j["width"] = p.width();
    j["beta_int"] = p.beta.int_part();
    j["beta_frac"] = u128_hex(p.beta.frac(), p.width());
    j["x0"] = p.seed_x0.to_hex();
    j["gate"] = p.gate.to_string();
    j["n"] = p.word_size;
    j["budget"] = p.budget;
    j["mixer"] = p.mixer.to_string();
    j["stride"] = std::string(to_string(p.stride));
    j["window_offset"] = p.window_offset;
    return j;
}

GenerationParams params_from_json(const ojson& j) {
    GenerationParams p;
    const unsigned width = j.at("width").get<unsigned>();
    p.beta = BetaValue(j.at("beta_int").get<std::uint32_t>(), parse_hex_u128(j.at("beta_frac").get<std::string>()),
                       width);
    p.seed_x0 = FixedPointState(parse_hex_u128(j.at("x0").get<std::string>()), width);
    p.gate = DyadicSet::parse(j.at("gate").get<std::string>());
    p.word_size = j.at("n").get<unsigned>();
    p.budget = j.at("budget").get<std::uint64_t>();
    p.mixer = Mixer::parse(j.at("mixer").get<std::string>());
    p.stride = parse_stride(j.at("stride").get<std::string>());
    p.window_offset = j.at("window_offset").get<unsigned>();
    return p;
}

}  // namespace

std::string write_hex(const SBoxTable& table) {
    if (table.word_size() != 8) throw ConfigError("hex grid format holds 8-bit tables only");
    static constexpr char kHex[] = "0123456789ABCDEF";
    std::string out;
    out.reserve(16 * 48);
    for (unsigned r = 0; r < 16; ++r) {
        for (unsigned c = 0; c < 16; ++c) {
            const auto v = table[16 * r + c];
            if (c) out += ' ';
            out += kHex[v >> 4];
            out += kHex[v & 0xF];
        }
        out += '\n';
    }
    return out;
}

SBoxTable read_hex(std::string_view text) {
    std::vector<std::uint32_t> entries;
    std::size_t i = 0;
    while (i < text.size()) {
        if (std::isspace(static_cast<unsigned char>(text[i]))) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
        const std::string token(text.substr(i, j - i));
        if (token.size() > 2) throw FormatError("hex entry '" + token + "' is longer than two digits");
        entries.push_back(static_cast<std::uint32_t>(parse_hex_u128(token)));
        i = j;
    }
    if (entries.size() != 256) {
        throw FormatError("hex grid must hold 256 entries, found " + std::to_string(entries.size()));
    }
    return SBoxTable(8, std::move(entries), Provenance{"file", {}, {}});
}

std::string write_json(const SBoxTable& table) {
    ojson j;
    j["n"] = table.word_size();
    j["table"] = std::vector<std::uint32_t>(table.entries().begin(), table.entries().end());
    ojson prov;
    const auto& p = table.provenance();
    prov["kind"] = p.kind;
    if (p.params) prov["params"] = params_to_json(*p.params);
    if (p.trace) {
        prov["trace"] = {{"iterations", p.trace->iterations},
                         {"acceptances", p.trace->acceptances},
                         {"duplicates", p.trace->duplicates}};
    }
    j["provenance"] = prov;
    return j.dump(2) + "\n";
}

SBoxTable read_json(std::string_view text) {
    try {
        const auto j = ojson::parse(text);
        const unsigned n = j.at("n").get<unsigned>();
        auto entries = j.at("table").get<std::vector<std::uint32_t>>();
        Provenance prov;
        if (j.contains("provenance")) {
            const auto& pj = j.at("provenance");
            prov.kind = pj.value("kind", std::string("file"));
            if (pj.contains("params")) prov.params = params_from_json(pj.at("params"));
            if (pj.contains("trace")) {
                const auto& t = pj.at("trace");
                prov.trace = GenerationTrace{t.at("iterations").get<std::uint64_t>(),
                                             t.at("acceptances").get<std::uint64_t>(),
                                             t.at("duplicates").get<std::uint64_t>()};
            }
        }
        return SBoxTable(n, std::move(entries), std::move(prov));
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("malformed table JSON: ") + e.what());
    } catch (const ConfigError& e) {
        throw FormatError(std::string("malformed table JSON: ") + e.what());
    }
}

SBoxTable read_table(std::string_view text) {
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        return c == '{' ? read_json(text) : read_hex(text);
    }
    throw FormatError("empty table file");
}

std::string write_table(const SBoxTable& table, TableFormat format) {
    return format == TableFormat::Hex ? write_hex(table) : write_json(table);
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

SBoxTable read_table_file(const std::filesystem::path& path) { return read_table(read_text_file(path)); }

void write_text_file(const std::filesystem::path& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

}  // namespace dcsbox
