#pragma once

#include "dcsbox/sbox.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace dcsbox {

enum class TableFormat { Hex, Json };

// Hex grid: 16 lines of 16 uppercase two-digit entries, row r column c = S(16r + c).
std::string write_hex(const SBoxTable& table);
SBoxTable read_hex(std::string_view text);

// {"n": 8, "table": [...], "provenance": {...}}
std::string write_json(const SBoxTable& table);
SBoxTable read_json(std::string_view text);

/// Chooses the reader from the first non-blank character ('{' means JSON).
SBoxTable read_table(std::string_view text);
std::string write_table(const SBoxTable& table, TableFormat format);

SBoxTable read_table_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view contents);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace dcsbox
