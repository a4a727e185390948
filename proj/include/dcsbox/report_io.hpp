#pragma once

#include "dcsbox/cryptanalysis.hpp"

#include <string>
#include <string_view>

namespace dcsbox {

std::string report_to_json(const CryptoReport& report);
CryptoReport report_from_json(std::string_view text);

/// `value,count` rows over nonzero-Δx cells.
std::string ddt_histogram_csv(const CryptoReport& report);
/// `abs_bias,count` rows over nonzero output masks.
std::string lat_histogram_csv(const CryptoReport& report);

}  // namespace dcsbox
