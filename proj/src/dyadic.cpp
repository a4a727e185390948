#include "dcsbox/dyadic.hpp"

#include "dcsbox/errors.hpp"

#include <bit>
#include <charconv>
#include <numeric>

namespace dcsbox {

Rational make_rational(std::uint64_t num, std::uint64_t den) {
    if (den == 0) throw ConfigError("rational with zero denominator");
    const auto g = std::gcd(num, den);
    if (g == 0) return {0, 1};
    return {num / g, den / g};
}

DyadicSet::DyadicSet(unsigned rank, std::span<const std::uint32_t> indices) : rank_(rank) {
    if (rank > kMaxDyadicRank) {
        throw ConfigError("dyadic rank must be at most 16, got " + std::to_string(rank));
    }
    const std::uint64_t slots = std::uint64_t{1} << rank;
    members_.assign((slots + 63) / 64, 0);
    for (auto j : indices) {
        if (j >= slots) {
            throw ConfigError("dyadic index " + std::to_string(j) + " out of range for rank " + std::to_string(rank));
        }
        members_[j >> 6] |= std::uint64_t{1} << (j & 63);
    }
    if (count() == 0) throw ConfigError("dyadic set must contain at least one interval");
}

DyadicSet::DyadicSet(unsigned rank, std::initializer_list<std::uint32_t> indices)
    : DyadicSet(rank, std::span<const std::uint32_t>(indices.begin(), indices.size())) {}

DyadicSet DyadicSet::full() { return DyadicSet(0, {0}); }

DyadicSet DyadicSet::default_gate() { return DyadicSet(3, {5}); }

DyadicSet DyadicSet::parse(std::string_view text) {
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) {
        throw ConfigError("gate must look like 'k:j0,j1,...', got '" + std::string(text) + "'");
    }
    auto parse_uint = [&](std::string_view s) {
        std::uint32_t v = 0;
        const auto* end = s.data() + s.size();
        auto [ptr, ec] = std::from_chars(s.data(), end, v);
        if (s.empty() || ec != std::errc{} || ptr != end) {
            throw ConfigError("bad integer '" + std::string(s) + "' in gate '" + std::string(text) + "'");
        }
        return v;
    };
    const unsigned rank = parse_uint(text.substr(0, colon));
    std::vector<std::uint32_t> idx;
    std::string_view rest = text.substr(colon + 1);
    while (true) {
        const auto comma = rest.find(',');
        idx.push_back(parse_uint(rest.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        rest = rest.substr(comma + 1);
    }
    return DyadicSet(rank, idx);
}

bool DyadicSet::has_interval(std::uint32_t j) const noexcept {
    if (j >= (std::uint64_t{1} << rank_)) return false;
    return (members_[j >> 6] >> (j & 63)) & 1u;
}

std::vector<std::uint32_t> DyadicSet::indices() const {
    std::vector<std::uint32_t> out;
    const std::uint32_t slots = std::uint32_t{1} << rank_;
    for (std::uint32_t j = 0; j < slots; ++j) {
        if (has_interval(j)) out.push_back(j);
    }
    return out;
}

std::size_t DyadicSet::count() const noexcept {
    std::size_t c = 0;
    for (auto w : members_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
}

bool DyadicSet::contains(const FixedPointState& state) const {
    if (rank_ > state.width()) {
        throw ConfigError("dyadic rank exceeds state width");
    }
    return contains_raw(state.frac(), state.width());
}

Rational DyadicSet::lebesgue_measure() const { return make_rational(count(), std::uint64_t{1} << rank_); }

std::string DyadicSet::to_string() const {
    std::string s = std::to_string(rank_) + ":";
    bool first = true;
    for (auto j : indices()) {
        if (!first) s += ',';
        s += std::to_string(j);
        first = false;
    }
    return s;
}

}  // namespace dcsbox
