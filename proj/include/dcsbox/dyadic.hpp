#pragma once

#include "dcsbox/fixed_point.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dcsbox {

inline constexpr unsigned kMaxDyadicRank = 16;

struct Rational {
    std::uint64_t num = 0;
    std::uint64_t den = 1;

    double to_double() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
    friend bool operator==(const Rational&, const Rational&) = default;
};

Rational make_rational(std::uint64_t num, std::uint64_t den);

// Union of rank-k dyadic intervals I_{k,j} = [j/2^k, (j+1)/2^k), one bit per j.
class DyadicSet {
public:
    DyadicSet(unsigned rank, std::span<const std::uint32_t> indices);
    DyadicSet(unsigned rank, std::initializer_list<std::uint32_t> indices);

    /// The whole unit interval, rank 0.
    static DyadicSet full();
    static DyadicSet default_gate();
    /// Parses "k:j0,j1,...".
    static DyadicSet parse(std::string_view text);

    unsigned rank() const noexcept { return rank_; }
    bool has_interval(std::uint32_t j) const noexcept;
    std::vector<std::uint32_t> indices() const;
    std::size_t count() const noexcept;

    bool contains(const FixedPointState& state) const;
    /// Membership on a raw fraction; the caller guarantees width ≥ rank.
    bool contains_raw(u128 frac, unsigned width) const noexcept {
        const auto j = rank_ == 0 ? 0u : static_cast<std::uint32_t>(frac >> (width - rank_));
        return (members_[j >> 6] >> (j & 63)) & 1u;
    }

    Rational lebesgue_measure() const;
    std::string to_string() const;

    friend bool operator==(const DyadicSet&, const DyadicSet&) = default;

private:
    unsigned rank_ = 0;
    std::vector<std::uint64_t> members_;
};

}  // namespace dcsbox
