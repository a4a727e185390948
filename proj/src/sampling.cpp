#include "dcsbox/sampling.hpp"

#include "dcsbox/errors.hpp"

namespace dcsbox {

std::vector<OrbitSample> orbit_stream(const GenerationParams& params, std::size_t length) {
    if (length < 1) throw ConfigError("orbit length must be at least 1");
    Orbit orbit(params.beta, params.seed_x0);
    std::vector<OrbitSample> out;
    out.reserve(length);
    for (std::size_t i = 0; i < length; ++i) out.push_back(orbit.advance());
    return out;
}

std::vector<std::uint64_t> sampling_times(const GenerationParams& params, std::uint64_t limit) {
    if (limit < 1) throw ConfigError("sampling limit must be at least 1");
    if (params.gate.rank() > params.width()) throw ConfigError("gate rank exceeds fractional width");
    Orbit orbit(params.beta, params.seed_x0);
    std::vector<std::uint64_t> times;
    for (std::uint64_t m = 0; m < limit; ++m) {
        if (params.gate.contains_raw(orbit.state().frac(), params.width())) times.push_back(m);
        orbit.advance();
    }
    return times;
}

GatedWindow::GatedWindow(const GenerationParams& params)
    : beta_int_(params.beta.int_part()),
      beta_frac_(params.beta.frac()),
      width_(params.width()),
      gate_(params.gate),
      n_(params.word_size),
      offset_(params.window_offset),
      state_(params.seed_x0.frac()) {
    params.validate();
}

void GatedWindow::fill_through(std::uint64_t index) {
    while (computed_ <= index) {
        const auto slot = computed_ % kRing;
        flags_[slot] = gate_.contains_raw(state_, width_) ? 1 : 0;
        u128 next = 0;
        const auto digit = detail::step_raw(state_, beta_int_, beta_frac_, width_, next);
        bits_[slot] = threshold_bit(digit, beta_int_);
        state_ = next;
        ++computed_;
    }
}

bool GatedWindow::gate_hit() {
    fill_through(tau_);
    return flags_[tau_ % kRing] != 0;
}

std::uint32_t GatedWindow::word() {
    const std::uint64_t first = tau_ + offset_;
    fill_through(first + n_ - 1);
    std::uint32_t y = 0;
    for (unsigned j = 0; j < n_; ++j) y |= std::uint32_t{bits_[(first + j) % kRing]} << j;
    return y;
}

}  // namespace dcsbox
