#include "dcsbox/errors.hpp"

namespace dcsbox {

InsufficientBlocks::InsufficientBlocks(std::size_t reached, std::size_t required, std::size_t iterations)
    : std::runtime_error("InsufficientBlocks: collected " + std::to_string(reached) + " of " +
                         std::to_string(required) + " distinct words after " + std::to_string(iterations) +
                         " iterations; increase M or adjust (beta, x0, C)"),
      reached_(reached),
      required_(required),
      iterations_(iterations) {}

}  // namespace dcsbox
