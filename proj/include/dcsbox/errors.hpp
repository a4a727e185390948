#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dcsbox {

// Invalid parameters: width mismatches, out-of-range ranks, malformed β/x0 strings.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Table files or report documents that do not parse.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Raised when the orbit budget runs out before every n-bit word was collected.
class InsufficientBlocks : public std::runtime_error {
public:
    InsufficientBlocks(std::size_t reached, std::size_t required, std::size_t iterations);

    std::size_t reached() const noexcept { return reached_; }
    std::size_t required() const noexcept { return required_; }
    std::size_t iterations() const noexcept { return iterations_; }

private:
    std::size_t reached_;
    std::size_t required_;
    std::size_t iterations_;
};

// The gate was never hit within the iteration budget while drawing raw words.
class GeneratorStall : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace dcsbox
