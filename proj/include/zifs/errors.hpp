#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace zifs {

// Precondition violations: bad mathematical inputs (zero divisor, composite
// where a prime is required, malformed family, ...). CLI exit code 1.
struct domain_error : std::runtime_error {
    explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed textual input. `pos` is the byte offset of the offending
// character in the original string. CLI exit code 2.
struct parse_error : std::runtime_error {
    std::size_t pos;
    parse_error(const std::string& what, std::size_t pos_)
        : std::runtime_error(what + " (at position " + std::to_string(pos_) + ")"), pos(pos_) {}
};

// A configured resource cap was exceeded (node cap, input size cap).
// The message names the cap. CLI exit code 3.
struct resource_error : std::runtime_error {
    explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace zifs
