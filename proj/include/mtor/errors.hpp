#pragma once

#include <stdexcept>
#include <string>

namespace mtor {

// Malformed input text (bad grammar, unknown labels, ...).  CLI exit code 2.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& msg, int line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg),
          line(line) {}
    int line;
};

// Input is well-formed but mathematically invalid.  CLI exit code 1.
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// A construction invariant failed; indicates a bug, not bad input.
struct InternalError : std::logic_error {
    explicit InternalError(const std::string& msg) : std::logic_error(msg) {}
};

} // namespace mtor
