#pragma once

#include <stdexcept>
#include <string>

namespace spade {

// Contract violation by the caller (bad config value, mismatched grids, ...).
class ValidationError : public std::invalid_argument {
public:
    explicit ValidationError(const std::string& msg) : std::invalid_argument(msg) {}
};

// Malformed input file; line is 1-based, 0 when not attributable to a line.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, std::size_t line = 0)
        : std::runtime_error(line ? msg + " (line " + std::to_string(line) + ")" : msg),
          line_(line) {}
    std::size_t line() const { return line_; }
private:
    std::size_t line_;
};

// A fit failed to converge or the fitted model is inconsistent with the data.
class FitError : public std::runtime_error {
public:
    explicit FitError(const std::string& msg) : std::runtime_error(msg) {}
};

class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace spade
