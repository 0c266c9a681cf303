#ifndef FDMI_ERRORS_HPP
#define FDMI_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fdmi {

// Precondition or invariant violation on caller-supplied values.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Sideband packing failed; carries the largest radius that would have fit.
class PlanningError : public std::runtime_error {
public:
    PlanningError(const std::string& what, double max_feasible_radius)
        : std::runtime_error(what), max_feasible_radius(max_feasible_radius) {}
    double max_feasible_radius;
};

// Numerical failure during an otherwise valid computation.
class ComputationError : public std::runtime_error {
public:
    explicit ComputationError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed file content; offset is the byte position where parsing stopped.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t byte_offset)
        : std::runtime_error(what + " (byte offset " + std::to_string(byte_offset) + ")"),
          byte_offset(byte_offset) {}
    std::size_t byte_offset;
};

// Filesystem-level failure (open, read, write, rename).
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace fdmi

#endif
