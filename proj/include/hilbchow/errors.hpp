#pragma once

#include <stdexcept>
#include <string>

namespace hilbchow {

// Structural misuse: mismatched rings, bad degrees, unknown names.
struct StructureError : std::runtime_error {
    explicit StructureError(const std::string& msg) : std::runtime_error(msg) {}
};

// A mathematical consistency check failed (invalid diagonal, non-homomorphism,
// image != closure, ...). The CLI maps these to exit code 1.
struct MathError : std::runtime_error {
    explicit MathError(const std::string& msg) : std::runtime_error(msg) {}
};

// Positioned syntax / input errors. The CLI maps these to exit code 2.
struct ParseError : std::runtime_error {
    int line;
    int column;
    ParseError(int line_, int col_, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line_) + ", column " +
                             std::to_string(col_) + ": " + msg),
          line(line_), column(col_) {}
};

}  // namespace hilbchow
