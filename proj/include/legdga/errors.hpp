#pragma once

#include <stdexcept>
#include <string>

namespace legdga {

// All hard failures are exceptions. Verification mismatches that a caller
// asked to inspect travel in report structs instead, never as throws.
class Error : public std::runtime_error {
public:
    enum class Kind {
        ring_mismatch,
        unknown_generator,
        parse,
        schema,
        validation,
        grading,
        unsupported,
    };

    Error(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, int line, int col)
        : Error(Kind::parse, what + " (line " + std::to_string(line) + ", col " + std::to_string(col) + ")"),
          line_(line),
          col_(col) {}
    int line() const { return line_; }
    int col() const { return col_; }

private:
    int line_;
    int col_;
};

} // namespace legdga
