#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gxcalc {

enum class ErrorKind {
    AllZeroMatrix,
    ShapeMismatch,
    NonConvergent,
    NotClosed,
    DegenerateBicharacter,
    UnknownName,
    MissingSymbol,
    NoConvergence,
    NotFixedPoint,
    SyntaxError,
    AdmissibilityError,
    SectorError,
    NonConfluent,
    UnsupportedConfiguration,
    MultiplicityUnsupported,
    InvalidData,
};

std::string_view error_name(ErrorKind k);

// Every failure the library reports carries one of the kinds above so that
// front-ends can map it to an exit status and a stable name.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }
    std::string_view name() const { return error_name(kind_); }

private:
    ErrorKind kind_;
};

// Parse failure with a source position (1-based line and column).
class SyntaxError : public Error {
public:
    SyntaxError(int line, int col, const std::string& expected)
        : Error(ErrorKind::SyntaxError,
                "line " + std::to_string(line) + ", col " + std::to_string(col) +
                    ": expected " + expected),
          line_(line), col_(col), expected_(expected) {}
    int line() const { return line_; }
    int col() const { return col_; }
    const std::string& expected() const { return expected_; }

private:
    int line_;
    int col_;
    std::string expected_;
};

}  // namespace gxcalc
