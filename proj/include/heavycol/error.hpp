#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace heavycol {

enum class ErrorKind {
    EmptyInput,
    RaggedRows,
    BadCharacter,
    TooWide,
    ColumnOutOfRange,
    IndexOutOfRange,
    NoColumnLeft,
    BadOrder,
    InvalidSpec,
    UniverseTooLarge,
    InvalidConfig,
    Timeout,
    MissingBaseline,
    Io,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::RaggedRows: return "RaggedRows";
    case ErrorKind::BadCharacter: return "BadCharacter";
    case ErrorKind::TooWide: return "TooWide";
    case ErrorKind::ColumnOutOfRange: return "ColumnOutOfRange";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::NoColumnLeft: return "NoColumnLeft";
    case ErrorKind::BadOrder: return "BadOrder";
    case ErrorKind::InvalidSpec: return "InvalidSpec";
    case ErrorKind::UniverseTooLarge: return "UniverseTooLarge";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::Timeout: return "Timeout";
    case ErrorKind::MissingBaseline: return "MissingBaseline";
    case ErrorKind::Io: return "Io";
    }
    return "Unknown";
}

/// Every failure raised by the library. `kind()` is the machine-readable part;
/// `what()` is "<Kind>: <detail>".
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& detail)
        : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace heavycol
