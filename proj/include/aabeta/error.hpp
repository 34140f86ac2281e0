#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace aabeta {

enum class ErrorKind {
    invalid_argument,
    not_invertible,
    non_residue,
    generation_failure,
    capacity_exceeded,
    codec_error,
    invalid_ciphertext,
    parameter_violation,
    inconsistent_key,
    factoring_failure,
    io_error,
    format_error,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries a kind so front ends can map it
/// to an exit status without string matching.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string_view what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + std::string(what)), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, std::string_view what) { throw Error(kind, what); }

inline void require(bool cond, ErrorKind kind, std::string_view what) {
    if (!cond) fail(kind, what);
}

}  // namespace aabeta
