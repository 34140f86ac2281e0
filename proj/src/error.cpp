#include "aabeta/error.hpp"
#include "aabeta/integer.hpp"

#include <cctype>

namespace aabeta {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::invalid_argument: return "invalid-argument";
        case ErrorKind::not_invertible: return "not-invertible";
        case ErrorKind::non_residue: return "non-residue";
        case ErrorKind::generation_failure: return "generation-failure";
        case ErrorKind::capacity_exceeded: return "capacity-exceeded";
        case ErrorKind::codec_error: return "codec-error";
        case ErrorKind::invalid_ciphertext: return "invalid-ciphertext";
        case ErrorKind::parameter_violation: return "parameter-violation";
        case ErrorKind::inconsistent_key: return "inconsistent-key";
        case ErrorKind::factoring_failure: return "factoring-failure";
        case ErrorKind::io_error: return "io-error";
        case ErrorKind::format_error: return "format-error";
    }
    return "unknown";
}

Integer parse_integer(std::string_view text) {
    auto is_space = [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; };
    while (!text.empty() && is_space(text.front())) text.remove_prefix(1);
    while (!text.empty() && is_space(text.back())) text.remove_suffix(1);

    bool negative = false;
    if (!text.empty() && text.front() == '-') {
        negative = true;
        text.remove_prefix(1);
    }
    int base = 10;
    if (text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) {
        base = 16;
        text.remove_prefix(2);
    }
    if (text.empty()) fail(ErrorKind::format_error, "empty integer");
    for (char c : text) {
        bool ok = base == 10 ? std::isdigit(static_cast<unsigned char>(c)) != 0
                             : std::isxdigit(static_cast<unsigned char>(c)) != 0;
        if (!ok) fail(ErrorKind::format_error, "malformed integer '" + std::string(text) + "'");
    }
    Integer value(std::string(text), base);
    return negative ? Integer(-value) : value;
}

}  // namespace aabeta
