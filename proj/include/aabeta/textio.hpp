#pragma once

#include "aabeta/cipher.hpp"
#include "aabeta/codec.hpp"
#include "aabeta/keys.hpp"
#include "aabeta/rabin.hpp"

#include <array>
#include <filesystem>
#include <initializer_list>
#include <map>
#include <string>
#include <string_view>

namespace aabeta::textio {

/// `name = value` lines. Every field in `fields` must appear exactly once and
/// nothing else may. Blank lines are ignored.
std::map<std::string, Integer> parse_fields(std::string_view text, std::initializer_list<std::string_view> fields);

std::string format_fields(std::initializer_list<std::pair<std::string_view, const Integer*>> fields);

std::string write_public_key(const PublicKey& pub);  // n, eA1, eA2
PublicKey read_public_key(std::string_view text);

std::string write_private_key(const PrivateKey& priv);  // n, p, q, d
PrivateKey read_private_key(std::string_view text);

/// Decimal integer plus newline; reading accepts 0x hex and trailing whitespace.
std::string write_ciphertext(const Ciphertext& ct);
Ciphertext read_ciphertext(std::string_view text);

std::string write_encoded(const EncodedMessage& msg);  // n, m1, m2
EncodedMessage read_encoded(std::string_view text);

std::string write_known_answer(const Integer& u, const Integer& v);  // U, V
std::pair<Integer, Integer> read_known_answer(std::string_view text);

std::string write_roots(const std::array<Integer, 4>& roots);  // V1..V4
std::array<Integer, 4> read_roots(std::string_view text);

std::string write_rabin_public(const rabin::KeyPair& kp);  // n, N
Integer read_rabin_public(std::string_view text);
std::string write_rabin_private(const rabin::KeyPair& kp);  // n, p, q
rabin::KeyPair read_rabin_private(std::string_view text);

/// Whole-file helpers; failures throw Error(io_error).
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace aabeta::textio
