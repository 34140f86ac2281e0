#include "aabeta/textio.hpp"
#include "aabeta/error.hpp"

#include <fstream>
#include <iterator>
#include <sstream>

namespace aabeta::textio {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::size_t to_size(const Integer& x, std::string_view field) {
    require(sgn(x) >= 0 && mpz_fits_ulong_p(x.get_mpz_t()), ErrorKind::format_error,
            "field '" + std::string(field) + "' out of range");
    return x.get_ui();
}

}  // namespace

std::map<std::string, Integer> parse_fields(std::string_view text, std::initializer_list<std::string_view> fields) {
    std::map<std::string, Integer> out;
    std::istringstream in{std::string(text)};
    std::string raw;
    while (std::getline(in, raw)) {
        const std::string_view line = trim(raw);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        require(eq != std::string_view::npos, ErrorKind::format_error, "expected 'name = value': " + raw);
        const std::string name(trim(line.substr(0, eq)));
        bool known = false;
        for (auto f : fields) known = known || f == name;
        require(known, ErrorKind::format_error, "unknown field '" + name + "'");
        require(!out.contains(name), ErrorKind::format_error, "duplicate field '" + name + "'");
        out.emplace(name, parse_integer(line.substr(eq + 1)));
    }
    for (auto f : fields)
        require(out.contains(std::string(f)), ErrorKind::format_error, "missing field '" + std::string(f) + "'");
    return out;
}

std::string format_fields(std::initializer_list<std::pair<std::string_view, const Integer*>> fields) {
    std::string out;
    for (const auto& [name, value] : fields) out += std::string(name) + " = " + to_decimal(*value) + "\n";
    return out;
}

std::string write_public_key(const PublicKey& pub) {
    const Integer n = static_cast<unsigned long>(pub.n);
    return format_fields({{"n", &n}, {"eA1", &pub.e_a1}, {"eA2", &pub.e_a2}});
}

PublicKey read_public_key(std::string_view text) {
    auto f = parse_fields(text, {"n", "eA1", "eA2"});
    return PublicKey{to_size(f["n"], "n"), f["eA1"], f["eA2"]};
}

std::string write_private_key(const PrivateKey& priv) {
    const Integer n = static_cast<unsigned long>(priv.n);
    return format_fields({{"n", &n}, {"p", &priv.p}, {"q", &priv.q}, {"d", &priv.d}});
}

PrivateKey read_private_key(std::string_view text) {
    auto f = parse_fields(text, {"n", "p", "q", "d"});
    return PrivateKey{to_size(f["n"], "n"), f["p"], f["q"], f["d"]};
}

std::string write_ciphertext(const Ciphertext& ct) { return to_decimal(ct.c) + "\n"; }

Ciphertext read_ciphertext(std::string_view text) {
    Integer c = parse_integer(text);
    require(sgn(c) > 0, ErrorKind::format_error, "ciphertext must be positive");
    return Ciphertext{std::move(c)};
}

std::string write_encoded(const EncodedMessage& msg) {
    const Integer n = static_cast<unsigned long>(msg.n);
    return format_fields({{"n", &n}, {"m1", &msg.m1}, {"m2", &msg.m2}});
}

EncodedMessage read_encoded(std::string_view text) {
    auto f = parse_fields(text, {"n", "m1", "m2"});
    return EncodedMessage{f["m1"], f["m2"], to_size(f["n"], "n")};
}

std::string write_known_answer(const Integer& u, const Integer& v) { return format_fields({{"U", &u}, {"V", &v}}); }

std::pair<Integer, Integer> read_known_answer(std::string_view text) {
    auto f = parse_fields(text, {"U", "V"});
    return {f["U"], f["V"]};
}

std::string write_roots(const std::array<Integer, 4>& r) {
    return format_fields({{"V1", &r[0]}, {"V2", &r[1]}, {"V3", &r[2]}, {"V4", &r[3]}});
}

std::array<Integer, 4> read_roots(std::string_view text) {
    auto f = parse_fields(text, {"V1", "V2", "V3", "V4"});
    return {f["V1"], f["V2"], f["V3"], f["V4"]};
}

std::string write_rabin_public(const rabin::KeyPair& kp) {
    const Integer n = static_cast<unsigned long>(kp.n);
    const Integer modulus = kp.modulus();
    return format_fields({{"n", &n}, {"N", &modulus}});
}

Integer read_rabin_public(std::string_view text) { return parse_fields(text, {"n", "N"})["N"]; }

std::string write_rabin_private(const rabin::KeyPair& kp) {
    const Integer n = static_cast<unsigned long>(kp.n);
    return format_fields({{"n", &n}, {"p", &kp.p}, {"q", &kp.q}});
}

rabin::KeyPair read_rabin_private(std::string_view text) {
    auto f = parse_fields(text, {"n", "p", "q"});
    return rabin::KeyPair{to_size(f["n"], "n"), f["p"], f["q"]};
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    require(in.good(), ErrorKind::io_error, "cannot open " + path.string());
    std::string data{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    require(!in.bad(), ErrorKind::io_error, "read failed for " + path.string());
    return data;
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    require(out.good(), ErrorKind::io_error, "cannot open " + path.string() + " for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    require(out.good(), ErrorKind::io_error, "write failed for " + path.string());
}

}  // namespace aabeta::textio
