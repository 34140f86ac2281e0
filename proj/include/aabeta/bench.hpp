#pragma once

#include "aabeta/integer.hpp"
#include "aabeta/random.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace aabeta::bench {

// Textbook RSA reference: two n-bit primes, e = 65537, decryption by a single
// full-size exponentiation (no CRT) so both directions are comparable.
struct RsaKeyPair {
    std::size_t n = 0;
    Integer modulus;
    Integer e;
    Integer d;
};

RsaKeyPair rsa_keygen(std::size_t n, RandomSource& rng);
Integer rsa_encrypt(const RsaKeyPair& key, const Integer& m);
Integer rsa_decrypt(const RsaKeyPair& key, const Integer& c);

enum class Scheme { aabeta, rabin, rsa };

std::string_view to_string(Scheme s);
Scheme parse_scheme(std::string_view text);

struct BenchRow {
    std::string scheme;
    std::size_t n = 0;
    double keygen_ms = 0;
    double encrypt_ms = 0;
    double decrypt_ms = 0;
    std::size_t reps = 0;
    std::size_t payload_bytes = 0;
    // median absolute deviation of the per-rep samples; not part of the CSV
    double keygen_mad_ms = 0;
    double encrypt_mad_ms = 0;
    double decrypt_mad_ms = 0;
};

struct BenchOptions {
    std::size_t reps = 5;
    std::uint64_t seed = 1;
    double min_batch_ms = 2.0;  // encrypt/decrypt batches run at least this long per rep
};

/// Times every (scheme, n) pair. Rows come back ordered by scheme name, then n.
/// Single-threaded by contract: a second concurrent call throws.
std::vector<BenchRow> run_bench(std::span<const Scheme> schemes, std::span<const std::size_t> n_list,
                                const BenchOptions& options);

/// Per-operation AA_beta encryption time in ms (median over reps) for one n.
double time_aabeta_encrypt(std::size_t n, std::size_t reps, std::uint64_t seed, double min_batch_ms = 2.0);

std::string csv_header();  // scheme,n,keygen_ms,encrypt_ms,decrypt_ms,reps,payload_bytes
std::string emit_csv(std::span<const BenchRow> rows);
std::vector<BenchRow> parse_csv(std::string_view text);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(std::span<const double> x, std::span<const double> y);

}  // namespace aabeta::bench
