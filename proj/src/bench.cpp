#include "aabeta/bench.hpp"
#include "aabeta/cipher.hpp"
#include "aabeta/codec.hpp"
#include "aabeta/error.hpp"
#include "aabeta/keys.hpp"
#include "aabeta/numtheory.hpp"
#include "aabeta/rabin.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>

namespace aabeta::bench {

namespace {

using Clock = std::chrono::steady_clock;

std::atomic_flag g_running = ATOMIC_FLAG_INIT;

struct RunGuard {
    RunGuard() {
        require(!g_running.test_and_set(), ErrorKind::invalid_argument, "benchmarks must not run concurrently");
    }
    ~RunGuard() { g_running.clear(); }
    RunGuard(const RunGuard&) = delete;
    RunGuard& operator=(const RunGuard&) = delete;
};

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : (v[m - 1] + v[m]) / 2;
}

struct Summary {
    double median_ms;
    double mad_ms;
};

Summary summarize(const std::vector<double>& samples) {
    const double med = median(samples);
    std::vector<double> dev;
    for (double s : samples) dev.push_back(std::fabs(s - med));
    return {med, median(dev)};
}

double elapsed_ms(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// Calibrates a batch size so one batch lasts min_batch_ms, then returns the
// per-operation time of each of `reps` batches.
std::vector<double> time_per_op(const std::function<void()>& op, std::size_t reps, double min_batch_ms) {
    std::size_t batch = 1;
    for (;;) {
        const auto start = Clock::now();
        for (std::size_t i = 0; i < batch; ++i) op();
        if (elapsed_ms(start) >= min_batch_ms || batch >= (1u << 24)) break;
        batch *= 2;
    }
    std::vector<double> samples;
    for (std::size_t r = 0; r < reps; ++r) {
        const auto start = Clock::now();
        for (std::size_t i = 0; i < batch; ++i) op();
        samples.push_back(elapsed_ms(start) / static_cast<double>(batch));
    }
    return samples;
}

BenchRow make_row(std::string scheme, std::size_t n, std::size_t reps, std::size_t payload_bytes) {
    BenchRow row;
    row.scheme = std::move(scheme);
    row.n = n;
    row.reps = reps;
    row.payload_bytes = payload_bytes;
    return row;
}

Bytes random_payload(std::size_t len, RandomSource& rng) {
    Bytes out(len);
    for (auto& b : out) b = static_cast<std::uint8_t>(rng.next_u64());
    return out;
}

Integer random_prime_exact_bits(std::size_t bits, RandomSource& rng) {
    for (;;) {
        // top two bits set so the product of two such primes has exactly 2 bits bits
        Integer cand = rng.bits(bits - 2) | pow2(bits - 1) | pow2(bits - 2) | 1;
        if (nt::is_probable_prime(cand)) return cand;
    }
}

BenchRow bench_aabeta(std::size_t n, const BenchOptions& opt) {
    RandomSource rng(opt.seed ^ (n * 0x9e3779b97f4a7c15ULL));
    BenchRow row = make_row("aabeta", n, opt.reps, capacity_bytes(n));

    std::vector<double> kg;
    KeyPair kp;
    for (std::size_t r = 0; r < opt.reps; ++r) {
        const auto start = Clock::now();
        kp = generate_keypair(n, rng);
        kg.push_back(elapsed_ms(start));
    }
    const EncodedMessage msg = encode(random_payload(row.payload_bytes, rng), n);
    Ciphertext ct;
    const auto enc = summarize(time_per_op([&] { encrypt(ct, kp.pub, msg, rng); }, opt.reps, opt.min_batch_ms));
    Bytes back;
    const auto dec = summarize(time_per_op([&] { back = decode(decrypt(kp, ct)); }, opt.reps, opt.min_batch_ms));
    require(back == decode(msg), ErrorKind::parameter_violation, "benchmark round trip failed");

    const auto k = summarize(kg);
    row.keygen_ms = k.median_ms, row.keygen_mad_ms = k.mad_ms;
    row.encrypt_ms = enc.median_ms, row.encrypt_mad_ms = enc.mad_ms;
    row.decrypt_ms = dec.median_ms, row.decrypt_mad_ms = dec.mad_ms;
    return row;
}

BenchRow bench_rsa(std::size_t n, const BenchOptions& opt) {
    RandomSource rng(opt.seed ^ (n * 0xc2b2ae3d27d4eb4fULL));
    BenchRow row = make_row("rsa", n, opt.reps, (2 * n - 1) / 8);

    std::vector<double> kg;
    RsaKeyPair key;
    for (std::size_t r = 0; r < opt.reps; ++r) {
        const auto start = Clock::now();
        key = rsa_keygen(n, rng);
        kg.push_back(elapsed_ms(start));
    }
    const Integer m = rng.bits(8 * row.payload_bytes);
    Integer c, back;
    const auto enc = summarize(time_per_op([&] { c = rsa_encrypt(key, m); }, opt.reps, opt.min_batch_ms));
    const auto dec = summarize(time_per_op([&] { back = rsa_decrypt(key, c); }, opt.reps, opt.min_batch_ms));
    require(back == m, ErrorKind::parameter_violation, "RSA benchmark round trip failed");

    const auto k = summarize(kg);
    row.keygen_ms = k.median_ms, row.keygen_mad_ms = k.mad_ms;
    row.encrypt_ms = enc.median_ms, row.encrypt_mad_ms = enc.mad_ms;
    row.decrypt_ms = dec.median_ms, row.decrypt_mad_ms = dec.mad_ms;
    return row;
}

BenchRow bench_rabin(std::size_t n, const BenchOptions& opt) {
    RandomSource rng(opt.seed ^ (n * 0x165667b19e3779f9ULL));
    BenchRow row = make_row("rabin", n, opt.reps, (2 * n) / 8);

    std::vector<double> kg;
    rabin::KeyPair kp;
    for (std::size_t r = 0; r < opt.reps; ++r) {
        const auto start = Clock::now();
        kp = rabin::keygen(n, rng);
        kg.push_back(elapsed_ms(start));
    }
    const Integer modulus = kp.modulus();
    Integer m;
    do {
        m = rng.bits(8 * row.payload_bytes) % modulus;
    } while (sgn(m) == 0 || [&] {
        Integer g;
        mpz_gcd(g.get_mpz_t(), m.get_mpz_t(), modulus.get_mpz_t());
        return g != 1;
    }());
    rabin::ExtraBitsCiphertext ct;
    Integer back;
    const auto enc =
        summarize(time_per_op([&] { ct = rabin::encrypt_extrabits(modulus, m); }, opt.reps, opt.min_batch_ms));
    const auto dec =
        summarize(time_per_op([&] { back = rabin::decrypt_extrabits(kp, ct); }, opt.reps, opt.min_batch_ms));
    require(back == m, ErrorKind::parameter_violation, "Rabin benchmark round trip failed");

    const auto k = summarize(kg);
    row.keygen_ms = k.median_ms, row.keygen_mad_ms = k.mad_ms;
    row.encrypt_ms = enc.median_ms, row.encrypt_mad_ms = enc.mad_ms;
    row.decrypt_ms = dec.median_ms, row.decrypt_mad_ms = dec.mad_ms;
    return row;
}

std::string fmt_ms(double x) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6f", x);
    return buf;
}

}  // namespace

RsaKeyPair rsa_keygen(std::size_t n, RandomSource& rng) {
    require(n >= 8, ErrorKind::invalid_argument, "RSA prime size must be >= 8 bits");
    const Integer e = 65537;
    for (;;) {
        const Integer p = random_prime_exact_bits(n, rng);
        const Integer q = random_prime_exact_bits(n, rng);
        if (p == q) continue;
        const Integer phi = (p - 1) * (q - 1);
        Integer g;
        mpz_gcd(g.get_mpz_t(), e.get_mpz_t(), phi.get_mpz_t());
        if (g != 1) continue;
        return RsaKeyPair{n, p * q, e, nt::mod_inv(e, phi)};
    }
}

Integer rsa_encrypt(const RsaKeyPair& key, const Integer& m) {
    require(sgn(m) >= 0 && m < key.modulus, ErrorKind::invalid_argument, "RSA message must lie in [0, N)");
    return nt::mod_exp(m, key.e, key.modulus);
}

Integer rsa_decrypt(const RsaKeyPair& key, const Integer& c) {
    require(sgn(c) >= 0 && c < key.modulus, ErrorKind::invalid_argument, "RSA ciphertext must lie in [0, N)");
    return nt::mod_exp(c, key.d, key.modulus);
}

std::string_view to_string(Scheme s) {
    switch (s) {
        case Scheme::aabeta: return "aabeta";
        case Scheme::rabin: return "rabin";
        case Scheme::rsa: return "rsa";
    }
    return "aabeta";
}

Scheme parse_scheme(std::string_view text) {
    if (text == "aabeta") return Scheme::aabeta;
    if (text == "rabin") return Scheme::rabin;
    if (text == "rsa") return Scheme::rsa;
    fail(ErrorKind::invalid_argument, "unknown scheme '" + std::string(text) + "'");
}

std::vector<BenchRow> run_bench(std::span<const Scheme> schemes, std::span<const std::size_t> n_list,
                                const BenchOptions& options) {
    require(options.reps >= 5, ErrorKind::invalid_argument, "benchmarks need at least 5 reps");
    RunGuard guard;
    std::vector<Scheme> ordered(schemes.begin(), schemes.end());
    std::sort(ordered.begin(), ordered.end(), [](Scheme a, Scheme b) { return to_string(a) < to_string(b); });
    ordered.erase(std::unique(ordered.begin(), ordered.end()), ordered.end());
    std::vector<std::size_t> sizes(n_list.begin(), n_list.end());
    std::sort(sizes.begin(), sizes.end());
    sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());

    std::vector<BenchRow> rows;
    for (Scheme s : ordered) {
        for (std::size_t n : sizes) {
            switch (s) {
                case Scheme::aabeta: rows.push_back(bench_aabeta(n, options)); break;
                case Scheme::rabin: rows.push_back(bench_rabin(n, options)); break;
                case Scheme::rsa: rows.push_back(bench_rsa(n, options)); break;
            }
        }
    }
    return rows;
}

double time_aabeta_encrypt(std::size_t n, std::size_t reps, std::uint64_t seed, double min_batch_ms) {
    RunGuard guard;
    RandomSource rng(seed);
    const KeyPair kp = generate_keypair(n, rng);
    const EncodedMessage msg = encode(random_payload(capacity_bytes(n), rng), n);
    Ciphertext ct;
    return median(time_per_op([&] { encrypt(ct, kp.pub, msg, rng); }, reps, min_batch_ms));
}

std::string csv_header() { return "scheme,n,keygen_ms,encrypt_ms,decrypt_ms,reps,payload_bytes"; }

std::string emit_csv(std::span<const BenchRow> rows) {
    std::vector<const BenchRow*> ordered;
    for (const auto& r : rows) ordered.push_back(&r);
    std::stable_sort(ordered.begin(), ordered.end(), [](const BenchRow* a, const BenchRow* b) {
        return a->scheme != b->scheme ? a->scheme < b->scheme : a->n < b->n;
    });
    std::string out = csv_header() + "\n";
    for (const BenchRow* r : ordered) {
        out += r->scheme + "," + std::to_string(r->n) + "," + fmt_ms(r->keygen_ms) + "," + fmt_ms(r->encrypt_ms) +
               "," + fmt_ms(r->decrypt_ms) + "," + std::to_string(r->reps) + "," + std::to_string(r->payload_bytes) +
               "\n";
    }
    return out;
}

std::vector<BenchRow> parse_csv(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    require(std::getline(in, line) && line == csv_header(), ErrorKind::format_error, "missing benchmark CSV header");
    std::vector<BenchRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::istringstream ls(line);
        for (std::string cell; std::getline(ls, cell, ',');) cells.push_back(cell);
        require(cells.size() == 7, ErrorKind::format_error, "benchmark row needs 7 columns: " + line);
        try {
            BenchRow r;
            r.scheme = cells[0];
            r.n = std::stoul(cells[1]);
            r.keygen_ms = std::stod(cells[2]);
            r.encrypt_ms = std::stod(cells[3]);
            r.decrypt_ms = std::stod(cells[4]);
            r.reps = std::stoul(cells[5]);
            r.payload_bytes = std::stoul(cells[6]);
            rows.push_back(std::move(r));
        } catch (const std::logic_error&) {
            fail(ErrorKind::format_error, "malformed benchmark row: " + line);
        }
    }
    return rows;
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
    require(x.size() == y.size() && x.size() >= 2, ErrorKind::invalid_argument, "slope needs >= 2 paired points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double k = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        require(x[i] > 0 && y[i] > 0, ErrorKind::invalid_argument, "log-log fit needs positive values");
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx, sy += ly, sxx += lx * lx, sxy += lx * ly;
    }
    return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

}  // namespace aabeta::bench
