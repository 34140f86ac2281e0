// Command-line front end: key generation, encryption, attacks, benchmarks and
// the Rabin baselines. Exit status: 0 ok, 2 bad input, 3 generation failure,
// 4 cryptographic failure, 5 I/O.
#include "aabeta/attacks.hpp"
#include "aabeta/bench.hpp"
#include "aabeta/cipher.hpp"
#include "aabeta/codec.hpp"
#include "aabeta/error.hpp"
#include "aabeta/keys.hpp"
#include "aabeta/numtheory.hpp"
#include "aabeta/rabin.hpp"
#include "aabeta/textio.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

using namespace aabeta;

namespace {

int exit_code(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::invalid_argument:
        case ErrorKind::capacity_exceeded:
        case ErrorKind::format_error: return 2;
        case ErrorKind::generation_failure: return 3;
        case ErrorKind::not_invertible:
        case ErrorKind::non_residue:
        case ErrorKind::codec_error:
        case ErrorKind::invalid_ciphertext:
        case ErrorKind::parameter_violation:
        case ErrorKind::inconsistent_key:
        case ErrorKind::factoring_failure: return 4;
        case ErrorKind::io_error: return 5;
    }
    return 1;
}

std::string slurp(const std::string& path) { return textio::read_file(path); }

void emit(const std::string& path, std::string_view text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        std::cout.flush();
    } else {
        textio::write_file(path, text);
    }
}

Bytes to_bytes(std::string_view s) { return Bytes(s.begin(), s.end()); }

std::string from_bytes(const Bytes& b) { return std::string(b.begin(), b.end()); }

// Byte strings as integers behind a 0x01 sentinel so leading zero bytes survive.
Integer bytes_to_integer(const Bytes& data) {
    Bytes framed{1};
    framed.insert(framed.end(), data.begin(), data.end());
    Integer r;
    mpz_import(r.get_mpz_t(), framed.size(), 1, 1, 1, 0, framed.data());
    return r;
}

Bytes integer_to_bytes(const Integer& m) {
    require(sgn(m) > 0, ErrorKind::codec_error, "message integer lacks its framing byte");
    Bytes out((mpz_sizeinbase(m.get_mpz_t(), 2) + 7) / 8);
    std::size_t count = 0;
    mpz_export(out.data(), &count, 1, 1, 1, 0, m.get_mpz_t());
    out.resize(count);
    require(!out.empty() && out.front() == 1, ErrorKind::codec_error, "message integer lacks its framing byte");
    out.erase(out.begin());
    return out;
}

Integer parse_t(const std::string& text, const PublicKey& pub, const Ciphertext& ct) {
    if (text == "auto") return attacks::choose_t(pub, ct);
    if (text.starts_with("2^")) {
        const Integer k = parse_integer(text.substr(2));
        require(sgn(k) >= 0 && k < 1000000, ErrorKind::invalid_argument, "--T exponent out of range");
        return pow2(k.get_ui());
    }
    const Integer t = parse_integer(text);
    require(t >= 1, ErrorKind::invalid_argument, "--T must be >= 1");
    return t;
}

attacks::KnownAnswer read_known(const std::string& path) {
    auto [u, v] = textio::read_known_answer(slurp(path));
    return {std::move(u), std::move(v)};
}

// ---- subcommands -------------------------------------------------------------

struct KeygenCmd {
    std::size_t n = 0;
    std::optional<std::uint64_t> seed;
    bool safe = false;
    std::string out_pub, out_priv;

    void attach(CLI::App& app) {
        auto* c = app.add_subcommand("keygen", "generate a key pair");
        c->add_option("--n", n, "prime size in bits (>= 8)")->required();
        c->add_option("--seed", seed, "deterministic seed");
        c->add_flag("--safe-primes", safe, "use safe primes");
        c->add_option("--out-pub", out_pub, "public key path")->required();
        c->add_option("--out-priv", out_priv, "private key path")->required();
        c->callback([this] { run(); });
    }

    void run() const {
        require(n >= 8, ErrorKind::invalid_argument, "--n must be >= 8");
        RandomSource rng = RandomSource::from(seed);
        const KeyPair kp = generate_keypair(n, rng, safe ? nt::PrimeKind::safe : nt::PrimeKind::plain);
        emit(out_pub, textio::write_public_key(kp.pub));
        emit(out_priv, textio::write_private_key(kp.priv));
    }
};

struct EncryptCmd {
    std::string pub, in, message, out, known_out;
    std::optional<std::uint64_t> seed;
    bool fixed = false;
    std::string k1, k2;

    void attach(CLI::App& app) {
        auto* c = app.add_subcommand("encrypt", "encrypt a payload file");
        c->add_option("--pub", pub, "public key path")->required();
        auto* in_opt = c->add_option("--in", in, "payload file");
        auto* msg_opt = c->add_option("--message", message, "encoded (n, m1, m2) file instead of a payload");
        in_opt->excludes(msg_opt);
        c->add_option("--out", out, "ciphertext path (default stdout)");
        c->add_option("--known-out", known_out, "write the (U, V) intermediates here");
        c->add_option("--seed", seed, "deterministic seed for the ephemerals");
        auto* gate = c->add_flag("--insecure-fixed-ephemerals", fixed, "allow --k1/--k2 (test vectors only)");
        c->add_option("--k1", k1, "fixed k1")->needs(gate);
        c->add_option("--k2", k2, "fixed k2")->needs(gate);
        c->callback([this] { run(); });
    }

    void run() const {
        require(!in.empty() || !message.empty(), ErrorKind::invalid_argument, "one of --in or --message is required");
        const PublicKey key = textio::read_public_key(slurp(pub));
        const EncodedMessage msg =
            message.empty() ? encode(to_bytes(slurp(in)), key.n) : textio::read_encoded(slurp(message));
        EphemeralPair eph;
        if (fixed) {
            require(!k1.empty() && !k2.empty(), ErrorKind::invalid_argument,
                    "--insecure-fixed-ephemerals needs both --k1 and --k2");
            eph = {parse_integer(k1), parse_integer(k2)};
        } else {
            RandomSource rng = RandomSource::from(seed);
            eph = sample_ephemerals(key.n, rng);
        }
        const EncryptionTrace t = encrypt_with_ephemerals(key, msg, eph);
        emit(out, textio::write_ciphertext(t.ct));
        if (!known_out.empty()) emit(known_out, textio::write_known_answer(t.u, t.v));
    }
};

struct DecryptCmd {
    std::string pub, priv, in, out, roots_out;
    bool raw = false;

    void attach(CLI::App& app) {
        auto* c = app.add_subcommand("decrypt", "decrypt a ciphertext file");
        c->add_option("--pub", pub, "public key path")->required();
        c->add_option("--priv", priv, "private key path")->required();
        c->add_option("--in", in, "ciphertext path")->required();
        c->add_option("--out", out, "payload path (default stdout)");
        c->add_flag("--raw", raw, "write the (n, m1, m2) pair instead of the payload");
        c->add_option("--roots-out", roots_out, "write the four square roots here");
        c->callback([this] { run(); });
    }

    void run() const {
        const KeyPair kp{textio::read_public_key(slurp(pub)), textio::read_private_key(slurp(priv))};
        const Ciphertext ct = textio::read_ciphertext(slurp(in));
        if (!roots_out.empty()) emit(roots_out, textio::write_roots(decrypt_trace(kp, ct).roots));
        const EncodedMessage msg = decrypt(kp, ct);
        emit(out, raw ? textio::write_encoded(msg) : from_bytes(decode(msg)));
    }
};

struct ValidateCmd {
    std::string pub, priv;
    bool relaxed = false;

    void attach(CLI::App& app) {
        auto* c = app.add_subcommand("validate", "check a key pair");
        c->add_option("--pub", pub, "public key path")->required();
        c->add_option("--priv", priv, "private key path")->required();
        c->add_flag("--relaxed", relaxed, "algebraic consistency only");
        c->callback([this] { run(); });
    }

    void run() const {
        const KeyPair kp{textio::read_public_key(slurp(pub)), textio::read_private_key(slurp(priv))};
        const ValidationReport report = validate_keypair(kp, relaxed ? Validation::relaxed : Validation::strict);
        std::cout << (relaxed ? "mode: relaxed\n" : "mode: strict\n");
        for (const auto& v : report.violations) std::cout << "violation: " << v << "\n";
        std::cout << "valid: " << (report.valid() ? "yes" : "no") << "\n";
        require(report.valid(), ErrorKind::inconsistent_key, std::to_string(report.violations.size()) + " violation(s)");
    }
};

struct AttackCmd {
    std::string kind, pub, ct, report, known, roots, priv, t = "auto", budget = "1000000";
    bool csv = false;

    void attach(CLI::App& app) {
        auto* c = app.add_subcommand("attack", "run one cryptanalysis experiment");
        c->add_option("--kind", kind, "attack kind")
            ->required()
            ->check(CLI::IsMember({"congruence", "coppersmith", "euclid", "lattice", "factor-from-roots"}));
        c->add_option("--pub", pub, "public key path")->required();
        c->add_option("--ct", ct, "ciphertext path");
        c->add_option("--budget", budget, "congruence: number of j values to scan");
        c->add_option("--T", t, "lattice scaling: auto, 2^k or an integer");
        c->add_option("--known", known, "known-answer (U, V) file");
        c->add_option("--roots", roots, "roots file for factor-from-roots");
        c->add_option("--priv", priv, "coppersmith: private key supplying d");
        c->add_option("--report", report, "report path (default stdout)");
        c->add_flag("--csv", csv, "CSV header and row instead of key: value text");
        c->callback([this] { run(); });
    }

    Ciphertext ciphertext() const {
        require(!ct.empty(), ErrorKind::invalid_argument, "--ct is required for --kind " + kind);
        return textio::read_ciphertext(slurp(ct));
    }

    void run() const {
        const PublicKey key = textio::read_public_key(slurp(pub));
        attacks::AttackReport r;
        if (kind == "congruence") {
            const Integer b = parse_integer(budget);
            require(sgn(b) >= 0, ErrorKind::invalid_argument, "--budget must be >= 0");
            r = attacks::congruence_bruteforce(key, ciphertext(), b);
        } else if (kind == "coppersmith") {
            std::optional<Integer> d;
            if (!priv.empty()) d = textio::read_private_key(slurp(priv)).d;
            r = attacks::coppersmith_feasibility(key, d);
        } else if (kind == "euclid") {
            require(!known.empty(), ErrorKind::invalid_argument, "--kind euclid needs --known");
            r = attacks::euclid_division_check(key, ciphertext(), read_known(known));
        } else if (kind == "lattice") {
            const Ciphertext c = ciphertext();
            std::optional<attacks::KnownAnswer> truth;
            if (!known.empty()) truth = read_known(known);
            r = attacks::lattice_attack(key, c, parse_t(t, key, c), truth);
        } else {
            require(!roots.empty(), ErrorKind::invalid_argument, "--kind factor-from-roots needs --roots");
            const auto [p, q] = attacks::factor_from_roots(key.e_a1, textio::read_roots(slurp(roots)));
            r.attack = "factor-from-roots";
            r.n = key.n;
            r.verdict = attacks::Verdict::recovered;
            r.recovered = {{"p", to_decimal(p)}, {"q", to_decimal(q)}};
        }
        emit(report, csv ? attacks::AttackReport::csv_header() + "\n" + r.to_csv_row() + "\n" : r.to_text());
    }
};

struct BenchCmd {
    std::vector<std::string> schemes{"aabeta", "rabin", "rsa"};
    std::vector<std::size_t> n_list{64, 128, 256, 512};
    std::size_t reps = 5;
    std::uint64_t seed = 1;
    double min_batch_ms = 2.0;
    std::string out;

    void attach(CLI::App& app) {
        auto* c = app.add_subcommand("bench", "time keygen, encryption and decryption");
        c->add_option("--schemes", schemes, "aabeta, rabin, rsa")->delimiter(',');
        c->add_option("--n", n_list, "bit sizes")->delimiter(',');
        c->add_option("--reps", reps, "timed repetitions per cell (>= 5)");
        c->add_option("--seed", seed, "input seed");
        c->add_option("--min-batch-ms", min_batch_ms, "minimum wall time per timed batch");
        c->add_option("--out", out, "CSV path (default stdout)");
        c->callback([this] { run(); });
    }

    void run() const {
        std::vector<bench::Scheme> parsed;
        for (const auto& s : schemes) parsed.push_back(bench::parse_scheme(s));
        bench::BenchOptions opt;
        opt.reps = reps;
        opt.seed = seed;
        opt.min_batch_ms = min_batch_ms;
        emit(out, bench::emit_csv(bench::run_bench(parsed, n_list, opt)));
    }
};

struct RabinCmd {
    std::size_t n = 0;
    std::optional<std::uint64_t> seed;
    std::string pub, priv, in, out, scheme = "redundant";
    std::size_t l = 8;
    std::size_t trials = 20000;

    void attach(CLI::App& app) {
        auto* r = app.add_subcommand("rabin", "Rabin baseline schemes");
        r->require_subcommand(1);

        auto* kg = r->add_subcommand("keygen", "generate a Rabin key pair");
        kg->add_option("--n", n, "prime size in bits (>= 4)")->required();
        kg->add_option("--seed", seed, "deterministic seed");
        kg->add_option("--out-pub", pub, "public key path")->required();
        kg->add_option("--out-priv", priv, "private key path")->required();
        kg->callback([this] { keygen(); });

        const auto scheme_check = CLI::IsMember({"redundant", "extrabits"});
        auto* enc = r->add_subcommand("encrypt", "encrypt a payload file");
        enc->add_option("--pub", pub, "public key path")->required();
        enc->add_option("--in", in, "payload path")->required();
        enc->add_option("--out", out, "ciphertext path (default stdout)");
        enc->add_option("--scheme", scheme, "redundant or extrabits")->check(scheme_check);
        enc->add_option("--l", l, "redundancy bits");
        enc->callback([this] { encrypt(); });

        auto* dec = r->add_subcommand("decrypt", "decrypt a ciphertext file");
        dec->add_option("--priv", priv, "private key path")->required();
        dec->add_option("--in", in, "ciphertext path")->required();
        dec->add_option("--out", out, "payload path (default stdout)");
        dec->add_option("--scheme", scheme, "redundant or extrabits")->check(scheme_check);
        dec->add_option("--l", l, "redundancy bits");
        dec->callback([this] { decrypt(); });

        auto* amb = r->add_subcommand("ambiguity", "measure how often redundancy leaves several roots");
        amb->add_option("--n", n, "prime size in bits")->default_val(16);
        amb->add_option("--l", l, "redundancy bits");
        amb->add_option("--trials", trials, "number of fresh instances");
        amb->add_option("--seed", seed, "deterministic seed");
        amb->callback([this] { ambiguity(); });
    }

    void keygen() const {
        RandomSource rng = RandomSource::from(seed);
        const rabin::KeyPair kp = rabin::keygen(n, rng);
        emit(pub, textio::write_rabin_public(kp));
        emit(priv, textio::write_rabin_private(kp));
    }

    void encrypt() const {
        const Integer modulus = textio::read_rabin_public(slurp(pub));
        const Integer m = bytes_to_integer(to_bytes(slurp(in)));
        if (scheme == "redundant") {
            emit(out, to_decimal(rabin::encrypt_redundant(modulus, m, l)) + "\n");
            return;
        }
        require(m < modulus, ErrorKind::invalid_argument, "payload does not fit below N");
        const auto ct = rabin::encrypt_extrabits(modulus, m);
        const Integer parity = ct.parity ? 1 : 0, jac = ct.jacobi_positive ? 1 : 0;
        emit(out, textio::format_fields({{"c", &ct.c}, {"parity", &parity}, {"jacobi", &jac}}));
    }

    void decrypt() const {
        const rabin::KeyPair kp = textio::read_rabin_private(slurp(priv));
        const std::string text = slurp(in);
        Integer m;
        if (scheme == "redundant") {
            const auto result = rabin::decrypt_redundant(kp, parse_integer(text), l);
            if (const auto* amb = std::get_if<rabin::Ambiguity>(&result))
                fail(ErrorKind::invalid_ciphertext,
                     std::to_string(amb->matching_roots.size()) + " roots carry the redundancy; payload is ambiguous");
            m = std::get<Integer>(result);
        } else {
            auto f = textio::parse_fields(text, {"c", "parity", "jacobi"});
            m = rabin::decrypt_extrabits(kp, {f["c"], f["parity"] != 0, f["jacobi"] != 0});
        }
        emit(out, from_bytes(integer_to_bytes(m)));
    }

    void ambiguity() const {
        RandomSource rng = RandomSource::from(seed);
        const auto stats = rabin::measure_ambiguity(n, l, trials, rng);
        std::cout << "n: " << n << "\nl: " << l << "\ntrials: " << stats.trials << "\nambiguous: " << stats.ambiguous
                  << "\nfailures: " << stats.failures << "\nrate: " << stats.rate()
                  << "\nreference_2^(1-l): " << std::ldexp(1.0, 1 - static_cast<int>(l)) << "\n";
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"AA-beta cryptosystem toolkit"};
    app.require_subcommand(1);

    KeygenCmd keygen;
    EncryptCmd encrypt;
    DecryptCmd decrypt;
    ValidateCmd validate;
    AttackCmd attack;
    BenchCmd bench;
    RabinCmd rabin;
    keygen.attach(app);
    encrypt.attach(app);
    decrypt.attach(app);
    validate.attach(app);
    attack.attach(app);
    bench.attach(app);
    rabin.attach(app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
