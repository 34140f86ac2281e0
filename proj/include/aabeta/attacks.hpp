#pragma once

#include "aabeta/cipher.hpp"
#include "aabeta/integer.hpp"
#include "aabeta/keys.hpp"
#include "aabeta/lll.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace aabeta::attacks {

enum class Verdict { recovered, infeasible_by_bounds, not_recovered };

std::string_view to_string(Verdict v);
Verdict parse_verdict(std::string_view text);

/// Outcome of one cryptanalysis run. Entries keep insertion order so the
/// text form is stable.
struct AttackReport {
    using Entries = std::vector<std::pair<std::string, std::string>>;

    std::string attack;
    std::size_t n = 0;
    Verdict verdict = Verdict::not_recovered;
    Entries parameters;
    Entries recovered;
    Entries diagnostics;
    double elapsed_ms = 0.0;  // CSV only; the text form stays deterministic

    std::optional<std::string> diagnostic(std::string_view key) const;
    std::optional<std::string> recovered_value(std::string_view key) const;

    /// `key: value` lines: attack, n, verdict, then param.*, recovered.*, diag.*
    std::string to_text() const;
    static AttackReport from_text(std::string_view text);

    static std::string csv_header();  // attack,n,verdict,budget,elapsed_ms,diagnostics
    std::string to_csv_row() const;

    friend bool operator==(const AttackReport& a, const AttackReport& b) {
        return a.attack == b.attack && a.n == b.n && a.verdict == b.verdict && a.parameters == b.parameters &&
               a.recovered == b.recovered && a.diagnostics == b.diagnostics;
    }
};

/// Ground truth supplied by a known-answer harness.
struct KnownAnswer {
    Integer u;
    Integer v;
};

// ---- congruence attack ------------------------------------------------------

/// U = a + e_A2 j and V^2 = b - e_A1 j share one integer j.
struct CongruenceParams {
    Integer a;         // C e_A1^{-1} mod e_A2
    Integer b;         // (C - e_A1 a) / e_A2, exact
    Integer window_u;  // 2^{n-6}
    Integer window_v;  // 3 * 2^{n-7}
};

CongruenceParams congruence_params(const PublicKey& pub, const Ciphertext& ct);

/// Closed integer range of j admitted by both the U interval and the V^2 interval.
struct JRange {
    Integer lo;
    Integer hi;

    Integer count() const { return hi < lo ? Integer(0) : Integer(hi - lo + 1); }
};

JRange congruence_j_range(const PublicKey& pub, const Ciphertext& ct, const CongruenceParams& params);

AttackReport congruence_bruteforce(const PublicKey& pub, const Ciphertext& ct, const Integer& j_budget);

// ---- Coppersmith bounds -----------------------------------------------------

/// Evaluates both small-root bounds exactly. `d` is optional known-answer
/// input; without it the d-check evaluates the key-generation floor.
AttackReport coppersmith_feasibility(const PublicKey& pub, const std::optional<Integer>& d = std::nullopt);

// ---- Euclidean division -----------------------------------------------------

AttackReport euclid_division_check(const PublicKey& pub, const Ciphertext& ct, const KnownAnswer& truth);

// ---- lattice attack ---------------------------------------------------------

/// Rows (1, 0, e_A1 T), (0, 1, e_A2 T), (0, 0, -C T).
LatticeBasis build_lattice(const PublicKey& pub, const Ciphertext& ct, const Integer& t);

/// Smallest k with C 2^k > 9 * 2^{12n}, using (pi e / 2)^{3/2} < 9.
std::size_t choose_t_exponent(const PublicKey& pub, const Ciphertext& ct);

inline Integer choose_t(const PublicKey& pub, const Ciphertext& ct) { return pow2(choose_t_exponent(pub, ct)); }

/// The large fixed scaling 2^{20n}.
inline Integer preset_t(std::size_t n) { return pow2(20 * n); }

/// log2 of sqrt(3 / (2 pi e)) (C T)^{1/3}. Floating point; diagnostics only.
double gaussian_heuristic_log2(const Integer& c, const Integer& t);

inline constexpr int kLatticeSearchBound = 4;

AttackReport lattice_attack(const PublicKey& pub, const Ciphertext& ct, const std::optional<Integer>& t = std::nullopt,
                            const std::optional<KnownAnswer>& truth = std::nullopt);

// ---- factoring from roots ---------------------------------------------------

/// Recovers (p, q) from e_A1 = p^2 q and the four square roots of some W mod pq
/// by scanning gcd(e_A1, Vi + Vj) over the cross pairs. Throws factoring_failure.
std::pair<Integer, Integer> factor_from_roots(const Integer& e_a1, const std::array<Integer, 4>& roots);

}  // namespace aabeta::attacks
