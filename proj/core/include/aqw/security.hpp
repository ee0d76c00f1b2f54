#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "aqw/protocol.hpp"

namespace aqw {

// ---------------------------------------------------------------------------
// Entropy calculus

/// Sizes of Eve's uncertainty: D walk operators, |tau| step counts and initial
/// basis kets |l, k, q> with l, k in [-N, N], q in {0, 1}. Counts are stored as
/// doubles so that e.g. D = 2^80 is representable.
struct KeySpace {
    double operators = 1.0;     ///< D
    double step_choices = 1.0;  ///< |tau|
    int position_bound = 0;     ///< N

    /// Throws ConfigError unless D >= 1, |tau| >= 1 and N >= 0.
    void validate() const;
    /// 2 (2N + 1)^2
    [[nodiscard]] double basis_states() const;
};

/// S(rho_pk) = log2(2 (2N + 1)^2) = 1 + 2 log2(2N + 1).
[[nodiscard]] double mixed_public_key_entropy(const KeySpace& ks);

/// H(P_pvk) = log2(D |tau|) + 2 log2(2N + 1) + 1.
[[nodiscard]] double private_key_entropy(const KeySpace& ks);

inline constexpr double kDefaultSecurityFloorBits = 64.0;

struct SecurityReport {
    double von_neumann_bits = 0.0;
    double shannon_bits = 0.0;
    /// Upper bound on Eve's mutual information with the private key.
    double holevo_bound_bits = 0.0;
    double gap_bits = 0.0;
    double floor_bits = kDefaultSecurityFloorBits;
    bool secure = false;
};

[[nodiscard]] SecurityReport security_report(const KeySpace& ks,
                                             double floor_bits = kDefaultSecurityFloorBits);

/// One walk step as a dense matrix on a periodic P x P lattice (index
/// (x * P + y) * 2 + c, x, y in [0, P)). Unitary for every P >= 1.
[[nodiscard]] Eigen::MatrixXcd torus_step_operator(const CoinParams& coin, int period);

/// rho_pk built explicitly: the uniform average of U^t |l, k, q><l, k, q| U^-t
/// over all 2 (2N + 1)^2 basis kets, with U acting on the (2N + 1)-periodic
/// lattice. Intended for small N (dimension 2 (2N + 1)^2).
[[nodiscard]] Eigen::MatrixXcd explicit_mixed_public_key(int position_bound,
                                                         const EvolutionSpec& spec);

/// -Tr(rho log2 rho) from the eigenvalues of a Hermitian matrix.
[[nodiscard]] double von_neumann_entropy_bits(const Eigen::MatrixXcd& rho);

/// -sum p log2 p, ignoring zero entries.
[[nodiscard]] double shannon_entropy_bits(std::span<const double> probabilities);

// ---------------------------------------------------------------------------
// Eavesdropper measurement

enum class EveBasis {
    None,          ///< forward untouched (null attack)
    PositionCoin,  ///< full computational basis |x, y, c>
    PositionOnly,  ///< projective on (x, y), coin left coherent
    CoinOnly,      ///< projective on c, positions left coherent
};

[[nodiscard]] std::string_view eve_basis_name(EveBasis basis);
[[nodiscard]] std::optional<EveBasis> parse_eve_basis(std::string_view name);

struct MeasurementOutcome {
    double probability = 0.0;
    WalkerState collapsed;
    /// Observed position, when the basis reveals one.
    std::optional<std::pair<int, int>> position;
};

/// Every outcome of measuring `s` in `basis`, in deterministic order. The
/// None basis yields a single outcome with probability 1.
[[nodiscard]] std::vector<MeasurementOutcome> measurement_outcomes(const WalkerState& s,
                                                                   EveBasis basis);

/// Samples one outcome of measurement_outcomes with `rng`.
[[nodiscard]] MeasurementOutcome measure(const WalkerState& s, EveBasis basis,
                                         std::mt19937_64& rng);

// ---------------------------------------------------------------------------
// Attack simulations

enum class AttackMethod { Enumeration, MonteCarlo };

[[nodiscard]] std::string_view attack_method_name(AttackMethod m);

struct AttackStats {
    long long trials = 0;
    /// Probability Eve ends with the right (m, n).
    double eve_correct_both = 0.0;
    /// Probability the decryption check flags tampering.
    double bob_detects = 0.0;
    AttackMethod method = AttackMethod::Enumeration;
    std::uint64_t seed = 0;
    EveBasis basis = EveBasis::PositionCoin;
    /// MITM only: how often the raw argmax readout under the guessed key hits
    /// (m, n), whether or not the decryption check accepts it.
    std::optional<double> argmax_correct;
};

/// Per-trial seed derived from a root seed and the trial counter.
[[nodiscard]] std::uint64_t trial_seed(std::uint64_t root, std::uint64_t counter);

/// Largest t for which enumeration is accepted.
inline constexpr int kMaxEnumerationSteps = 3;

/// Eve measures Alice's cipher and forwards the collapsed state to Bob.
/// eve_correct_both assumes Eve also knew (l, k), an upper bound on her power;
/// a basis without position information scores the uniform-guess chance.
/// Enumeration requires t <= 3 (ConfigError otherwise).
[[nodiscard]] AttackStats intercept_resend(const PrivateKey& key, const MessagePair& msg,
                                           int msg_bound, AttackMethod method,
                                           long long trials = 0, std::uint64_t seed = 1,
                                           EveBasis basis = EveBasis::PositionCoin);

/// Candidate private keys Eve draws from.
struct KeyGrid {
    std::vector<CoinParams> coins;
    std::vector<int> steps;
    int position_bound = 0;

    [[nodiscard]] KeySpace key_space() const;

    /// `count` coins uniform over [0, 2pi)^3, skipping `exclude` if drawn.
    [[nodiscard]] static KeyGrid random_coins(std::size_t count, std::vector<int> steps,
                                              int position_bound, std::uint64_t seed,
                                              std::optional<CoinParams> exclude = std::nullopt);
};

/// Eve impersonates Bob with a guessed key (U', l', k', t') drawn uniformly from
/// `grid` and runs the decryption with it. eve_correct_both counts guesses whose
/// decryption is accepted and returns (m, n); bob_detects reports how often the
/// check rejects the output as garbled. Since every walk commutes with the
/// translation, a wrong coin with the right (l, k) often still peaks at the
/// message; argmax_correct reports that leak separately.
[[nodiscard]] AttackStats mitm_key_guess(const PrivateKey& key, const MessagePair& msg,
                                         int msg_bound, const KeyGrid& grid, long long trials,
                                         std::uint64_t seed = 1);

}  // namespace aqw
