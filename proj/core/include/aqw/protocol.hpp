#pragma once

// Dual-message public-key protocol over the alternate walk.
//
//   keygen   Bob:   |pk>  = U^t |l, k, q>
//   encrypt  Alice: |enc> = T(m, n) |pk>          (pure translation)
//   decrypt  Bob:   U^-t |enc> = |l + m, k + n, q> since [U, T] = 0
//
// The lattice is padded to 2t + msgBound + 1 + max(|l|, |k|) so neither the
// translation nor the inverse walk of a tampered state can reach the edge.

#include <cstdint>

#include "aqw/walker.hpp"

namespace aqw {

/// fidelity score below this (or a coin fidelity below it) means tampering.
inline constexpr double kTamperThreshold = 1.0 - 1e-6;

struct PrivateKey {
    EvolutionSpec spec;
    int l = 0;
    int k = 0;
    CoinState q;
};

struct PublicKey {
    WalkerState state;
    int declared_steps = 0;
    int msg_bound = 0;
};

struct MessagePair {
    int m = 0;
    int n = 0;

    friend bool operator==(const MessagePair&, const MessagePair&) = default;
};

/// Lattice half width used for a key: 2t + msgBound + 1 + max(|l|, |k|).
[[nodiscard]] int key_half_width(const PrivateKey& key, int msg_bound);

/// Throws ConfigError for t < 1 or msgBound < 0.
[[nodiscard]] PublicKey keygen(const PrivateKey& key, int msg_bound);

/// Throws MessageOutOfRange when |m| or |n| exceeds the key's msgBound.
[[nodiscard]] WalkerState encrypt(const PublicKey& pub, const MessagePair& msg);

/// What Bob sees after undoing the walk.
struct Decryption {
    MessagePair message;
    int x = 0;  ///< position carrying the largest probability
    int y = 0;
    /// Probability mass at (x, y), both coin values.
    double fidelity_score = 0.0;
    /// Residual coin spinor at (x, y), normalised.
    std::array<Complex, 2> coin{};
    /// |<q|coin>|^2 against the private key's coin state.
    double coin_fidelity = 0.0;
    bool tampered = false;
    bool in_range = true;
};

/// Undo the walk and read the argmax position without throwing on tamper or
/// range violations. Used by attack simulations and the session layer.
[[nodiscard]] Decryption inspect_cipher(const WalkerState& cipher, const PrivateKey& key,
                                        int msg_bound);

/// Like inspect_cipher, but throws TamperDetected or MessageOutOfRange.
[[nodiscard]] Decryption decrypt(const WalkerState& cipher, const PrivateKey& key, int msg_bound);

/// max || U T psi - T U psi || over `trials` random normalised states on the
/// keygen-sized lattice, with T the translation by `msg`.
[[nodiscard]] double commutation_check(const EvolutionSpec& spec, const MessagePair& msg,
                                       int trials, std::uint64_t seed = 1);

}  // namespace aqw
