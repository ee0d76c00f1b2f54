#include "aqw/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <random>
#include <string>
#include <utility>

namespace aqw {

int key_half_width(const PrivateKey& key, int msg_bound) {
    return 2 * key.spec.steps + msg_bound + 1 + std::max(std::abs(key.l), std::abs(key.k));
}

PublicKey keygen(const PrivateKey& key, int msg_bound) {
    if (key.spec.steps < 1) throw ConfigError("the key needs at least one evolution step");
    if (msg_bound < 0) throw ConfigError("message bound must be non-negative");
    const int L = key_half_width(key, msg_bound);
    WalkerState psi = evolve(initial_state(key.l, key.k, key.q, L), key.spec);
    return {std::move(psi), key.spec.steps, msg_bound};
}

WalkerState encrypt(const PublicKey& pub, const MessagePair& msg) {
    if (std::abs(msg.m) > pub.msg_bound || std::abs(msg.n) > pub.msg_bound) {
        throw MessageOutOfRange("message (" + std::to_string(msg.m) + ", " +
                                std::to_string(msg.n) + ") exceeds bound " +
                                std::to_string(pub.msg_bound));
    }
    return translate(pub.state, msg.m, msg.n);
}

Decryption inspect_cipher(const WalkerState& cipher, const PrivateKey& key, int msg_bound) {
    const WalkerState out = inverse_evolve(cipher, key.spec);

    std::map<std::pair<int, int>, double> marginal;
    for (const auto& [site, amp] : out.amplitudes()) marginal[{site.x, site.y}] += std::norm(amp);

    Decryption d;
    double best = -1.0;
    for (const auto& [pos, p] : marginal) {
        if (p > best) {
            best = p;
            d.x = pos.first;
            d.y = pos.second;
        }
    }
    d.fidelity_score = std::max(best, 0.0);
    d.message = {d.x - key.l, d.y - key.k};
    d.in_range = std::abs(d.message.m) <= msg_bound && std::abs(d.message.n) <= msg_bound;

    if (d.fidelity_score > 0.0) {
        const double scale = 1.0 / std::sqrt(d.fidelity_score);
        d.coin = {out.amplitude(d.x, d.y, 0) * scale, out.amplitude(d.x, d.y, 1) * scale};
        const auto q = key.q.spinor();
        d.coin_fidelity = std::norm(std::conj(q[0]) * d.coin[0] + std::conj(q[1]) * d.coin[1]);
    }
    d.tampered = d.fidelity_score < kTamperThreshold || d.coin_fidelity < kTamperThreshold;
    return d;
}

Decryption decrypt(const WalkerState& cipher, const PrivateKey& key, int msg_bound) {
    Decryption d = inspect_cipher(cipher, key, msg_bound);
    if (d.tampered) {
        throw TamperDetected("decrypted state is not a clean product ket (fidelity " +
                             std::to_string(d.fidelity_score) + ", coin fidelity " +
                             std::to_string(d.coin_fidelity) + ")");
    }
    if (!d.in_range) {
        throw MessageOutOfRange("decoded message (" + std::to_string(d.message.m) + ", " +
                                std::to_string(d.message.n) + ") exceeds bound " +
                                std::to_string(msg_bound));
    }
    return d;
}

double commutation_check(const EvolutionSpec& spec, const MessagePair& msg, int trials,
                         std::uint64_t seed) {
    const int bound = std::max(std::abs(msg.m), std::abs(msg.n));
    const PrivateKey sizing{spec, 0, 0, {}};
    const int L = key_half_width(sizing, bound);
    // random support radius leaves room for one step plus the translation
    const int radius = std::max(0, L - bound - 2);
    const int r = std::min(radius, 3);

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    double worst = 0.0;
    for (int trial = 0; trial < trials; ++trial) {
        WalkerState::Amplitudes amps;
        double norm = 0.0;
        for (int x = -r; x <= r; ++x) {
            for (int y = -r; y <= r; ++y) {
                for (int c = 0; c < 2; ++c) {
                    const Complex a(gauss(rng), gauss(rng));
                    amps[{x, y, c}] = a;
                    norm += std::norm(a);
                }
            }
        }
        for (auto& [site, a] : amps) a /= std::sqrt(norm);
        const WalkerState psi = WalkerState::from_amplitudes(L, std::move(amps));
        const WalkerState ut = evolve_step(translate(psi, msg.m, msg.n), spec.coin);
        const WalkerState tu = translate(evolve_step(psi, spec.coin), msg.m, msg.n);
        worst = std::max(worst, distance(ut, tu));
    }
    return worst;
}

}  // namespace aqw
