#pragma once

// Exhaustive intercept-and-resend reference using dense matrices only: Eve
// measures the cipher, Bob applies U^-t to each collapsed state and checks
// for a single position carrying (almost) all mass with the expected coin.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdlib>

#include "oracles/dense_walk.hpp"

namespace oracle {

struct AttackInstance {
    aqw::CoinParams coin;
    int steps = 2;
    int l = 0;
    int k = 0;
    std::array<std::complex<double>, 2> q;  // coin spinor of the initial ket
    int m = 1;
    int n = 2;
    int msg_bound = 3;
};

enum class Measured { PositionCoin, Position };

inline bool bob_flags(int L, const VectorXcd& out, const std::array<std::complex<double>, 2>& q) {
    double best = -1.0;
    Index bx = 0;
    Index by = 0;
    for (Index x = 0; x < side(L); ++x)
        for (Index y = 0; y < side(L); ++y) {
            const Index i = (x * side(L) + y) * 2;
            const double mass = std::norm(out(i)) + std::norm(out(i + 1));
            if (mass > best) {
                best = mass;
                bx = x;
                by = y;
            }
        }
    const Index i = (bx * side(L) + by) * 2;
    const double overlap =
        std::norm(std::conj(q[0]) * out(i) + std::conj(q[1]) * out(i + 1)) / best;
    const double threshold = 1.0 - 1e-6;
    return best < threshold || overlap < threshold;
}

/// Probability that Bob flags tampering, summed over every measurement outcome.
inline double intercept_resend_detection(const AttackInstance& a, Measured basis) {
    const int L = 2 * a.steps + a.msg_bound + 1 + std::max(std::abs(a.l), std::abs(a.k));
    const MatrixXcd Ut = power(step(L, a.coin), a.steps);
    const MatrixXcd back = Ut.adjoint();
    VectorXcd psi0 = VectorXcd::Zero(dim(L));
    psi0(index_of(L, a.l, a.k, 0)) = a.q[0];
    psi0(index_of(L, a.l, a.k, 1)) = a.q[1];
    const VectorXcd cipher = translation(L, a.m, a.n) * (Ut * psi0);

    double detected = 0.0;
    if (basis == Measured::PositionCoin) {
        for (Index i = 0; i < dim(L); ++i) {
            const double p = std::norm(cipher(i));
            if (p == 0.0) continue;
            if (bob_flags(L, back.col(i), a.q)) detected += p;
        }
    } else {
        for (Index i = 0; i < dim(L); i += 2) {
            const double p = std::norm(cipher(i)) + std::norm(cipher(i + 1));
            if (p == 0.0) continue;
            VectorXcd collapsed = VectorXcd::Zero(dim(L));
            collapsed(i) = cipher(i) / std::sqrt(p);
            collapsed(i + 1) = cipher(i + 1) / std::sqrt(p);
            if (bob_flags(L, back * collapsed, a.q)) detected += p;
        }
    }
    return detected;
}

}  // namespace oracle
