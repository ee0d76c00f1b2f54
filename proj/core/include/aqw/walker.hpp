#pragma once

// Two-dimensional alternate quantum walk on a bounded square lattice.
//
// The walker lives in H_x (x) H_y (x) H_c with positions x, y in [-L, L] and a
// two-level coin. One time step is
//
//     U = S_y (1 (x) C) S_x (1 (x) C)
//
// where S_x / S_y move coin-0 amplitude one site towards -x / -y and coin-1
// amplitude one site towards +x / +y. The lattice is never wrapped: an
// operation that would push nonzero amplitude past |x| = L or |y| = L throws
// BoundarySpill, so callers size L for the full forward and inverse spread.

#include <array>
#include <complex>
#include <compare>
#include <map>
#include <numbers>
#include <optional>
#include <string_view>

#include "aqw/errors.hpp"

namespace aqw {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;

/// Amplitudes with modulus below this are dropped after every evolution step.
inline constexpr double kPruneThreshold = 1e-15;

/// Row-major 2x2 complex matrix acting on the coin spinor (|0>, |1>).
using CoinMatrix = std::array<std::array<Complex, 2>, 2>;

struct CoinParams {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;

    /// Parameters of the adjoint coin: C(a, b, g)^dagger = C(a, -g, -b),
    /// with the phases folded back into [0, 2pi).
    [[nodiscard]] CoinParams adjoint() const;

    friend bool operator==(const CoinParams&, const CoinParams&) = default;
};

/// [[cos a, e^{ib} sin a], [e^{ig} sin a, -e^{i(b+g)} cos a]]
[[nodiscard]] CoinMatrix coin_matrix(const CoinParams& p);
[[nodiscard]] CoinMatrix adjoint(const CoinMatrix& m);

/// cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>
struct CoinState {
    double theta = 0.0;
    double phi = 0.0;

    [[nodiscard]] std::array<Complex, 2> spinor() const;
};

enum class Preset { M1, G1, Custom };

[[nodiscard]] CoinParams preset_coin(Preset preset);
[[nodiscard]] std::string_view preset_name(Preset preset);
[[nodiscard]] std::optional<Preset> parse_preset(std::string_view name);

/// The per-step recipe: one coin used for both the x and the y sub-step,
/// repeated `steps` times.
struct EvolutionSpec {
    CoinParams coin;
    int steps = 1;
    Preset preset = Preset::Custom;

    [[nodiscard]] static EvolutionSpec m1(int steps);
    [[nodiscard]] static EvolutionSpec g1(int steps);
    [[nodiscard]] static EvolutionSpec from_preset(Preset preset, int steps);
    [[nodiscard]] static EvolutionSpec custom(const CoinParams& coin, int steps);
};

struct Site {
    int x = 0;
    int y = 0;
    int c = 0;

    friend auto operator<=>(const Site&, const Site&) = default;
};

/// Sparse amplitude field over (x, y, c). Immutable once built; every
/// operation below returns a new state.
class WalkerState {
public:
    using Amplitudes = std::map<Site, Complex>;

    WalkerState() = default;
    explicit WalkerState(int half_width, int origin_step = 0);

    /// Validates lattice bounds, coin bits and finiteness. Exact zeros are
    /// not stored.
    [[nodiscard]] static WalkerState from_amplitudes(int half_width, Amplitudes amps,
                                                     int origin_step = 0);

    [[nodiscard]] int half_width() const { return half_width_; }
    [[nodiscard]] int origin_step() const { return origin_step_; }
    [[nodiscard]] const Amplitudes& amplitudes() const { return amps_; }
    [[nodiscard]] std::size_t size() const { return amps_.size(); }

    [[nodiscard]] Complex amplitude(int x, int y, int c) const;
    [[nodiscard]] double norm_squared() const;
    [[nodiscard]] bool in_lattice(int x, int y) const;

    /// Same amplitudes on a lattice of a different half width.
    [[nodiscard]] WalkerState resized(int half_width) const;
    [[nodiscard]] WalkerState with_origin_step(int step) const;

private:
    int half_width_ = 0;
    int origin_step_ = 0;
    Amplitudes amps_;
};

[[nodiscard]] WalkerState initial_state(int l, int k, const CoinState& q, int half_width);

[[nodiscard]] WalkerState apply_coin(const WalkerState& s, const CoinMatrix& m);
[[nodiscard]] WalkerState apply_coin(const WalkerState& s, const CoinParams& p);

[[nodiscard]] WalkerState shift_x(const WalkerState& s);
[[nodiscard]] WalkerState shift_y(const WalkerState& s);
[[nodiscard]] WalkerState shift_x_inverse(const WalkerState& s);
[[nodiscard]] WalkerState shift_y_inverse(const WalkerState& s);

/// S_y (1 (x) C) S_x (1 (x) C)
[[nodiscard]] WalkerState evolve_step(const WalkerState& s, const CoinParams& p);
/// (1 (x) C^dagger) S_x^-1 (1 (x) C^dagger) S_y^-1, the exact adjoint of evolve_step.
[[nodiscard]] WalkerState inverse_step(const WalkerState& s, const CoinParams& p);

[[nodiscard]] WalkerState evolve(const WalkerState& s, const EvolutionSpec& spec);
[[nodiscard]] WalkerState inverse_evolve(const WalkerState& s, const EvolutionSpec& spec);

/// Coin-independent translation (x, y) -> (x + dx, y + dy).
[[nodiscard]] WalkerState translate(const WalkerState& s, int dx, int dy);

/// <a|b>. Throws LatticeMismatch when the half widths differ.
[[nodiscard]] Complex inner_product(const WalkerState& a, const WalkerState& b);
/// |<a|b>|^2
[[nodiscard]] double fidelity(const WalkerState& a, const WalkerState& b);
/// || a - b ||
[[nodiscard]] double distance(const WalkerState& a, const WalkerState& b);

}  // namespace aqw
