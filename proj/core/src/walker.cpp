#include "aqw/walker.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

namespace aqw {

namespace {

double wrap_angle(double a) {
    double r = std::fmod(a, 2.0 * kPi);
    if (r < 0.0) r += 2.0 * kPi;
    return r;
}

std::string site_str(const Site& s) {
    return "(" + std::to_string(s.x) + ", " + std::to_string(s.y) + ", " + std::to_string(s.c) + ")";
}

enum class Axis { X, Y };

WalkerState shifted(const WalkerState& s, Axis axis, int direction) {
    const int L = s.half_width();
    WalkerState::Amplitudes out;
    for (const auto& [site, amp] : s.amplitudes()) {
        const int step = (site.c == 0 ? -1 : 1) * direction;
        Site target = site;
        int& coord = axis == Axis::X ? target.x : target.y;
        coord += step;
        if (std::abs(coord) > L) {
            if (std::abs(amp) < kPruneThreshold) continue;  // round-off residue
            throw BoundarySpill("shift pushes amplitude at " + site_str(site) +
                                " outside the lattice of half width " + std::to_string(L));
        }
        out.emplace_hint(out.end(), target, amp);
    }
    return WalkerState::from_amplitudes(L, std::move(out), s.origin_step());
}

WalkerState pruned(const WalkerState& s, int origin_step) {
    WalkerState::Amplitudes out;
    for (const auto& [site, amp] : s.amplitudes()) {
        if (std::abs(amp) >= kPruneThreshold) out.emplace_hint(out.end(), site, amp);
    }
    return WalkerState::from_amplitudes(s.half_width(), std::move(out), origin_step);
}

}  // namespace

CoinParams CoinParams::adjoint() const {
    return {alpha, wrap_angle(-gamma), wrap_angle(-beta)};
}

CoinMatrix coin_matrix(const CoinParams& p) {
    const double c = std::cos(p.alpha);
    const double s = std::sin(p.alpha);
    const Complex eb = std::polar(1.0, p.beta);
    const Complex eg = std::polar(1.0, p.gamma);
    return {{{c, eb * s}, {eg * s, -eb * eg * c}}};
}

CoinMatrix adjoint(const CoinMatrix& m) {
    return {{{std::conj(m[0][0]), std::conj(m[1][0])}, {std::conj(m[0][1]), std::conj(m[1][1])}}};
}

std::array<Complex, 2> CoinState::spinor() const {
    return {Complex(std::cos(theta / 2.0), 0.0), std::polar(std::sin(theta / 2.0), phi)};
}

CoinParams preset_coin(Preset preset) {
    switch (preset) {
        case Preset::M1: return {5.0 * kPi / 16.0, kPi / 2.0, kPi / 2.0};
        case Preset::G1: return {19.0 * kPi / 16.0, kPi / 2.0, kPi / 2.0};
        case Preset::Custom: break;
    }
    throw ConfigError("custom preset has no fixed coin");
}

std::string_view preset_name(Preset preset) {
    switch (preset) {
        case Preset::M1: return "M1";
        case Preset::G1: return "G1";
        case Preset::Custom: return "custom";
    }
    return "custom";
}

std::optional<Preset> parse_preset(std::string_view name) {
    if (name == "m1" || name == "M1") return Preset::M1;
    if (name == "g1" || name == "G1") return Preset::G1;
    if (name == "custom") return Preset::Custom;
    return std::nullopt;
}

EvolutionSpec EvolutionSpec::m1(int steps) { return from_preset(Preset::M1, steps); }
EvolutionSpec EvolutionSpec::g1(int steps) { return from_preset(Preset::G1, steps); }

EvolutionSpec EvolutionSpec::from_preset(Preset preset, int steps) {
    return {preset_coin(preset), steps, preset};
}

EvolutionSpec EvolutionSpec::custom(const CoinParams& coin, int steps) {
    return {coin, steps, Preset::Custom};
}

WalkerState::WalkerState(int half_width, int origin_step)
    : half_width_(half_width), origin_step_(origin_step) {
    if (half_width < 0) throw ConfigError("negative lattice half width");
    if (origin_step < 0) throw ConfigError("negative origin step");
}

WalkerState WalkerState::from_amplitudes(int half_width, Amplitudes amps, int origin_step) {
    WalkerState s(half_width, origin_step);
    for (auto it = amps.begin(); it != amps.end();) {
        const auto& [site, amp] = *it;
        if (site.c != 0 && site.c != 1) throw ConfigError("coin index must be 0 or 1");
        if (!std::isfinite(amp.real()) || !std::isfinite(amp.imag())) {
            throw NumericalInstability("non-finite amplitude at " + site_str(site));
        }
        if (!s.in_lattice(site.x, site.y)) {
            throw PositionOutOfLattice("site " + site_str(site) + " outside half width " +
                                       std::to_string(half_width));
        }
        it = amp == Complex{} ? amps.erase(it) : std::next(it);
    }
    s.amps_ = std::move(amps);
    return s;
}

Complex WalkerState::amplitude(int x, int y, int c) const {
    auto it = amps_.find(Site{x, y, c});
    return it == amps_.end() ? Complex{} : it->second;
}

double WalkerState::norm_squared() const {
    double n = 0.0;
    for (const auto& [site, amp] : amps_) n += std::norm(amp);
    return n;
}

bool WalkerState::in_lattice(int x, int y) const {
    return std::abs(x) <= half_width_ && std::abs(y) <= half_width_;
}

WalkerState WalkerState::resized(int half_width) const {
    return from_amplitudes(half_width, amps_, origin_step_);
}

WalkerState WalkerState::with_origin_step(int step) const {
    WalkerState s = *this;
    if (step < 0) throw ConfigError("negative origin step");
    s.origin_step_ = step;
    return s;
}

WalkerState initial_state(int l, int k, const CoinState& q, int half_width) {
    if (std::abs(l) > half_width || std::abs(k) > half_width) {
        throw PositionOutOfLattice("initial position (" + std::to_string(l) + ", " +
                                   std::to_string(k) + ") outside half width " +
                                   std::to_string(half_width));
    }
    const auto spinor = q.spinor();
    WalkerState::Amplitudes amps;
    amps[{l, k, 0}] = spinor[0];
    amps[{l, k, 1}] = spinor[1];
    return WalkerState::from_amplitudes(half_width, std::move(amps), 0);
}

WalkerState apply_coin(const WalkerState& s, const CoinMatrix& m) {
    WalkerState::Amplitudes out;
    const auto& in = s.amplitudes();
    for (auto it = in.begin(); it != in.end();) {
        const int x = it->first.x;
        const int y = it->first.y;
        Complex spin[2] = {};
        // coin 0 sorts before coin 1 at the same (x, y)
        while (it != in.end() && it->first.x == x && it->first.y == y) {
            spin[it->first.c] = it->second;
            ++it;
        }
        for (int r = 0; r < 2; ++r) {
            const Complex v = m[r][0] * spin[0] + m[r][1] * spin[1];
            if (v != Complex{}) out.emplace_hint(out.end(), Site{x, y, r}, v);
        }
    }
    return WalkerState::from_amplitudes(s.half_width(), std::move(out), s.origin_step());
}

WalkerState apply_coin(const WalkerState& s, const CoinParams& p) {
    return apply_coin(s, coin_matrix(p));
}

WalkerState shift_x(const WalkerState& s) { return shifted(s, Axis::X, 1); }
WalkerState shift_y(const WalkerState& s) { return shifted(s, Axis::Y, 1); }
WalkerState shift_x_inverse(const WalkerState& s) { return shifted(s, Axis::X, -1); }
WalkerState shift_y_inverse(const WalkerState& s) { return shifted(s, Axis::Y, -1); }

WalkerState evolve_step(const WalkerState& s, const CoinParams& p) {
    const CoinMatrix c = coin_matrix(p);
    WalkerState r = shift_y(apply_coin(shift_x(apply_coin(s, c)), c));
    return pruned(r, s.origin_step() + 1);
}

WalkerState inverse_step(const WalkerState& s, const CoinParams& p) {
    const CoinMatrix cd = adjoint(coin_matrix(p));
    WalkerState r = apply_coin(shift_x_inverse(apply_coin(shift_y_inverse(s), cd)), cd);
    return pruned(r, s.origin_step() > 0 ? s.origin_step() - 1 : 0);
}

WalkerState evolve(const WalkerState& s, const EvolutionSpec& spec) {
    if (spec.steps < 0) throw ConfigError("negative step count");
    WalkerState r = s;
    for (int i = 0; i < spec.steps; ++i) r = evolve_step(r, spec.coin);
    return r;
}

WalkerState inverse_evolve(const WalkerState& s, const EvolutionSpec& spec) {
    if (spec.steps < 0) throw ConfigError("negative step count");
    WalkerState r = s;
    for (int i = 0; i < spec.steps; ++i) r = inverse_step(r, spec.coin);
    return r;
}

WalkerState translate(const WalkerState& s, int dx, int dy) {
    WalkerState::Amplitudes out;
    for (const auto& [site, amp] : s.amplitudes()) {
        const Site target{site.x + dx, site.y + dy, site.c};
        if (!s.in_lattice(target.x, target.y)) {
            throw BoundarySpill("translation by (" + std::to_string(dx) + ", " +
                                std::to_string(dy) + ") pushes " + site_str(site) +
                                " outside half width " + std::to_string(s.half_width()));
        }
        out.emplace_hint(out.end(), target, amp);
    }
    return WalkerState::from_amplitudes(s.half_width(), std::move(out), s.origin_step());
}

Complex inner_product(const WalkerState& a, const WalkerState& b) {
    if (a.half_width() != b.half_width()) {
        throw LatticeMismatch("half widths " + std::to_string(a.half_width()) + " and " +
                              std::to_string(b.half_width()) + " differ");
    }
    Complex acc{};
    auto ia = a.amplitudes().begin();
    auto ib = b.amplitudes().begin();
    while (ia != a.amplitudes().end() && ib != b.amplitudes().end()) {
        if (ia->first < ib->first) {
            ++ia;
        } else if (ib->first < ia->first) {
            ++ib;
        } else {
            acc += std::conj(ia->second) * ib->second;
            ++ia;
            ++ib;
        }
    }
    return acc;
}

double fidelity(const WalkerState& a, const WalkerState& b) {
    return std::norm(inner_product(a, b));
}

double distance(const WalkerState& a, const WalkerState& b) {
    if (a.half_width() != b.half_width()) throw LatticeMismatch("half widths differ");
    WalkerState::Amplitudes diff = a.amplitudes();
    for (const auto& [site, amp] : b.amplitudes()) diff[site] -= amp;
    double n = 0.0;
    for (const auto& [site, amp] : diff) n += std::norm(amp);
    return std::sqrt(n);
}

}  // namespace aqw
