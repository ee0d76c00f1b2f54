#include "aqw/circuit.hpp"

#include <sstream>

#include "aqw/angle.hpp"

namespace aqw {

std::string_view device_kind_name(DeviceKind kind) {
    switch (kind) {
        case DeviceKind::JPlate: return "J-PLATE";
        case DeviceKind::PolarizingBeamSplitter: return "PBS";
        case DeviceKind::SinglePhotonDetector: return "SPD";
        case DeviceKind::FiberModeFilter: return "SMF+SLM";
    }
    return "?";
}

std::string_view circuit_direction_name(CircuitDirection d) {
    return d == CircuitDirection::Generate ? "generate" : "decrypt";
}

CircuitDescription photonic_circuit(const CoinParams& coin, int steps, CircuitDirection direction) {
    if (steps < 1) throw ConfigError("a circuit needs at least one step");
    CircuitDescription c;
    c.direction = direction;
    if (direction == CircuitDirection::Generate) {
        for (int i = 0; i < steps; ++i) {
            c.stages.push_back({DeviceKind::JPlate, coin, "coin-shift_x-coin"});
            c.stages.push_back({DeviceKind::PolarizingBeamSplitter, std::nullopt, "shift_y"});
        }
        return c;
    }
    const CoinParams inverse = coin.adjoint();
    for (int i = 0; i < steps; ++i) {
        c.stages.push_back({DeviceKind::PolarizingBeamSplitter, std::nullopt, "shift_y inverse"});
        c.stages.push_back({DeviceKind::JPlate, inverse, "coin^dagger-shift_x inverse-coin^dagger"});
    }
    c.stages.push_back({DeviceKind::SinglePhotonDetector, std::nullopt, "path (y) readout"});
    c.stages.push_back({DeviceKind::FiberModeFilter, std::nullopt, "OAM (x) mode selection"});
    c.stages.push_back({DeviceKind::SinglePhotonDetector, std::nullopt, "OAM (x) readout"});
    return c;
}

std::string circuit_text(const CircuitDescription& circuit) {
    std::ostringstream os;
    os << "# direction " << circuit_direction_name(circuit.direction) << '\n';
    int i = 1;
    for (const auto& d : circuit.stages) {
        os << i++ << ' ' << device_kind_name(d.kind);
        if (d.coin) {
            os << '(' << render_angle(d.coin->alpha) << ", " << render_angle(d.coin->beta) << ", "
               << render_angle(d.coin->gamma) << ')';
        }
        os << ' ' << d.role << '\n';
    }
    return os.str();
}

}  // namespace aqw
