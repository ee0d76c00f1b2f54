#pragma once

// Device-level description of the photonic realisation: the walker's x, y
// and coin map to a photon's OAM, path and polarisation. A J-plate imitates
// coin -> x-shift -> coin and a polarising beam splitter imitates the
// y-shift. Descriptions only; no optics is simulated.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aqw/walker.hpp"

namespace aqw {

enum class DeviceKind { JPlate, PolarizingBeamSplitter, SinglePhotonDetector, FiberModeFilter };

[[nodiscard]] std::string_view device_kind_name(DeviceKind kind);

struct Device {
    DeviceKind kind = DeviceKind::JPlate;
    std::optional<CoinParams> coin;  ///< J-plates only
    std::string role;
};

enum class CircuitDirection { Generate, Decrypt };

[[nodiscard]] std::string_view circuit_direction_name(CircuitDirection d);

struct CircuitDescription {
    CircuitDirection direction = CircuitDirection::Generate;
    std::vector<Device> stages;
};

/// Generate: t x [J-plate(coin), PBS]. Decrypt: t x [PBS, J-plate(coin^dagger)]
/// followed by the detection stages. Throws ConfigError for t < 1.
[[nodiscard]] CircuitDescription photonic_circuit(const CoinParams& coin, int steps,
                                                  CircuitDirection direction);

/// One stage per line, e.g. "3 J-PLATE(5pi/16, pi/2, pi/2) coin-shift_x-coin".
[[nodiscard]] std::string circuit_text(const CircuitDescription& circuit);

}  // namespace aqw
