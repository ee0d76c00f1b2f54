#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aqw/walker.hpp"

namespace aqw {

enum class SweepMetric { PiTangle, PositionNegativity };

[[nodiscard]] std::string_view sweep_metric_name(SweepMetric m);
[[nodiscard]] std::optional<SweepMetric> parse_sweep_metric(std::string_view name);
/// pi-tangle for M1 and custom coins, N_xy for G1.
[[nodiscard]] SweepMetric default_metric(Preset preset);

/// Steps above this need `force` (eigensolves grow as t^2 x t^2).
inline constexpr int kSweepStepGuard = 20;

struct SweepConfig {
    EvolutionSpec coin_spec;  ///< `steps` is ignored; t runs over [t_min, t_max]
    int t_min = 1;
    int t_max = 10;
    std::vector<double> thetas;
    double phi = kPi;
    std::optional<SweepMetric> metric;
    bool force = false;
};

struct SweepRecord {
    int t = 0;
    double theta = 0.0;
    double phi = 0.0;
    Preset preset = Preset::Custom;
    SweepMetric metric = SweepMetric::PiTangle;
    double value = 0.0;
};

/// Entanglement of the walk started at the origin, one record per (theta, t),
/// theta in the given order and t ascending. Rows are evaluated concurrently.
[[nodiscard]] std::vector<SweepRecord> run_sweep(const SweepConfig& config);

/// Comma-separated with a header row.
[[nodiscard]] std::string sweep_csv(const std::vector<SweepRecord>& records);

}  // namespace aqw
