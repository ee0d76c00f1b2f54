#include "aqw/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <future>
#include <sstream>
#include <thread>

#include "aqw/angle.hpp"
#include "aqw/entanglement.hpp"

namespace aqw {

std::string_view sweep_metric_name(SweepMetric m) {
    return m == SweepMetric::PiTangle ? "pi_tangle" : "n_xy";
}

std::optional<SweepMetric> parse_sweep_metric(std::string_view name) {
    if (name == "pi_tangle" || name == "pi-tangle") return SweepMetric::PiTangle;
    if (name == "n_xy" || name == "negativity") return SweepMetric::PositionNegativity;
    return std::nullopt;
}

SweepMetric default_metric(Preset preset) {
    return preset == Preset::G1 ? SweepMetric::PositionNegativity : SweepMetric::PiTangle;
}

std::vector<SweepRecord> run_sweep(const SweepConfig& config) {
    if (config.t_min < 0 || config.t_max < config.t_min) throw ConfigError("bad t range");
    if (config.thetas.empty()) throw ConfigError("no theta values to sweep");
    if (config.t_max > kSweepStepGuard && !config.force) {
        throw ConfigError("t above " + std::to_string(kSweepStepGuard) +
                          " is expensive; pass --force to run it anyway");
    }
    const SweepMetric metric = config.metric.value_or(default_metric(config.coin_spec.preset));

    struct Job {
        double theta;
        int t;
    };
    std::vector<Job> jobs;
    for (double theta : config.thetas) {
        for (int t = config.t_min; t <= config.t_max; ++t) jobs.push_back({theta, t});
    }

    std::vector<SweepRecord> out(jobs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) {
            const auto [theta, t] = jobs[i];
            const EvolutionSpec spec{config.coin_spec.coin, t, config.coin_spec.preset};
            const WalkerState psi = evolve(initial_state(0, 0, {theta, config.phi}, t + 1), spec);
            SweepRecord r{t, theta, config.phi, config.coin_spec.preset, metric, 0.0};
            r.value = metric == SweepMetric::PiTangle ? entanglement_report(psi).pi_tangle
                                                      : position_negativity(psi);
            out[i] = r;
        }
    };
    const std::size_t threads =
        std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, jobs.size());
    std::vector<std::future<void>> pool;
    for (std::size_t i = 0; i < threads; ++i) pool.push_back(std::async(std::launch::async, worker));
    for (auto& f : pool) f.get();
    return out;
}

std::string sweep_csv(const std::vector<SweepRecord>& records) {
    std::ostringstream os;
    os << "preset,t,theta,phi,metric,value\n";
    for (const auto& r : records) {
        char value[32];
        std::snprintf(value, sizeof value, "%.10f", r.value);
        os << preset_name(r.preset) << ',' << r.t << ',' << render_angle(r.theta) << ','
           << render_angle(r.phi) << ',' << sweep_metric_name(r.metric) << ',' << value << '\n';
    }
    return os.str();
}

}  // namespace aqw
