#include "aqw/security.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include <Eigen/Eigenvalues>

namespace aqw {

void KeySpace::validate() const {
    if (!(operators >= 1.0) || !std::isfinite(operators)) {
        throw ConfigError("D must be a finite count >= 1");
    }
    if (!(step_choices >= 1.0) || !std::isfinite(step_choices)) {
        throw ConfigError("|tau| must be a finite count >= 1");
    }
    if (position_bound < 0) throw ConfigError("N must be >= 0");
}

double KeySpace::basis_states() const {
    const double side = 2.0 * position_bound + 1.0;
    return 2.0 * side * side;
}

double mixed_public_key_entropy(const KeySpace& ks) {
    ks.validate();
    return 1.0 + 2.0 * std::log2(2.0 * ks.position_bound + 1.0);
}

double private_key_entropy(const KeySpace& ks) {
    ks.validate();
    return std::log2(ks.operators) + std::log2(ks.step_choices) +
           2.0 * std::log2(2.0 * ks.position_bound + 1.0) + 1.0;
}

SecurityReport security_report(const KeySpace& ks, double floor_bits) {
    SecurityReport r;
    r.von_neumann_bits = mixed_public_key_entropy(ks);
    r.shannon_bits = private_key_entropy(ks);
    r.holevo_bound_bits = r.von_neumann_bits;
    r.gap_bits = r.shannon_bits - r.von_neumann_bits;
    r.floor_bits = floor_bits;
    r.secure = r.gap_bits >= floor_bits;
    return r;
}

Eigen::MatrixXcd torus_step_operator(const CoinParams& coin, int period) {
    if (period < 1) throw ConfigError("torus period must be >= 1");
    const Eigen::Index P = period;
    const Eigen::Index dim = P * P * 2;
    auto idx = [P](Eigen::Index x, Eigen::Index y, Eigen::Index c) {
        return (((x % P + P) % P) * P + ((y % P + P) % P)) * 2 + c;
    };
    const CoinMatrix cm = coin_matrix(coin);
    Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(dim, dim);
    Eigen::MatrixXcd Sx = Eigen::MatrixXcd::Zero(dim, dim);
    Eigen::MatrixXcd Sy = Eigen::MatrixXcd::Zero(dim, dim);
    for (Eigen::Index x = 0; x < P; ++x) {
        for (Eigen::Index y = 0; y < P; ++y) {
            for (int r = 0; r < 2; ++r) {
                for (int s = 0; s < 2; ++s) C(idx(x, y, r), idx(x, y, s)) = cm[r][s];
            }
            Sx(idx(x - 1, y, 0), idx(x, y, 0)) = 1.0;
            Sx(idx(x + 1, y, 1), idx(x, y, 1)) = 1.0;
            Sy(idx(x, y - 1, 0), idx(x, y, 0)) = 1.0;
            Sy(idx(x, y + 1, 1), idx(x, y, 1)) = 1.0;
        }
    }
    return Sy * C * Sx * C;
}

Eigen::MatrixXcd explicit_mixed_public_key(int position_bound, const EvolutionSpec& spec) {
    if (position_bound < 0) throw ConfigError("N must be >= 0");
    const int period = 2 * position_bound + 1;
    const Eigen::MatrixXcd step = torus_step_operator(spec.coin, period);
    Eigen::MatrixXcd Ut = Eigen::MatrixXcd::Identity(step.rows(), step.cols());
    for (int i = 0; i < spec.steps; ++i) Ut = step * Ut;

    const Eigen::Index dim = step.rows();
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
    for (Eigen::Index b = 0; b < dim; ++b) {
        // U^t |b> is column b of U^t
        const Eigen::VectorXcd v = Ut.col(b);
        rho += v * v.adjoint();
    }
    return rho / static_cast<double>(dim);
}

double von_neumann_entropy_bits(const Eigen::MatrixXcd& rho) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw NumericalInstability("eigensolver failed");
    double s = 0.0;
    for (double lambda : solver.eigenvalues()) {
        if (lambda > 1e-15) s -= lambda * std::log2(lambda);
    }
    return s;
}

double shannon_entropy_bits(std::span<const double> probabilities) {
    double h = 0.0;
    for (double p : probabilities) {
        if (p > 0.0) h -= p * std::log2(p);
    }
    return h;
}

std::string_view eve_basis_name(EveBasis basis) {
    switch (basis) {
        case EveBasis::None: return "none";
        case EveBasis::PositionCoin: return "position-coin";
        case EveBasis::PositionOnly: return "position";
        case EveBasis::CoinOnly: return "coin";
    }
    return "none";
}

std::optional<EveBasis> parse_eve_basis(std::string_view name) {
    for (EveBasis b : {EveBasis::None, EveBasis::PositionCoin, EveBasis::PositionOnly,
                       EveBasis::CoinOnly}) {
        if (name == eve_basis_name(b)) return b;
    }
    return std::nullopt;
}

std::vector<MeasurementOutcome> measurement_outcomes(const WalkerState& s, EveBasis basis) {
    std::vector<MeasurementOutcome> out;
    const int L = s.half_width();
    const int step = s.origin_step();
    auto normalised = [&](WalkerState::Amplitudes amps, double p) {
        for (auto& [site, a] : amps) a /= std::sqrt(p);
        return WalkerState::from_amplitudes(L, std::move(amps), step);
    };

    switch (basis) {
        case EveBasis::None:
            out.push_back({1.0, s, std::nullopt});
            break;
        case EveBasis::PositionCoin:
            for (const auto& [site, a] : s.amplitudes()) {
                const double p = std::norm(a);
                if (p <= 0.0) continue;
                WalkerState::Amplitudes ket{{site, Complex(1.0, 0.0)}};
                out.push_back({p, WalkerState::from_amplitudes(L, std::move(ket), step),
                               std::pair{site.x, site.y}});
            }
            break;
        case EveBasis::PositionOnly: {
            std::map<std::pair<int, int>, WalkerState::Amplitudes> groups;
            for (const auto& [site, a] : s.amplitudes()) groups[{site.x, site.y}][site] = a;
            for (auto& [pos, amps] : groups) {
                double p = 0.0;
                for (const auto& [site, a] : amps) p += std::norm(a);
                if (p <= 0.0) continue;
                out.push_back({p, normalised(std::move(amps), p), pos});
            }
            break;
        }
        case EveBasis::CoinOnly: {
            WalkerState::Amplitudes parts[2];
            for (const auto& [site, a] : s.amplitudes()) parts[site.c][site] = a;
            for (auto& amps : parts) {
                double p = 0.0;
                for (const auto& [site, a] : amps) p += std::norm(a);
                if (p <= 0.0) continue;
                out.push_back({p, normalised(std::move(amps), p), std::nullopt});
            }
            break;
        }
    }
    return out;
}

MeasurementOutcome measure(const WalkerState& s, EveBasis basis, std::mt19937_64& rng) {
    auto outcomes = measurement_outcomes(s, basis);
    double total = 0.0;
    for (const auto& o : outcomes) total += o.probability;
    const double u = std::uniform_real_distribution<double>(0.0, total)(rng);
    double acc = 0.0;
    for (auto& o : outcomes) {
        acc += o.probability;
        if (u < acc) return std::move(o);
    }
    return std::move(outcomes.back());
}

std::string_view attack_method_name(AttackMethod m) {
    return m == AttackMethod::Enumeration ? "enumeration" : "monte-carlo";
}

std::uint64_t trial_seed(std::uint64_t root, std::uint64_t counter) {
    // splitmix64 finaliser over root + golden-ratio stride
    std::uint64_t z = root + (counter + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

namespace {

struct TrialResult {
    bool eve_correct;
    bool detected;
};

double uniform_guess_chance(int msg_bound) {
    const double side = 2.0 * msg_bound + 1.0;
    return 1.0 / (side * side);
}

}  // namespace

AttackStats intercept_resend(const PrivateKey& key, const MessagePair& msg, int msg_bound,
                             AttackMethod method, long long trials, std::uint64_t seed,
                             EveBasis basis) {
    const PublicKey pub = keygen(key, msg_bound);
    const WalkerState cipher = encrypt(pub, msg);
    const double chance = uniform_guess_chance(msg_bound);

    // Eve's "correct" credit for one outcome: exact hit on the message when
    // the basis reveals a position, otherwise the uniform-guess chance.
    auto eve_credit = [&](const MeasurementOutcome& o) {
        if (!o.position) return chance;
        const MessagePair guess{o.position->first - key.l, o.position->second - key.k};
        return guess == msg ? 1.0 : 0.0;
    };

    AttackStats stats;
    stats.method = method;
    stats.seed = seed;
    stats.basis = basis;

    if (method == AttackMethod::Enumeration) {
        if (key.spec.steps > kMaxEnumerationSteps) {
            throw ConfigError("enumeration is limited to t <= " +
                              std::to_string(kMaxEnumerationSteps));
        }
        const auto outcomes = measurement_outcomes(cipher, basis);
        for (const auto& o : outcomes) {
            const Decryption d = inspect_cipher(o.collapsed, key, msg_bound);
            stats.eve_correct_both += o.probability * eve_credit(o);
            if (d.tampered) stats.bob_detects += o.probability;
        }
        stats.trials = static_cast<long long>(outcomes.size());
        return stats;
    }

    if (trials < 1) throw ConfigError("Monte Carlo needs at least one trial");
    double correct = 0.0;
    long long detected = 0;
    for (long long i = 0; i < trials; ++i) {
        std::mt19937_64 rng(trial_seed(seed, static_cast<std::uint64_t>(i)));
        const MeasurementOutcome o = measure(cipher, basis, rng);
        correct += eve_credit(o);
        if (inspect_cipher(o.collapsed, key, msg_bound).tampered) ++detected;
    }
    stats.trials = trials;
    stats.eve_correct_both = correct / static_cast<double>(trials);
    stats.bob_detects = static_cast<double>(detected) / static_cast<double>(trials);
    return stats;
}

KeySpace KeyGrid::key_space() const {
    return {static_cast<double>(coins.size()), static_cast<double>(steps.size()), position_bound};
}

KeyGrid KeyGrid::random_coins(std::size_t count, std::vector<int> steps, int position_bound,
                              std::uint64_t seed, std::optional<CoinParams> exclude) {
    KeyGrid grid;
    grid.steps = std::move(steps);
    grid.position_bound = position_bound;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
    while (grid.coins.size() < count) {
        const CoinParams c{angle(rng), angle(rng), angle(rng)};
        if (exclude && c == *exclude) continue;
        grid.coins.push_back(c);
    }
    return grid;
}

AttackStats mitm_key_guess(const PrivateKey& key, const MessagePair& msg, int msg_bound,
                           const KeyGrid& grid, long long trials, std::uint64_t seed) {
    if (grid.coins.empty() || grid.steps.empty()) throw ConfigError("empty guess grid");
    if (trials < 1) throw ConfigError("MITM simulation needs at least one trial");
    if (grid.position_bound < 0) throw ConfigError("negative grid position bound");
    const int max_steps = *std::max_element(grid.steps.begin(), grid.steps.end());
    if (max_steps < 1) throw ConfigError("grid step counts must be >= 1");

    const PublicKey pub = keygen(key, msg_bound);
    const WalkerState cipher = encrypt(pub, msg);
    // room for Eve's inverse walk of up to max_steps
    const WalkerState padded = cipher.resized(cipher.half_width() + max_steps);

    std::uniform_int_distribution<std::size_t> pick_coin(0, grid.coins.size() - 1);
    std::uniform_int_distribution<std::size_t> pick_steps(0, grid.steps.size() - 1);
    std::uniform_int_distribution<int> pick_pos(-grid.position_bound, grid.position_bound);

    long long correct = 0;
    long long argmax_hits = 0;
    long long detected = 0;
    for (long long i = 0; i < trials; ++i) {
        std::mt19937_64 rng(trial_seed(seed, static_cast<std::uint64_t>(i)));
        PrivateKey guess;
        guess.spec = EvolutionSpec::custom(grid.coins[pick_coin(rng)], grid.steps[pick_steps(rng)]);
        guess.l = pick_pos(rng);
        guess.k = pick_pos(rng);
        guess.q = key.q;
        const Decryption d = inspect_cipher(padded, guess, msg_bound);
        if (d.message == msg) {
            ++argmax_hits;
            if (!d.tampered && d.in_range) ++correct;
        }
        if (d.tampered) ++detected;
    }

    AttackStats stats;
    stats.method = AttackMethod::MonteCarlo;
    stats.trials = trials;
    stats.seed = seed;
    stats.basis = EveBasis::None;
    stats.eve_correct_both = static_cast<double>(correct) / static_cast<double>(trials);
    stats.bob_detects = static_cast<double>(detected) / static_cast<double>(trials);
    stats.argmax_correct = static_cast<double>(argmax_hits) / static_cast<double>(trials);
    return stats;
}

}  // namespace aqw
