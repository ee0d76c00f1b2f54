#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iterator>
#include <ostream>
#include <random>
#include <sstream>

#include "json.hpp"

#include "aqw/angle.hpp"
#include "aqw/channel.hpp"
#include "aqw/circuit.hpp"
#include "aqw/entanglement.hpp"
#include "aqw/security.hpp"
#include "aqw/sweep.hpp"
#include "aqw/wire.hpp"

namespace aqw::cli {

using nlohmann::json;

namespace {

Bytes read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open '" + path + "'");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, const Bytes& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write '" + path + "'");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

void write_file(const std::string& path, const std::string& text) {
    write_file(path, Bytes(text.begin(), text.end()));
}

Preset preset_from(const std::string& name) {
    auto p = parse_preset(name);
    if (!p) throw ConfigError("unknown preset '" + name + "' (m1, g1 or custom)");
    return *p;
}

/// "2^80", "1e6" or a plain count.
double parse_count(const std::string& text) {
    const auto caret = text.find('^');
    double v = 0.0;
    try {
        if (caret == std::string::npos) {
            v = std::stod(text);
        } else {
            v = std::pow(std::stod(text.substr(0, caret)), std::stod(text.substr(caret + 1)));
        }
    } catch (const std::exception&) {
        throw ConfigError("bad count '" + text + "'");
    }
    return v;
}

std::string fixed(double v, int digits = 4) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

json coin_json(const CoinParams& c) {
    return {{"alpha", render_angle(c.alpha)}, {"beta", render_angle(c.beta)}, {"gamma", render_angle(c.gamma)}};
}

void print_transcript(std::ostream& out, const std::vector<std::string>& log) {
    for (const auto& line : log) out << "  " << line << '\n';
}

}  // namespace

EvolutionSpec CoinOptions::spec(int steps) const {
    const Preset p = preset_from(preset);
    if (p != Preset::Custom) {
        if (alpha || beta || gamma) throw ConfigError("--alpha/--beta/--gamma need --preset custom");
        return EvolutionSpec::from_preset(p, steps);
    }
    if (!alpha || !beta || !gamma) throw ConfigError("--preset custom needs --alpha, --beta and --gamma");
    return EvolutionSpec::custom({parse_angle(*alpha), parse_angle(*beta), parse_angle(*gamma)}, steps);
}

PrivateKey KeyOptions::key() const {
    if (steps < 1) throw ConfigError("--t must be at least 1");
    if (msg_bound < 0) throw ConfigError("--msg-bound must be non-negative");
    return {coin.spec(steps), l, k, {parse_angle(theta), parse_angle(phi)}};
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("AQW_SEED")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0') return v;
        throw ConfigError("AQW_SEED must be an unsigned integer");
    }
    return 1;
}

int keygen(const KeygenOptions& o, std::ostream& out) {
    const PrivateKey key = o.key.key();
    const PublicKey pub = keygen(key, o.key.msg_bound);
    const StateEncoding enc = o.binary ? StateEncoding::Binary : StateEncoding::Text;
    write_file(o.private_out, save_private_key(key, o.key.msg_bound));
    write_file(o.public_out, save_public_key(pub, enc));

    const bool g1_style = key.spec.preset == Preset::G1;
    double figure = 0.0;
    if (g1_style) {
        figure = position_negativity(pub.state);
    } else {
        figure = entanglement_report(pub.state).pi_tangle;
    }
    const char* label = g1_style ? "N_xy" : "pi_tangle";
    if (o.json) {
        out << json{{"private_key", o.private_out},
                    {"public_key", o.public_out},
                    {"preset", preset_name(key.spec.preset)},
                    {"coin", coin_json(key.spec.coin)},
                    {"t", key.spec.steps},
                    {"half_width", pub.state.half_width()},
                    {"amplitudes", pub.state.size()},
                    {label, figure}}
                   .dump(2)
            << '\n';
    } else {
        out << "private key  " << o.private_out << '\n'
            << "public key   " << o.public_out << " (" << pub.state.size() << " amplitudes, half width "
            << pub.state.half_width() << ")\n"
            << label << ' ' << fixed(figure) << '\n';
    }
    return kOk;
}

int encrypt(const EncryptOptions& o, std::ostream& out) {
    const PublicKey pub = load_public_key(read_file(o.public_in));
    const WalkerState cipher = encrypt(pub, {o.m, o.n});
    write_file(o.out, save_state(cipher, o.binary ? StateEncoding::Binary : StateEncoding::Text));
    out << "cipher " << o.out << '\n';
    return kOk;
}

int decrypt(const DecryptOptions& o, std::ostream& out) {
    const Bytes key_bytes = read_file(o.private_in);
    auto [key, bound] = load_private_key({reinterpret_cast<const char*>(key_bytes.data()), key_bytes.size()});
    if (o.preset) {
        const Preset p = preset_from(*o.preset);
        if (p == Preset::Custom) throw ConfigError("--preset override must be m1 or g1");
        key.spec = EvolutionSpec::from_preset(p, key.spec.steps);
    }
    const WalkerState cipher = load_state(read_file(o.cipher_in));
    const Decryption d = inspect_cipher(cipher, key, bound);
    const char* verdict = d.tampered ? "TAMPER-DETECTED" : (d.in_range ? "ok" : "OUT-OF-RANGE");
    if (o.json) {
        out << json{{"m", d.message.m},
                    {"n", d.message.n},
                    {"fidelity_score", d.fidelity_score},
                    {"coin_fidelity", d.coin_fidelity},
                    {"verdict", verdict}}
                   .dump(2)
            << '\n';
    } else if (d.tampered) {
        out << "TAMPER-DETECTED (fidelity " << fixed(d.fidelity_score, 9) << ", coin fidelity "
            << fixed(d.coin_fidelity, 9) << ")\n";
    } else if (!d.in_range) {
        out << "OUT-OF-RANGE (" << d.message.m << ", " << d.message.n << ") exceeds bound " << bound
            << '\n';
    } else {
        out << '(' << d.message.m << ", " << d.message.n << ")\n"
            << "coin fidelity " << fixed(d.coin_fidelity, 12) << '\n';
    }
    return d.tampered || !d.in_range ? kTamper : kOk;
}

int sweep(const SweepOptions& o, std::ostream& out, std::ostream& err) {
    SweepConfig cfg;
    cfg.coin_spec = o.coin.spec(1);
    cfg.t_min = o.t_min;
    cfg.t_max = o.t_max;
    for (const auto& th : o.thetas) cfg.thetas.push_back(parse_angle(th));
    cfg.phi = parse_angle(o.phi);
    if (o.metric) {
        cfg.metric = parse_sweep_metric(*o.metric);
        if (!cfg.metric) throw ConfigError("unknown metric '" + *o.metric + "' (pi_tangle or n_xy)");
    }
    cfg.force = o.force;
    if (o.force && o.t_max > kSweepStepGuard) {
        err << "warning: t up to " << o.t_max << " needs large eigensolves; this may take a while\n";
    }
    const std::string csv = sweep_csv(run_sweep(cfg));
    if (o.out.empty()) {
        out << csv;
    } else {
        write_file(o.out, csv);
    }
    return kOk;
}

int security_report(const SecurityReportOptions& o, std::ostream& out) {
    const KeySpace ks{parse_count(o.operators), parse_count(o.step_choices), o.position_bound};
    const SecurityReport r = security_report(ks, o.floor_bits);
    if (o.json) {
        out << json{{"D", ks.operators},
                    {"tau", ks.step_choices},
                    {"N", ks.position_bound},
                    {"von_neumann_bits", r.von_neumann_bits},
                    {"shannon_bits", r.shannon_bits},
                    {"holevo_bound_bits", r.holevo_bound_bits},
                    {"gap_bits", r.gap_bits},
                    {"floor_bits", r.floor_bits},
                    {"verdict", r.secure ? "SECURE" : "INSECURE-CONFIG"}}
                   .dump(2)
            << '\n';
        return kOk;
    }
    out << "S(rho_pk)        " << fixed(r.von_neumann_bits, 6) << " bits\n"
        << "H(private key)   " << fixed(r.shannon_bits, 6) << " bits\n"
        << "Holevo bound     " << fixed(r.holevo_bound_bits, 6) << " bits\n"
        << "gap              " << fixed(r.gap_bits, 6) << " bits (floor " << fixed(r.floor_bits, 1)
        << ")\n"
        << (r.secure ? "SECURE" : "INSECURE-CONFIG") << '\n';
    return kOk;
}

int attack(const AttackOptions& o, std::ostream& out) {
    const PrivateKey key = o.key.key();
    const MessagePair msg{o.m, o.n};
    AttackStats stats;
    if (o.mode == "intercept") {
        AttackMethod method = AttackMethod::Enumeration;
        if (o.method == "monte-carlo") {
            method = AttackMethod::MonteCarlo;
        } else if (o.method != "enumeration") {
            throw ConfigError("unknown method '" + o.method + "'");
        }
        const auto basis = parse_eve_basis(o.basis);
        if (!basis) throw ConfigError("unknown basis '" + o.basis + "'");
        stats = intercept_resend(key, msg, o.key.msg_bound, method, o.trials, o.seed, *basis);
    } else if (o.mode == "mitm") {
        std::vector<int> steps = o.grid_steps;
        if (steps.empty()) steps.push_back(key.spec.steps);
        const KeyGrid grid =
            KeyGrid::random_coins(o.grid_coins, steps, o.grid_position_bound, o.seed, key.spec.coin);
        stats = mitm_key_guess(key, msg, o.key.msg_bound, grid, o.trials, o.seed);
    } else {
        throw ConfigError("unknown attack mode '" + o.mode + "' (intercept or mitm)");
    }

    if (o.json) {
        json j{{"mode", o.mode},
               {"method", attack_method_name(stats.method)},
               {"basis", eve_basis_name(stats.basis)},
               {"trials", stats.trials},
               {"seed", stats.seed},
               {"eve_correct_both", stats.eve_correct_both},
               {"bob_detects", stats.bob_detects}};
        if (stats.argmax_correct) j["argmax_correct"] = *stats.argmax_correct;
        out << j.dump(2) << '\n';
        return kOk;
    }
    out << "mode             " << o.mode << '\n'
        << "method           " << attack_method_name(stats.method) << '\n';
    if (o.mode == "intercept") out << "basis            " << eve_basis_name(stats.basis) << '\n';
    out << "trials           " << stats.trials << '\n'
        << "seed             " << stats.seed << '\n'
        << "eve correct      " << fixed(stats.eve_correct_both, 6) << '\n'
        << "bob detects      " << fixed(stats.bob_detects, 6) << '\n';
    if (stats.argmax_correct) out << "argmax correct   " << fixed(*stats.argmax_correct, 6) << '\n';
    return kOk;
}

int circuit(const CircuitOptions& o, std::ostream& out) {
    CircuitDirection dir = CircuitDirection::Generate;
    if (o.direction == "decrypt") {
        dir = CircuitDirection::Decrypt;
    } else if (o.direction != "generate") {
        throw ConfigError("unknown direction '" + o.direction + "' (generate or decrypt)");
    }
    const auto c = photonic_circuit(o.coin.spec(o.steps).coin, o.steps, dir);
    if (!o.json) {
        out << circuit_text(c);
        return kOk;
    }
    json stages = json::array();
    for (const auto& d : c.stages) {
        json s{{"kind", device_kind_name(d.kind)}, {"role", d.role}};
        if (d.coin) s["coin"] = coin_json(*d.coin);
        stages.push_back(std::move(s));
    }
    out << json{{"direction", circuit_direction_name(c.direction)}, {"stages", stages}}.dump(2) << '\n';
    return kOk;
}

int bob(const BobOptions& o, std::ostream& out) {
    const Bytes key_bytes = read_file(o.private_in);
    const auto [key, bound] = load_private_key({reinterpret_cast<const char*>(key_bytes.data()), key_bytes.size()});
    Listener listener(Endpoint::parse(o.listen));
    int code = kOk;
    for (int i = 0; i < o.sessions; ++i) {
        const BobSession s = run_bob(listener, key, bound);
        if (o.verbose) print_transcript(out, s.transcript);
        switch (s.outcome) {
            case SessionOutcome::Decoded:
                out << '(' << s.decryption.message.m << ", " << s.decryption.message.n << ")\n";
                break;
            case SessionOutcome::TamperDetected:
                out << "TAMPER-DETECTED\n";
                code = kTamper;
                break;
            case SessionOutcome::OutOfRange:
                out << "OUT-OF-RANGE\n";
                code = kTamper;
                break;
        }
        out.flush();
    }
    return code;
}

int alice(const AliceOptions& o, std::ostream& out) {
    const AliceSession s = run_alice(Endpoint::parse(o.connect), {o.m, o.n});
    if (o.verbose) print_transcript(out, s.transcript);
    out << "ack " << s.ack << '\n';
    return s.ack == "ok" ? kOk : kTamper;
}

int eve(const EveOptions& o, std::ostream& out) {
    const auto basis = parse_eve_basis(o.basis);
    if (!basis) throw ConfigError("unknown basis '" + o.basis + "'");
    Listener listener(Endpoint::parse(o.listen));
    const Endpoint upstream = Endpoint::parse(o.bob);
    for (int i = 0; i < o.sessions; ++i) {
        std::mt19937_64 rng(trial_seed(o.seed, static_cast<std::uint64_t>(i)));
        const EveSession s = run_eve(listener, upstream, *basis, rng);
        if (o.verbose) print_transcript(out, s.transcript);
        out << "measured";
        if (s.measurement.position) {
            out << " (" << s.measurement.position->first << ", " << s.measurement.position->second << ')';
        }
        out << " p=" << fixed(s.measurement.probability, 6) << '\n';
        out.flush();
    }
    return kOk;
}

}  // namespace aqw::cli
