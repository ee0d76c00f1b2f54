// aqw: key generation, encryption and analysis for the alternate-walk cipher.
//
//   aqw keygen --preset m1 --t 2 --theta pi/2 --phi pi
//   aqw encrypt --public public.aqw --m 1 --n 2
//   aqw decrypt --private bob.key --cipher cipher.aqw
//
// Exit codes: 0 success, 1 transport/protocol failure, 2 tamper detected,
// 3 configuration or parse error.

#include <iostream>

#include "CLI11.hpp"

#include "aqw/errors.hpp"
#include "commands.hpp"

namespace {

using namespace aqw::cli;

void add_coin(CLI::App* app, CoinOptions& c) {
    app->add_option("--preset", c.preset, "m1, g1 or custom")->capture_default_str();
    app->add_option("--alpha", c.alpha, "coin angle, e.g. 5pi/16 (custom only)");
    app->add_option("--beta", c.beta, "coin phase (custom only)");
    app->add_option("--gamma", c.gamma, "coin phase (custom only)");
}

void add_key(CLI::App* app, KeyOptions& k) {
    add_coin(app, k.coin);
    app->add_option("--t", k.steps, "walk steps")->capture_default_str();
    app->add_option("--l", k.l, "initial x position")->capture_default_str();
    app->add_option("--k", k.k, "initial y position")->capture_default_str();
    app->add_option("--theta", k.theta, "coin state polar angle")->capture_default_str();
    app->add_option("--phi", k.phi, "coin state phase")->capture_default_str();
    app->add_option("--msg-bound", k.msg_bound, "largest |m|, |n|")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Alternate quantum walk public-key cipher simulator"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "aqw 0.1.0");

    std::uint64_t seed = 1;
    try {
        seed = default_seed();
    } catch (const aqw::ConfigError& e) {
        std::cerr << "aqw: " << e.what() << '\n';
        return kConfig;
    }

    KeygenOptions kg;
    auto* keygen_cmd = app.add_subcommand("keygen", "generate a private key and its public key state");
    add_key(keygen_cmd, kg.key);
    keygen_cmd->add_option("--private-out", kg.private_out)->capture_default_str();
    keygen_cmd->add_option("--public-out", kg.public_out)->capture_default_str();
    keygen_cmd->add_flag("--binary", kg.binary, "write the public key in binary form");
    keygen_cmd->add_flag("--json", kg.json);

    EncryptOptions en;
    auto* encrypt_cmd = app.add_subcommand("encrypt", "translate a public key by (m, n)");
    encrypt_cmd->add_option("--public", en.public_in)->capture_default_str();
    encrypt_cmd->add_option("--m", en.m)->required();
    encrypt_cmd->add_option("--n", en.n)->required();
    encrypt_cmd->add_option("--out", en.out)->capture_default_str();
    encrypt_cmd->add_flag("--binary", en.binary);

    DecryptOptions de;
    auto* decrypt_cmd = app.add_subcommand("decrypt", "recover (m, n) from a cipher state");
    decrypt_cmd->add_option("--private", de.private_in)->capture_default_str();
    decrypt_cmd->add_option("--cipher", de.cipher_in)->capture_default_str();
    decrypt_cmd->add_option("--preset", de.preset, "decrypt with this preset coin instead of the key's");
    decrypt_cmd->add_flag("--json", de.json);

    SweepOptions sw;
    auto* sweep_cmd = app.add_subcommand("sweep", "entanglement vs t as CSV");
    add_coin(sweep_cmd, sw.coin);
    sweep_cmd->add_option("--t-min", sw.t_min)->capture_default_str();
    sweep_cmd->add_option("--t-max", sw.t_max)->capture_default_str();
    sweep_cmd->add_option("--theta", sw.thetas, "one or more coin state angles")->capture_default_str();
    sweep_cmd->add_option("--phi", sw.phi)->capture_default_str();
    sweep_cmd->add_option("--metric", sw.metric, "pi_tangle or n_xy (default by preset)");
    sweep_cmd->add_flag("--force", sw.force, "allow t above 20");
    sweep_cmd->add_option("--out", sw.out, "CSV file (default stdout)");

    SecurityReportOptions sr;
    auto* report_cmd = app.add_subcommand("security-report", "entropy gap for a key space");
    report_cmd->add_option("--D", sr.operators, "walk operators, e.g. 2^80")->capture_default_str();
    report_cmd->add_option("--tau", sr.step_choices, "admissible step counts")->capture_default_str();
    report_cmd->add_option("--N", sr.position_bound, "initial position bound")->capture_default_str();
    report_cmd->add_option("--floor", sr.floor_bits, "required gap in bits")->capture_default_str();
    report_cmd->add_flag("--json", sr.json);

    AttackOptions at;
    at.seed = seed;
    auto* attack_cmd = app.add_subcommand("attack", "simulate intercept-resend or key-guessing MITM");
    add_key(attack_cmd, at.key);
    attack_cmd->add_option("--mode", at.mode, "intercept or mitm")->capture_default_str();
    attack_cmd->add_option("--method", at.method, "enumeration or monte-carlo")->capture_default_str();
    attack_cmd->add_option("--basis", at.basis, "none, position-coin, position or coin")->capture_default_str();
    attack_cmd->add_option("--m", at.m)->capture_default_str();
    attack_cmd->add_option("--n", at.n)->capture_default_str();
    attack_cmd->add_option("--trials", at.trials)->capture_default_str();
    attack_cmd->add_option("--seed", at.seed, "root seed (default $AQW_SEED or 1)");
    attack_cmd->add_option("--grid-coins", at.grid_coins, "MITM: random coins to guess from")->capture_default_str();
    attack_cmd->add_option("--grid-steps", at.grid_steps, "MITM: step counts to guess from (default t)");
    attack_cmd->add_option("--grid-n", at.grid_position_bound, "MITM: guessed |l|, |k| bound")->capture_default_str();
    attack_cmd->add_flag("--json", at.json);

    CircuitOptions ci;
    auto* circuit_cmd = app.add_subcommand("circuit", "photonic device list");
    add_coin(circuit_cmd, ci.coin);
    circuit_cmd->add_option("--t", ci.steps)->capture_default_str();
    circuit_cmd->add_option("--direction", ci.direction, "generate or decrypt")->capture_default_str();
    circuit_cmd->add_flag("--json", ci.json);

    BobOptions bo;
    auto* bob_cmd = app.add_subcommand("bob", "serve the public key and decrypt one or more sessions");
    bob_cmd->add_option("--listen", bo.listen, "unix:/path or host:port")->capture_default_str();
    bob_cmd->add_option("--private", bo.private_in)->capture_default_str();
    bob_cmd->add_option("--sessions", bo.sessions)->capture_default_str();
    bob_cmd->add_flag("-v,--verbose", bo.verbose, "print the frame transcript");

    AliceOptions al;
    auto* alice_cmd = app.add_subcommand("alice", "fetch the public key and send (m, n)");
    alice_cmd->add_option("--connect", al.connect)->capture_default_str();
    alice_cmd->add_option("--m", al.m)->required();
    alice_cmd->add_option("--n", al.n)->required();
    alice_cmd->add_flag("-v,--verbose", al.verbose);

    EveOptions ev;
    ev.seed = seed;
    auto* eve_cmd = app.add_subcommand("eve", "relay between Alice and Bob, measuring the cipher");
    eve_cmd->add_option("--listen", ev.listen)->capture_default_str();
    eve_cmd->add_option("--bob", ev.bob)->capture_default_str();
    eve_cmd->add_option("--basis", ev.basis)->capture_default_str();
    eve_cmd->add_option("--seed", ev.seed, "root seed (default $AQW_SEED or 1)");
    eve_cmd->add_option("--sessions", ev.sessions)->capture_default_str();
    eve_cmd->add_flag("-v,--verbose", ev.verbose);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kConfig;
    }

    try {
        if (*keygen_cmd) return keygen(kg, std::cout);
        if (*encrypt_cmd) return encrypt(en, std::cout);
        if (*decrypt_cmd) return decrypt(de, std::cout);
        if (*sweep_cmd) return sweep(sw, std::cout, std::cerr);
        if (*report_cmd) return security_report(sr, std::cout);
        if (*attack_cmd) return attack(at, std::cout);
        if (*circuit_cmd) return circuit(ci, std::cout);
        if (*bob_cmd) return bob(bo, std::cout);
        if (*alice_cmd) return alice(al, std::cout);
        if (*eve_cmd) return eve(ev, std::cout);
    } catch (const aqw::TamperDetected& e) {
        std::cout << "TAMPER-DETECTED\n";
        std::cerr << "aqw: " << e.what() << '\n';
        return kTamper;
    } catch (const aqw::ChannelError& e) {
        std::cerr << "aqw: " << e.what() << '\n';
        return kFailure;
    } catch (const aqw::ProtocolError& e) {
        std::cerr << "aqw: " << e.what() << '\n';
        return kFailure;
    } catch (const aqw::Error& e) {
        std::cerr << "aqw: " << e.what() << '\n';
        return kConfig;
    }
    return kConfig;
}
