#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "aqw/protocol.hpp"

namespace aqw::cli {

/// Process exit codes.
enum Exit : int { kOk = 0, kFailure = 1, kTamper = 2, kConfig = 3 };

/// Coin selection shared by several commands: a preset, or explicit angles.
struct CoinOptions {
    std::string preset = "m1";
    std::optional<std::string> alpha;
    std::optional<std::string> beta;
    std::optional<std::string> gamma;

    [[nodiscard]] EvolutionSpec spec(int steps) const;
};

struct KeyOptions {
    CoinOptions coin;
    int steps = 2;
    int l = 0;
    int k = 0;
    std::string theta = "pi/2";
    std::string phi = "pi";
    int msg_bound = 3;

    [[nodiscard]] PrivateKey key() const;
};

struct KeygenOptions {
    KeyOptions key;
    std::string private_out = "bob.key";
    std::string public_out = "public.aqw";
    bool binary = false;
    bool json = false;
};

struct EncryptOptions {
    std::string public_in = "public.aqw";
    int m = 0;
    int n = 0;
    std::string out = "cipher.aqw";
    bool binary = false;
};

struct DecryptOptions {
    std::string private_in = "bob.key";
    std::string cipher_in = "cipher.aqw";
    /// Overrides the coin stored in the private key.
    std::optional<std::string> preset;
    bool json = false;
};

struct SweepOptions {
    CoinOptions coin;
    int t_min = 1;
    int t_max = 10;
    std::vector<std::string> thetas{"pi/2"};
    std::string phi = "pi";
    std::optional<std::string> metric;
    bool force = false;
    std::string out;  ///< empty: stdout
};

struct SecurityReportOptions {
    std::string operators = "1";      ///< D, may be written 2^80
    std::string step_choices = "1";   ///< |tau|
    int position_bound = 1;           ///< N
    double floor_bits = 64.0;
    bool json = false;
};

struct AttackOptions {
    KeyOptions key;
    std::string mode = "intercept";       ///< intercept | mitm
    std::string method = "enumeration";   ///< enumeration | monte-carlo
    std::string basis = "position-coin";
    int m = 1;
    int n = 2;
    long long trials = 10000;
    std::uint64_t seed = 1;
    std::size_t grid_coins = 10000;
    std::vector<int> grid_steps;  ///< empty: the key's t
    int grid_position_bound = 1;
    bool json = false;
};

struct CircuitOptions {
    CoinOptions coin;
    int steps = 2;
    std::string direction = "generate";
    bool json = false;
};

struct BobOptions {
    std::string listen = "unix:/tmp/aqw-bob.sock";
    std::string private_in = "bob.key";
    int sessions = 1;
    bool verbose = false;
};

struct AliceOptions {
    std::string connect = "unix:/tmp/aqw-bob.sock";
    int m = 0;
    int n = 0;
    bool verbose = false;
};

struct EveOptions {
    std::string listen = "unix:/tmp/aqw-eve.sock";
    std::string bob = "unix:/tmp/aqw-bob.sock";
    std::string basis = "position-coin";
    std::uint64_t seed = 1;
    int sessions = 1;
    bool verbose = false;
};

/// Root seed from AQW_SEED, or 1.
[[nodiscard]] std::uint64_t default_seed();

int keygen(const KeygenOptions& o, std::ostream& out);
int encrypt(const EncryptOptions& o, std::ostream& out);
int decrypt(const DecryptOptions& o, std::ostream& out);
int sweep(const SweepOptions& o, std::ostream& out, std::ostream& err);
int security_report(const SecurityReportOptions& o, std::ostream& out);
int attack(const AttackOptions& o, std::ostream& out);
int circuit(const CircuitOptions& o, std::ostream& out);
int bob(const BobOptions& o, std::ostream& out);
int alice(const AliceOptions& o, std::ostream& out);
int eve(const EveOptions& o, std::ostream& out);

}  // namespace aqw::cli
