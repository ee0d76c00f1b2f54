#pragma once

// Simulated quantum channel: Bob, Alice and an optional Eve exchange framed
// state descriptions over local stream sockets.
//
//     Bob  --PUBKEY-->  Alice
//     Bob  <--CIPHER--  Alice
//     Bob  ---ACK--->   Alice      (payload: "ok" or "tamper")
//
// Note this transmits full classical descriptions of quantum states; nothing
// here enforces no-cloning.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "aqw/protocol.hpp"
#include "aqw/security.hpp"
#include "aqw/wire.hpp"

namespace aqw {

/// "unix:/path/to/socket" or "host:port" (TCP).
struct Endpoint {
    enum class Kind { Unix, Tcp };
    Kind kind = Kind::Unix;
    std::string path;  ///< socket path, or host for TCP
    std::uint16_t port = 0;

    [[nodiscard]] static Endpoint parse(std::string_view text);
    [[nodiscard]] std::string str() const;
};

/// Connected stream socket (owning).
class Socket {
public:
    Socket() = default;
    explicit Socket(int fd) : fd_(fd) {}
    ~Socket();
    Socket(Socket&& other) noexcept;
    Socket& operator=(Socket&& other) noexcept;
    Socket(const Socket&) = delete;
    Socket& operator=(const Socket&) = delete;

    [[nodiscard]] static Socket connect(const Endpoint& ep);

    void write_all(std::span<const std::uint8_t> bytes);
    void read_exact(std::span<std::uint8_t> out);

    void send_frame(const Frame& frame);
    [[nodiscard]] Frame receive_frame();

    [[nodiscard]] int fd() const { return fd_; }
    [[nodiscard]] bool valid() const { return fd_ >= 0; }

private:
    int fd_ = -1;
};

/// Bound, listening socket. Unix socket files are unlinked on destruction.
class Listener {
public:
    explicit Listener(const Endpoint& ep, int backlog = 16);
    ~Listener();
    Listener(const Listener&) = delete;
    Listener& operator=(const Listener&) = delete;

    [[nodiscard]] Socket accept();
    /// Actual endpoint; resolves port 0 to the kernel-chosen port.
    [[nodiscard]] const Endpoint& endpoint() const { return endpoint_; }

private:
    int fd_ = -1;
    Endpoint endpoint_;
};

/// Checks that the frames seen on one session follow PUBKEY -> CIPHER -> ACK.
/// An ERROR frame ends the session from any state.
class SessionSequence {
public:
    /// Throws ProtocolError for any out-of-order kind.
    void advance(FrameKind kind);
    [[nodiscard]] bool complete() const { return stage_ == 3; }
    [[nodiscard]] bool aborted() const { return aborted_; }

private:
    int stage_ = 0;
    bool aborted_ = false;
};

enum class SessionOutcome { Decoded, TamperDetected, OutOfRange };

[[nodiscard]] std::string_view session_outcome_name(SessionOutcome o);

struct BobSession {
    SessionOutcome outcome = SessionOutcome::Decoded;
    Decryption decryption;
    std::vector<std::string> transcript;
};

struct AliceSession {
    std::string ack;  ///< Bob's ACK payload
    std::vector<std::string> transcript;
};

struct EveSession {
    MeasurementOutcome measurement;
    std::vector<std::string> transcript;
};

/// Serves one session on an accepted connection. Throws ChannelError on I/O
/// failure and ProtocolError (after sending an ERROR frame) on bad ordering.
[[nodiscard]] BobSession run_bob(Listener& listener, const PrivateKey& key, int msg_bound);
[[nodiscard]] BobSession run_bob(const Endpoint& listen, const PrivateKey& key, int msg_bound);

[[nodiscard]] AliceSession run_alice(const Endpoint& connect, const MessagePair& msg);

/// Accepts Alice on `listener`, connects to Bob, relays PUBKEY and ACK
/// untouched and measures the CIPHER in `basis` before forwarding it.
[[nodiscard]] EveSession run_eve(Listener& listener, const Endpoint& bob, EveBasis basis,
                                 std::mt19937_64& rng);

}  // namespace aqw
