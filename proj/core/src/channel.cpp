#include "aqw/channel.hpp"

#include <cerrno>
#include <charconv>
#include <cstring>
#include <string>

#include <netdb.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <sys/un.h>
#include <unistd.h>

namespace aqw {

namespace {

[[noreturn]] void throw_errno(const std::string& what) {
    throw ChannelError(what + ": " + std::strerror(errno));
}

sockaddr_un unix_address(const std::string& path) {
    sockaddr_un addr{};
    addr.sun_family = AF_UNIX;
    if (path.size() >= sizeof addr.sun_path) throw ChannelError("unix socket path too long: " + path);
    std::memcpy(addr.sun_path, path.c_str(), path.size() + 1);
    return addr;
}

struct AddrInfo {
    addrinfo* head = nullptr;
    ~AddrInfo() {
        if (head) freeaddrinfo(head);
    }
};

void resolve(const Endpoint& ep, bool passive, AddrInfo& out) {
    addrinfo hints{};
    hints.ai_family = AF_UNSPEC;
    hints.ai_socktype = SOCK_STREAM;
    if (passive) hints.ai_flags = AI_PASSIVE;
    const std::string port = std::to_string(ep.port);
    const int rc = getaddrinfo(ep.path.empty() ? nullptr : ep.path.c_str(), port.c_str(), &hints, &out.head);
    if (rc != 0) throw ChannelError("cannot resolve " + ep.str() + ": " + gai_strerror(rc));
}

std::string describe(const char* dir, const Frame& f) {
    return std::string(dir) + " " + std::string(frame_kind_name(f.kind)) + " (" +
           std::to_string(f.payload.size()) + " bytes)";
}

Bytes text_bytes(std::string_view s) { return {s.begin(), s.end()}; }

std::string payload_text(const Frame& f) { return {f.payload.begin(), f.payload.end()}; }

/// Sends an ERROR frame if the transport still allows it, then throws.
[[noreturn]] void abort_session(Socket& sock, const std::string& why) {
    try {
        sock.send_frame({FrameKind::Error, text_bytes(why)});
    } catch (const ChannelError&) {
    }
    throw ProtocolError(why);
}

Frame expect(Socket& sock, SessionSequence& seq, FrameKind wanted, std::vector<std::string>& log) {
    Frame f = sock.receive_frame();
    log.push_back(describe("recv", f));
    if (f.kind == FrameKind::Error) {
        seq.advance(f.kind);
        throw ProtocolError("peer reported error: " + payload_text(f));
    }
    if (f.kind != wanted) {
        abort_session(sock, "expected " + std::string(frame_kind_name(wanted)) + ", got " +
                                std::string(frame_kind_name(f.kind)));
    }
    seq.advance(f.kind);
    return f;
}

void send(Socket& sock, SessionSequence& seq, Frame f, std::vector<std::string>& log) {
    seq.advance(f.kind);
    log.push_back(describe("send", f));
    sock.send_frame(f);
}

}  // namespace

Endpoint Endpoint::parse(std::string_view text) {
    Endpoint ep;
    if (text.starts_with("unix:")) {
        ep.kind = Kind::Unix;
        ep.path = std::string(text.substr(5));
        if (ep.path.empty()) throw ConfigError("empty unix socket path");
        return ep;
    }
    const auto colon = text.rfind(':');
    if (colon == std::string_view::npos) throw ConfigError("endpoint must be unix:/path or host:port");
    ep.kind = Kind::Tcp;
    ep.path = std::string(text.substr(0, colon));
    const auto port = text.substr(colon + 1);
    auto [ptr, ec] = std::from_chars(port.data(), port.data() + port.size(), ep.port);
    if (ec != std::errc{} || ptr != port.data() + port.size()) {
        throw ConfigError("bad port in endpoint '" + std::string(text) + "'");
    }
    return ep;
}

std::string Endpoint::str() const {
    return kind == Kind::Unix ? "unix:" + path : path + ":" + std::to_string(port);
}

Socket::~Socket() {
    if (fd_ >= 0) ::close(fd_);
}

Socket::Socket(Socket&& other) noexcept : fd_(std::exchange(other.fd_, -1)) {}

Socket& Socket::operator=(Socket&& other) noexcept {
    if (this != &other) {
        if (fd_ >= 0) ::close(fd_);
        fd_ = std::exchange(other.fd_, -1);
    }
    return *this;
}

Socket Socket::connect(const Endpoint& ep) {
    if (ep.kind == Endpoint::Kind::Unix) {
        Socket s(::socket(AF_UNIX, SOCK_STREAM, 0));
        if (!s.valid()) throw_errno("socket");
        const sockaddr_un addr = unix_address(ep.path);
        if (::connect(s.fd_, reinterpret_cast<const sockaddr*>(&addr), sizeof addr) != 0) {
            throw_errno("connect " + ep.str());
        }
        return s;
    }
    AddrInfo info;
    resolve(ep, false, info);
    for (addrinfo* ai = info.head; ai; ai = ai->ai_next) {
        Socket s(::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol));
        if (!s.valid()) continue;
        if (::connect(s.fd_, ai->ai_addr, ai->ai_addrlen) == 0) return s;
    }
    throw_errno("connect " + ep.str());
}

void Socket::write_all(std::span<const std::uint8_t> bytes) {
    std::size_t done = 0;
    while (done < bytes.size()) {
        const ssize_t n = ::send(fd_, bytes.data() + done, bytes.size() - done, MSG_NOSIGNAL);
        if (n < 0) {
            if (errno == EINTR) continue;
            throw_errno("send");
        }
        done += static_cast<std::size_t>(n);
    }
}

void Socket::read_exact(std::span<std::uint8_t> out) {
    std::size_t done = 0;
    while (done < out.size()) {
        const ssize_t n = ::recv(fd_, out.data() + done, out.size() - done, 0);
        if (n < 0) {
            if (errno == EINTR) continue;
            throw_errno("recv");
        }
        if (n == 0) throw ChannelError("peer closed the connection");
        done += static_cast<std::size_t>(n);
    }
}

void Socket::send_frame(const Frame& frame) { write_all(encode_frame(frame)); }

Frame Socket::receive_frame() {
    std::array<std::uint8_t, 5> header{};
    read_exact(header);
    FrameHeader h{};
    try {
        h = decode_frame_header(header);
    } catch (const ParseError& e) {
        throw ProtocolError(e.what());
    }
    Frame f{h.kind, Bytes(h.payload_size)};
    read_exact(f.payload);
    return f;
}

Listener::Listener(const Endpoint& ep, int backlog) : endpoint_(ep) {
    if (ep.kind == Endpoint::Kind::Unix) {
        fd_ = ::socket(AF_UNIX, SOCK_STREAM, 0);
        if (fd_ < 0) throw_errno("socket");
        ::unlink(ep.path.c_str());
        const sockaddr_un addr = unix_address(ep.path);
        if (::bind(fd_, reinterpret_cast<const sockaddr*>(&addr), sizeof addr) != 0) {
            ::close(fd_);
            throw_errno("bind " + ep.str());
        }
    } else {
        AddrInfo info;
        resolve(ep, true, info);
        for (addrinfo* ai = info.head; ai; ai = ai->ai_next) {
            fd_ = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
            if (fd_ < 0) continue;
            const int one = 1;
            ::setsockopt(fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
            if (::bind(fd_, ai->ai_addr, ai->ai_addrlen) == 0) break;
            ::close(fd_);
            fd_ = -1;
        }
        if (fd_ < 0) throw_errno("bind " + ep.str());
        sockaddr_storage bound{};
        socklen_t len = sizeof bound;
        if (::getsockname(fd_, reinterpret_cast<sockaddr*>(&bound), &len) == 0) {
            if (bound.ss_family == AF_INET) {
                endpoint_.port = ntohs(reinterpret_cast<sockaddr_in*>(&bound)->sin_port);
            } else if (bound.ss_family == AF_INET6) {
                endpoint_.port = ntohs(reinterpret_cast<sockaddr_in6*>(&bound)->sin6_port);
            }
        }
    }
    if (::listen(fd_, backlog) != 0) {
        ::close(fd_);
        throw_errno("listen " + ep.str());
    }
}

Listener::~Listener() {
    if (fd_ >= 0) ::close(fd_);
    if (endpoint_.kind == Endpoint::Kind::Unix) ::unlink(endpoint_.path.c_str());
}

Socket Listener::accept() {
    for (;;) {
        const int fd = ::accept(fd_, nullptr, nullptr);
        if (fd >= 0) return Socket(fd);
        if (errno != EINTR) throw_errno("accept");
    }
}

void SessionSequence::advance(FrameKind kind) {
    if (aborted_ || complete()) throw ProtocolError("frame after the session ended");
    if (kind == FrameKind::Error) {
        aborted_ = true;
        return;
    }
    static constexpr FrameKind order[] = {FrameKind::PubKey, FrameKind::Cipher, FrameKind::Ack};
    if (kind != order[stage_]) {
        throw ProtocolError("unexpected " + std::string(frame_kind_name(kind)) + " frame, expected " +
                            std::string(frame_kind_name(order[stage_])));
    }
    ++stage_;
}

std::string_view session_outcome_name(SessionOutcome o) {
    switch (o) {
        case SessionOutcome::Decoded: return "decoded";
        case SessionOutcome::TamperDetected: return "tamper-detected";
        case SessionOutcome::OutOfRange: return "out-of-range";
    }
    return "?";
}

BobSession run_bob(Listener& listener, const PrivateKey& key, int msg_bound) {
    BobSession session;
    auto& log = session.transcript;
    SessionSequence seq;
    const PublicKey pub = keygen(key, msg_bound);

    Socket sock = listener.accept();
    log.push_back("bob: accepted connection on " + listener.endpoint().str());
    send(sock, seq, {FrameKind::PubKey, save_public_key(pub, StateEncoding::Binary)}, log);

    const Frame cipher_frame = expect(sock, seq, FrameKind::Cipher, log);
    WalkerState cipher;
    try {
        cipher = load_state(cipher_frame.payload);
    } catch (const Error& e) {
        abort_session(sock, std::string("unreadable cipher: ") + e.what());
    }
    if (cipher.half_width() != pub.state.half_width()) {
        abort_session(sock, "cipher lattice does not match the public key");
    }

    session.decryption = inspect_cipher(cipher, key, msg_bound);
    if (session.decryption.tampered) {
        session.outcome = SessionOutcome::TamperDetected;
    } else if (!session.decryption.in_range) {
        session.outcome = SessionOutcome::OutOfRange;
    }
    const std::string status = session.outcome == SessionOutcome::Decoded ? "ok" : "tamper";
    send(sock, seq, {FrameKind::Ack, text_bytes(status)}, log);
    log.push_back("bob: outcome " + std::string(session_outcome_name(session.outcome)) + " (" +
                  std::to_string(session.decryption.message.m) + ", " +
                  std::to_string(session.decryption.message.n) + ") fidelity " +
                  std::to_string(session.decryption.fidelity_score));
    return session;
}

BobSession run_bob(const Endpoint& listen, const PrivateKey& key, int msg_bound) {
    Listener listener(listen);
    return run_bob(listener, key, msg_bound);
}

AliceSession run_alice(const Endpoint& connect, const MessagePair& msg) {
    AliceSession session;
    auto& log = session.transcript;
    SessionSequence seq;
    Socket sock = Socket::connect(connect);
    log.push_back("alice: connected to " + connect.str());

    const Frame pk_frame = expect(sock, seq, FrameKind::PubKey, log);
    PublicKey pub;
    try {
        pub = load_public_key(pk_frame.payload);
    } catch (const Error& e) {
        abort_session(sock, std::string("unreadable public key: ") + e.what());
    }
    const WalkerState cipher = encrypt(pub, msg);
    send(sock, seq, {FrameKind::Cipher, save_state(cipher, StateEncoding::Binary)}, log);

    const Frame ack = expect(sock, seq, FrameKind::Ack, log);
    session.ack = payload_text(ack);
    log.push_back("alice: bob acknowledged '" + session.ack + "'");
    return session;
}

EveSession run_eve(Listener& listener, const Endpoint& bob, EveBasis basis, std::mt19937_64& rng) {
    EveSession session;
    auto& log = session.transcript;
    SessionSequence seq;
    Socket alice = listener.accept();
    Socket upstream = Socket::connect(bob);
    log.push_back("eve: relaying " + listener.endpoint().str() + " -> " + bob.str());

    const Frame pk = expect(upstream, seq, FrameKind::PubKey, log);
    alice.send_frame(pk);

    Frame cipher = alice.receive_frame();
    log.push_back(describe("intercept", cipher));
    seq.advance(cipher.kind);
    if (cipher.kind != FrameKind::Cipher) {
        upstream.send_frame(cipher);
        throw ProtocolError("alice sent " + std::string(frame_kind_name(cipher.kind)));
    }
    const WalkerState state = load_state(cipher.payload);
    session.measurement = measure(state, basis, rng);
    log.push_back("eve: measured in basis " + std::string(eve_basis_name(basis)));
    upstream.send_frame({FrameKind::Cipher, save_state(session.measurement.collapsed, StateEncoding::Binary)});

    const Frame ack = upstream.receive_frame();
    log.push_back(describe("relay", ack));
    alice.send_frame(ack);
    seq.advance(ack.kind);
    return session;
}

}  // namespace aqw
