#include "aqw/wire.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <map>
#include <set>
#include <sstream>

namespace aqw {

namespace {

constexpr std::string_view kTextStateMagic = "AQWS";
constexpr std::string_view kBinaryStateMagic = "AQWB";
constexpr std::string_view kPrivateKeyMagic = "AQWK";
constexpr std::string_view kTextPublicMagic = "AQWP";
constexpr std::string_view kBinaryPublicMagic = "AQPB";

// --- big-endian helpers ----------------------------------------------------

void put_u32(Bytes& out, std::uint32_t v) {
    for (int shift = 24; shift >= 0; shift -= 8) out.push_back(static_cast<std::uint8_t>(v >> shift));
}

void put_u64(Bytes& out, std::uint64_t v) {
    for (int shift = 56; shift >= 0; shift -= 8) out.push_back(static_cast<std::uint8_t>(v >> shift));
}

void put_magic(Bytes& out, std::string_view magic) { out.insert(out.end(), magic.begin(), magic.end()); }

class Reader {
public:
    explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    std::span<const std::uint8_t> take(std::size_t n) {
        if (bytes_.size() - pos_ < n) throw ParseError("unexpected end of binary record");
        auto s = bytes_.subspan(pos_, n);
        pos_ += n;
        return s;
    }
    std::uint8_t u8() { return take(1)[0]; }
    std::uint32_t u32() {
        std::uint32_t v = 0;
        for (std::uint8_t b : take(4)) v = (v << 8) | b;
        return v;
    }
    std::int32_t i32() { return static_cast<std::int32_t>(u32()); }
    std::uint64_t u64() {
        std::uint64_t v = 0;
        for (std::uint8_t b : take(8)) v = (v << 8) | b;
        return v;
    }
    [[nodiscard]] std::span<const std::uint8_t> rest() const { return bytes_.subspan(pos_); }
    [[nodiscard]] bool done() const { return pos_ == bytes_.size(); }

private:
    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

bool has_magic(std::span<const std::uint8_t> bytes, std::string_view magic) {
    return bytes.size() >= magic.size() &&
           std::memcmp(bytes.data(), magic.data(), magic.size()) == 0;
}

// --- text helpers ----------------------------------------------------------

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.push_back(line);
        start = end + 1;
    }
    while (!lines.empty() && lines.back().empty()) lines.pop_back();
    return lines;
}

std::vector<std::string_view> split_tokens(std::string_view line) {
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
        if (j > i) tokens.push_back(line.substr(i, j - i));
        i = j;
    }
    return tokens;
}

template <typename Int>
Int parse_int(std::string_view token) {
    Int v{};
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
        throw ParseError("expected an integer, got '" + std::string(token) + "'");
    }
    return v;
}

/// Reads "name value" from a line.
std::string_view field(std::string_view line, std::string_view name) {
    const auto tokens = split_tokens(line);
    if (tokens.size() != 2 || tokens[0] != name) {
        throw ParseError("expected field '" + std::string(name) + "', got '" + std::string(line) + "'");
    }
    return tokens[1];
}

void check_version(std::string_view line, std::uint32_t supported) {
    const auto version = parse_int<std::uint32_t>(field(line, "formatVersion"));
    if (version != supported) {
        throw VersionError("unsupported formatVersion " + std::to_string(version));
    }
}

WalkerState checked_state(int half_width, int origin_step, WalkerState::Amplitudes amps) {
    WalkerState s;
    try {
        s = WalkerState::from_amplitudes(half_width, std::move(amps), origin_step);
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        throw ParseError(std::string("invalid state: ") + e.what());
    }
    const double norm = s.norm_squared();
    if (std::abs(norm - 1.0) > kLoadNormTolerance) {
        throw NormError("state norm^2 is " + std::to_string(norm));
    }
    return s;
}

void insert_entry(WalkerState::Amplitudes& amps, Site site, Complex amp) {
    if (!amps.emplace(site, amp).second) {
        throw ParseError("duplicate entry (" + std::to_string(site.x) + ", " +
                         std::to_string(site.y) + ", " + std::to_string(site.c) + ")");
    }
}

std::string state_text(const WalkerState& s) {
    std::ostringstream os;
    os << kTextStateMagic << '\n'
       << "formatVersion " << kStateFormatVersion << '\n'
       << "halfWidth " << s.half_width() << '\n'
       << "originStep " << s.origin_step() << '\n'
       << "entries " << s.size() << '\n';
    for (const auto& [site, amp] : s.amplitudes()) {
        os << site.x << ' ' << site.y << ' ' << site.c << ' ' << hex_double(amp.real()) << ' '
           << hex_double(amp.imag()) << '\n';
    }
    return os.str();
}

WalkerState parse_state_text(std::span<const std::string_view> lines) {
    if (lines.empty() || lines[0] != kTextStateMagic) throw ParseError("missing AQWS magic");
    if (lines.size() < 5) throw ParseError("truncated state header");
    check_version(lines[1], kStateFormatVersion);
    const int half_width = parse_int<int>(field(lines[2], "halfWidth"));
    const int origin_step = parse_int<int>(field(lines[3], "originStep"));
    const auto count = parse_int<std::size_t>(field(lines[4], "entries"));
    if (lines.size() != 5 + count) {
        throw ParseError("expected " + std::to_string(count) + " entries, found " +
                         std::to_string(lines.size() - 5));
    }
    if (half_width < 0 || origin_step < 0) throw ParseError("negative halfWidth or originStep");
    WalkerState::Amplitudes amps;
    for (std::size_t i = 5; i < lines.size(); ++i) {
        const auto t = split_tokens(lines[i]);
        if (t.size() != 5) throw ParseError("malformed entry line '" + std::string(lines[i]) + "'");
        const Site site{parse_int<int>(t[0]), parse_int<int>(t[1]), parse_int<int>(t[2])};
        if (site.c != 0 && site.c != 1) throw ParseError("coin index must be 0 or 1");
        insert_entry(amps, site, {parse_double(t[3]), parse_double(t[4])});
    }
    return checked_state(half_width, origin_step, std::move(amps));
}

void put_state_binary(Bytes& out, const WalkerState& s) {
    put_magic(out, kBinaryStateMagic);
    put_u32(out, kStateFormatVersion);
    put_u32(out, static_cast<std::uint32_t>(s.half_width()));
    put_u32(out, static_cast<std::uint32_t>(s.origin_step()));
    put_u32(out, static_cast<std::uint32_t>(s.size()));
    for (const auto& [site, amp] : s.amplitudes()) {
        put_u32(out, static_cast<std::uint32_t>(site.x));
        put_u32(out, static_cast<std::uint32_t>(site.y));
        out.push_back(static_cast<std::uint8_t>(site.c));
        put_u64(out, std::bit_cast<std::uint64_t>(amp.real()));
        put_u64(out, std::bit_cast<std::uint64_t>(amp.imag()));
    }
}

WalkerState parse_state_binary(std::span<const std::uint8_t> bytes) {
    Reader r(bytes);
    r.take(4);
    const std::uint32_t version = r.u32();
    if (version != kStateFormatVersion) {
        throw VersionError("unsupported formatVersion " + std::to_string(version));
    }
    const std::int32_t half_width = r.i32();
    const std::int32_t origin_step = r.i32();
    const std::uint32_t count = r.u32();
    if (half_width < 0 || origin_step < 0) throw ParseError("negative halfWidth or originStep");
    // each entry is 25 bytes; reject counts the remaining bytes cannot hold
    if (r.rest().size() != static_cast<std::size_t>(count) * 25) {
        throw ParseError("binary state size does not match entry count");
    }
    WalkerState::Amplitudes amps;
    for (std::uint32_t i = 0; i < count; ++i) {
        Site site;
        site.x = r.i32();
        site.y = r.i32();
        site.c = r.u8();
        if (site.c > 1) throw ParseError("coin index must be 0 or 1");
        const double re = std::bit_cast<double>(r.u64());
        const double im = std::bit_cast<double>(r.u64());
        if (!std::isfinite(re) || !std::isfinite(im)) throw ParseError("non-finite amplitude");
        insert_entry(amps, site, {re, im});
    }
    return checked_state(half_width, origin_step, std::move(amps));
}

std::string_view as_text(std::span<const std::uint8_t> bytes) {
    return {reinterpret_cast<const char*>(bytes.data()), bytes.size()};
}

}  // namespace

std::string hex_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, std::abs(v), std::chars_format::hex);
    (void)ec;
    std::string out = std::signbit(v) ? "-0x" : "0x";
    out.append(buf, ptr);
    return out;
}

double parse_double(std::string_view token) {
    std::string_view t = token;
    bool negative = false;
    if (!t.empty() && (t[0] == '-' || t[0] == '+')) {
        negative = t[0] == '-';
        t.remove_prefix(1);
    }
    double v = 0.0;
    std::from_chars_result res{};
    if (t.size() > 2 && t[0] == '0' && (t[1] == 'x' || t[1] == 'X')) {
        t.remove_prefix(2);
        res = std::from_chars(t.data(), t.data() + t.size(), v, std::chars_format::hex);
    } else {
        res = std::from_chars(t.data(), t.data() + t.size(), v, std::chars_format::general);
    }
    if (t.empty() || res.ec != std::errc{} || res.ptr != t.data() + t.size() || !std::isfinite(v)) {
        throw ParseError("expected a real number, got '" + std::string(token) + "'");
    }
    return negative ? -v : v;
}

Bytes save_state(const WalkerState& s, StateEncoding encoding) {
    Bytes out;
    if (encoding == StateEncoding::Binary) {
        put_state_binary(out, s);
    } else {
        const std::string text = state_text(s);
        out.assign(text.begin(), text.end());
    }
    return out;
}

WalkerState load_state(std::span<const std::uint8_t> bytes) {
    if (has_magic(bytes, kBinaryStateMagic)) return parse_state_binary(bytes);
    if (has_magic(bytes, kTextStateMagic)) {
        const auto lines = split_lines(as_text(bytes));
        return parse_state_text(lines);
    }
    throw ParseError("unknown state file magic");
}

std::string save_private_key(const PrivateKey& key, int msg_bound) {
    std::ostringstream os;
    os << kPrivateKeyMagic << '\n'
       << "formatVersion " << kKeyFormatVersion << '\n'
       << "preset " << preset_name(key.spec.preset) << '\n'
       << "alpha " << hex_double(key.spec.coin.alpha) << '\n'
       << "beta " << hex_double(key.spec.coin.beta) << '\n'
       << "gamma " << hex_double(key.spec.coin.gamma) << '\n'
       << "steps " << key.spec.steps << '\n'
       << "l " << key.l << '\n'
       << "k " << key.k << '\n'
       << "theta " << hex_double(key.q.theta) << '\n'
       << "phi " << hex_double(key.q.phi) << '\n'
       << "msgBound " << msg_bound << '\n';
    return os.str();
}

std::pair<PrivateKey, int> load_private_key(std::string_view text) {
    const auto lines = split_lines(text);
    if (lines.empty() || lines[0] != kPrivateKeyMagic) throw ParseError("missing AQWK magic");
    if (lines.size() != 12) throw ParseError("private key record must have 12 lines");
    check_version(lines[1], kKeyFormatVersion);
    const auto preset = parse_preset(field(lines[2], "preset"));
    if (!preset) throw ParseError("unknown preset");
    PrivateKey key;
    key.spec.preset = *preset;
    key.spec.coin = {parse_double(field(lines[3], "alpha")), parse_double(field(lines[4], "beta")),
                     parse_double(field(lines[5], "gamma"))};
    key.spec.steps = parse_int<int>(field(lines[6], "steps"));
    key.l = parse_int<int>(field(lines[7], "l"));
    key.k = parse_int<int>(field(lines[8], "k"));
    key.q = {parse_double(field(lines[9], "theta")), parse_double(field(lines[10], "phi"))};
    const int msg_bound = parse_int<int>(field(lines[11], "msgBound"));
    if (key.spec.steps < 1 || msg_bound < 0) throw ParseError("invalid steps or msgBound");
    return {key, msg_bound};
}

Bytes save_public_key(const PublicKey& pub, StateEncoding encoding) {
    Bytes out;
    if (encoding == StateEncoding::Binary) {
        put_magic(out, kBinaryPublicMagic);
        put_u32(out, kKeyFormatVersion);
        put_u32(out, static_cast<std::uint32_t>(pub.msg_bound));
        put_u32(out, static_cast<std::uint32_t>(pub.declared_steps));
        put_state_binary(out, pub.state);
        return out;
    }
    std::ostringstream os;
    os << kTextPublicMagic << '\n'
       << "formatVersion " << kKeyFormatVersion << '\n'
       << "msgBound " << pub.msg_bound << '\n'
       << "declaredT " << pub.declared_steps << '\n'
       << state_text(pub.state);
    const std::string text = os.str();
    out.assign(text.begin(), text.end());
    return out;
}

PublicKey load_public_key(std::span<const std::uint8_t> bytes) {
    PublicKey pub;
    if (has_magic(bytes, kBinaryPublicMagic)) {
        Reader r(bytes);
        r.take(4);
        const std::uint32_t version = r.u32();
        if (version != kKeyFormatVersion) {
            throw VersionError("unsupported formatVersion " + std::to_string(version));
        }
        pub.msg_bound = r.i32();
        pub.declared_steps = r.i32();
        const auto rest = r.rest();
        if (!has_magic(rest, kBinaryStateMagic)) throw ParseError("public key lacks a binary state");
        pub.state = parse_state_binary(rest);
    } else if (has_magic(bytes, kTextPublicMagic)) {
        const auto lines = split_lines(as_text(bytes));
        if (lines.size() < 4) throw ParseError("truncated public key header");
        check_version(lines[1], kKeyFormatVersion);
        pub.msg_bound = parse_int<int>(field(lines[2], "msgBound"));
        pub.declared_steps = parse_int<int>(field(lines[3], "declaredT"));
        pub.state = parse_state_text(std::span(lines).subspan(4));
    } else {
        throw ParseError("unknown public key magic");
    }
    if (pub.msg_bound < 0 || pub.declared_steps < 1) throw ParseError("invalid public key metadata");
    return pub;
}

std::string_view frame_kind_name(FrameKind kind) {
    switch (kind) {
        case FrameKind::PubKey: return "PUBKEY";
        case FrameKind::Cipher: return "CIPHER";
        case FrameKind::Ack: return "ACK";
        case FrameKind::Error: return "ERROR";
    }
    return "?";
}

Bytes encode_frame(const Frame& frame) {
    if (frame.payload.size() + 1 > kMaxFrameSize) throw ProtocolError("frame exceeds size cap");
    Bytes out;
    out.reserve(frame.payload.size() + 5);
    put_u32(out, static_cast<std::uint32_t>(frame.payload.size() + 1));
    out.push_back(static_cast<std::uint8_t>(frame.kind));
    out.insert(out.end(), frame.payload.begin(), frame.payload.end());
    return out;
}

FrameHeader decode_frame_header(std::span<const std::uint8_t, 5> header) {
    std::uint32_t length = 0;
    for (int i = 0; i < 4; ++i) length = (length << 8) | header[i];
    if (length == 0) throw ParseError("frame length must include the kind byte");
    if (length > kMaxFrameSize) throw ParseError("frame length " + std::to_string(length) + " exceeds cap");
    const std::uint8_t kind = header[4];
    if (kind < 0x01 || kind > 0x04) throw ParseError("unknown frame kind " + std::to_string(kind));
    return {static_cast<FrameKind>(kind), length - 1};
}

Frame decode_frame(std::span<const std::uint8_t> bytes, std::size_t* consumed) {
    if (bytes.size() < 5) throw ParseError("truncated frame header");
    const FrameHeader h = decode_frame_header(bytes.first<5>());
    if (bytes.size() - 5 < h.payload_size) throw ParseError("truncated frame payload");
    Frame f{h.kind, Bytes(bytes.begin() + 5, bytes.begin() + 5 + h.payload_size)};
    if (consumed) *consumed = 5 + h.payload_size;
    return f;
}

}  // namespace aqw
