#pragma once

// On-disk and on-wire encodings.
//
// StateFile, text form (magic "AQWS"):
//
//     AQWS
//     formatVersion 1
//     halfWidth 7
//     originStep 2
//     entries 12
//     -2 -2 0 0x1.5a1a1b1c1d1e1p-2 -0x1.ce7f0e5c2f9a4p-3
//     ...
//
// Reals are written as hexadecimal floats so every binary64 round-trips
// bit-exactly; decimal reals are accepted on input.
//
// StateFile, binary form (magic "AQWB", all integers big-endian):
//
//     u32 formatVersion, i32 halfWidth, i32 originStep, u32 count,
//     count x { i32 x, i32 y, u8 c, u64 re bits, u64 im bits }
//
// Frame: u32 big-endian length (= payload size + 1), u8 kind, payload.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "aqw/protocol.hpp"

namespace aqw {

using Bytes = std::vector<std::uint8_t>;

inline constexpr std::uint32_t kStateFormatVersion = 1;
inline constexpr std::uint32_t kKeyFormatVersion = 1;

/// Loaded states must have unit norm within this tolerance.
inline constexpr double kLoadNormTolerance = 1e-9;

enum class StateEncoding { Text, Binary };

[[nodiscard]] Bytes save_state(const WalkerState& s, StateEncoding encoding = StateEncoding::Text);
/// Detects the encoding from the magic. Throws ParseError, VersionError or NormError.
[[nodiscard]] WalkerState load_state(std::span<const std::uint8_t> bytes);

/// Text record of a private key plus the message bound it was issued for.
[[nodiscard]] std::string save_private_key(const PrivateKey& key, int msg_bound);
[[nodiscard]] std::pair<PrivateKey, int> load_private_key(std::string_view text);

/// Public key file: msgBound and declaredT metadata followed by the state.
[[nodiscard]] Bytes save_public_key(const PublicKey& pub,
                                    StateEncoding encoding = StateEncoding::Text);
[[nodiscard]] PublicKey load_public_key(std::span<const std::uint8_t> bytes);

/// Lossless text rendering of a double ("0x1.8p+1"), and its inverse which
/// also accepts decimal notation.
[[nodiscard]] std::string hex_double(double v);
[[nodiscard]] double parse_double(std::string_view token);

// ---------------------------------------------------------------------------
// Frames

enum class FrameKind : std::uint8_t {
    PubKey = 0x01,
    Cipher = 0x02,
    Ack = 0x03,
    Error = 0x04,
};

[[nodiscard]] std::string_view frame_kind_name(FrameKind kind);

inline constexpr std::uint32_t kMaxFrameSize = 64u * 1024u * 1024u;

struct Frame {
    FrameKind kind = FrameKind::Ack;
    Bytes payload;
};

[[nodiscard]] Bytes encode_frame(const Frame& frame);

/// Parses the 5-byte header; returns the kind and the payload size. Throws
/// ParseError for lengths of zero, above the cap, or unknown kinds.
struct FrameHeader {
    FrameKind kind;
    std::uint32_t payload_size;
};
[[nodiscard]] FrameHeader decode_frame_header(std::span<const std::uint8_t, 5> header);

/// Decodes one complete frame from the front of `bytes`; `consumed` receives
/// its encoded size. Throws ParseError on truncation.
[[nodiscard]] Frame decode_frame(std::span<const std::uint8_t> bytes, std::size_t* consumed = nullptr);

}  // namespace aqw
