#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "netforge/result.hpp"
#include "netforge/wire/dhcp.hpp"  // WireError

namespace netforge::wire {

inline constexpr std::size_t kTftpDefaultBlockSize = 512;
inline constexpr std::size_t kTftpMinBlockSize = 8;
inline constexpr std::size_t kTftpMaxBlockSize = 65464;

enum class TftpOpcode : std::uint16_t {
    rrq = 1,
    wrq = 2,
    data = 3,
    ack = 4,
    error = 5,
    oack = 6,
};

// RFC 1350 error codes.
namespace tftp_err {
inline constexpr std::uint16_t not_defined = 0;
inline constexpr std::uint16_t file_not_found = 1;
inline constexpr std::uint16_t access_violation = 2;
inline constexpr std::uint16_t disk_full = 3;
inline constexpr std::uint16_t illegal_operation = 4;
inline constexpr std::uint16_t unknown_tid = 5;
inline constexpr std::uint16_t file_exists = 6;
inline constexpr std::uint16_t no_such_user = 7;
}  // namespace tftp_err

using TftpOptions = std::vector<std::pair<std::string, std::string>>;

struct TftpReadRequest {
    std::string filename;
    std::string mode;  // kept verbatim; only "octet" (case-insensitive) is served
    TftpOptions options;

    bool operator==(const TftpReadRequest&) const = default;
};

// Decoded only so the server can refuse it politely.
struct TftpWriteRequest {
    std::string filename;
    std::string mode;
    TftpOptions options;

    bool operator==(const TftpWriteRequest&) const = default;
};

struct TftpData {
    std::uint16_t block = 0;
    std::vector<std::uint8_t> payload;

    bool operator==(const TftpData&) const = default;
};

struct TftpAck {
    std::uint16_t block = 0;

    bool operator==(const TftpAck&) const = default;
};

struct TftpErrorPacket {
    std::uint16_t code = 0;
    std::string message;

    bool operator==(const TftpErrorPacket&) const = default;
};

struct TftpOptionAck {
    TftpOptions options;

    bool operator==(const TftpOptionAck&) const = default;
};

using TftpPacket = std::variant<TftpReadRequest, TftpWriteRequest, TftpData, TftpAck,
                                TftpErrorPacket, TftpOptionAck>;

/// 2-byte big-endian opcode followed by the variant's fields in RFC order.
Result<std::vector<std::uint8_t>, WireError> encode_tftp(const TftpPacket& packet);

/// Parses by opcode; string fields must be NUL-terminated printable ASCII.
Result<TftpPacket, WireError> decode_tftp(std::span<const std::uint8_t> bytes);

}  // namespace netforge::wire
