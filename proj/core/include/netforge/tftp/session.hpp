#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>

#include "netforge/clock.hpp"
#include "netforge/wire/tftp.hpp"

namespace netforge::tftp {

struct TftpSessionConfig {
    std::chrono::milliseconds timeout{1000};  // fixed, no backoff
    int retries = 5;
};

/// Resolves a wire filename strictly inside `root`: relative, no "..",
/// separators normalized, symlink escapes caught by canonicalization.
/// Returns nullopt on any escape attempt.
std::optional<std::filesystem::path> resolve_under_root(const std::filesystem::path& root,
                                                        std::string_view wire_name);

/// Lock-step read transfer: at most one outstanding packet, 16-bit block
/// counter wrapping 65535 -> 0, fixed retransmit budget. All transitions take
/// an explicit `now`, so tests drive the session with a simulated clock.
class TftpSession {
public:
    struct Event {
        std::optional<wire::TftpPacket> reply;
        bool complete = false;
        bool dead = false;
    };

    struct Open {
        std::optional<TftpSession> session;  // absent when the request was refused
        wire::TftpPacket reply;              // OACK, first DATA, or ERROR
    };

    /// Validates the request against the root, negotiates options (blksize,
    /// tsize, timeout; unknown ones dropped), and produces the first reply.
    static Open open(const wire::TftpReadRequest& request, const std::filesystem::path& root,
                     const TftpSessionConfig& config, Instant now);

    TftpSession(TftpSession&&) = default;
    TftpSession& operator=(TftpSession&&) = default;

    /// ACK from the peer. Stale or duplicate block numbers are ignored
    /// without retransmitting (no sorcerer's apprentice).
    Event on_ack(const wire::TftpAck& ack, Instant now);

    /// Retransmit deadline passed: resend the outstanding packet until the
    /// retry budget runs out, then die with error 0.
    Event on_timeout(Instant now);

    /// Peer sent an ERROR: the session is dead, nothing to send.
    Event on_peer_error();

    bool complete() const { return complete_; }
    bool dead() const { return dead_; }
    std::optional<Instant> deadline() const;

    std::size_t block_size() const { return block_size_; }
    std::uint64_t file_size() const { return file_size_; }
    std::uint64_t bytes_sent() const { return bytes_sent_; }
    std::uint64_t data_packets_sent() const { return data_packets_; }
    std::uint32_t retransmits() const { return retransmits_; }
    const std::filesystem::path& path() const { return path_; }

private:
    TftpSession() = default;

    wire::TftpPacket make_next_data();

    std::filesystem::path path_;
    std::ifstream file_;
    std::uint64_t file_size_ = 0;
    std::size_t block_size_ = wire::kTftpDefaultBlockSize;
    std::uint16_t block_ = 0;       // last DATA block number sent
    bool awaiting_oack_ack_ = false;
    bool sent_final_ = false;       // last DATA was shorter than block_size_
    bool complete_ = false;
    bool dead_ = false;
    std::optional<wire::TftpPacket> outstanding_;
    std::optional<Instant> deadline_;
    std::chrono::milliseconds timeout_{1000};
    int retries_left_ = 5;
    int retries_budget_ = 5;
    std::uint64_t bytes_sent_ = 0;
    std::uint64_t data_packets_ = 0;
    std::uint32_t retransmits_ = 0;
};

}  // namespace netforge::tftp
