#include "netforge/tftp/session.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <system_error>

namespace netforge::tftp {

namespace fs = std::filesystem;
using wire::TftpAck;
using wire::TftpData;
using wire::TftpErrorPacket;
using wire::TftpOptionAck;
using wire::TftpPacket;
using wire::TftpReadRequest;

std::optional<fs::path> resolve_under_root(const fs::path& root, std::string_view wire_name) {
    if (wire_name.empty()) return std::nullopt;
    std::string normalized(wire_name);
    std::replace(normalized.begin(), normalized.end(), '\\', '/');
    if (normalized.front() == '/') return std::nullopt;

    fs::path rel;
    std::string_view rest = normalized;
    while (!rest.empty()) {
        auto slash = rest.find('/');
        std::string_view part = rest.substr(0, slash);
        if (part == "..") return std::nullopt;
        if (!part.empty() && part != ".") rel /= part;
        if (slash == std::string_view::npos) break;
        rest.remove_prefix(slash + 1);
    }
    if (rel.empty()) return std::nullopt;

    std::error_code ec;
    fs::path canon_root = fs::canonical(root, ec);
    if (ec) return std::nullopt;
    fs::path full = fs::weakly_canonical(canon_root / rel, ec);
    if (ec) return std::nullopt;

    // The canonical result must still sit under the root (symlink guard).
    auto root_it = canon_root.begin();
    auto it = full.begin();
    for (; root_it != canon_root.end(); ++root_it, ++it) {
        if (it == full.end() || *it != *root_it) return std::nullopt;
    }
    return full;
}

namespace {

bool iequals(std::string_view a, std::string_view b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::tolower(static_cast<unsigned char>(a[i])) !=
            std::tolower(static_cast<unsigned char>(b[i])))
            return false;
    }
    return true;
}

std::optional<std::uint64_t> parse_number(std::string_view s) {
    if (s.empty() || s.size() > 19) return std::nullopt;
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

TftpSession::Open refuse(std::uint16_t code, std::string message) {
    return {std::nullopt, TftpPacket{TftpErrorPacket{code, std::move(message)}}};
}

}  // namespace

TftpSession::Open TftpSession::open(const TftpReadRequest& request, const fs::path& root,
                                    const TftpSessionConfig& config, Instant now) {
    if (!iequals(request.mode, "octet")) {
        return refuse(wire::tftp_err::illegal_operation,
                      "only octet mode is served");
    }
    auto resolved = resolve_under_root(root, request.filename);
    if (!resolved) {
        return refuse(wire::tftp_err::access_violation, "path escapes the served root");
    }
    std::error_code ec;
    if (!fs::exists(*resolved, ec) || ec) {
        return refuse(wire::tftp_err::file_not_found, request.filename + " not found");
    }
    if (!fs::is_regular_file(*resolved, ec) || ec) {
        return refuse(wire::tftp_err::access_violation, request.filename + " is not a file");
    }

    TftpSession s;
    s.path_ = *resolved;
    s.file_.open(*resolved, std::ios::binary);
    if (!s.file_) {
        return refuse(wire::tftp_err::access_violation, request.filename + " is unreadable");
    }
    s.file_size_ = fs::file_size(*resolved, ec);
    if (ec) {
        return refuse(wire::tftp_err::access_violation, request.filename + " is unreadable");
    }
    s.timeout_ = config.timeout;
    s.retries_budget_ = s.retries_left_ = config.retries;

    // RFC 2347/2348/2349 negotiation: echo what we accept, drop the rest.
    wire::TftpOptions accepted;
    for (const auto& [name, value] : request.options) {
        if (iequals(name, "blksize")) {
            auto v = parse_number(value);
            if (!v || *v < wire::kTftpMinBlockSize) continue;
            std::uint64_t chosen = std::min<std::uint64_t>(*v, wire::kTftpMaxBlockSize);
            s.block_size_ = static_cast<std::size_t>(chosen);
            accepted.emplace_back("blksize", std::to_string(chosen));
        } else if (iequals(name, "tsize")) {
            if (!parse_number(value)) continue;
            accepted.emplace_back("tsize", std::to_string(s.file_size_));
        } else if (iequals(name, "timeout")) {
            auto v = parse_number(value);
            if (!v || *v < 1 || *v > 255) continue;
            s.timeout_ = std::chrono::seconds(*v);
            accepted.emplace_back("timeout", value);
        }
        // anything else: silently omitted per RFC 2347
    }

    TftpPacket first;
    if (!accepted.empty()) {
        s.awaiting_oack_ack_ = true;
        first = TftpPacket{TftpOptionAck{std::move(accepted)}};
    } else {
        s.block_size_ = wire::kTftpDefaultBlockSize;
        first = s.make_next_data();
    }
    s.outstanding_ = first;
    s.deadline_ = now + s.timeout_;

    Open result{std::move(s), std::move(first)};
    return result;
}

wire::TftpPacket TftpSession::make_next_data() {
    std::vector<std::uint8_t> chunk(block_size_);
    file_.read(reinterpret_cast<char*>(chunk.data()), static_cast<std::streamsize>(chunk.size()));
    chunk.resize(static_cast<std::size_t>(file_.gcount()));
    if (chunk.size() < block_size_) sent_final_ = true;
    block_ = static_cast<std::uint16_t>((block_ + 1) & 0xFFFF);
    bytes_sent_ += chunk.size();
    ++data_packets_;
    return TftpPacket{TftpData{block_, std::move(chunk)}};
}

TftpSession::Event TftpSession::on_ack(const TftpAck& ack, Instant now) {
    if (complete_ || dead_) return {};
    const std::uint16_t expected = awaiting_oack_ack_ ? 0 : block_;
    if (ack.block != expected) {
        // Duplicate or stale ACK: ignore without retransmitting.
        return {};
    }
    retries_left_ = retries_budget_;
    awaiting_oack_ack_ = false;
    if (sent_final_) {
        complete_ = true;
        outstanding_.reset();
        deadline_.reset();
        return {std::nullopt, true, false};
    }
    TftpPacket next = make_next_data();
    outstanding_ = next;
    deadline_ = now + timeout_;
    return {std::move(next), false, false};
}

TftpSession::Event TftpSession::on_timeout(Instant now) {
    if (complete_ || dead_ || !outstanding_) return {};
    --retries_left_;
    if (retries_left_ <= 0) {
        dead_ = true;
        outstanding_.reset();
        deadline_.reset();
        return {TftpPacket{TftpErrorPacket{wire::tftp_err::not_defined, "timeout"}}, false, true};
    }
    ++retransmits_;
    deadline_ = now + timeout_;
    return {*outstanding_, false, false};  // byte-identical retransmit
}

TftpSession::Event TftpSession::on_peer_error() {
    if (complete_ || dead_) return {};
    dead_ = true;
    outstanding_.reset();
    deadline_.reset();
    return {std::nullopt, false, true};
}

std::optional<Instant> TftpSession::deadline() const {
    return deadline_;
}

}  // namespace netforge::tftp
