#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "netforge/dhcp/engine.hpp"
#include "netforge/ip.hpp"

namespace netforge {

/// Flat key=value server configuration ('#' comments allowed).
///
/// Keys: bind_address, tftp_root, mode (full-dhcp|proxy), pool_first,
/// pool_mask, pool_size, lease_ttl, mac_allow_list (comma-separated),
/// log_path, dhcp_port, tftp_port, boot_port, status_path.
struct ServerConfig {
    Ipv4 bind_address{};
    std::filesystem::path tftp_root;
    dhcp::ServiceMode mode = dhcp::ServiceMode::full_dhcp;
    std::optional<Ipv4> pool_first;
    std::optional<Ipv4> pool_mask;
    std::optional<std::uint32_t> pool_size;
    std::chrono::seconds lease_ttl{3600};
    std::optional<std::vector<MacAddr>> mac_allow_list;
    std::optional<std::filesystem::path> log_path;
    std::uint16_t dhcp_port = 67;
    std::uint16_t tftp_port = 69;
    std::uint16_t boot_port = 4011;
    std::optional<std::filesystem::path> status_path;

    bool operator==(const ServerConfig&) const = default;

    std::filesystem::path effective_status_path() const {
        return status_path ? *status_path : tftp_root / ".netforge.status";
    }
};

class ConfigError : public std::runtime_error {
public:
    enum class Kind { parse, constraint };

    ConfigError(Kind kind, int line, const std::string& message)
        : std::runtime_error(message), kind_(kind), line_(line) {}

    Kind kind() const { return kind_; }
    int line() const { return line_; }  // 0 when not attributable to a line

private:
    Kind kind_;
    int line_;
};

/// Parses config text; `origin` names the source in error messages.
/// Unknown keys are errors. Mode constraints are enforced here:
/// full-dhcp requires the pool keys, proxy forbids them.
ServerConfig parse_config(std::string_view text, const std::string& origin);

/// Loads from a file; a missing file is a ParseError.
ServerConfig load_config(const std::filesystem::path& path);

/// Canonical key=value rendering; parse_config(format_config(c)) == c.
std::string format_config(const ServerConfig& config);

}  // namespace netforge
