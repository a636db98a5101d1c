#pragma once

#include <chrono>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "netforge/ip.hpp"

namespace netforge::net {

struct Endpoint {
    Ipv4 addr{};
    std::uint16_t port = 0;

    std::string to_string() const { return addr.to_string() + ":" + std::to_string(port); }

    auto operator<=>(const Endpoint&) const = default;
};

class SocketError : public std::runtime_error {
public:
    SocketError(int err, const std::string& message)
        : std::runtime_error(message), errno_(err) {}
    int code() const { return errno_; }
    bool address_in_use() const;

private:
    int errno_;
};

/// RAII UDP socket. recv_from takes a timeout (poll-based) so callers never
/// block forever; send_to is fire-and-forget datagram semantics.
class UdpSocket {
public:
    /// Binds addr:port; port 0 picks an ephemeral port. `reuse` sets
    /// SO_REUSEADDR/SO_REUSEPORT for the proxy's shared-bind case.
    static UdpSocket bind(Ipv4 addr, std::uint16_t port, bool reuse = false);

    UdpSocket(UdpSocket&& other) noexcept;
    UdpSocket& operator=(UdpSocket&& other) noexcept;
    ~UdpSocket();

    void send_to(std::span<const std::uint8_t> bytes, const Endpoint& to);
    std::optional<std::pair<std::vector<std::uint8_t>, Endpoint>> recv_from(
        std::chrono::milliseconds timeout);

    void enable_broadcast();
    std::uint16_t local_port() const { return port_; }

private:
    explicit UdpSocket(int fd, std::uint16_t port) : fd_(fd), port_(port) {}

    int fd_ = -1;
    std::uint16_t port_ = 0;
};

}  // namespace netforge::net
