#include "netforge/net/udp.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

namespace netforge::net {

bool SocketError::address_in_use() const {
    return errno_ == EADDRINUSE || errno_ == EACCES;
}

namespace {

sockaddr_in to_sockaddr(const Endpoint& ep) {
    sockaddr_in sa{};
    sa.sin_family = AF_INET;
    sa.sin_port = htons(ep.port);
    sa.sin_addr.s_addr = htonl(ep.addr.value);
    return sa;
}

Endpoint from_sockaddr(const sockaddr_in& sa) {
    return Endpoint{Ipv4{ntohl(sa.sin_addr.s_addr)}, ntohs(sa.sin_port)};
}

}  // namespace

UdpSocket UdpSocket::bind(Ipv4 addr, std::uint16_t port, bool reuse) {
    int fd = ::socket(AF_INET, SOCK_DGRAM | SOCK_CLOEXEC, 0);
    if (fd < 0) throw SocketError(errno, "socket(): " + std::string(std::strerror(errno)));
    if (reuse) {
        int one = 1;
        ::setsockopt(fd, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
        ::setsockopt(fd, SOL_SOCKET, SO_REUSEPORT, &one, sizeof(one));
    }
    sockaddr_in sa = to_sockaddr(Endpoint{addr, port});
    if (::bind(fd, reinterpret_cast<sockaddr*>(&sa), sizeof(sa)) != 0) {
        int err = errno;
        ::close(fd);
        throw SocketError(err, "bind " + addr.to_string() + ":" + std::to_string(port) + ": " +
                                   std::strerror(err));
    }
    sockaddr_in bound{};
    socklen_t len = sizeof(bound);
    ::getsockname(fd, reinterpret_cast<sockaddr*>(&bound), &len);
    return UdpSocket(fd, ntohs(bound.sin_port));
}

UdpSocket::UdpSocket(UdpSocket&& other) noexcept
    : fd_(std::exchange(other.fd_, -1)), port_(other.port_) {}

UdpSocket& UdpSocket::operator=(UdpSocket&& other) noexcept {
    if (this != &other) {
        if (fd_ >= 0) ::close(fd_);
        fd_ = std::exchange(other.fd_, -1);
        port_ = other.port_;
    }
    return *this;
}

UdpSocket::~UdpSocket() {
    if (fd_ >= 0) ::close(fd_);
}

void UdpSocket::send_to(std::span<const std::uint8_t> bytes, const Endpoint& to) {
    sockaddr_in sa = to_sockaddr(to);
    ::sendto(fd_, bytes.data(), bytes.size(), 0, reinterpret_cast<sockaddr*>(&sa), sizeof(sa));
}

std::optional<std::pair<std::vector<std::uint8_t>, Endpoint>> UdpSocket::recv_from(
    std::chrono::milliseconds timeout) {
    pollfd pfd{fd_, POLLIN, 0};
    int rc = ::poll(&pfd, 1, static_cast<int>(timeout.count()));
    if (rc <= 0 || !(pfd.revents & POLLIN)) return std::nullopt;

    std::vector<std::uint8_t> buf(65536);
    sockaddr_in from{};
    socklen_t from_len = sizeof(from);
    ssize_t got = ::recvfrom(fd_, buf.data(), buf.size(), 0,
                             reinterpret_cast<sockaddr*>(&from), &from_len);
    if (got < 0) return std::nullopt;
    buf.resize(static_cast<std::size_t>(got));
    return std::make_pair(std::move(buf), from_sockaddr(from));
}

void UdpSocket::enable_broadcast() {
    int one = 1;
    ::setsockopt(fd_, SOL_SOCKET, SO_BROADCAST, &one, sizeof(one));
}

}  // namespace netforge::net
