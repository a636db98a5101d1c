#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <mutex>
#include <thread>
#include <vector>

#include "netforge/log.hpp"
#include "netforge/net/udp.hpp"
#include "netforge/tftp/session.hpp"

namespace netforge::tftp {

/// Read-only TFTP listener: RRQ intake on the service port, one thread and
/// one ephemeral socket (fresh TID) per transfer. Sessions share the
/// immutable file tree and nothing else.
class TftpServer {
public:
    TftpServer(std::filesystem::path root, Ipv4 bind_addr, std::uint16_t port,
               TftpSessionConfig session_config, Logger& logger);
    ~TftpServer();

    /// Binds the intake socket and starts serving. Throws net::SocketError.
    void start();
    /// Stops intake, lets running transfers drain for up to `drain`, then
    /// cuts them off and joins every thread.
    void stop(std::chrono::milliseconds drain);

    std::uint16_t port() const { return port_; }
    std::size_t active_sessions() const { return active_.load(); }
    std::uint64_t transfers_completed() const { return completed_.load(); }
    std::uint64_t transfers_failed() const { return failed_.load(); }

private:
    void intake_loop(net::UdpSocket socket);
    void session_loop(TftpSession session, net::UdpSocket socket, net::Endpoint peer);
    void reap_finished();

    std::filesystem::path root_;
    Ipv4 bind_addr_;
    std::uint16_t port_;
    TftpSessionConfig session_config_;
    Logger& log_;

    std::atomic<bool> stop_intake_{false};
    std::atomic<bool> kill_{false};
    std::atomic<std::size_t> active_{0};
    std::atomic<std::uint64_t> completed_{0};
    std::atomic<std::uint64_t> failed_{0};

    std::thread intake_thread_;
    std::mutex sessions_mu_;
    std::vector<std::thread> session_threads_;
    std::vector<std::thread::id> finished_;
};

}  // namespace netforge::tftp
