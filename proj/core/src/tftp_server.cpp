#include "netforge/tftp/server.hpp"

#include <algorithm>

namespace netforge::tftp {

using namespace std::chrono_literals;
using wire::TftpPacket;

namespace {

constexpr auto kPollSlice = 200ms;

void send_packet(net::UdpSocket& sock, const TftpPacket& packet, const net::Endpoint& to) {
    auto bytes = wire::encode_tftp(packet);
    if (bytes) sock.send_to(bytes.value(), to);
}

std::string describe_options(const wire::TftpOptions& options) {
    std::string out;
    for (const auto& [k, v] : options) {
        out += ' ';
        out += k;
        out += '=';
        out += v;
    }
    return out;
}

}  // namespace

TftpServer::TftpServer(std::filesystem::path root, Ipv4 bind_addr, std::uint16_t port,
                       TftpSessionConfig session_config, Logger& logger)
    : root_(std::move(root)),
      bind_addr_(bind_addr),
      port_(port),
      session_config_(session_config),
      log_(logger) {}

TftpServer::~TftpServer() {
    stop(0ms);
}

void TftpServer::start() {
    net::UdpSocket intake = net::UdpSocket::bind(bind_addr_, port_);
    port_ = intake.local_port();
    stop_intake_ = false;
    kill_ = false;
    intake_thread_ = std::thread([this, sock = std::move(intake)]() mutable {
        intake_loop(std::move(sock));
    });
    log_.info(LogComponent::TFTP, "serving " + root_.string() + " on UDP " +
                                      bind_addr_.to_string() + ":" + std::to_string(port_));
}

void TftpServer::stop(std::chrono::milliseconds drain) {
    stop_intake_ = true;
    auto deadline = std::chrono::steady_clock::now() + drain;
    while (active_.load() > 0 && std::chrono::steady_clock::now() < deadline) {
        std::this_thread::sleep_for(10ms);
    }
    kill_ = true;
    if (intake_thread_.joinable()) intake_thread_.join();
    std::vector<std::thread> threads;
    {
        std::lock_guard lock(sessions_mu_);
        threads.swap(session_threads_);
    }
    for (auto& t : threads) {
        if (t.joinable()) t.join();
    }
}

void TftpServer::reap_finished() {
    std::lock_guard lock(sessions_mu_);
    for (auto id : finished_) {
        auto it = std::find_if(session_threads_.begin(), session_threads_.end(),
                               [id](const std::thread& t) { return t.get_id() == id; });
        if (it != session_threads_.end()) {
            it->join();
            session_threads_.erase(it);
        }
    }
    finished_.clear();
}

void TftpServer::intake_loop(net::UdpSocket socket) {
    while (!kill_) {
        auto datagram = socket.recv_from(kPollSlice);
        if (!datagram) {
            if (stop_intake_) break;
            continue;
        }
        if (stop_intake_) break;
        const auto& [bytes, peer] = *datagram;
        auto decoded = wire::decode_tftp(bytes);
        if (!decoded) {
            log_.warn(LogComponent::TFTP, "undecodable packet from " + peer.to_string() + ": " +
                                              decoded.error().detail);
            continue;
        }
        if (const auto* rrq = std::get_if<wire::TftpReadRequest>(&decoded.value())) {
            auto opened = TftpSession::open(*rrq, root_, session_config_, now_instant());
            if (!opened.session) {
                const auto& err = std::get<wire::TftpErrorPacket>(opened.reply);
                log_.warn(LogComponent::TFTP, "RRQ " + rrq->filename + " from " +
                                                  peer.to_string() + " refused: " + err.message);
                send_packet(socket, opened.reply, peer);
                continue;
            }
            log_.info(LogComponent::TFTP,
                      "RRQ " + rrq->filename + " from " + peer.to_string() +
                          describe_options(rrq->options) + " (" +
                          std::to_string(opened.session->file_size()) + " bytes)");
            try {
                // Fresh ephemeral port: the session's transfer identifier.
                net::UdpSocket session_socket = net::UdpSocket::bind(bind_addr_, 0);
                send_packet(session_socket, opened.reply, peer);
                ++active_;
                std::lock_guard lock(sessions_mu_);
                session_threads_.emplace_back(
                    [this, s = std::move(*opened.session), sock = std::move(session_socket),
                     peer]() mutable { session_loop(std::move(s), std::move(sock), peer); });
            } catch (const net::SocketError& e) {
                log_.error(LogComponent::TFTP, std::string("session socket: ") + e.what());
            }
            reap_finished();
        } else if (std::holds_alternative<wire::TftpWriteRequest>(decoded.value())) {
            log_.warn(LogComponent::TFTP, "WRQ from " + peer.to_string() + " rejected (read-only)");
            send_packet(socket,
                        TftpPacket{wire::TftpErrorPacket{wire::tftp_err::illegal_operation,
                                                         "server is read-only"}},
                        peer);
        }
        // Anything else aimed at the service port is a stray; ignore it.
    }
}

void TftpServer::session_loop(TftpSession session, net::UdpSocket socket, net::Endpoint peer) {
    const std::string name = session.path().filename().string();
    while (!kill_) {
        auto slice = kPollSlice;
        if (auto dl = session.deadline()) {
            auto now = now_instant();
            if (*dl > now) {
                slice = std::min(
                    slice, std::chrono::duration_cast<std::chrono::milliseconds>(*dl - now) + 1ms);
            } else {
                slice = 1ms;
            }
        }
        auto datagram = socket.recv_from(slice);
        Instant now = now_instant();

        if (datagram) {
            const auto& [bytes, from] = *datagram;
            if (from != peer) {
                // Wrong transfer id: complain to the stranger, keep going.
                send_packet(socket,
                            TftpPacket{wire::TftpErrorPacket{wire::tftp_err::unknown_tid,
                                                             "unknown transfer id"}},
                            from);
                continue;
            }
            auto decoded = wire::decode_tftp(bytes);
            if (!decoded) continue;

            TftpSession::Event ev;
            if (const auto* ack = std::get_if<wire::TftpAck>(&decoded.value())) {
                ev = session.on_ack(*ack, now);
            } else if (std::holds_alternative<wire::TftpErrorPacket>(decoded.value())) {
                ev = session.on_peer_error();
                log_.warn(LogComponent::TFTP, name + ": peer aborted transfer");
            } else {
                continue;
            }
            if (ev.reply) send_packet(socket, *ev.reply, peer);
            if (ev.complete) {
                log_.info(LogComponent::TFTP,
                          name + " -> " + peer.to_string() + " complete, " +
                              std::to_string(session.bytes_sent()) + " bytes in " +
                              std::to_string(session.data_packets_sent()) + " blocks, " +
                              std::to_string(session.retransmits()) + " retransmits");
                ++completed_;
                break;
            }
            if (ev.dead) {
                ++failed_;
                break;
            }
            continue;
        }

        if (auto dl = session.deadline(); dl && now >= *dl) {
            TftpSession::Event ev = session.on_timeout(now);
            if (ev.reply) send_packet(socket, *ev.reply, peer);
            if (ev.dead) {
                log_.warn(LogComponent::TFTP, name + " -> " + peer.to_string() +
                                                  " timed out, retries exhausted");
                ++failed_;
                break;
            }
        }
    }
    --active_;
    std::lock_guard lock(sessions_mu_);
    finished_.push_back(std::this_thread::get_id());
}

}  // namespace netforge::tftp
