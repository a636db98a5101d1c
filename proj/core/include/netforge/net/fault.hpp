#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <string>
#include <vector>

#include "netforge/net/udp.hpp"
#include "netforge/result.hpp"

namespace netforge::net {

/// Fault model for the simulated loopback path. Per-packet decisions are a
/// pure hash of (seed, direction, packet bytes, occurrence index), so a given
/// seed reproduces the identical loss pattern run after run, independent of
/// scheduling. Reordering uses a fixed window: every `reorder_period`-th
/// inbound packet is swapped with its successor.
struct FaultPlan {
    double drop = 0.0;
    double duplicate = 0.0;
    std::uint32_t reorder_period = 0;  // 0 = off
    std::uint64_t seed = 0;

    bool is_identity() const { return drop == 0.0 && duplicate == 0.0 && reorder_period == 0; }
};

/// InvalidPlan when a probability falls outside [0, 1].
Result<FaultPlan, std::string> validate_plan(const FaultPlan& plan);

/// UDP socket wrapper applying a FaultPlan to both directions.
class FaultyChannel {
public:
    FaultyChannel(UdpSocket socket, FaultPlan plan);

    void send_to(std::span<const std::uint8_t> bytes, const Endpoint& to);
    std::optional<std::pair<std::vector<std::uint8_t>, Endpoint>> recv_from(
        std::chrono::milliseconds timeout);

    std::uint16_t local_port() const { return socket_.local_port(); }

    /// One line per non-pass decision, e.g. "drop in #1 k=3fa1b2c4".
    const std::vector<std::string>& fault_log() const { return log_; }

private:
    struct Verdict {
        bool drop = false;
        bool duplicate = false;
    };
    Verdict judge(bool inbound, std::span<const std::uint8_t> bytes);

    UdpSocket socket_;
    FaultPlan plan_;
    std::map<std::pair<bool, std::uint64_t>, std::uint32_t> seen_;
    std::deque<std::pair<std::vector<std::uint8_t>, Endpoint>> pending_;
    std::deque<std::pair<std::vector<std::uint8_t>, Endpoint>> held_;
    std::uint64_t inbound_count_ = 0;
    std::vector<std::string> log_;
};

}  // namespace netforge::net
