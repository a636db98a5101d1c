#include "netforge/net/fault.hpp"

#include <chrono>
#include <cstdio>

#include "netforge/sha256.hpp"

namespace netforge::net {

Result<FaultPlan, std::string> validate_plan(const FaultPlan& plan) {
    if (plan.drop < 0.0 || plan.drop > 1.0) {
        return std::string("InvalidPlan: drop probability outside [0,1]");
    }
    if (plan.duplicate < 0.0 || plan.duplicate > 1.0) {
        return std::string("InvalidPlan: duplicate probability outside [0,1]");
    }
    return plan;
}

FaultyChannel::FaultyChannel(UdpSocket socket, FaultPlan plan)
    : socket_(std::move(socket)), plan_(plan) {}

namespace {

std::uint64_t take_u64(const Digest& d, std::size_t offset) {
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < 8; ++i) v = (v << 8) | d[offset + i];
    return v;
}

double unit_interval(std::uint64_t v) {
    return static_cast<double>(v >> 11) * 0x1.0p-53;  // 53 uniform bits
}

}  // namespace

FaultyChannel::Verdict FaultyChannel::judge(bool inbound, std::span<const std::uint8_t> bytes) {
    if (plan_.drop == 0.0 && plan_.duplicate == 0.0) return {};

    std::uint8_t prefix[9];
    for (int i = 0; i < 8; ++i) prefix[i] = static_cast<std::uint8_t>(plan_.seed >> (56 - 8 * i));
    prefix[8] = inbound ? 1 : 0;

    Sha256 key_hash;
    key_hash.update(std::span<const std::uint8_t>(prefix, 9));
    key_hash.update(bytes);
    Digest key_digest = key_hash.finish();
    std::uint64_t key = take_u64(key_digest, 0);
    std::uint32_t occurrence = ++seen_[{inbound, key}];

    std::uint8_t occ_bytes[4] = {
        static_cast<std::uint8_t>(occurrence >> 24), static_cast<std::uint8_t>(occurrence >> 16),
        static_cast<std::uint8_t>(occurrence >> 8), static_cast<std::uint8_t>(occurrence)};
    Sha256 decision_hash;
    decision_hash.update(std::span<const std::uint8_t>(prefix, 9));
    decision_hash.update(std::span<const std::uint8_t>(occ_bytes, 4));
    decision_hash.update(bytes);
    Digest decision = decision_hash.finish();

    Verdict v;
    v.drop = unit_interval(take_u64(decision, 0)) < plan_.drop;
    v.duplicate = !v.drop && unit_interval(take_u64(decision, 8)) < plan_.duplicate;
    if (v.drop || v.duplicate) {
        char line[64];
        std::snprintf(line, sizeof(line), "%s %s #%u k=%08x", v.drop ? "drop" : "dup",
                      inbound ? "in" : "out", occurrence,
                      static_cast<std::uint32_t>(key >> 32));
        log_.emplace_back(line);
    }
    return v;
}

void FaultyChannel::send_to(std::span<const std::uint8_t> bytes, const Endpoint& to) {
    Verdict v = judge(false, bytes);
    if (v.drop) return;
    socket_.send_to(bytes, to);
    if (v.duplicate) socket_.send_to(bytes, to);
}

std::optional<std::pair<std::vector<std::uint8_t>, Endpoint>> FaultyChannel::recv_from(
    std::chrono::milliseconds timeout) {
    using clock = std::chrono::steady_clock;
    auto deadline = clock::now() + timeout;

    while (true) {
        if (!pending_.empty()) {
            auto out = std::move(pending_.front());
            pending_.pop_front();
            return out;
        }
        auto now = clock::now();
        if (now >= deadline) break;
        auto remaining = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - now);
        auto raw = socket_.recv_from(std::max(remaining, std::chrono::milliseconds(1)));
        if (!raw) break;

        Verdict v = judge(true, raw->first);
        if (v.drop) continue;

        ++inbound_count_;
        bool hold = plan_.reorder_period > 0 && inbound_count_ % plan_.reorder_period == 0;
        if (hold && held_.empty()) {
            held_.push_back(*raw);
            if (v.duplicate) held_.push_back(*raw);
            continue;  // delivered after the next packet
        }
        pending_.push_back(*raw);
        if (v.duplicate) pending_.push_back(*raw);
        while (!held_.empty()) {
            pending_.push_back(std::move(held_.front()));
            held_.pop_front();
        }
    }

    // Timed out: don't sit on a held packet forever.
    if (pending_.empty() && !held_.empty()) {
        pending_.push_back(std::move(held_.front()));
        held_.pop_front();
    }
    if (!pending_.empty()) {
        auto out = std::move(pending_.front());
        pending_.pop_front();
        return out;
    }
    return std::nullopt;
}

}  // namespace netforge::net
