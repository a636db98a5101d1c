#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "netforge/clock.hpp"
#include "netforge/ip.hpp"

namespace netforge::dhcp {

/// The allocatable address range with MAC -> lease bindings. A binding is
/// live while its expiry lies strictly in the future; expiry exactly at `now`
/// counts as expired.
class LeasePool {
public:
    struct Binding {
        Ipv4 address;
        Instant expiry;
    };

    LeasePool(Ipv4 first_address, Ipv4 subnet_mask, std::uint32_t pool_size,
              std::chrono::seconds lease_ttl);

    /// Returns the MAC's live address if bound, else the lowest free address
    /// in [first, first + size); nullopt when the pool is exhausted.
    std::optional<Ipv4> allocate(const MacAddr& mac, Instant now);

    /// REQUEST path: true (and expiry refreshed to now + ttl) iff `requested`
    /// matches the MAC's live binding.
    bool acknowledge(const MacAddr& mac, Ipv4 requested, Instant now);

    std::optional<Ipv4> live_address(const MacAddr& mac, Instant now) const;

    /// Drops all bindings with expiry <= now; freed addresses become
    /// allocatable lowest-first. Returns how many were removed.
    std::size_t expire(Instant now);

    Ipv4 first_address() const { return first_; }
    Ipv4 subnet_mask() const { return mask_; }
    std::uint32_t pool_size() const { return size_; }
    std::chrono::seconds lease_ttl() const { return ttl_; }

    std::size_t live_count(Instant now) const;
    /// Live (mac, address) pairs sorted by MAC; test/state-dump helper.
    std::vector<std::pair<MacAddr, Ipv4>> live_bindings(Instant now) const;

private:
    bool in_range(Ipv4 addr) const;

    Ipv4 first_;
    Ipv4 mask_;
    std::uint32_t size_;
    std::chrono::seconds ttl_;
    std::map<MacAddr, Binding> bindings_;
};

}  // namespace netforge::dhcp
