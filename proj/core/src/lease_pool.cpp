#include "netforge/dhcp/lease_pool.hpp"

#include <set>

namespace netforge::dhcp {

LeasePool::LeasePool(Ipv4 first_address, Ipv4 subnet_mask, std::uint32_t pool_size,
                     std::chrono::seconds lease_ttl)
    : first_(first_address), mask_(subnet_mask), size_(pool_size), ttl_(lease_ttl) {}

bool LeasePool::in_range(Ipv4 addr) const {
    return addr.value >= first_.value && addr.value < first_.value + size_;
}

std::optional<Ipv4> LeasePool::allocate(const MacAddr& mac, Instant now) {
    if (auto it = bindings_.find(mac); it != bindings_.end() && it->second.expiry > now) {
        return it->second.address;
    }
    // Lowest free address first; expired bindings do not hold their address.
    std::set<std::uint32_t> taken;
    for (const auto& [m, b] : bindings_) {
        if (b.expiry > now && m != mac) taken.insert(b.address.value);
    }
    for (std::uint32_t v = first_.value; v < first_.value + size_; ++v) {
        if (!taken.contains(v)) {
            bindings_[mac] = Binding{Ipv4{v}, now + ttl_};
            return Ipv4{v};
        }
    }
    return std::nullopt;
}

bool LeasePool::acknowledge(const MacAddr& mac, Ipv4 requested, Instant now) {
    auto it = bindings_.find(mac);
    if (it == bindings_.end() || it->second.expiry <= now) return false;
    if (it->second.address != requested || !in_range(requested)) return false;
    it->second.expiry = now + ttl_;
    return true;
}

std::optional<Ipv4> LeasePool::live_address(const MacAddr& mac, Instant now) const {
    auto it = bindings_.find(mac);
    if (it == bindings_.end() || it->second.expiry <= now) return std::nullopt;
    return it->second.address;
}

std::size_t LeasePool::expire(Instant now) {
    std::size_t removed = 0;
    for (auto it = bindings_.begin(); it != bindings_.end();) {
        if (it->second.expiry <= now) {
            it = bindings_.erase(it);
            ++removed;
        } else {
            ++it;
        }
    }
    return removed;
}

std::size_t LeasePool::live_count(Instant now) const {
    std::size_t n = 0;
    for (const auto& [m, b] : bindings_) {
        if (b.expiry > now) ++n;
    }
    return n;
}

std::vector<std::pair<MacAddr, Ipv4>> LeasePool::live_bindings(Instant now) const {
    std::vector<std::pair<MacAddr, Ipv4>> out;
    for (const auto& [m, b] : bindings_) {
        if (b.expiry > now) out.emplace_back(m, b.address);
    }
    return out;  // map iteration is already MAC-sorted
}

}  // namespace netforge::dhcp
