#pragma once

#include <optional>
#include <string>
#include <vector>

#include "netforge/clock.hpp"
#include "netforge/dhcp/lease_pool.hpp"
#include "netforge/sha256.hpp"
#include "netforge/wire/dhcp.hpp"

namespace netforge::dhcp {

/// Where the boot files live, stamped into OFFER/ACK replies.
struct BootInfo {
    Ipv4 server_address{};
    std::string nbp_path;   // relative to the TFTP root, no ".."
    std::string menu_path;  // likewise

    static bool path_ok(const std::string& p);
};

enum class ServiceMode { full_dhcp, proxy };

/// Decides and constructs replies for the DHCP half of the boot sequence.
/// Deterministic state machine: all entry points take an explicit `now`,
/// decision logic touches no sockets. One logical owner applies events in
/// arrival order (the listeners serialize through a mutex around this).
class DhcpEngine {
public:
    enum class Outcome {
        offered,
        acked,
        naked,
        ignored,         // not for us / proxy stays silent
        pool_exhausted,  // reply withheld so another server may answer
        not_pxe,         // boot-service request without PXEClient vendor class
        not_allowed,     // MAC absent from the allow list
    };

    struct Decision {
        Outcome outcome;
        std::optional<wire::DhcpFrame> reply;
        std::string note;
    };

    /// Full-DHCP mode: engine owns the lease pool.
    DhcpEngine(BootInfo boot, LeasePool pool);
    /// ProxyDHCP mode: no pool, address offers carry yiaddr 0.0.0.0.
    explicit DhcpEngine(BootInfo boot);

    void set_mac_allow_list(std::vector<MacAddr> macs);

    ServiceMode mode() const { return pool_ ? ServiceMode::full_dhcp : ServiceMode::proxy; }
    const BootInfo& boot_info() const { return boot_; }
    LeasePool* pool() { return pool_ ? &*pool_ : nullptr; }
    const LeasePool* pool() const { return pool_ ? &*pool_ : nullptr; }

    /// DISCOVER on the DHCP port.
    Decision on_discover(const wire::DhcpFrame& frame, Instant now);
    /// REQUEST on the DHCP port.
    Decision on_request(const wire::DhcpFrame& frame, Instant now);
    /// PXE REQUEST on the boot-service port (the BINL role): always answers
    /// PXE clients with the NBP path plus the menu pointer + catalog digest.
    Decision on_boot_service(const wire::DhcpFrame& frame, const Digest& catalog_digest);

    std::size_t expire_leases(Instant now);

private:
    bool allowed(const MacAddr& mac) const;
    wire::DhcpFrame reply_base(const wire::DhcpFrame& request) const;

    BootInfo boot_;
    std::optional<LeasePool> pool_;
    std::optional<std::vector<MacAddr>> allow_list_;
};

}  // namespace netforge::dhcp
