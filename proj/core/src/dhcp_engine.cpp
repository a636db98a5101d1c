#include "netforge/dhcp/engine.hpp"

#include <algorithm>

namespace netforge::dhcp {

using wire::DhcpFrame;
using wire::DhcpMessageType;
namespace opt = wire::dhcp_opt;

bool BootInfo::path_ok(const std::string& p) {
    if (p.empty() || p.front() == '/') return false;
    std::string_view rest = p;
    while (!rest.empty()) {
        auto slash = rest.find('/');
        std::string_view part = rest.substr(0, slash);
        if (part.empty() || part == "..") return false;
        if (slash == std::string_view::npos) break;
        rest.remove_prefix(slash + 1);
    }
    return true;
}

DhcpEngine::DhcpEngine(BootInfo boot, LeasePool pool)
    : boot_(std::move(boot)), pool_(std::move(pool)) {}

DhcpEngine::DhcpEngine(BootInfo boot) : boot_(std::move(boot)) {}

void DhcpEngine::set_mac_allow_list(std::vector<MacAddr> macs) {
    allow_list_ = std::move(macs);
}

bool DhcpEngine::allowed(const MacAddr& mac) const {
    if (!allow_list_) return true;
    return std::find(allow_list_->begin(), allow_list_->end(), mac) != allow_list_->end();
}

DhcpFrame DhcpEngine::reply_base(const DhcpFrame& request) const {
    DhcpFrame r;
    r.op = 2;
    r.htype = request.htype;
    r.hlen = request.hlen;
    r.xid = request.xid;
    r.flags = request.flags;
    r.chaddr = request.chaddr;
    r.giaddr = request.giaddr;
    return r;
}

DhcpEngine::Decision DhcpEngine::on_discover(const DhcpFrame& frame, Instant now) {
    if (frame.op != 1 || frame.message_type() != DhcpMessageType::discover) {
        return {Outcome::ignored, std::nullopt, "not a DISCOVER"};
    }
    const MacAddr mac = frame.mac();
    if (!allowed(mac)) {
        return {Outcome::not_allowed, std::nullopt, mac.to_string() + " not in allow list"};
    }
    const bool pxe = frame.is_pxe();

    if (!pool_) {
        // proxyDHCP answers PXE clients only, and never hands out addresses.
        if (!pxe) return {Outcome::ignored, std::nullopt, "plain DISCOVER in proxy mode"};
        DhcpFrame r = reply_base(frame);
        r.yiaddr = Ipv4{};  // 0.0.0.0: the primary DHCP server assigns
        r.siaddr = boot_.server_address;
        r.set_bootfile(boot_.nbp_path);
        r.add_option_u8(opt::message_type, static_cast<std::uint8_t>(DhcpMessageType::offer));
        r.add_option_ipv4(opt::server_id, boot_.server_address);
        r.add_option_text(opt::vendor_class, wire::kPxeVendorClass);
        return {Outcome::offered, std::move(r), "proxy boot offer"};
    }

    auto addr = pool_->allocate(mac, now);
    if (!addr) {
        return {Outcome::pool_exhausted, std::nullopt, "no free address for " + mac.to_string()};
    }
    DhcpFrame r = reply_base(frame);
    r.yiaddr = *addr;
    r.add_option_u8(opt::message_type, static_cast<std::uint8_t>(DhcpMessageType::offer));
    r.add_option_ipv4(opt::subnet_mask, pool_->subnet_mask());
    r.add_option_ipv4(opt::server_id, boot_.server_address);
    r.add_option_u32(opt::lease_time, static_cast<std::uint32_t>(pool_->lease_ttl().count()));
    if (pxe) {
        r.siaddr = boot_.server_address;
        r.set_bootfile(boot_.nbp_path);
        r.add_option_text(opt::vendor_class, wire::kPxeVendorClass);
    }
    return {Outcome::offered, std::move(r), addr->to_string() + " to " + mac.to_string()};
}

DhcpEngine::Decision DhcpEngine::on_request(const DhcpFrame& frame, Instant now) {
    if (frame.message_type() != DhcpMessageType::request) {
        return {Outcome::ignored, std::nullopt, "not a REQUEST"};
    }
    if (!pool_) {
        return {Outcome::ignored, std::nullopt, "REQUEST in proxy mode: primary server answers"};
    }
    const MacAddr mac = frame.mac();
    if (!allowed(mac)) {
        return {Outcome::not_allowed, std::nullopt, mac.to_string() + " not in allow list"};
    }
    // A client committing to a different server is none of our business.
    if (auto sid = frame.option_ipv4(opt::server_id);
        sid && *sid != boot_.server_address) {
        return {Outcome::ignored, std::nullopt, "REQUEST addressed to " + sid->to_string()};
    }

    Ipv4 requested{};
    if (auto ra = frame.option_ipv4(opt::requested_address)) {
        requested = *ra;
    } else {
        requested = frame.ciaddr;
    }

    if (pool_->acknowledge(mac, requested, now)) {
        DhcpFrame r = reply_base(frame);
        r.ciaddr = frame.ciaddr;
        r.yiaddr = requested;
        r.add_option_u8(opt::message_type, static_cast<std::uint8_t>(DhcpMessageType::ack));
        r.add_option_ipv4(opt::subnet_mask, pool_->subnet_mask());
        r.add_option_ipv4(opt::server_id, boot_.server_address);
        r.add_option_u32(opt::lease_time, static_cast<std::uint32_t>(pool_->lease_ttl().count()));
        if (frame.is_pxe()) {
            r.siaddr = boot_.server_address;
            r.set_bootfile(boot_.nbp_path);
            r.add_option_text(opt::vendor_class, wire::kPxeVendorClass);
        }
        return {Outcome::acked, std::move(r), requested.to_string() + " to " + mac.to_string()};
    }

    DhcpFrame r = reply_base(frame);
    r.add_option_u8(opt::message_type, static_cast<std::uint8_t>(DhcpMessageType::nak));
    r.add_option_ipv4(opt::server_id, boot_.server_address);
    return {Outcome::naked, std::move(r),
            requested.to_string() + " not bound to " + mac.to_string()};
}

DhcpEngine::Decision DhcpEngine::on_boot_service(const DhcpFrame& frame,
                                                 const Digest& catalog_digest) {
    if (!frame.is_pxe()) {
        return {Outcome::not_pxe, std::nullopt, "boot-service request without PXEClient class"};
    }
    const MacAddr mac = frame.mac();
    if (!allowed(mac)) {
        return {Outcome::not_allowed, std::nullopt, mac.to_string() + " not in allow list"};
    }
    DhcpFrame r = reply_base(frame);
    r.ciaddr = frame.ciaddr;
    r.siaddr = boot_.server_address;
    r.set_bootfile(boot_.nbp_path);
    r.add_option_u8(opt::message_type, static_cast<std::uint8_t>(DhcpMessageType::ack));
    r.add_option_ipv4(opt::server_id, boot_.server_address);
    r.add_option_text(opt::vendor_class, wire::kPxeVendorClass);
    r.add_option_text(opt::menu_info, boot_.menu_path + ";" + digest_hex(catalog_digest));
    return {Outcome::acked, std::move(r), boot_.nbp_path + " to " + mac.to_string()};
}

std::size_t DhcpEngine::expire_leases(Instant now) {
    return pool_ ? pool_->expire(now) : 0;
}

}  // namespace netforge::dhcp
