#include "netforge/wire/dhcp.hpp"

#include <algorithm>
#include <cstring>

#include "netforge/bytes.hpp"

namespace netforge::wire {

std::string_view to_string(WireErrorKind k) {
    switch (k) {
        case WireErrorKind::truncated: return "Truncated";
        case WireErrorKind::bad_cookie: return "BadCookie";
        case WireErrorKind::invalid_frame: return "InvalidFrame";
        case WireErrorKind::invalid_packet: return "InvalidPacket";
        case WireErrorKind::unknown_opcode: return "UnknownOpcode";
        case WireErrorKind::unsupported: return "Unsupported";
    }
    return "?";
}

void DhcpFrame::set_mac(const MacAddr& mac) {
    chaddr.fill(0);
    std::copy(mac.bytes.begin(), mac.bytes.end(), chaddr.begin());
    htype = 1;
    hlen = 6;
}

MacAddr DhcpFrame::mac() const {
    MacAddr m;
    std::copy_n(chaddr.begin(), 6, m.bytes.begin());
    return m;
}

void DhcpFrame::set_bootfile(std::string_view path) {
    file.fill(0);
    std::copy_n(path.begin(), std::min(path.size(), file.size() - 1), file.begin());
}

static std::string fixed_field_text(std::span<const std::uint8_t> field) {
    auto nul = std::find(field.begin(), field.end(), 0);
    return std::string(field.begin(), nul);
}

std::string DhcpFrame::bootfile() const {
    return fixed_field_text(std::span<const std::uint8_t>(file.data(), file.size()));
}

std::string DhcpFrame::server_name() const {
    return fixed_field_text(std::span<const std::uint8_t>(sname.data(), sname.size()));
}

const DhcpOption* DhcpFrame::find_option(std::uint8_t code) const {
    for (const auto& opt : options) {
        if (opt.code == code) return &opt;
    }
    return nullptr;
}

void DhcpFrame::add_option(std::uint8_t code, std::span<const std::uint8_t> payload) {
    options.push_back(DhcpOption{code, std::vector<std::uint8_t>(payload.begin(), payload.end())});
}

void DhcpFrame::add_option_text(std::uint8_t code, std::string_view text) {
    add_option(code, std::span<const std::uint8_t>(
                         reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

void DhcpFrame::add_option_u8(std::uint8_t code, std::uint8_t v) {
    add_option(code, std::span<const std::uint8_t>(&v, 1));
}

void DhcpFrame::add_option_u16(std::uint8_t code, std::uint16_t v) {
    std::uint8_t b[2] = {static_cast<std::uint8_t>(v >> 8), static_cast<std::uint8_t>(v)};
    add_option(code, b);
}

void DhcpFrame::add_option_u32(std::uint8_t code, std::uint32_t v) {
    std::uint8_t b[4] = {static_cast<std::uint8_t>(v >> 24), static_cast<std::uint8_t>(v >> 16),
                         static_cast<std::uint8_t>(v >> 8), static_cast<std::uint8_t>(v)};
    add_option(code, b);
}

void DhcpFrame::add_option_ipv4(std::uint8_t code, Ipv4 addr) {
    auto b = addr.bytes();
    add_option(code, std::span<const std::uint8_t>(b.data(), b.size()));
}

std::optional<DhcpMessageType> DhcpFrame::message_type() const {
    const DhcpOption* opt = find_option(dhcp_opt::message_type);
    if (!opt || opt->payload.size() != 1) return std::nullopt;
    std::uint8_t v = opt->payload[0];
    if (v < 1 || v > 7) return std::nullopt;
    return static_cast<DhcpMessageType>(v);
}

std::optional<Ipv4> DhcpFrame::option_ipv4(std::uint8_t code) const {
    const DhcpOption* opt = find_option(code);
    if (!opt || opt->payload.size() != 4) return std::nullopt;
    return Ipv4::from_bytes(opt->payload.data());
}

std::optional<std::uint32_t> DhcpFrame::option_u32(std::uint8_t code) const {
    const DhcpOption* opt = find_option(code);
    if (!opt || opt->payload.size() != 4) return std::nullopt;
    return (static_cast<std::uint32_t>(opt->payload[0]) << 24) |
           (static_cast<std::uint32_t>(opt->payload[1]) << 16) |
           (static_cast<std::uint32_t>(opt->payload[2]) << 8) |
           static_cast<std::uint32_t>(opt->payload[3]);
}

std::string DhcpFrame::option_text(std::uint8_t code) const {
    const DhcpOption* opt = find_option(code);
    if (!opt) return {};
    return std::string(opt->payload.begin(), opt->payload.end());
}

bool DhcpFrame::is_pxe() const {
    return option_text(dhcp_opt::vendor_class).rfind(kPxeVendorClass, 0) == 0;
}

Result<std::vector<std::uint8_t>, WireError> encode_dhcp(const DhcpFrame& frame) {
    if (frame.hlen > 16) {
        return WireError{WireErrorKind::invalid_frame, "hlen exceeds 16"};
    }
    for (const auto& opt : frame.options) {
        if (opt.payload.size() > 255) {
            return WireError{WireErrorKind::invalid_frame,
                             "option payload exceeds 255 bytes (code " +
                                 std::to_string(opt.code) + ")"};
        }
        if (opt.code == dhcp_opt::pad || opt.code == dhcp_opt::end) {
            return WireError{WireErrorKind::invalid_frame,
                             "pad/end are wire-level codes, not list options"};
        }
    }

    ByteWriter w;
    w.u8(frame.op);
    w.u8(frame.htype);
    w.u8(frame.hlen);
    w.u8(frame.hops);
    w.u32be(frame.xid);
    w.u16be(frame.secs);
    w.u16be(frame.flags);
    for (Ipv4 addr : {frame.ciaddr, frame.yiaddr, frame.siaddr, frame.giaddr}) {
        auto b = addr.bytes();
        w.raw(std::span<const std::uint8_t>(b.data(), b.size()));
    }
    // chaddr bytes beyond hlen go out as zero regardless of in-memory content.
    std::array<std::uint8_t, 16> hw{};
    std::copy_n(frame.chaddr.begin(), frame.hlen, hw.begin());
    w.raw(std::span<const std::uint8_t>(hw.data(), hw.size()));
    w.raw(std::span<const std::uint8_t>(frame.sname.data(), frame.sname.size()));
    w.raw(std::span<const std::uint8_t>(frame.file.data(), frame.file.size()));

    w.raw(std::span<const std::uint8_t>(kDhcpMagicCookie.data(), kDhcpMagicCookie.size()));
    for (const auto& opt : frame.options) {
        w.u8(opt.code);
        w.u8(static_cast<std::uint8_t>(opt.payload.size()));
        w.raw(opt.payload);
    }
    w.u8(dhcp_opt::end);
    w.pad_to(kBootpMinPacketSize);
    return w.take();
}

Result<DhcpFrame, WireError> decode_dhcp(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < kDhcpMinFrameSize) {
        return WireError{WireErrorKind::truncated,
                         "need at least 240 bytes, got " + std::to_string(bytes.size())};
    }
    if (!std::equal(kDhcpMagicCookie.begin(), kDhcpMagicCookie.end(),
                    bytes.begin() + kDhcpFixedHeaderSize)) {
        return WireError{WireErrorKind::bad_cookie, "magic cookie mismatch at offset 236"};
    }

    ByteReader r(bytes);
    DhcpFrame f;
    f.op = *r.u8();
    f.htype = *r.u8();
    f.hlen = *r.u8();
    f.hops = *r.u8();
    f.xid = *r.u32be();
    f.secs = *r.u16be();
    f.flags = *r.u16be();
    f.ciaddr = Ipv4::from_bytes(r.raw(4)->data());
    f.yiaddr = Ipv4::from_bytes(r.raw(4)->data());
    f.siaddr = Ipv4::from_bytes(r.raw(4)->data());
    f.giaddr = Ipv4::from_bytes(r.raw(4)->data());
    std::copy_n(r.raw(16)->begin(), 16, f.chaddr.begin());
    std::copy_n(r.raw(64)->begin(), 64, f.sname.begin());
    std::copy_n(r.raw(128)->begin(), 128, f.file.begin());
    r.raw(4);  // cookie, verified above

    while (true) {
        auto code = r.u8();
        if (!code) {
            return WireError{WireErrorKind::truncated, "options not terminated by end option"};
        }
        if (*code == dhcp_opt::end) break;
        if (*code == dhcp_opt::pad) continue;
        auto len = r.u8();
        if (!len) {
            return WireError{WireErrorKind::truncated, "option length octet missing"};
        }
        auto payload = r.raw(*len);
        if (!payload) {
            return WireError{WireErrorKind::truncated,
                             "option " + std::to_string(*code) + " overruns buffer"};
        }
        if (*code == dhcp_opt::overload) {
            return WireError{WireErrorKind::unsupported, "option overloading (52) not supported"};
        }
        f.options.push_back(
            DhcpOption{*code, std::vector<std::uint8_t>(payload->begin(), payload->end())});
    }
    return f;
}

}  // namespace netforge::wire
