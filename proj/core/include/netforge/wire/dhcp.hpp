#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "netforge/ip.hpp"
#include "netforge/result.hpp"

namespace netforge::wire {

inline constexpr std::array<std::uint8_t, 4> kDhcpMagicCookie{0x63, 0x82, 0x53, 0x63};
inline constexpr std::size_t kDhcpFixedHeaderSize = 236;
inline constexpr std::size_t kDhcpMinFrameSize = 240;   // header + cookie
inline constexpr std::size_t kBootpMinPacketSize = 300; // classic BOOTP floor

// Option codes used by the PXE handshake.
namespace dhcp_opt {
inline constexpr std::uint8_t pad = 0;
inline constexpr std::uint8_t subnet_mask = 1;
inline constexpr std::uint8_t requested_address = 50;
inline constexpr std::uint8_t lease_time = 51;
inline constexpr std::uint8_t overload = 52;  // rejected, see decode_dhcp
inline constexpr std::uint8_t message_type = 53;
inline constexpr std::uint8_t server_id = 54;
inline constexpr std::uint8_t vendor_class = 60;
inline constexpr std::uint8_t tftp_server_name = 66;
inline constexpr std::uint8_t bootfile_name = 67;
inline constexpr std::uint8_t client_arch = 93;
inline constexpr std::uint8_t menu_info = 224;  // site-local: "<menu_path>;<catalog digest hex>"
inline constexpr std::uint8_t end = 255;
}  // namespace dhcp_opt

enum class DhcpMessageType : std::uint8_t {
    discover = 1,
    offer = 2,
    request = 3,
    decline = 4,
    ack = 5,
    nak = 6,
    release = 7,
};

inline constexpr std::string_view kPxeVendorClass = "PXEClient";

struct DhcpOption {
    std::uint8_t code = 0;
    std::vector<std::uint8_t> payload;

    bool operator==(const DhcpOption&) const = default;
};

/// One BOOTP/DHCP message: the fixed 236-byte header plus the option list
/// that follows the magic cookie on the wire.
struct DhcpFrame {
    std::uint8_t op = 1;     // 1 request, 2 reply
    std::uint8_t htype = 1;  // Ethernet
    std::uint8_t hlen = 6;
    std::uint8_t hops = 0;
    std::uint32_t xid = 0;
    std::uint16_t secs = 0;
    std::uint16_t flags = 0;  // MSB = broadcast
    Ipv4 ciaddr{};
    Ipv4 yiaddr{};
    Ipv4 siaddr{};
    Ipv4 giaddr{};
    std::array<std::uint8_t, 16> chaddr{};
    std::array<std::uint8_t, 64> sname{};
    std::array<std::uint8_t, 128> file{};
    std::vector<DhcpOption> options;

    bool operator==(const DhcpFrame&) const = default;

    static constexpr std::uint16_t kBroadcastFlag = 0x8000;
    bool broadcast() const { return (flags & kBroadcastFlag) != 0; }

    void set_mac(const MacAddr& mac);
    MacAddr mac() const;

    void set_bootfile(std::string_view path);
    std::string bootfile() const;
    std::string server_name() const;

    const DhcpOption* find_option(std::uint8_t code) const;
    void add_option(std::uint8_t code, std::span<const std::uint8_t> payload);
    void add_option_text(std::uint8_t code, std::string_view text);
    void add_option_u8(std::uint8_t code, std::uint8_t v);
    void add_option_u16(std::uint8_t code, std::uint16_t v);
    void add_option_u32(std::uint8_t code, std::uint32_t v);
    void add_option_ipv4(std::uint8_t code, Ipv4 addr);

    std::optional<DhcpMessageType> message_type() const;
    std::optional<Ipv4> option_ipv4(std::uint8_t code) const;
    std::optional<std::uint32_t> option_u32(std::uint8_t code) const;
    std::string option_text(std::uint8_t code) const;

    /// True when the vendor-class option begins with "PXEClient".
    bool is_pxe() const;
};

enum class WireErrorKind {
    truncated,
    bad_cookie,
    invalid_frame,
    invalid_packet,
    unknown_opcode,
    unsupported,
};

struct WireError {
    WireErrorKind kind;
    std::string detail;
};

std::string_view to_string(WireErrorKind k);

/// Fixed header, magic cookie, options in list order, end option, then zero
/// padding up to the 300-byte BOOTP minimum.
Result<std::vector<std::uint8_t>, WireError> encode_dhcp(const DhcpFrame& frame);

/// Parses header and option TLVs up to the end option. Pad options are
/// dropped; unknown codes are kept verbatim; option 52 (overload) is refused.
Result<DhcpFrame, WireError> decode_dhcp(std::span<const std::uint8_t> bytes);

}  // namespace netforge::wire
