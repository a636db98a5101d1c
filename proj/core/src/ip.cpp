#include "netforge/ip.hpp"

#include <cstdio>

namespace netforge {

std::optional<Ipv4> Ipv4::parse(std::string_view text) {
    std::uint32_t parts[4];
    std::size_t idx = 0;
    std::uint32_t cur = 0;
    bool have_digit = false;
    for (char c : text) {
        if (c >= '0' && c <= '9') {
            cur = cur * 10 + static_cast<std::uint32_t>(c - '0');
            if (cur > 255) return std::nullopt;
            have_digit = true;
        } else if (c == '.') {
            if (!have_digit || idx >= 3) return std::nullopt;
            parts[idx++] = cur;
            cur = 0;
            have_digit = false;
        } else {
            return std::nullopt;
        }
    }
    if (!have_digit || idx != 3) return std::nullopt;
    parts[3] = cur;
    return Ipv4{parts[0] << 24 | parts[1] << 16 | parts[2] << 8 | parts[3]};
}

Ipv4 Ipv4::from_bytes(const std::uint8_t b[4]) {
    return Ipv4{static_cast<std::uint32_t>(b[0]) << 24 | static_cast<std::uint32_t>(b[1]) << 16 |
                static_cast<std::uint32_t>(b[2]) << 8 | static_cast<std::uint32_t>(b[3])};
}

std::string Ipv4::to_string() const {
    char buf[16];
    auto b = bytes();
    std::snprintf(buf, sizeof(buf), "%u.%u.%u.%u", b[0], b[1], b[2], b[3]);
    return buf;
}

static int hex_val(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

std::optional<MacAddr> MacAddr::parse(std::string_view text) {
    // aa:bb:cc:dd:ee:ff or aa-bb-...
    if (text.size() != 17) return std::nullopt;
    MacAddr mac;
    for (int i = 0; i < 6; ++i) {
        int hi = hex_val(text[static_cast<std::size_t>(i * 3)]);
        int lo = hex_val(text[static_cast<std::size_t>(i * 3 + 1)]);
        if (hi < 0 || lo < 0) return std::nullopt;
        if (i < 5) {
            char sep = text[static_cast<std::size_t>(i * 3 + 2)];
            if (sep != ':' && sep != '-') return std::nullopt;
        }
        mac.bytes[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(hi << 4 | lo);
    }
    return mac;
}

std::string MacAddr::to_string() const {
    char buf[18];
    std::snprintf(buf, sizeof(buf), "%02x:%02x:%02x:%02x:%02x:%02x", bytes[0], bytes[1], bytes[2],
                  bytes[3], bytes[4], bytes[5]);
    return buf;
}

}  // namespace netforge
