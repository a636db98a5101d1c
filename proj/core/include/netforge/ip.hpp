#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace netforge {

/// IPv4 address held in host byte order so arithmetic (pool ranges) is plain.
struct Ipv4 {
    std::uint32_t value = 0;

    static std::optional<Ipv4> parse(std::string_view text);
    static Ipv4 from_bytes(const std::uint8_t b[4]);

    std::array<std::uint8_t, 4> bytes() const {
        return {static_cast<std::uint8_t>(value >> 24), static_cast<std::uint8_t>(value >> 16),
                static_cast<std::uint8_t>(value >> 8), static_cast<std::uint8_t>(value)};
    }

    bool is_zero() const { return value == 0; }
    std::string to_string() const;

    auto operator<=>(const Ipv4&) const = default;
};

struct MacAddr {
    std::array<std::uint8_t, 6> bytes{};

    static std::optional<MacAddr> parse(std::string_view text);
    std::string to_string() const;

    auto operator<=>(const MacAddr&) const = default;
};

}  // namespace netforge
