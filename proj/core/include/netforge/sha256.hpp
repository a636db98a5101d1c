#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace netforge {

using Digest = std::array<std::uint8_t, 32>;

/// Streaming SHA-256 (OpenSSL EVP behind the scenes).
class Sha256 {
public:
    Sha256();
    ~Sha256();
    Sha256(const Sha256&) = delete;
    Sha256& operator=(const Sha256&) = delete;

    void update(std::span<const std::uint8_t> bytes);
    void update(std::string_view text);
    Digest finish();

    static Digest of(std::span<const std::uint8_t> bytes);
    static Digest of(std::string_view text);
    /// Throws std::runtime_error when the file cannot be read.
    static Digest of_file(const std::filesystem::path& path);

private:
    void* ctx_;
};

std::string digest_hex(const Digest& d);
std::optional<Digest> digest_from_hex(std::string_view hex);

}  // namespace netforge
