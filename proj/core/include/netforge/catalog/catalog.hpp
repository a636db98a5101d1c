#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "netforge/result.hpp"
#include "netforge/sha256.hpp"

namespace netforge::catalog {

inline constexpr std::string_view kCatalogDirName = "WIA_WDS";
inline constexpr std::string_view kPayloadFileName = "install";
inline constexpr std::string_view kMetaFileName = "image.meta";
inline constexpr std::string_view kMenuFileName = "menu.txt";
inline constexpr std::string_view kNbpFileName = "nbp.bin";
inline constexpr std::string_view kMenuHeaderTag = "NETFORGE-MENU";

enum class ImageArch { bios32, bios64, uefi32, uefi64 };

std::string_view to_string(ImageArch a);
std::optional<ImageArch> parse_arch(std::string_view s);

/// One deployable image: a directory WIA_WDS/<id>/ holding the payload file
/// `install` plus the image.meta sidecar (keys: name, arch).
struct ImageEntry {
    std::string id;
    std::string display_name;
    ImageArch arch = ImageArch::bios64;
    std::string payload_path;  // "WIA_WDS/<id>/install", relative to the root
    std::uint64_t payload_size = 0;
    Digest digest{};

    bool operator==(const ImageEntry&) const = default;
};

/// The multi-boot menu served to clients. catalog_digest covers the canonical
/// serialization of the entries, so a client can spot a stale cached menu.
struct MenuManifest {
    std::uint64_t version = 0;
    std::vector<ImageEntry> entries;  // sorted by id, byte-wise
    Digest catalog_digest{};

    bool operator==(const MenuManifest&) const = default;
};

struct ScanResult {
    MenuManifest manifest;
    std::vector<std::string> diagnostics;  // skipped image dirs, one line each
    bool menu_rewritten = false;           // menu.txt changed on disk
};

/// One canonical line per entry: id|display_name|arch|payload_path|size|digest.
std::string serialize_menu(const MenuManifest& manifest);
Result<MenuManifest, std::string> parse_menu(std::string_view text);
Digest catalog_digest_of(const std::vector<ImageEntry>& entries);

/// Scans <root>/WIA_WDS, digests payloads, rewrites menu.txt iff its content
/// changed (bumping the version). Malformed image directories are skipped and
/// reported, never fatal. A missing WIA_WDS is an empty catalog.
ScanResult scan_catalog(const std::filesystem::path& root);

enum class VerifyStatus { ok, mismatch, vanished };

/// Recomputes the payload digest and compares it with the entry's.
VerifyStatus verify_image(const ImageEntry& entry, const std::filesystem::path& root);

}  // namespace netforge::catalog
